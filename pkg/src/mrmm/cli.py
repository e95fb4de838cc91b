"""Command-line entry point: ``mrmm <command> ...``."""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from multiprocessing import Manager

from . import __version__
from .algebra import FactorSet, factor_2d_minus_1, format_factor_file, parse_factor_file
from .analysis import (
    CheckResult,
    berlekamp_massey,
    coordinate_stream,
    measure_period,
    verify_spec,
)
from .bench import bench
from .construct import MrmmSpec, find_primitive_mrmm, format_spec, parse_spec
from .engine import MrmmState, generate, parse_state
from .errors import InvalidInputError, MrmmError, SearchExhaustedError
from .langford import LangfordArrangement, find_langford, tweaked_stream


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints usage plus a message; one diagnostic line is the contract
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


def _load_spec(path: str) -> MrmmSpec:
    return parse_spec(_read(path))


def _load_factors(path: str | None, d: int) -> FactorSet:
    if path is None:
        return factor_2d_minus_1(d)
    fs = parse_factor_file(_read(path))
    if fs.d != d:
        raise InvalidInputError(f"factor file is for d={fs.d}, need d={d}")
    return fs


def _state(text: str | None, spec: MrmmSpec) -> MrmmState:
    return MrmmState.unit(spec) if text is None else parse_state(text, spec)


def format_words(words, m: int, fmt: str) -> bytes:
    """Encode words for output: hex lines, LSB-first bit lines, or raw bytes."""
    if fmt == "hex":
        return b"".join(f"0x{w:X}\n".encode() for w in words)
    if fmt == "bits":
        return b"".join(
            ("".join("1" if w >> b & 1 else "0" for b in range(m)) + "\n").encode()
            for w in words
        )
    if fmt == "raw":
        width = (m + 7) // 8
        return b"".join(w.to_bytes(width, "little") for w in words)
    raise InvalidInputError(f"unknown format {fmt!r}")


def _write(out, data: bytes) -> None:
    if hasattr(out, "buffer"):
        out.flush()
        out.buffer.write(data)
        out.buffer.flush()
    else:
        out.write(data.decode("latin-1"))


# -- search with optional parallel jobs -----------------------------------------


def _job_rng(seed: int, job: int) -> random.Random:
    return random.Random(seed if job == 0 else f"{seed}:{job}")


def _search_job(m, n, factors, seed, job, max_iters, stop):
    try:
        spec, iters = find_primitive_mrmm(
            m, n, factors, _job_rng(seed, job), max_iters, cancel=stop.is_set
        )
    except SearchExhaustedError:
        return None
    stop.set()
    return spec, iters


def search(m: int, n: int, factors: FactorSet, seed: int, max_iters=None, jobs: int = 1):
    if jobs <= 1:
        return find_primitive_mrmm(m, n, factors, _job_rng(seed, 0), max_iters)
    with Manager() as manager, ProcessPoolExecutor(jobs) as pool:
        stop = manager.Event()
        pending = {
            pool.submit(_search_job, m, n, factors, seed, job, max_iters, stop)
            for job in range(jobs)
        }
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                result = fut.result()
                if result is not None:
                    stop.set()
                    wait(pending)
                    return result
    raise SearchExhaustedError(max_iters if max_iters is not None else 0)


# -- commands ------------------------------------------------------------------


def cmd_search(args, out):
    factors = _load_factors(args.factors, args.m * args.n)
    spec, _ = search(args.m, args.n, factors, args.seed, args.max_iters, args.jobs)
    out.write(format_spec(spec))


def cmd_gen(args, out):
    spec = _load_spec(args.spec)
    words = generate(spec, _state(args.state, spec), args.count)
    _write(out, format_words(words, spec.m, args.format))


def cmd_tweak(args, out):
    spec = _load_spec(args.spec)
    if args.arrangement:
        arr = LangfordArrangement.parse(args.arrangement)
    else:
        arr = find_langford(spec.n // 2) if spec.n % 2 == 0 else None
        if arr is None:
            raise InvalidInputError(
                f"tweak unavailable: order {spec.n} is not 2g for a g with a Langford arrangement"
            )
    words = tweaked_stream(spec, arr, _state(args.state, spec), args.count)
    _write(out, format_words(words, spec.m, args.format))


def cmd_analyze(args, out):
    spec = _load_spec(args.spec)
    seed = _state(args.state, spec)
    run_all = not (args.period or args.lc or args.verify)
    results: list[CheckResult] = []
    if args.verify or run_all:
        results += verify_spec(spec, _load_factors(args.factors, spec.degree))
    if args.period or run_all:
        period = measure_period(spec, seed)
        results.append(CheckResult("period", period == (1 << spec.degree) - 1, period))
    if args.lc or run_all:
        nbits = args.bits or 2 * spec.degree + 64
        words = seed.words() + generate(spec, seed, max(nbits - spec.n, 0))
        for j in range(1, spec.m + 1):
            lc = berlekamp_massey(coordinate_stream(words[:nbits], j, spec.m)).lc
            results.append(CheckResult(f"lc_coord{j}", lc == spec.degree, lc))
    for r in results:
        out.write(r.line() + "\n")
    failed = sum(not r.passed for r in results)
    if failed:
        raise MrmmError(f"{failed} check(s) failed")


def cmd_langford(args, out):
    arr = find_langford(args.g)
    out.write(f"{arr if arr is not None else 'none'}\n")


def cmd_bench(args, out):
    spec = _load_spec(args.spec)
    report = bench(spec, args.count, _state(args.state, spec))
    out.write("\n".join(report.lines()) + "\n")


def cmd_factors(args, out):
    out.write(format_factor_file(factor_2d_minus_1(args.d)))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mrmm", description="Efficient primitive MRMM generators over GF(2).")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="find a primitive MRMM and print its spec file")
    s.add_argument("-m", type=int, required=True, help="word width in bits")
    s.add_argument("-n", type=int, required=True, help="order (number of state words)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--factors", help="factor file for 2^(mn)-1")
    s.add_argument("--max-iters", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_search)

    for name, func, helptext in (
        ("gen", cmd_gen, "emit generator output words"),
        ("tweak", cmd_tweak, "emit the Langford-tweaked stream"),
    ):
        g = sub.add_parser(name, help=helptext)
        g.add_argument("--spec", required=True)
        g.add_argument("--state", help="comma-separated hex words s_0..s_{n-1}")
        g.add_argument("--count", type=int, default=16)
        g.add_argument("--format", choices=("bits", "hex", "raw"), default="hex")
        if name == "tweak":
            g.add_argument("--arrangement", help='explicit arrangement, e.g. "41312432"')
        g.set_defaults(func=func)

    a = sub.add_parser("analyze", help="verify a spec (default: all checks)")
    a.add_argument("--spec", required=True)
    a.add_argument("--factors")
    a.add_argument("--state")
    a.add_argument("--period", action="store_true")
    a.add_argument("--lc", action="store_true")
    a.add_argument("--verify", action="store_true")
    a.add_argument("--bits", type=int, help="bits per coordinate for --lc")
    a.set_defaults(func=cmd_analyze)

    lg = sub.add_parser("langford", help="print a Langford arrangement or none")
    lg.add_argument("-g", type=int, required=True)
    lg.set_defaults(func=cmd_langford)

    b = sub.add_parser("bench", help="fast vs naive stepper throughput")
    b.add_argument("--spec", required=True)
    b.add_argument("--count", type=int, default=10**6)
    b.add_argument("--state")
    b.set_defaults(func=cmd_bench)

    fa = sub.add_parser("factors", help="print the factor file for 2^d-1")
    fa.add_argument("-d", type=int, required=True)
    fa.set_defaults(func=cmd_factors)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    try:
        status = args.func(args, out)
    except MrmmError as exc:
        err.write(f"mrmm {args.command}: error: {exc}\n")
        return 1
    return status or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
