"""Fast-vs-naive throughput comparison."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

from .construct import MrmmSpec
from .engine import MrmmState, OpCounter, generate, generate_naive, step_fast
from .errors import EquivalenceError, InvalidInputError

MIN_BENCH_WORDS = 10**6
WARMUP_WORDS = 10_000
OPS_SAMPLE_STEPS = 4096


@dataclass(frozen=True)
class BenchReport:
    spec_id: str
    words_generated: int
    fast_rate: float
    naive_rate: float
    checksum: str
    shifts_per_step: int
    max_xors_per_step: int
    mean_xors_per_step: float

    @property
    def ratio(self) -> float:
        return self.fast_rate / self.naive_rate

    def lines(self) -> list[str]:
        return [
            f"spec={self.spec_id}",
            f"words={self.words_generated}",
            f"fast_rate={self.fast_rate:.0f}",
            f"naive_rate={self.naive_rate:.0f}",
            f"ratio={self.ratio:.2f}",
            f"checksum={self.checksum}",
            f"shifts_per_step={self.shifts_per_step}",
            f"max_xors_per_step={self.max_xors_per_step}",
            f"mean_xors_per_step={self.mean_xors_per_step:.3f}",
        ]


def words_checksum(words, m: int) -> str:
    width = (m + 7) // 8
    h = hashlib.sha256()
    for w in words:
        h.update(w.to_bytes(width, "little"))
    return h.hexdigest()


def spec_id(spec: MrmmSpec) -> str:
    return f"m{spec.m}n{spec.n}f{spec.f:X}"


def count_ops(spec: MrmmSpec, seed: MrmmState, steps: int = OPS_SAMPLE_STEPS) -> OpCounter:
    ops = OpCounter()
    state = seed.copy()
    for _ in range(steps):
        step_fast(state, spec, ops)
    return ops


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench(spec: MrmmSpec, count: int = MIN_BENCH_WORDS, seed: MrmmState | None = None) -> BenchReport:
    if count < MIN_BENCH_WORDS:
        raise InvalidInputError(f"bench needs at least {MIN_BENCH_WORDS} words, got {count}")
    if seed is None:
        seed = MrmmState.unit(spec)
    warm = min(count, WARMUP_WORDS)
    generate(spec, seed, warm)
    generate_naive(spec, seed, warm)

    fast, t_fast = _timed(generate, spec, seed, count)
    naive, t_naive = _timed(generate_naive, spec, seed, count)
    fast_sum = words_checksum(fast, spec.m)
    naive_sum = words_checksum(naive, spec.m)
    if fast_sum != naive_sum:
        raise EquivalenceError(f"fast and naive outputs differ ({fast_sum} != {naive_sum})")

    ops = count_ops(spec, seed)
    return BenchReport(
        spec_id=spec_id(spec),
        words_generated=count,
        fast_rate=count / t_fast,
        naive_rate=count / t_naive,
        checksum=fast_sum,
        shifts_per_step=ops.shifts // ops.steps,
        max_xors_per_step=ops.max_xors_per_step,
        mean_xors_per_step=ops.xors / ops.steps,
    )
