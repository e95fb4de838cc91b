"""Verification instruments: linear complexity, period, spec checks."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FactorSet, is_primitive
from .construct import MrmmSpec
from .engine import MrmmState, companion_matrix
from .errors import InvalidInputError, ResourceGuardError, ShapeError

MAX_PERIOD_DEGREE = 24


@dataclass(frozen=True)
class LinearComplexityReport:
    """Result of Berlekamp-Massey on a bit prefix.

    ``connection`` is the feedback polynomial in characteristic form,
    X^lc + c_1 X^(lc-1) + ... + c_lc, so that for every valid i
    sum_k connection[k] * bits[i + k] = 0.  Its degree is exactly ``lc``.
    """

    lc: int
    connection: int
    bits_consumed: int

    def regenerates(self, bits) -> bool:
        bits = list(bits)
        L = self.lc
        taps = [k for k in range(L) if self.connection >> k & 1]
        for i in range(len(bits) - L):
            acc = 0
            for k in taps:
                acc ^= bits[i + k]
            if acc != bits[i + L]:
                return False
        return True


def berlekamp_massey(bits) -> LinearComplexityReport:
    """Shortest LFSR generating ``bits`` (a sequence of 0/1).

    Polynomials are kept as ints in the usual connection form
    C(X) = 1 + c_1 X + ... ; the reported polynomial is its reciprocal.
    """
    bits = [int(b) & 1 for b in bits]
    if not bits:
        raise InvalidInputError("Berlekamp-Massey needs a nonempty sequence")
    c, b = 1, 1
    L, shift = 0, 1
    for i, s in enumerate(bits):
        d = s
        cc = c >> 1
        k = 1
        while cc:
            if cc & 1:
                d ^= bits[i - k]
            cc >>= 1
            k += 1
        if not d:
            shift += 1
        elif 2 * L <= i:
            t = c
            c ^= b << shift
            L, b, shift = i + 1 - L, t, 1
        else:
            c ^= b << shift
            shift += 1
    reciprocal = 0
    for k in range(L + 1):
        if c >> k & 1:
            reciprocal |= 1 << (L - k)
    return LinearComplexityReport(lc=L, connection=reciprocal, bits_consumed=len(bits))


def linear_complexity(bits) -> int:
    return berlekamp_massey(bits).lc


def coordinate_stream(words, j: int, m: int) -> list[int]:
    """Coordinate j (1-based) of each m-bit word, i.e. bit m - j."""
    if not 1 <= j <= m:
        raise InvalidInputError(f"coordinate must be in 1..{m}, got {j}")
    shift = m - j
    return [(w >> shift) & 1 for w in words]


def flatten_bits(words, m: int) -> list[int]:
    """All coordinates of every word, coordinate 1 first."""
    return [(w >> (m - j)) & 1 for w in words for j in range(1, m + 1)]


def measure_period(spec: MrmmSpec, seed: MrmmState) -> int:
    """Smallest r >= 1 with state(r) == seed, by direct stepping."""
    if spec.degree > MAX_PERIOD_DEGREE:
        raise ResourceGuardError(
            f"period measurement is limited to m*n <= {MAX_PERIOD_DEGREE}"
        )
    if seed.m != spec.m or seed.n != spec.n:
        raise ShapeError("seed shape does not match spec")
    n = spec.n
    target = seed.words()
    first = target[0]
    vs = list(enumerate(spec.v_cols))
    seq = list(target)  # seq[k] is s_{base + k}
    base = 0
    for t in range(1, (1 << spec.degree) + 1):
        i = t - 1 - base
        new = seq[i] >> 1
        for j, v in vs:
            if seq[i + j] & 1:
                new ^= v
        seq.append(new)
        i += 1
        if seq[i] == first and seq[i : i + n] == target:
            return t
        if i >= 1 << 16:
            del seq[:i]
            base += i
    raise InvalidInputError("sequence is not purely periodic from this seed")


# -- spec verification ---------------------------------------------------------


def _rows_as_ints(rows) -> list[int]:
    return [sum(bit << k for k, bit in enumerate(r)) for r in rows]


def _matmul(a: list[int], b: list[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        k = 0
        while row:
            if row & 1:
                acc ^= b[k]
            row >>= 1
            k += 1
        out.append(acc)
    return out


def poly_of_matrix(f: int, rows) -> list[int]:
    """f(A) over GF(2) by Horner evaluation; A and the result as packed rows."""
    a = _rows_as_ints(rows)
    dim = len(a)
    identity = [1 << i for i in range(dim)]
    acc = [0] * dim
    for k in range(f.bit_length() - 1, -1, -1):
        acc = _matmul(acc, a)
        if f >> k & 1:
            acc = [r ^ e for r, e in zip(acc, identity)]
    return acc


def gf2_rank(rows) -> int:
    """Rank over GF(2) by Gaussian elimination; rows are 0/1 lists or ints."""
    pivots: dict[int, int] = {}
    for r in rows:
        v = r if isinstance(r, int) else _rows_as_ints([r])[0]
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: int

    def line(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"check={self.name} status={status} value={self.value}"


def verify_spec(spec: MrmmSpec, factors: FactorSet) -> list[CheckResult]:
    """Three checks: f annihilates T, f is primitive, C_0 is nonsingular.

    With f irreducible of degree mn, f(T) = 0 pins the characteristic
    polynomial of T to f.
    """
    if factors.d != spec.degree:
        raise ShapeError(f"factor set is for d={factors.d}, spec has degree {spec.degree}")
    t = companion_matrix(spec)
    residue = poly_of_matrix(spec.f, t.rows)
    nonzero_rows = sum(1 for r in residue if r)
    primitive = is_primitive(spec.f, factors)
    c0 = t.block(0, spec.n - 1)
    rank = gf2_rank(c0)
    return [
        CheckResult("char_poly", nonzero_rows == 0, nonzero_rows),
        CheckResult("primitive", primitive, int(primitive)),
        CheckResult("c0_nonsingular", rank == spec.m, rank),
    ]
