"""Horner-form construction of efficient primitive MRMMs over GF(2).

A degree-mn polynomial f is cut into n-bit pieces (its n-Horner form).  The
pieces populate an m x m polynomial matrix whose X^j coefficient matrices
C_0 .. C_{n-1} are zero apart from their last column (plus the subdiagonal of
C_0).  Only those last columns need to be stored, packed into m-bit words.

Bit packing: coordinate i (1-based) of an m-vector lives at bit m - i, so the
last coordinate is the least significant bit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .algebra import (
    FactorSet,
    parse_kv_lines,
    degree,
    is_irreducible,
    is_primitive,
    random_monic_poly,
)
from .errors import InvalidInputError, SearchExhaustedError, ShapeError

MAX_WORD_BITS = 64


@dataclass(frozen=True)
class HornerForm:
    n: int
    m: int
    r: int
    pieces: tuple[int, ...]

    def recompose(self) -> int:
        f = 0
        for piece in reversed(self.pieces):
            f = (f << self.n) ^ piece
        return f


@dataclass(frozen=True)
class MrmmSpec:
    """An efficient MRMM: word width m, order n, characteristic polynomial f,
    and the packed last columns of C_0 .. C_{n-1}."""

    m: int
    n: int
    f: int
    v_cols: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.m <= MAX_WORD_BITS:
            raise ShapeError(f"word width must be in 1..{MAX_WORD_BITS}, got {self.m}")
        if self.n < 1:
            raise ShapeError(f"order must be >= 1, got {self.n}")
        object.__setattr__(self, "v_cols", tuple(self.v_cols))
        if degree(self.f) != self.m * self.n:
            raise ShapeError(f"f must have degree m*n = {self.m * self.n}")
        if len(self.v_cols) != self.n:
            raise ShapeError(f"expected {self.n} feedback columns, got {len(self.v_cols)}")
        if any(v < 0 or v >> self.m for v in self.v_cols):
            raise ShapeError(f"feedback columns must fit in {self.m} bits")
        if not self.v_cols[0] >> (self.m - 1) & 1:
            # a_0 = 0 makes C_0 singular
            raise ShapeError("top bit of V^0 (a_0) must be set")

    @property
    def degree(self) -> int:
        return self.m * self.n

    @property
    def mask(self) -> int:
        return (1 << self.m) - 1


def horner_decompose(f: int, n: int) -> HornerForm:
    d = degree(f)
    if d is None:
        raise InvalidInputError("cannot decompose the zero polynomial")
    if not 1 <= n <= d:
        raise ShapeError(f"block size must satisfy 1 <= n <= deg f = {d}, got {n}")
    m, r = divmod(d, n)
    low = (1 << n) - 1
    pieces = tuple((f >> (i * n)) & low for i in range(m)) + (f >> (m * n),)
    return HornerForm(n=n, m=m, r=r, pieces=pieces)


def _check_shape(f: int, m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ShapeError("m and n must be positive")
    # over GF(2) every nonzero polynomial is monic; only the degree can be wrong
    if degree(f) != m * n:
        raise ShapeError(f"f must be monic of degree m*n = {m * n}, got degree {degree(f)}")


def horner_polynomial_matrix(f: int, m: int, n: int) -> list[list[int]]:
    """The n-Horner matrix H_m(n, f) itself, entries in GF(2)[X]."""
    _check_shape(f, m, n)
    form = horner_decompose(f, n)
    xn = 1 << n
    h = [[0] * m for _ in range(m)]
    for i in range(m):
        h[i][i] = xn
        if i:
            h[i][i - 1] = 1
        h[i][m - 1] ^= form.pieces[i]
    # the last diagonal entry is f_{m-1} + f_m X^n with f_m = 1
    return h


def horner_matrix(f: int, m: int, n: int) -> list[list[list[int]]]:
    """Coefficient matrices C_0 .. C_{n-1} of H_m(n, f) = I X^n + sum C_j X^j.

    Each C_j is returned as a list of m rows of 0/1 entries.
    """
    _check_shape(f, m, n)
    mats = []
    for j in range(n):
        c = [[0] * m for _ in range(m)]
        for i in range(m):
            c[i][m - 1] = (f >> (i * n + j)) & 1
            if j == 0 and i:
                c[i][i - 1] = 1
        mats.append(c)
    return mats


def extract_spec(f: int, m: int, n: int) -> MrmmSpec:
    mats = horner_matrix(f, m, n)
    v_cols = []
    for c in mats:
        v = 0
        for i in range(m):
            v |= c[i][m - 1] << (m - 1 - i)
        v_cols.append(v)
    return MrmmSpec(m=m, n=n, f=f, v_cols=tuple(v_cols))


def expected_iterations(factors: FactorSet) -> float:
    """1/alpha where alpha = phi(2^d - 1) / (d 2^d) is the primitive density."""
    d = factors.d
    return d * 2**d / factors.totient()


def default_max_iters(factors: FactorSet) -> int:
    return 64 * factors.d * math.ceil(expected_iterations(factors))


def find_primitive_mrmm(
    m: int,
    n: int,
    factors: FactorSet,
    rng: random.Random,
    max_iters: int | None = None,
    cancel=None,
) -> tuple[MrmmSpec, int]:
    """Random search for a primitive f of degree mn, then Horner extraction.

    Returns the spec and the number of candidate polynomials drawn.  ``cancel``
    is an optional zero-argument callable polled between candidates; when it
    returns true the search stops with SearchExhaustedError.
    """
    d = m * n
    if d < 2:
        raise InvalidInputError("m*n must be at least 2")
    if factors.d != d:
        raise InvalidInputError(f"factor set is for d={factors.d}, need d={d}")
    if max_iters is None:
        max_iters = default_max_iters(factors)
    if max_iters < 1:
        raise InvalidInputError("max_iters must be positive")
    for it in range(1, max_iters + 1):
        if cancel is not None and cancel():
            raise SearchExhaustedError(it - 1)
        f = random_monic_poly(d, rng)
        if is_irreducible(f) and is_primitive(f, factors):
            return extract_spec(f, m, n), it
    raise SearchExhaustedError(max_iters)


# -- spec files ----------------------------------------------------------------


def _hex(v: int) -> str:
    return f"0x{v:X}"


def format_spec(spec: MrmmSpec) -> str:
    return (
        "format=1\n"
        f"m={spec.m}\n"
        f"n={spec.n}\n"
        "q=2\n"
        f"f={_hex(spec.f)}\n"
        f"V={','.join(_hex(v) for v in spec.v_cols)}\n"
    )


def parse_spec(text: str) -> MrmmSpec:
    fields = parse_kv_lines(text)
    required = {"m", "n", "q", "f", "V"}
    if not required <= set(fields) or set(fields) - required - {"format"}:
        raise InvalidInputError("spec file needs exactly the keys m, n, q, f, V")
    if fields["q"] != "2":
        raise InvalidInputError("only q=2 is supported")
    try:
        m = int(fields["m"])
        n = int(fields["n"])
        f = int(fields["f"], 16)
        v_cols = tuple(int(v, 16) for v in fields["V"].split(","))
    except ValueError as exc:
        raise InvalidInputError(f"malformed spec file: {exc}") from None
    return MrmmSpec(m=m, n=n, f=f, v_cols=v_cols)
