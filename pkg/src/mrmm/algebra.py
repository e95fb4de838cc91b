"""Polynomial arithmetic over GF(2) and the primitivity machinery.

Polynomials are plain Python ints: bit i holds the coefficient of X^i, so
X^4 + X + 1 is ``0b10011``.  The zero polynomial is ``0`` and has degree
``None``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InvalidDegreeError,
    InvalidInputError,
    InvalidModulusError,
    UnsupportedDegreeError,
)

MAX_BUILTIN_DEGREE = 64
TRIAL_DIVISION_BOUND = 10**6


def degree(a: int) -> int | None:
    """Degree of ``a``, or None for the zero polynomial."""
    if a < 0:
        raise InvalidInputError("polynomials are nonnegative bit masks")
    return a.bit_length() - 1 if a else None


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two polynomials."""
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length()
    while a.bit_length() >= df:
        a ^= f << (a.bit_length() - df)
    return a


def _check_modulus(f: int) -> None:
    if f < 2:
        raise InvalidModulusError(f"modulus must have degree >= 1, got {f:#x}")


def poly_mul_mod(a: int, b: int, f: int) -> int:
    """(a * b) mod f."""
    _check_modulus(f)
    a = poly_mod(a, f)
    b = poly_mod(b, f)
    top = 1 << (f.bit_length() - 1)
    # shift-and-add with reduction at every step keeps operands below deg f
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def poly_pow_mod(base: int, e: int, f: int) -> int:
    """base**e mod f by left-to-right square-and-multiply."""
    _check_modulus(f)
    if e < 0:
        raise InvalidInputError("exponent must be nonnegative")
    base = poly_mod(base, f)
    r = poly_mod(1, f)
    for bit in bin(e)[2:] if e else "":
        r = poly_mul_mod(r, r, f)
        if bit == "1":
            r = poly_mul_mod(r, base, f)
    return r


def poly_gcd(a: int, b: int) -> int:
    """Monic gcd of a and b.  Over GF(2) every nonzero polynomial is monic."""
    if a == 0 and b == 0:
        raise InvalidInputError("gcd(0, 0) is undefined")
    while b:
        a, b = b, poly_mod(a, b)
    return a


def random_monic_poly(d: int, rng: random.Random) -> int:
    """Monic polynomial of degree d with constant term 1, other coefficients uniform."""
    if d < 1:
        raise InvalidDegreeError(f"degree must be >= 1, got {d}")
    middle = rng.getrandbits(d - 1) if d > 1 else 0
    return (1 << d) | (middle << 1) | 1


def is_irreducible(f: int) -> bool:
    """Ben-Or irreducibility test.

    For i = 1 .. deg(f)//2 the gcd of f with X^(2^i) - X must be 1.  The power
    X^(2^i) mod f is carried forward by one squaring per round.
    """
    d = degree(f)
    if d is None or d < 1:
        raise InvalidInputError("irreducibility is undefined for constant polynomials")
    x = poly_mod(0b10, f)
    h = x
    for _ in range(d // 2):
        h = poly_mul_mod(h, h, f)
        if poly_gcd(f, h ^ x) != 1:
            return False
    return True


# -- factorization of 2^d - 1 -------------------------------------------------


@lru_cache(maxsize=1)
def _small_primes(bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24, which covers 2^64 - 1."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_brent(n: int, seed: int = 1) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard rho, Brent cycles)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    while True:
        y, c, batch = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            # batched product overshot; redo one step at a time
            while True:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g


def _prime_factors(n: int) -> set[int]:
    primes: set[int] = set()
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            primes.add(p)
            while n % p == 0:
                n //= p
    stack = [n] if n > 1 else []
    while stack:
        k = stack.pop()
        if is_probable_prime(k):
            primes.add(k)
            continue
        g = pollard_brent(k)
        stack += [g, k // g]
    return primes


@dataclass(frozen=True)
class FactorSet:
    """Distinct prime factors of 2^d - 1, validated on construction."""

    d: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDegreeError(f"degree must be >= 1, got {self.d}")
        primes = tuple(self.primes)
        if list(primes) != sorted(set(primes)):
            raise InvalidInputError("primes must be distinct and ascending")
        object.__setattr__(self, "primes", primes)
        n = (1 << self.d) - 1
        for p in primes:
            if p < 2 or n % p:
                raise InvalidInputError(f"{p} does not divide 2^{self.d} - 1")
            while n % p == 0:
                n //= p
        if n != 1:
            raise InvalidInputError(
                f"primes do not reconstruct 2^{self.d} - 1 (cofactor {n} left over)"
            )
        for p in primes:
            if not is_probable_prime(p):
                raise InvalidInputError(f"{p} is not prime")

    @property
    def order(self) -> int:
        return (1 << self.d) - 1

    def totient(self) -> int:
        """Euler phi of 2^d - 1."""
        phi = self.order
        for p in self.primes:
            phi = phi // p * (p - 1)
        return phi


def factor_2d_minus_1(d: int) -> FactorSet:
    if d < 1:
        raise InvalidDegreeError(f"degree must be >= 1, got {d}")
    if d > MAX_BUILTIN_DEGREE:
        raise UnsupportedDegreeError(
            f"built-in factorization stops at d={MAX_BUILTIN_DEGREE}; "
            f"supply the primes of 2^{d}-1 with a factor file (--factors)"
        )
    return FactorSet(d, tuple(sorted(_prime_factors((1 << d) - 1))))


def format_factor_file(fs: FactorSet) -> str:
    return f"format=1\nd={fs.d}\nprimes={','.join(map(str, fs.primes))}\n"


def parse_factor_file(text: str) -> FactorSet:
    fields = parse_kv_lines(text)
    if set(fields) - {"format", "d", "primes"} or not {"d", "primes"} <= set(fields):
        raise InvalidInputError("factor file needs exactly the keys d and primes")
    try:
        d = int(fields["d"])
        primes = tuple(int(p) for p in fields["primes"].split(",") if p.strip())
    except ValueError as exc:
        raise InvalidInputError(f"malformed factor file: {exc}") from None
    return FactorSet(d, primes)


def parse_kv_lines(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; an optional leading ``format=1`` is checked."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidInputError(f"line {lineno}: expected key=value")
        key = key.strip()
        if key in fields:
            raise InvalidInputError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    if fields.get("format", "1") != "1":
        raise InvalidInputError(f"unsupported format version {fields['format']}")
    return fields


def is_primitive(f: int, factors: FactorSet) -> bool:
    """True iff X has multiplicative order exactly 2^d - 1 modulo f.

    This is the prime-divisor test (X^((2^d-1)/p) != 1 for every p) plus the
    check X^(2^d-1) == 1, which makes the answer correct even when f is
    reducible.
    """
    d = degree(f)
    if d is None or d < 1:
        raise InvalidInputError("primitivity is undefined for constant polynomials")
    if d != factors.d:
        raise InvalidInputError(f"degree {d} does not match factor set for d={factors.d}")
    if not f & 1:
        return False
    order = factors.order
    if poly_pow_mod(0b10, order, f) != 1:
        return False
    return all(poly_pow_mod(0b10, order // p, f) != 1 for p in factors.primes)
