"""Brute-force reference computations used only by the tests.

None of these call into the code paths they are used to check.
"""

from functools import lru_cache
from itertools import permutations


def school_mul(a, b):
    out = 0
    i = 0
    while b >> i:
        if b >> i & 1:
            out ^= a << i
        i += 1
    return out


def long_mod(a, f):
    df = f.bit_length() - 1
    for k in range(a.bit_length() - 1, df - 1, -1):
        if a >> k & 1:
            a ^= f << (k - df)
    return a


def divides(g, f):
    return long_mod(f, g) == 0


def is_irreducible_brute(f):
    d = f.bit_length() - 1
    for g in range(2, 1 << (d // 2 + 1)):
        if 1 <= g.bit_length() - 1 <= d // 2 and divides(g, f):
            return False
    return True


def order_of_x(f):
    """Multiplicative order of X mod f by repeated multiplication, or None."""
    d = f.bit_length() - 1
    if not f & 1:
        return None
    x = long_mod(0b10, f)
    cur = x
    for k in range(1, 1 << d):
        if cur == 1:
            return k
        cur = long_mod(cur << 1, f)
    return None


def is_primitive_brute(f):
    d = f.bit_length() - 1
    return order_of_x(f) == (1 << d) - 1


def all_primitive(d):
    return [f for f in range(1 << d, 1 << (d + 1)) if is_primitive_brute(f)]


def trial_factor(n):
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def totient(n):
    out = n
    for p in trial_factor(n):
        out = out // p * (p - 1)
    return out


def det_cofactor(h):
    """Determinant of a square matrix over GF(2)[X] by Laplace expansion.

    Expands along successive rows, memoising on the set of unused columns.
    """
    size = len(h)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == size:
            return 1
        acc = 0
        for c in range(size):
            if cols >> c & 1 and h[row][c]:
                acc ^= school_mul(h[row][c], minor(row + 1, cols & ~(1 << c)))
        return acc

    return minor(0, (1 << size) - 1)


def lfsr_bits(char_poly, init_bits, count):
    """Bits of the LFSR s_{i+L} = sum_{k<L} a_k s_{i+k} for characteristic poly sum a_k X^k."""
    L = char_poly.bit_length() - 1
    s = list(init_bits)
    while len(s) < count:
        i = len(s) - L
        s.append(sum(s[i + k] for k in range(L) if char_poly >> k & 1) % 2)
    return s[:count]


def mat_vec(mat, vec):
    """Dense 0/1 matrix times 0/1 column vector over GF(2)."""
    return [sum(a * b for a, b in zip(row, vec)) % 2 for row in mat]


def word_to_vec(w, m):
    return [(w >> (m - 1 - i)) & 1 for i in range(m)]


def vec_to_word(v):
    m = len(v)
    return sum(bit << (m - 1 - i) for i, bit in enumerate(v))


def langford_exists_brute(g):
    """Enumerate left positions of every k; True if some choice tiles 1..2g."""
    size = 2 * g

    def go(k, used):
        if k == 0:
            return True
        for left in range(size - k - 1):
            right = left + k + 1
            if not (used >> left & 1 or used >> right & 1):
                if go(k - 1, used | 1 << left | 1 << right):
                    return True
        return False

    return go(g, 0)


def gf2_rank_dense(mat):
    rows = [list(r) for r in mat]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank
