"""Langford arrangements and the tweaked MRMM stream built on them.

With left/right positions (l_k, r_k) of each number k in an arrangement of
1,1,...,g,g, the auxiliary stream is

    u_j = XOR_k  s_{2g+j-l_k} AND s_{2g+j-r_k}

over the words of an order-2g MRMM, and the tweaked output is its running
XOR t_i = u_0 ^ ... ^ u_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from operator import xor

from .construct import MrmmSpec
from .engine import MrmmState, generate
from .errors import InvalidInputError


@dataclass(frozen=True)
class LangfordArrangement:
    g: int
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        # validates, raises on malformed input
        positions(self)

    @classmethod
    def parse(cls, text: str) -> LangfordArrangement:
        """Accept "41312432" (single digits) or "4 1 3 1 2 4 3 2"."""
        text = text.strip()
        try:
            seq = [int(t) for t in (text.split() if " " in text else text)]
        except ValueError:
            raise InvalidInputError(f"bad arrangement {text!r}") from None
        if len(seq) % 2:
            raise InvalidInputError("arrangement length must be even")
        return cls(len(seq) // 2, tuple(seq))

    @property
    def positions(self) -> list[tuple[int, int]]:
        return positions(self)

    def __str__(self):
        sep = " " if self.g > 9 else ""
        return sep.join(map(str, self.seq))


def positions(arr: LangfordArrangement) -> list[tuple[int, int]]:
    """1-based (l_k, r_k) for k = 1..g; raises InvalidInputError if malformed."""
    g, seq = arr.g, arr.seq
    if g < 1 or len(seq) != 2 * g:
        raise InvalidInputError(f"arrangement for g={g} must have length {2 * g}")
    seen: dict[int, list[int]] = {}
    for pos, k in enumerate(seq, 1):
        if not 1 <= k <= g:
            raise InvalidInputError(f"entry {k} outside 1..{g}")
        seen.setdefault(k, []).append(pos)
    out = []
    for k in range(1, g + 1):
        where = seen.get(k, [])
        if len(where) != 2:
            raise InvalidInputError(f"{k} must appear exactly twice")
        left, right = where
        if right - left != k + 1:
            raise InvalidInputError(f"the two {k}s must enclose exactly {k} entries")
        out.append((left, right))
    return out


def find_langford(g: int) -> LangfordArrangement | None:
    """First arrangement found by backtracking, or None if none exists.

    Slots are filled left to right; each empty slot tries the largest unused
    number first.
    """
    if g < 1:
        raise InvalidInputError("g must be positive")
    size = 2 * g
    slots = [0] * size
    used = [False] * (g + 1)

    def place(pos: int) -> bool:
        while pos < size and slots[pos]:
            pos += 1
        if pos == size:
            return True
        for k in range(g, 0, -1):
            other = pos + k + 1
            if used[k] or other >= size or slots[other]:
                continue
            slots[pos] = slots[other] = k
            used[k] = True
            if place(pos + 1):
                return True
            slots[pos] = slots[other] = 0
            used[k] = False
        return False

    return LangfordArrangement(g, tuple(slots)) if place(0) else None


def _check(spec: MrmmSpec, arr: LangfordArrangement) -> None:
    if spec.n != 2 * arr.g:
        raise InvalidInputError(f"tweak needs an order-{2 * arr.g} spec, got order {spec.n}")


def u_stream(spec: MrmmSpec, arr: LangfordArrangement, seed: MrmmState, count: int) -> list[int]:
    _check(spec, arr)
    if count <= 0:
        return []
    n = spec.n
    s = seed.words() + generate(spec, seed, count)
    pairs = [(n - left, n - right) for left, right in positions(arr)]
    out = []
    for j in range(count):
        u = 0
        for a, b in pairs:
            u ^= s[j + a] & s[j + b]
        out.append(u)
    return out


def tweaked_stream(spec: MrmmSpec, arr: LangfordArrangement, seed: MrmmState, count: int) -> list[int]:
    return list(accumulate(u_stream(spec, arr, seed, count), xor))
