"""Generator runtime: state, steppers and the block companion matrix.

The fast stepper computes each new word as

    s_{i+n} = (s_i >> 1) ^ (V^0 if lsb(s_i)) ^ ... ^ (V^{n-1} if lsb(s_{i+n-1}))

which is the matrix recurrence s_{i+n} = C_0 s_i + ... + C_{n-1} s_{i+n-1}
once C_0 is split into the shift matrix plus a last-column matrix.  The naive
stepper and the companion-matrix action evaluate the same recurrence with
full matrices and serve as oracles for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construct import MrmmSpec
from .errors import InvalidInputError, ShapeError


class MrmmState:
    """n words of m bits in a ring buffer; word j (logical) is s_{time + j}."""

    __slots__ = ("m", "n", "buf", "head", "time")

    def __init__(self, words, m: int, time: int = 0):
        words = list(words)
        if not words:
            raise ShapeError("state needs at least one word")
        if any(w < 0 or w >> m for w in words):
            raise ShapeError(f"state words must fit in {m} bits")
        self.m = m
        self.n = len(words)
        self.buf = words
        self.head = 0
        self.time = time

    @classmethod
    def unit(cls, spec: MrmmSpec) -> MrmmState:
        """The state (1, 0, ..., 0)."""
        return cls([1] + [0] * (spec.n - 1), spec.m)

    def words(self) -> list[int]:
        """Logical contents s_i .. s_{i+n-1}."""
        return self.buf[self.head :] + self.buf[: self.head]

    def word(self, j: int) -> int:
        return self.buf[(self.head + j) % self.n]

    def push(self, word: int) -> None:
        """Drop s_i, append ``word`` as s_{i+n}."""
        self.buf[self.head] = word
        self.head = (self.head + 1) % self.n
        self.time += 1

    def copy(self) -> MrmmState:
        return MrmmState(self.words(), self.m, self.time)

    def is_zero(self) -> bool:
        return not any(self.buf)

    def __eq__(self, other):
        if not isinstance(other, MrmmState):
            return NotImplemented
        return self.m == other.m and self.words() == other.words()

    def __repr__(self):
        words = ", ".join(hex(w) for w in self.words())
        return f"MrmmState([{words}], m={self.m}, time={self.time})"


def _check_pair(state: MrmmState, spec: MrmmSpec) -> None:
    if state.m != spec.m or state.n != spec.n:
        raise ShapeError(
            f"state is {state.n} words of {state.m} bits, spec needs {spec.n} of {spec.m}"
        )


@dataclass
class OpCounter:
    """Word operations performed by instrumented fast steps."""

    steps: int = 0
    shifts: int = 0
    xors: int = 0
    max_xors_per_step: int = 0


def step_fast(state: MrmmState, spec: MrmmSpec, ops: OpCounter | None = None) -> int:
    """Advance ``state`` by one step in place and return the new word."""
    _check_pair(state, spec)
    buf, head, n = state.buf, state.head, state.n
    new = buf[head] >> 1
    xors = 0
    for j, v in enumerate(spec.v_cols):
        if buf[(head + j) % n] & 1:
            new ^= v
            xors += 1
    if ops is not None:
        ops.steps += 1
        ops.shifts += 1
        ops.xors += xors
        ops.max_xors_per_step = max(ops.max_xors_per_step, xors)
    state.push(new)
    return new


# -- full-matrix oracles --------------------------------------------------------


def coefficient_matrices(spec: MrmmSpec) -> list[list[list[int]]]:
    """Rebuild the dense C_0 .. C_{n-1} (rows of 0/1) from the packed columns."""
    m = spec.m
    mats = []
    for j, v in enumerate(spec.v_cols):
        c = [[0] * m for _ in range(m)]
        for i in range(m):
            c[i][m - 1] = (v >> (m - 1 - i)) & 1
            if j == 0 and i:
                c[i][i - 1] = 1
        mats.append(c)
    return mats


def _pack_row(row) -> int:
    """Pack a 0/1 row so that column k (0-based) sits at bit len(row)-1-k."""
    m = len(row)
    return sum(bit << (m - 1 - k) for k, bit in enumerate(row))


_naive_cache: dict[MrmmSpec, list[list[int]]] = {}


def _naive_rows(spec: MrmmSpec) -> list[list[int]]:
    rows = _naive_cache.get(spec)
    if rows is None:
        rows = [[_pack_row(r) for r in c] for c in coefficient_matrices(spec)]
        if len(_naive_cache) > 256:
            _naive_cache.clear()
        _naive_cache[spec] = rows
    return rows


def step_naive(state: MrmmState, spec: MrmmSpec) -> int:
    """One step of s_{i+n} = sum_j C_j s_{i+j} by explicit matrix-vector products."""
    _check_pair(state, spec)
    m = spec.m
    new = 0
    for j, rows in enumerate(_naive_rows(spec)):
        s = state.word(j)
        prod = 0
        for i, row in enumerate(rows):
            prod |= ((row & s).bit_count() & 1) << (m - 1 - i)
        new ^= prod
    state.push(new)
    return new


@dataclass(frozen=True)
class CompanionMatrix:
    """The mn x mn block companion matrix T, rows of 0/1 entries.

    Block row j, block column l holds: I_m when j = l + 1, C_j in the last
    block column, zero elsewhere.
    """

    m: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.m * self.n

    def block(self, j: int, l: int) -> list[list[int]]:
        m = self.m
        return [list(self.rows[j * m + i][l * m : (l + 1) * m]) for i in range(m)]


def companion_matrix(spec: MrmmSpec) -> CompanionMatrix:
    m, n = spec.m, spec.n
    dim = m * n
    rows = [[0] * dim for _ in range(dim)]
    for j, c in enumerate(coefficient_matrices(spec)):
        for i in range(m):
            r = rows[j * m + i]
            r[(n - 1) * m : n * m] = c[i]
            if j:
                r[(j - 1) * m + i] = 1
    return CompanionMatrix(m, n, tuple(tuple(r) for r in rows))


def companion_action(t: CompanionMatrix, state: MrmmState) -> MrmmState:
    """S -> S T with S the row of blocks (s_i, ..., s_{i+n-1}).

    The block product s_j * T[j][l] is taken as T[j][l] acting on the
    coordinate column vector s_j, which is how the recurrence reads.
    """
    m, n = t.m, t.n
    if state.m != m or state.n != n:
        raise ShapeError("state shape does not match companion matrix")
    words = state.words()
    out = []
    for l in range(n):
        acc = 0
        for j in range(n):
            blk = t.block(j, l)
            s = words[j]
            for i, row in enumerate(blk):
                acc ^= ((_pack_row(row) & s).bit_count() & 1) << (m - 1 - i)
        out.append(acc)
    return MrmmState(out, m, state.time + 1)


def companion_transition(t: CompanionMatrix) -> list[int]:
    """Row masks of the action above on the packed state integer.

    The state integer holds s_{i+j} at bits [m*j, m*(j+1)); the returned list
    gives, for each output bit position, the mask of input bits to XOR.
    """
    m, n = t.m, t.n
    masks = []
    for l in range(n):
        for bit in range(m):
            i = m - 1 - bit
            mask = 0
            for j in range(n):
                row = t.rows[j * m + i][l * m : (l + 1) * m]
                mask |= _pack_row(row) << (m * j)
            masks.append(mask)
    return masks


def pack_state(state: MrmmState) -> int:
    return sum(w << (state.m * j) for j, w in enumerate(state.words()))


def unpack_state(x: int, m: int, n: int) -> MrmmState:
    mask = (1 << m) - 1
    return MrmmState([(x >> (m * j)) & mask for j in range(n)], m)


def companion_step_packed(masks: list[int], x: int) -> int:
    out = 0
    for pos, mask in enumerate(masks):
        out |= ((mask & x).bit_count() & 1) << pos
    return out


# -- streams -------------------------------------------------------------------


def generate(spec: MrmmSpec, seed: MrmmState, count: int) -> list[int]:
    """The first ``count`` words after the seed, s_n, s_{n+1}, ...

    The seed state is not modified.
    """
    _check_pair(seed, spec)
    if count < 0:
        raise InvalidInputError("count must be nonnegative")
    n = spec.n
    seq = seed.words()
    vs = list(enumerate(spec.v_cols))
    append = seq.append
    for i in range(count):
        new = seq[i] >> 1
        for j, v in vs:
            if seq[i + j] & 1:
                new ^= v
        append(new)
    return seq[n:]


def run(state: MrmmState, spec: MrmmSpec, count: int) -> list[int]:
    """Like generate but advances ``state`` in place."""
    out = generate(spec, state, count)
    tail = (state.words() + out)[-state.n :]
    state.buf, state.head = tail, 0
    state.time += count
    return out


def parse_state(text: str, spec: MrmmSpec) -> MrmmState:
    """Comma-separated hex words in s_0 .. s_{n-1} order."""
    try:
        words = [int(w, 16) for w in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"bad state {text!r}: expected comma-separated hex words") from None
    if len(words) != spec.n:
        raise ShapeError(f"state needs {spec.n} words, got {len(words)}")
    return MrmmState(words, spec.m)


def generate_naive(spec: MrmmSpec, seed: MrmmState, count: int) -> list[int]:
    """generate() computed with step_naive; for cross-checks and benchmarking."""
    _check_pair(seed, spec)
    state = seed.copy()
    out = [0] * count
    for i in range(count):
        out[i] = step_naive(state, spec)
    return out
