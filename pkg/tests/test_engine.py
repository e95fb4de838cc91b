import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrmm.algebra import factor_2d_minus_1
from mrmm.analysis import measure_period
from mrmm.construct import extract_spec, find_primitive_mrmm, horner_matrix
from mrmm.engine import (
    MrmmState,
    OpCounter,
    companion_action,
    companion_matrix,
    companion_step_packed,
    companion_transition,
    generate,
    generate_naive,
    pack_state,
    parse_state,
    run,
    step_fast,
    step_naive,
    unpack_state,
)
from mrmm.errors import InvalidInputError, ShapeError
from oracles import gf2_rank_dense, mat_vec, vec_to_word, word_to_vec


def matrix_oracle_step(spec, words):
    """s_{i+n} = sum_j C_j s_{i+j} with dense matrices straight from construct."""
    mats = horner_matrix(spec.f, spec.m, spec.n)
    acc = [0] * spec.m
    for c, w in zip(mats, words):
        acc = [(a + b) % 2 for a, b in zip(acc, mat_vec(c, word_to_vec(w, spec.m)))]
    return vec_to_word(acc)


def random_spec(rng, m, n):
    d = m * n
    return extract_spec((1 << d) | rng.getrandbits(d) | 1, m, n)


def test_state_ring_buffer():
    s = MrmmState([1, 2, 3], 4)
    s.push(4)
    assert s.words() == [2, 3, 4] and s.time == 1
    s.push(5)
    s.push(6)
    s.push(7)
    assert s.words() == [5, 6, 7]
    assert s.word(0) == 5
    with pytest.raises(ShapeError):
        MrmmState([16], 4)


def test_fast_step_examples(example_spec):
    s = MrmmState([0b0001, 0, 0], 4)
    assert step_fast(s, example_spec) == 0b1000
    assert s.words() == [0, 0, 0b1000]
    assert step_fast(MrmmState([0, 0, 0b0010], 4), example_spec) == 0


def test_naive_step_example(example_spec):
    s = MrmmState([0b0001, 0, 0], 4)
    assert step_naive(s, example_spec) == 0b1000
    assert matrix_oracle_step(example_spec, [1, 0, 0]) == 0b1000


def test_zero_state_absorbing(example_spec):
    assert generate(example_spec, MrmmState([0, 0, 0], 4), 50) == [0] * 50
    assert generate_naive(example_spec, MrmmState([0, 0, 0], 4), 50) == [0] * 50


def test_shape_mismatch(example_spec):
    with pytest.raises(ShapeError):
        step_fast(MrmmState([1, 0], 4), example_spec)
    with pytest.raises(ShapeError):
        step_naive(MrmmState([1, 0, 0], 5), example_spec)


def test_generate_examples(example_spec):
    seed = MrmmState([1, 0, 0], 4)
    assert generate(example_spec, seed, 0) == []
    assert generate(example_spec, seed, 1) == [0b1000]
    assert seed.words() == [1, 0, 0]
    with pytest.raises(InvalidInputError):
        generate(example_spec, seed, -1)


def test_generate_visits_every_nonzero_state(example_spec):
    seed = MrmmState([0x3, 0xA, 0x5], 4)
    words = seed.words() + generate(example_spec, seed, 4095)
    states = {tuple(words[i : i + 3]) for i in range(4095)}
    assert len(states) == 4095 and (0, 0, 0) not in states
    assert words[4095:4098] == words[:3]


def test_generate_matches_repeated_steps(example_spec):
    seed = MrmmState([0x9, 0x1, 0xF], 4)
    state = seed.copy()
    stepped = [step_fast(state, example_spec) for _ in range(500)]
    assert generate(example_spec, seed, 500) == stepped
    state2 = seed.copy()
    assert run(state2, example_spec, 500) == stepped
    assert state2 == state and state2.time == 500


def test_companion_matrix_small():
    spec = extract_spec(0b111, 1, 2)
    assert [list(r) for r in companion_matrix(spec).rows] == [[0, 1], [1, 1]]


def test_companion_matrix_golden_layout(example_spec):
    t = companion_matrix(example_spec)
    c0, c1, c2 = horner_matrix(example_spec.f, 4, 3)
    zero = [[0] * 4 for _ in range(4)]
    eye = [[int(i == k) for k in range(4)] for i in range(4)]
    expected = [[zero, zero, c0], [eye, zero, c1], [zero, eye, c2]]
    for j in range(3):
        for l in range(3):
            assert t.block(j, l) == expected[j][l]
    assert gf2_rank_dense(t.rows) == 12


@pytest.mark.parametrize("m, n", [(4, 3), (8, 2), (3, 5), (1, 7)])
def test_companion_invertible(m, n):
    rng = random.Random(m + n)
    for _ in range(5):
        assert gf2_rank_dense(companion_matrix(random_spec(rng, m, n)).rows) == m * n


def test_companion_action_matches_step(example_spec):
    t = companion_matrix(example_spec)
    rng = random.Random(5)
    for _ in range(200):
        state = MrmmState([rng.getrandbits(4) for _ in range(3)], 4)
        nxt = companion_action(t, state)
        step_fast(state, example_spec)
        assert nxt == state


def test_pack_unpack_round_trip():
    s = MrmmState([0xA, 0x3, 0xF], 4)
    assert unpack_state(pack_state(s), 4, 3) == s


def test_three_way_equivalence_small_words():
    rng = random.Random(2024)
    for _ in range(100):
        m, n = rng.choice([(4, 3), (3, 4), (5, 2), (2, 6), (1, 9)])
        spec = random_spec(rng, m, n)
        seed = MrmmState([rng.getrandbits(m) for _ in range(n)], m)
        fast = generate(spec, seed, 10_000)
        assert generate_naive(spec, seed, 10_000) == fast
        masks = companion_transition(companion_matrix(spec))
        x = pack_state(seed)
        words = seed.words() + fast
        for i in range(0, 10_000, 97):
            # the packed companion action maps state i to state i+1
            xi = pack_state(MrmmState(words[i : i + n], m))
            assert companion_step_packed(masks, xi) == pack_state(MrmmState(words[i + 1 : i + 1 + n], m))
        for i in range(200):
            x = companion_step_packed(masks, x)
        assert unpack_state(x, m, n).words() == words[200 : 200 + n]


@settings(max_examples=60)
@given(st.integers(1, 16), st.integers(1, 5), st.integers(0, 2**32))
def test_step_against_dense_matrix_oracle(m, n, seed):
    rng = random.Random(seed)
    spec = random_spec(rng, m, n)
    words = [rng.getrandbits(m) for _ in range(n)]
    assert step_fast(MrmmState(words, m), spec) == matrix_oracle_step(spec, words)
    assert step_naive(MrmmState(words, m), spec) == matrix_oracle_step(spec, words)


def test_instrumented_step_counts():
    rng = random.Random(11)
    for m, n in [(4, 3), (8, 4), (32, 4), (16, 2)]:
        spec = random_spec(rng, m, n)
        ops = OpCounter()
        state = MrmmState([rng.getrandbits(m) for _ in range(n)], m)
        for _ in range(1000):
            step_fast(state, spec, ops)
        assert ops.shifts == ops.steps == 1000
        assert ops.max_xors_per_step <= n
        assert ops.xors <= n * 1000


@pytest.mark.parametrize("m, n", [(1, 5), (2, 5), (4, 4), (5, 4), (10, 2), (4, 5)])
def test_period_divides_group_order(m, n):
    fs = factor_2d_minus_1(m * n)
    spec, _ = find_primitive_mrmm(m, n, fs, random.Random(m * n))
    period = measure_period(spec, MrmmState.unit(spec))
    assert ((1 << (m * n)) - 1) % period == 0
    assert period == (1 << (m * n)) - 1


def test_parse_state(example_spec):
    assert parse_state("0x001,0x000,0x000", example_spec).words() == [1, 0, 0]
    with pytest.raises(ShapeError):
        parse_state("0x1,0x0", example_spec)
    with pytest.raises(InvalidInputError):
        parse_state("0x1,zz,0", example_spec)
    with pytest.raises(ShapeError):
        parse_state("0x10,0,0", example_spec)
