import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smdc.errors import FieldTooSmall, LengthMismatch, SingularMatrix
from smdc.field import FieldElement, rank_mod
from smdc.fixtures import EX1_LEVEL3, FIG2_LEVEL2, TABLE1_LEVEL2, TABLE1_LEVEL3
from smdc.mds import (
    MdsParams,
    build_generator,
    gen_cauchy_columns,
    generator_from_json,
    generator_from_matrix,
    generator_to_json,
    mds_decode,
    mds_encode,
    verify_full_rank_condition,
)

PARAMS = [(1, 2, 3, 5), (2, 3, 4, 11), (1, 3, 4, 7), (0, 2, 4, 7), (0, 1, 3, 5), (3, 4, 5, 11)]


def exhaustive_full_rank(cauchy, k, p):
    """Oracle: every k-subset of unit columns and Cauchy columns is invertible."""
    cols = [np.eye(k, dtype=np.int64)[:, i] for i in range(k)] + [cauchy[:, j] for j in range(cauchy.shape[1])]
    return all(rank_mod(np.stack(s, axis=1), p) == k for s in itertools.combinations(cols, k))


@pytest.mark.parametrize("c,k,n,p", PARAMS)
def test_cauchy_columns_pass_exhaustive_check(c, k, n, p):
    cols = gen_cauchy_columns(MdsParams(c, k, n, p), seed=3).to_array()
    assert cols.shape == (k, n)
    assert exhaustive_full_rank(cols, k, p)


def test_field_too_small():
    with pytest.raises(FieldTooSmall):
        gen_cauchy_columns(MdsParams(1, 2, 3, 3))
    with pytest.raises(ValueError):
        MdsParams(1, 2, 3, 4)  # 4 is not prime at all
    with pytest.raises(ValueError):
        MdsParams(2, 2, 3, 5)


def test_full_rank_report():
    gen = build_generator(MdsParams(1, 2, 3, 5), "B", seed=0)
    report = verify_full_rank_condition(gen)
    assert report.passed and report.checked == 10
    dup = generator_from_matrix([[1, 1, 2], [3, 3, 1]], c=0, p=5, variant="B")
    bad = verify_full_rank_condition(dup)
    assert not bad.passed
    assert ("g1", "g2") in bad.failures
    trivial = generator_from_matrix(np.eye(3, dtype=np.int64), c=0, p=5)
    assert verify_full_rank_condition(trivial).passed


def test_deterministic_for_seed():
    a = build_generator(MdsParams(2, 3, 4, 11), "B", seed=9)
    b = build_generator(MdsParams(2, 3, 4, 11), "B", seed=9)
    assert a.matrix == b.matrix


@pytest.mark.parametrize("c,k,n,p", [q for q in PARAMS if q[0] > 0])
def test_variant_a_exposes_keys(c, k, n, p):
    gen = build_generator(MdsParams(c, k, n, p), "A", seed=1)
    rng = np.random.default_rng(0)
    for _ in range(5):
        u = rng.integers(0, p, k - c).tolist()
        z = rng.integers(0, p, c).tolist()
        assert mds_encode(gen, u, z).values()[:c] == z


def test_fixture_values():
    gen = generator_from_matrix(TABLE1_LEVEL2, c=0, p=5, variant="A")
    assert mds_encode(gen, [1, 1]).values()[0] == 2
    gen = generator_from_matrix(FIG2_LEVEL2, c=1, p=3)
    m, z = 2, 1
    assert mds_encode(gen, [m], [z]).values() == [(m + z) % 3, (m + 2 * z) % 3, z]
    gen = generator_from_matrix(TABLE1_LEVEL3, c=1, p=5, variant="A")
    assert verify_full_rank_condition(gen).passed
    assert mds_encode(gen, [0, 0], [0]).values() == [0, 0, 0]


def test_example3_any_three_symbols_recover_everything():
    gen = generator_from_matrix(EX1_LEVEL3, c=2, p=11, variant="B")
    x = [4, 7, 9]  # (M_3, M_4, Z_2)
    y = mds_encode(gen, x[:1], x[1:]).values()
    assert y == [(x[0] * a + x[1] * b + x[2] * c) % 11 for a, b, c in zip(*EX1_LEVEL3)]
    for pos in itertools.combinations(range(1, 5), 3):
        u, z = mds_decode(gen, pos, [y[i - 1] for i in pos])
        assert [v.value for v in u + z] == x


@given(st.sampled_from(PARAMS), st.sampled_from("AB"), st.integers(0, 2**32), st.data())
def test_round_trip(params, variant, seed, data):
    c, k, n, p = params
    if variant == "A" and c == 0:
        variant = "B"
    gen = build_generator(MdsParams(c, k, n, p), variant, seed=seed % 5)
    u = data.draw(st.lists(st.integers(0, p - 1), min_size=k - c, max_size=k - c))
    z = data.draw(st.lists(st.integers(0, p - 1), min_size=c, max_size=c))
    y = mds_encode(gen, u, z).values()
    pos = sorted(data.draw(st.permutations(range(1, n + 1)))[:k])
    got_u, got_z = mds_decode(gen, pos, [y[i - 1] for i in pos])
    assert [v.value for v in got_u] == u and [v.value for v in got_z] == z


def test_encode_decode_errors():
    gen = build_generator(MdsParams(1, 2, 3, 5))
    with pytest.raises(LengthMismatch):
        mds_encode(gen, [1, 2], [3])
    with pytest.raises(LengthMismatch):
        mds_encode(gen, [FieldElement(1, 7)], [1])
    with pytest.raises(ValueError):
        mds_decode(gen, [1], [0])
    singular = generator_from_matrix([[1, 1, 2], [3, 3, 1]], c=0, p=5, variant="B")
    with pytest.raises(SingularMatrix):
        mds_decode(singular, [1, 2], [0, 0])


def test_linearity_zero():
    gen = build_generator(MdsParams(2, 3, 4, 11), "B")
    assert mds_encode(gen, [0], [0, 0]).values() == [0, 0, 0, 0]


def test_json_round_trip():
    for variant in "AB":
        gen = build_generator(MdsParams(1, 3, 4, 7), variant, seed=2)
        doc = generator_to_json(gen)
        assert set(doc) == {"p", "c", "k", "n", "variant", "matrix"}
        back = generator_from_json(doc)
        assert back.matrix == gen.matrix and back.variant == variant
