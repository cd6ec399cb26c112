import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smdc import fixtures
from smdc.codec import (
    CodeSpec,
    ShareSet,
    build_code,
    build_group_pairwise,
    build_pairwise_a,
    build_pairwise_b,
    build_superposition,
    decode,
    encode,
    encode_many,
    random_key,
)
from smdc.errors import (
    ConditionNotMet,
    InsufficientShares,
    InvalidSpec,
    LengthMismatch,
    NonIntegralLayout,
    NotPrime,
    ProfileNotDS,
)
from smdc.field import rank_mod


def all_access_sets(L):
    for size in range(1, L + 1):
        yield from itertools.combinations(range(1, L + 1), size)


def random_round_trip(code, rng, trials=3):
    for _ in range(trials):
        msgs = [rng.integers(0, code.p, len(ix)).tolist() for ix in code.message_index]
        shares = encode(code, msgs, random_key(code, rng))
        for U in all_access_sets(code.L):
            assert decode(code, U, shares) == msgs[: len(U)]


# --- specs -------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        CodeSpec(3, 5, (1, 1), (0, 0, 0))
    with pytest.raises(InvalidSpec):
        CodeSpec(3, 5, (1, 1, 1), (0, 2, 0))
    with pytest.raises(InvalidSpec):
        CodeSpec(3, 5, (1, -1, 1), (0, 0, 0))
    with pytest.raises(NotPrime):
        CodeSpec(3, 6, (1, 1, 1), (0, 0, 0))
    spec = CodeSpec(4, 11, (1, 1, 1, 4), (0, 1, 2, 0))
    assert spec.m_hat == tuple(Fraction(v, 7) for v in (1, 1, 1, 4))
    assert CodeSpec.from_json(spec.to_json()) == spec
    assert spec.scaled(2).m == (2, 2, 2, 8)


# --- worked examples ---------------------------------------------------


def test_fig2_shares():
    code = fixtures.fig2_superposition()
    assert code.labels(3) == ["M1.1", "K1", "K2 + K3"]
    assert code.labels(1)[1] == "M2.1 + K1"
    assert code.labels(2)[1] == "M2.1 + 2*K1"
    assert code.total_symbols == 9 and sum(code.message_sizes) == 3


def test_table1_separate_and_joint():
    sep, joint = fixtures.table1_separate(), fixtures.table1_joint()
    assert [int(v) for v in sep.rates] == [3, 3, 3]
    assert [int(v) for v in joint.rates] == [2, 3, 3]
    assert sep.total_symbols - joint.total_symbols == 1
    assert joint.labels(1) == ["M1.1", "M2.1 + M2.2"]
    assert joint.labels(2)[2] == "M2.1 + M2.2 + M3.1 + 2*M3.2"
    assert joint.labels(3)[2] == "M2.1 + M2.2 + 2*M3.1 + M3.2"
    assert sep.labels(1)[2] == "K1"
    assert joint.key_index == ()
    # unit messages give the published joint-code values mod 5
    shares = encode(joint, [[1], [1, 1], [1, 1]])
    assert shares.shares == ((1, 2), (1, 3, 0), (1, 3, 0))


def test_example3_codeword():
    joint = fixtures.example3_joint()
    assert [joint.labels(l)[0] for l in range(1, 5)] == [
        "M3.1 + 2*M4.1 + 9*K1",
        "9*M3.1 + 8*M4.1 + 6*K1",
        "6*M3.1 + 10*M4.1 + 7*K1",
        "7*M3.1 + 9*M4.1 + 7*K1",
    ]
    sep = fixtures.example3_separate()
    assert joint.total_symbols == sep.total_symbols == 4
    assert len(sep.key_index) - len(joint.key_index) == 1
    # the joint code carries one extra message symbol at the same total rate
    assert sum(joint.message_sizes) - sum(sep.message_sizes) == 1


def test_example1_group_pairwise_code():
    code = fixtures.example1_group_pairwise()
    assert code.blocklength == 1
    assert [int(v) for v in code.rates] == [3, 3, 3, 4]
    assert code.total_symbols == 13 and sum(code.message_sizes) == 7
    assert code.key_index == ()
    assert code.labels(1) == ["M1.1", "M2.1 + M4.1", "M3.1 + 2*M4.2 + 9*M4.3"]
    assert code.labels(4)[-1] == "M4.4"
    assert code.normalized_rates.total == Fraction(13, 7)
    shares = encode(code, [[1], [1], [1], [1, 1, 1, 1]])
    assert shares[1] == (1, 2, 1)
    # any three encoders recover M_1..M_3 and the borrowed M_4^1..M_4^3
    borrowed = code.message_rows([4])[:3]
    for U in itertools.combinations(range(1, 5), 3):
        rows = code.rows_for(U)
        assert rank_mod(np.vstack([rows, borrowed]), code.p) == rank_mod(rows, code.p)


def test_example1_naive_uses_more_symbols():
    assert fixtures.example1_naive().total_symbols > fixtures.example1_group_pairwise().total_symbols


# --- constructions -----------------------------------------------------


def test_superposition_degenerate_cases():
    code = build_superposition(CodeSpec(3, 5, (0, 2, 0), (0, 1, 0)))
    assert [int(v) for v in code.rates] == [2, 2, 2]
    plain = build_superposition(CodeSpec(3, 7, (1, 2, 3), (0, 0, 0)))
    assert plain.key_index == ()
    random_round_trip(plain, np.random.default_rng(0))


def test_pairwise_conditions():
    with pytest.raises(ConditionNotMet):
        build_pairwise_a(CodeSpec(3, 7, (1, 1, 1), (0, 1, 1)), 2, 3)
    with pytest.raises(ConditionNotMet):
        build_pairwise_b(CodeSpec(3, 7, (1, 1, 1), (0, 0, 0)), 2, 3)
    with pytest.raises(ConditionNotMet):
        build_code(CodeSpec(3, 7, (1, 1, 1), (0, 0, 1)), "pairwise-a")
    with pytest.raises(ProfileNotDS):
        build_group_pairwise(CodeSpec(3, 7, (1, 1, 1), (0, 0, 1)), r=2)


def test_non_integral_blocklength():
    spec = CodeSpec(3, 7, (1, 1, 1), (0, 0, 1))
    assert build_superposition(spec).blocklength == 2
    with pytest.raises(NonIntegralLayout):
        build_superposition(spec, blocklength=1)
    assert build_superposition(spec, blocklength=4).message_sizes == (4, 4, 4)


def test_group_pairwise_r_equals_L():
    code = build_group_pairwise(CodeSpec(3, 7, (1, 1, 1), (0, 1, 2)), r=3)
    assert code.params["eta_star"] == 4
    assert [v for v in code.normalized_rates] == [Fraction(1)] * 3


def test_group_pairwise_auxiliary_key():
    code = build_group_pairwise(CodeSpec(4, 11, (1, 1, 1, 0), (0, 1, 2, 0)), r=3)
    assert code.params["aux_key"] == len(code.key_index) == 3
    assert [v for v in code.normalized_rates] == [Fraction(1)] * 4


def test_group_pairwise_r1_is_classical():
    code = build_group_pairwise(CodeSpec(3, 7, (1, 1, 1), (0, 0, 0)), r=1)
    assert code.key_index == ()
    assert code.normalized_rates.total == Fraction(11, 6)


def test_decode_errors():
    code = fixtures.table1_joint()
    shares = encode(code, [[1], [2, 3], [4, 0]])
    with pytest.raises(InsufficientShares):
        decode(code, [1, 2], {1: shares[1]})
    with pytest.raises(LengthMismatch):
        decode(code, [1], {1: (1,)})
    with pytest.raises(LengthMismatch):
        encode(code, [[1], [2], [4, 0]])
    with pytest.raises(ValueError):
        code.decoder([])


def test_encode_many_matches_encode():
    code = fixtures.example3_joint()
    free = np.array(list(itertools.product(range(11), repeat=code.num_free))[::37])
    flat = encode_many(code, free)
    for row, out in zip(free, flat):
        msgs = [[int(row[i]) for i in ix] for ix in code.message_index]
        shares = encode(code, msgs, [int(row[i]) for i in code.key_index])
        assert sum(shares.shares, ()) == tuple(int(v) for v in out)


def test_zero_input_gives_zero_shares():
    code = fixtures.example1_group_pairwise()
    zero = encode(code, [[0] * n for n in code.message_sizes])
    assert all(v == 0 for s in zero.shares for v in s)


SPECS = [
    ("superposition", CodeSpec(3, 7, (1, 2, 2), (0, 1, 2)), {}),
    ("pairwise-a", CodeSpec(3, 7, (1, 2, 2), (0, 0, 1)), {"alpha": 2, "beta": 3}),
    ("pairwise-b", CodeSpec(3, 5, (1, 1, 1), (0, 1, 0)), {"alpha": 2, "beta": 3}),
    ("pairwise-b", CodeSpec(3, 5, (1, 1, 1), (0, 1, 1)), {"alpha": 2, "beta": 3}),
    ("group-pairwise", CodeSpec(4, 11, (1, 1, 1, 4), (0, 1, 2, 0)), {"r": 3}),
    ("group-pairwise", CodeSpec(4, 11, (2, 1, 3, 1), (0, 1, 0, 0)), {"r": 2}),
]


@pytest.mark.parametrize("scheme,spec,kw", SPECS)
def test_round_trip_all_access_sets(scheme, spec, kw):
    code = build_code(spec, scheme, seed=1, **kw)
    random_round_trip(code, np.random.default_rng(2))


@given(st.integers(0, 2**20), st.data())
def test_round_trip_property(seed, data):
    scheme, spec, kw = data.draw(st.sampled_from(SPECS))
    code = build_code(spec, scheme, seed=seed, **kw)
    rng = np.random.default_rng(seed)
    msgs = [rng.integers(0, code.p, len(ix)).tolist() for ix in code.message_index]
    shares = encode(code, msgs, random_key(code, rng))
    U = data.draw(st.sets(st.integers(1, code.L), min_size=1))
    assert decode(code, U, shares) == msgs[: len(U)]
    assert decode(code, U, shares.subset(U)) == msgs[: len(U)]


def test_construction_is_deterministic():
    for scheme, spec, kw in SPECS:
        a = build_code(spec, scheme, seed=5, **kw)
        b = build_code(spec, scheme, seed=5, **kw)
        assert all(np.array_equal(x, y) for x, y in zip(a.share_rows, b.share_rows))


def test_shareset_is_immutable():
    s = ShareSet(((1, 2), (3,)), 5)
    with pytest.raises(Exception):
        s.p = 7
    assert s[2] == (3,)
