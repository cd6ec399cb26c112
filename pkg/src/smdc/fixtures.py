"""Worked-example codes with their literal coefficient matrices.

Each generator matrix has one row per input symbol (message symbols first,
then keys) and one column per encoder.
"""
from __future__ import annotations

import dataclasses

from .codec import CodeSpec, SmdcCode, build_group_pairwise, build_pairwise_a, build_pairwise_b, build_superposition
from .mds import generator_from_matrix

# p = 5, L = 3: level 2 with no keys, level 3 with one key shown in clear at encoder 1
TABLE1_LEVEL2 = [[1, 2, 1], [1, 1, 2]]
TABLE1_LEVEL3 = [[0, 1, 2], [0, 2, 1], [1, 1, 1]]

# p = 3, L = 3: one key for level 2, two keys for level 3
FIG2_LEVEL2 = [[1, 1, 0], [1, 2, 1]]
FIG2_LEVEL3 = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]

# p = 11, L = 4
EX1_LEVEL2 = [[1, 1, 1, 1], [1, 2, 3, 4]]
EX1_LEVEL3 = [[1, 9, 6, 7], [2, 8, 10, 9], [9, 6, 7, 7]]


def table1_spec() -> CodeSpec:
    return CodeSpec(L=3, p=5, m=(1, 2, 2), N=(0, 0, 1))


def _table1_generators():
    return {
        2: generator_from_matrix(TABLE1_LEVEL2, c=0, p=5, variant="A"),
        3: generator_from_matrix(TABLE1_LEVEL3, c=1, p=5, variant="A"),
    }


def table1_separate() -> SmdcCode:
    """Levels 2 and 3 coded separately; Z appears alone at encoder 1."""
    return build_superposition(table1_spec(), generators=_table1_generators())


def table1_joint() -> SmdcCode:
    """Level 3's key replaced by the first coded symbol of level 2."""
    return build_pairwise_a(table1_spec(), 2, 3, generators=_table1_generators())


def fig2_spec() -> CodeSpec:
    return CodeSpec(L=3, p=3, m=(1, 1, 1), N=(0, 1, 2))


def fig2_superposition() -> SmdcCode:
    gens = {
        2: generator_from_matrix(FIG2_LEVEL2, c=1, p=3),
        3: generator_from_matrix(FIG2_LEVEL3, c=2, p=3),
    }
    return build_superposition(fig2_spec(), generators=gens)


def example1_spec() -> CodeSpec:
    return CodeSpec(L=4, p=11, m=(1, 1, 1, 4), N=(0, 1, 2, 0))


def _example1_generators():
    return {
        2: generator_from_matrix(EX1_LEVEL2, c=1, p=11, variant="B"),
        3: generator_from_matrix(EX1_LEVEL3, c=2, p=11, variant="B"),
    }


def example1_naive(seed: int = 0) -> SmdcCode:
    """Levels coded separately with fresh keys; M_4 by a generated (0, 4, 4) code."""
    return build_superposition(example1_spec(), seed=seed, generators=_example1_generators())


def example1_group_pairwise() -> SmdcCode:
    """M_4^1..M_4^3 serve as the keys of levels 2 and 3; M_4^4 goes to encoder 4."""
    return build_group_pairwise(example1_spec(), r=3, generators=_example1_generators())


def example3_spec() -> CodeSpec:
    return CodeSpec(L=4, p=11, m=(0, 0, 1, 1), N=(0, 0, 2, 1))


def _example3_generators():
    return {3: generator_from_matrix(EX1_LEVEL3, c=2, p=11, variant="B")}


def example3_separate() -> SmdcCode:
    """M_3 alone with two fresh keys."""
    spec = CodeSpec(L=4, p=11, m=(0, 0, 1, 0), N=(0, 0, 2, 1))
    return build_superposition(spec, generators=_example3_generators())


def example3_joint() -> SmdcCode:
    """M_4 takes the place of the first key of M_3."""
    return build_pairwise_b(example3_spec(), 3, 4, generators=_example3_generators())


def without_key(code: SmdcCode, key: int = 1) -> SmdcCode:
    """Copy of ``code`` with key symbol K<key> forced to zero in every share."""
    col = code.key_index[key - 1]
    rows = []
    for r in code.share_rows:
        r = r.copy()
        r[:, col] = 0
        r.setflags(write=False)
        rows.append(r)
    return dataclasses.replace(code, share_rows=tuple(rows), _decoders={},
                               params={**code.params, "removed_key": key})


def fig2_broken() -> SmdcCode:
    """The level-2 key of the superposition code removed, so M_2 leaks to single encoders."""
    return without_key(fig2_superposition(), 1)


FIXTURES = {
    "table1-separate": table1_separate,
    "table1-joint": table1_joint,
    "fig2": fig2_superposition,
    "fig2-broken": fig2_broken,
    "example1-naive": example1_naive,
    "example1": example1_group_pairwise,
    "example3-separate": example3_separate,
    "example3": example3_joint,
}
