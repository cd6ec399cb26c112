"""Systematic-key MDS generator matrices (variants A and B) built from Cauchy columns.

A generator has k rows: the first k-c rows multiply message symbols U and
the last c rows multiply key symbols Z.  Variant A places the key unit
columns f_{k-c+1}..f_k first, so the first c coded symbols are the keys
themselves.  Variant B uses only Cauchy columns, so every coded symbol mixes
message and keys.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldTooSmall, FullRankSearchFailed, LengthMismatch, SingularMatrix
from .field import FieldElement, Matrix, check_prime, matmul_mod, rank_mod, solve_mod

VARIANTS = ("A", "B", "fixture")
MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class MdsParams:
    c: int
    k: int
    n: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        if not 0 <= self.c < self.k <= self.n:
            raise ValueError(f"need 0 <= c < k <= n, got c={self.c}, k={self.k}, n={self.n}")

    @property
    def message_len(self) -> int:
        return self.k - self.c


@dataclass(frozen=True)
class MdsGenerator:
    params: MdsParams
    variant: str
    matrix: Matrix
    unit_cols: Matrix
    cauchy_cols: Matrix
    seed: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if (self.matrix.rows, self.matrix.cols) != (self.params.k, self.params.n):
            raise ValueError("generator matrix must be k x n")

    def array(self) -> np.ndarray:
        return self.matrix.to_array()


@dataclass(frozen=True)
class MdsCodeword:
    symbols: tuple

    def values(self) -> list[int]:
        return [s.value for s in self.symbols]


@dataclass
class FullRankReport:
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _unit(k: int, i: int) -> np.ndarray:
    e = np.zeros(k, dtype=np.int64)
    e[i] = 1
    return e


def cauchy_matrix(xs, ys, p: int) -> np.ndarray:
    """g_j[i] = 1 / (x_i - y_j) mod p."""
    out = np.empty((len(xs), len(ys)), dtype=np.int64)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            out[i, j] = pow((x - y) % p, -1, p)
    return out


def _full_rank_failures(cauchy: np.ndarray, k: int, p: int) -> tuple[int, list]:
    cols = [(f"f{i + 1}", _unit(k, i)) for i in range(k)]
    cols += [(f"g{j + 1}", cauchy[:, j]) for j in range(cauchy.shape[1])]
    failures = []
    checked = 0
    for subset in itertools.combinations(cols, k):
        checked += 1
        sub = np.stack([v for _, v in subset], axis=1)
        if rank_mod(sub, p) < k:
            failures.append(tuple(name for name, _ in subset))
    return checked, failures


def gen_cauchy_columns(params: MdsParams, seed: int = 0) -> Matrix:
    """n Cauchy columns of length k that satisfy the full-rank condition jointly with f_1..f_k."""
    k, n, p = params.k, params.n, params.p
    if p < n + k:
        raise FieldTooSmall(f"need p >= n + k = {n + k}, got p = {p}")
    for attempt in range(MAX_ATTEMPTS):
        rng = np.random.default_rng([int(seed) & (2**64 - 1), attempt])
        points = rng.choice(p, size=k + n, replace=False).tolist()
        cauchy = cauchy_matrix(points[:k], points[k:], p)
        _, failures = _full_rank_failures(cauchy, k, p)
        if not failures:
            return Matrix.from_array(cauchy, p)
    raise FullRankSearchFailed(f"no valid Cauchy columns after {MAX_ATTEMPTS} attempts")


def assemble_matrix(params: MdsParams, variant: str, cauchy: np.ndarray) -> np.ndarray:
    k, c, n = params.k, params.c, params.n
    if variant == "A":
        keys = [_unit(k, i) for i in range(k - c, k)]
        cols = keys + [cauchy[:, j] for j in range(n - c)]
        return np.stack(cols, axis=1) if cols else np.zeros((k, 0), dtype=np.int64)
    if variant == "B":
        return cauchy[:, :n].copy()
    raise ValueError(f"cannot assemble variant {variant!r}")


def build_generator(params: MdsParams, variant: str = "B", seed: int = 0) -> MdsGenerator:
    cauchy = gen_cauchy_columns(params, seed).to_array()
    p = params.p
    return MdsGenerator(
        params=params,
        variant=variant,
        matrix=Matrix.from_array(assemble_matrix(params, variant, cauchy), p),
        unit_cols=Matrix.identity(params.k, p),
        cauchy_cols=Matrix.from_array(cauchy, p),
        seed=seed,
    )


def generator_from_matrix(matrix, c: int, p: int, variant: str = "fixture") -> MdsGenerator:
    """Wrap a literal k x n matrix (rows: message symbols, then key symbols)."""
    arr = np.asarray(matrix, dtype=np.int64) % p
    k, n = arr.shape
    params = MdsParams(c=c, k=k, n=n, p=p)
    if variant == "A":
        expected = [_unit(k, i) for i in range(k - c, k)]
        for j, e in enumerate(expected):
            if not np.array_equal(arr[:, j], e):
                raise ValueError("variant A needs f_{k-c+1}..f_k as its first c columns")
        cauchy = arr[:, c:]
    elif variant == "B":
        cauchy = arr
    else:
        units = {tuple(_unit(k, i)) for i in range(k)}
        keep = [j for j in range(n) if tuple(arr[:, j]) not in units]
        cauchy = arr[:, keep]
    return MdsGenerator(
        params=params,
        variant=variant,
        matrix=Matrix.from_array(arr, p),
        unit_cols=Matrix.identity(k, p),
        cauchy_cols=Matrix.from_array(cauchy.reshape(k, -1), p),
    )


def verify_full_rank_condition(gen: MdsGenerator) -> FullRankReport:
    """Check every k-subset of {f_1..f_k, g_1..g_n}; failing subsets are named in the report."""
    checked, failures = _full_rank_failures(gen.cauchy_cols.to_array(), gen.params.k, gen.params.p)
    return FullRankReport(checked=checked, failures=failures)


def _values(xs, p: int, expected: int, what: str) -> np.ndarray:
    xs = list(xs)
    if len(xs) != expected:
        raise LengthMismatch(f"{what}: expected {expected} symbols, got {len(xs)}")
    out = []
    for x in xs:
        if isinstance(x, FieldElement):
            if x.modulus != p:
                raise LengthMismatch(f"{what}: symbol over GF({x.modulus}), code is over GF({p})")
            out.append(x.value)
        else:
            out.append(int(x) % p)
    return np.array(out, dtype=np.int64)


def mds_encode(gen: MdsGenerator, message, keys=()) -> MdsCodeword:
    """Y = [U | Z] G."""
    pr = gen.params
    u = _values(message, pr.p, pr.k - pr.c, "message")
    z = _values(keys, pr.p, pr.c, "keys")
    y = matmul_mod(np.concatenate([u, z])[None, :], gen.array(), pr.p)[0]
    return MdsCodeword(tuple(FieldElement(int(v), pr.p) for v in y))


def mds_decode(gen: MdsGenerator, positions, symbols) -> tuple[list[FieldElement], list[FieldElement]]:
    """Recover (U, Z) from k coded symbols at 1-based ``positions``."""
    pr = gen.params
    positions = [int(i) for i in positions]
    if len(positions) != pr.k or len(set(positions)) != pr.k:
        raise ValueError(f"need {pr.k} distinct positions, got {positions}")
    if any(not 1 <= i <= pr.n for i in positions):
        raise ValueError(f"positions must lie in 1..{pr.n}")
    y = _values(symbols, pr.p, pr.k, "symbols")
    sub = gen.array()[:, [i - 1 for i in positions]]
    try:
        x = solve_mod(sub.T, y, pr.p)
    except SingularMatrix as exc:
        raise SingularMatrix(f"positions {positions} do not determine the input: {exc}") from None
    vals = [FieldElement(int(v), pr.p) for v in x]
    return vals[: pr.k - pr.c], vals[pr.k - pr.c :]


def generator_to_json(gen: MdsGenerator) -> dict:
    pr = gen.params
    return {"p": pr.p, "c": pr.c, "k": pr.k, "n": pr.n, "variant": gen.variant, "matrix": gen.matrix.to_lists()}


def generator_from_json(doc: dict) -> MdsGenerator:
    gen = generator_from_matrix(doc["matrix"], c=int(doc["c"]), p=int(doc["p"]), variant=doc.get("variant", "fixture"))
    if (gen.params.k, gen.params.n) != (int(doc["k"]), int(doc["n"])):
        raise ValueError("matrix shape disagrees with k, n")
    return gen
