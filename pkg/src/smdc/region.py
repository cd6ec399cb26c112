"""Exact rate-region computations.

Everything here works on ``fractions.Fraction``.  Levels are 1-based in the
public API (``m_hat[alpha - 1]`` is the normalized size of message alpha).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lp import linprog_exact


@dataclass(frozen=True)
class RateTuple:
    values: tuple
    normalized: bool = True

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("rates must be nonnegative")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def normalize(self, message_symbols: int) -> "RateTuple":
        if self.normalized:
            return self
        return RateTuple(tuple(v / message_symbols for v in self.values), normalized=True)

    def as_strings(self) -> list[str]:
        return [str(v) for v in self.values]


@dataclass(frozen=True)
class Resolution:
    """Weights c(v) on weight-alpha 0/1 vectors with sum_v c(v) v <= lambda."""

    alpha: int
    entries: tuple  # ((v, c), ...) with c > 0

    @property
    def total(self) -> Fraction:
        return sum((c for _, c in self.entries), Fraction(0))

    def load(self, L: int) -> tuple:
        out = [Fraction(0)] * L
        for v, c in self.entries:
            for i, bit in enumerate(v):
                if bit:
                    out[i] += c
        return tuple(out)


@dataclass(frozen=True)
class OptimalityWitness:
    verdict: str  # "Optimal" or "Suboptimal"
    pair: tuple | None = None
    condition: str | None = None  # "Condition1" or "Condition2"
    threshold: int | None = None  # T_s

    @property
    def optimal(self) -> bool:
        return self.verdict == "Optimal"


def _fracs(xs) -> list:
    return [Fraction(x) for x in xs]


def _check_lambda(lam) -> list:
    lam = _fracs(lam)
    if any(v < 0 for v in lam):
        raise ValueError("lambda must be nonnegative")
    if not any(lam):
        raise ValueError("lambda must not be the zero vector")
    return lam


# ---------------------------------------------------------------------------
# alpha-resolutions


def f_alpha_with_argmin(alpha: int, lam) -> tuple:
    """(f_alpha(lambda), smallest minimizing beta) for the closed form over sorted lambda."""
    lam = _check_lambda(lam)
    if not 1 <= alpha <= len(lam):
        raise ValueError(f"alpha must lie in 1..{len(lam)}")
    desc = sorted(lam, reverse=True)
    tail = sum(desc, Fraction(0))
    best = None
    for beta in range(alpha):
        val = tail / (alpha - beta)
        if best is None or val < best[0]:
            best = (val, beta)
        tail -= desc[beta]
    return best


def f_alpha(alpha: int, lam) -> Fraction:
    """Largest total weight of an alpha-resolution of lambda (closed form)."""
    return f_alpha_with_argmin(alpha, lam)[0]


def f_alpha_lp(alpha: int, lam) -> tuple:
    """Solve the alpha-resolution LP exactly; returns (value, Resolution)."""
    lam = _check_lambda(lam)
    L = len(lam)
    if not 1 <= alpha <= L:
        raise ValueError(f"alpha must lie in 1..{L}")
    vectors = []
    for support in itertools.combinations(range(L), alpha):
        v = [0] * L
        for i in support:
            v[i] = 1
        vectors.append(tuple(v))
    A = [[v[i] for v in vectors] for i in range(L)]
    res = linprog_exact([1] * len(vectors), A_ub=A, b_ub=lam)
    if res.status != "optimal":
        raise ArithmeticError(f"resolution LP ended as {res.status}")
    entries = tuple((v, c) for v, c in zip(vectors, res.x) if c)
    return res.value, Resolution(alpha, entries)


# ---------------------------------------------------------------------------
# superposition


def sup_sum_rate(m_hat, N) -> Fraction:
    L = len(m_hat)
    return sum((Fraction(L) * Fraction(m) / (alpha - n) for alpha, (m, n) in enumerate(zip(m_hat, N), start=1)),
               Fraction(0))


def check_superposition_optimal(m, N) -> OptimalityWitness:
    """Is superposition sum-rate optimal for this profile?

    Optimal iff for every alpha < beta with m_alpha, m_beta > 0 either
    N_alpha < alpha <= N_beta < beta or N_alpha = N_beta = 0.  The first
    violating pair (lexicographic) is reported with the condition it meets.
    """
    L = len(m)
    for alpha in range(1, L + 1):
        for beta in range(alpha + 1, L + 1):
            if not (m[alpha - 1] > 0 and m[beta - 1] > 0):
                continue
            na, nb = N[alpha - 1], N[beta - 1]
            if na < alpha <= nb < beta or na == nb == 0:
                continue
            cond = "Condition1" if na < nb < alpha else "Condition2"
            return OptimalityWitness("Suboptimal", (alpha, beta), cond)
    threshold = None
    if all(x > 0 for x in m):
        threshold = max(alpha for alpha in range(1, L + 1) if N[alpha - 1] == 0)
    return OptimalityWitness("Optimal", threshold=threshold)


def _subsets(L: int, k: int):
    return itertools.combinations(range(L), k)


def layered_feasible(R, demands: dict) -> bool:
    """Is there r^k >= 0 with sum_k r^k <= R and every k-subset sum of r^k >= demands[k]?

    Threshold-1 demands are subtracted directly; the rest is an exact LP.
    """
    R = _fracs(R)
    L = len(R)
    demands = {k: Fraction(d) for k, d in demands.items() if d}
    if 1 in demands:
        d1 = demands.pop(1)
        R = [x - d1 for x in R]
        if any(x < 0 for x in R):
            return False
    if not demands:
        return True
    ks = sorted(demands)
    nvar = L * len(ks)
    A_ub, b_ub, A_ge, b_ge = [], [], [], []
    for l in range(L):
        row = [0] * nvar
        for t in range(len(ks)):
            row[t * L + l] = 1
        A_ub.append(row)
        b_ub.append(R[l])
    for t, k in enumerate(ks):
        for B in _subsets(L, k):
            row = [0] * nvar
            for l in B:
                row[t * L + l] = 1
            A_ge.append(row)
            b_ge.append(demands[k])
    return linprog_exact([0] * nvar, A_ub=A_ub, b_ub=b_ub, A_ge=A_ge, b_ge=b_ge).status == "optimal"


def sup_region_contains(R, m_hat, N) -> bool:
    """Membership in the superposition region (exact LP)."""
    R = list(R)
    if len(R) != len(m_hat):
        raise ValueError("rate tuple length must equal L")
    demands: dict = {}
    for alpha, (m, n) in enumerate(zip(m_hat, N), start=1):
        k = alpha - n
        demands[k] = demands.get(k, Fraction(0)) + Fraction(m)
    return layered_feasible(R, demands)


# ---------------------------------------------------------------------------
# differential-constant profiles


def compute_eta_star(L: int, r: int, m) -> tuple:
    """(eta*, m_{L+1}): the donor cutoff and the auxiliary key size.

    eta* is the smallest eta in r+1..L+1 whose donor prefix
    m_{r+1} + ... + m_eta covers the key demand sum_{a<=r} (a-1) m_a, with
    the auxiliary message m_{L+1} = [demand - sum_{a>r} m_a]^+ appended.
    """
    if not 1 <= r <= L:
        raise ValueError(f"r must lie in 1..{L}")
    m = list(m)
    if len(m) != L or any(x < 0 for x in m):
        raise ValueError("m must be a nonnegative vector of length L")
    demand = sum((alpha - 1) * m[alpha - 1] for alpha in range(1, r + 1))
    donors = sum(m[r:])
    aux = demand - donors if demand > donors else demand * 0
    ext = m + [aux]
    acc = demand * 0
    for eta in range(r + 1, L + 2):
        acc += ext[eta - 1]
        if demand <= acc:
            return eta, aux
    raise AssertionError("unreachable: the auxiliary message closes the gap")


def key_demand(r: int, m) -> Fraction:
    return sum((Fraction(alpha - 1) * Fraction(m[alpha - 1]) for alpha in range(1, r + 1)), Fraction(0))


def pseudo_message_sizes(L: int, r: int, m_hat) -> tuple:
    """m*_alpha for alpha > r (entries for alpha <= r are 0: those levels carry no pseudo-message)."""
    m_hat = _fracs(m_hat)
    eta, _ = compute_eta_star(L, r, m_hat)
    out = [Fraction(0)] * L
    if eta <= L:
        out[eta - 1] = sum(m_hat[r:eta], Fraction(0)) - key_demand(r, m_hat)
        for alpha in range(eta + 1, L + 1):
            out[alpha - 1] = m_hat[alpha - 1]
    return tuple(out)


def g_eta(eta: int, lam, m_hat, r: int) -> Fraction:
    lam = _check_lambda(lam)
    m_hat = _fracs(m_hat)
    L = len(lam)
    if len(m_hat) != L:
        raise ValueError("m_hat must have length L")
    if not r + 1 <= eta <= L + 1:
        raise ValueError(f"eta must lie in {r + 1}..{L + 1}")
    if sum(m_hat) != 1:
        raise ValueError("m_hat must sum to 1")
    f1 = sum(lam, Fraction(0))
    total = f1 * sum(m_hat[:r], Fraction(0))
    for alpha in range(eta + 1, L + 1):
        total += f_alpha(alpha, lam) * m_hat[alpha - 1]
    if eta <= L:
        total += f_alpha(eta, lam) * (sum(m_hat[r:eta], Fraction(0)) - key_demand(r, m_hat))
    return total


def g_star(lam, L: int, r: int, m_hat) -> Fraction:
    eta, _ = compute_eta_star(L, r, _fracs(m_hat))
    return g_eta(eta, lam, m_hat, r)


def ds_sum_rate(L: int, r: int, m_hat) -> Fraction:
    """Minimum sum rate of the (L, r) DS-SMDC problem, i.e. g_{eta*} at the all-ones direction.

    For eta* = L this is sum_{a<=r} (L-a+1) m_a + sum_{a>r} m_a; in general
    each unit of key demand costs L/eta* instead of 1.
    """
    m_hat = _fracs(m_hat)
    eta, _ = compute_eta_star(L, r, m_hat)
    if eta == L + 1:
        return L * sum(m_hat[:r], Fraction(0))
    total = Fraction(0)
    for alpha in range(1, r + 1):
        total += (L - Fraction(L * (alpha - 1), eta)) * m_hat[alpha - 1]
    for alpha in range(r + 1, eta + 1):
        total += Fraction(L, eta) * m_hat[alpha - 1]
    for alpha in range(eta + 1, L + 1):
        total += Fraction(L, alpha) * m_hat[alpha - 1]
    return total


def gp_region_contains(R, L: int, r: int, m_hat) -> bool:
    """Membership in the group pairwise region (exact LP after removing the threshold-1 part)."""
    R = _fracs(R)
    if len(R) != L:
        raise ValueError("rate tuple length must equal L")
    m_hat = _fracs(m_hat)
    demands = {1: sum(m_hat[:r], Fraction(0))}
    for alpha, ms in enumerate(pseudo_message_sizes(L, r, m_hat), start=1):
        if alpha > r and ms:
            demands[alpha] = ms
    return layered_feasible(R, demands)


def lambda_directions(L: int, samples=64, seed: int = 0, denominator: int = 12) -> list:
    """All nonzero 0/1 directions plus ``samples`` random rational ones (or an explicit list)."""
    dirs = [tuple(Fraction(b) for b in bits) for bits in itertools.product((0, 1), repeat=L) if any(bits)]
    if isinstance(samples, int):
        rng = np.random.default_rng(seed)
        while samples > 0:
            v = rng.integers(0, denominator + 1, size=L)
            if v.any():
                dirs.append(tuple(Fraction(int(x), denominator) for x in v))
                samples -= 1
    else:
        dirs.extend(tuple(_fracs(v)) for v in samples)
    return dirs


def star_region_violation(R, L: int, r: int, m_hat, lambda_samples=64, seed: int = 0):
    """First sampled lambda with lambda.R < g_{eta*}(lambda), or None."""
    R = _fracs(R)
    m_hat = _fracs(m_hat)
    eta, _ = compute_eta_star(L, r, m_hat)
    for lam in lambda_directions(L, lambda_samples, seed):
        if sum((a * b for a, b in zip(lam, R)), Fraction(0)) < g_eta(eta, lam, m_hat, r):
            return lam
    return None


def star_region_contains(R, L: int, r: int, m_hat, lambda_samples=64, seed: int = 0) -> bool:
    """Necessary test: lambda.R >= g_{eta*}(lambda) on every sampled direction."""
    return star_region_violation(R, L, r, m_hat, lambda_samples, seed) is None


def supporting_rate_tuple(lam, L: int, r: int, m_hat) -> RateTuple:
    """A group pairwise rate tuple R with lambda.R = g_{eta*}(lambda).

    Levels above r that carry a pseudo-message put nothing on the l largest
    coordinates of lambda (l = minimizing beta of the closed form) and spread
    m*/(alpha - l) over the rest; every alpha-subset then still collects m*.
    """
    lam = _check_lambda(lam)
    if len(lam) != L:
        raise ValueError("lambda must have length L")
    m_hat = _fracs(m_hat)
    order = sorted(range(L), key=lambda i: (-lam[i], i))
    base = sum(m_hat[:r], Fraction(0))
    R = [base] * L
    for alpha, ms in enumerate(pseudo_message_sizes(L, r, m_hat), start=1):
        if alpha <= r or not ms:
            continue
        _, l = f_alpha_with_argmin(alpha, lam)
        share = ms / (alpha - l)
        for i in order[l:]:
            R[i] += share
    return RateTuple(tuple(R), normalized=True)


def sample_boundary(L: int, r: int, m_hat, samples: int = 64, seed: int = 0) -> list:
    """Rows (lambda_1..lambda_L, g_{eta*}(lambda)) over the standard direction set."""
    m_hat = _fracs(m_hat)
    eta, _ = compute_eta_star(L, r, m_hat)
    return [(lam, g_eta(eta, lam, m_hat, r)) for lam in lambda_directions(L, samples, seed)]
