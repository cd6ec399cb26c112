"""Two-phase tableau simplex over exact rationals.

Small dense problems only (tens of rows and columns).  Bland's rule is
used throughout, so the method terminates on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T: list, row: int, col: int) -> None:
    pr = T[row]
    inv = ONE / pr[col]
    if inv != 1:
        T[row] = pr = [v * inv if v else v for v in pr]
    nz = [j for j, v in enumerate(pr) if v]
    for i, r in enumerate(T):
        if i == row:
            continue
        f = r[col]
        if f:
            for j in nz:
                r[j] -= f * pr[j]


def _run(T: list, basis: list, obj: list, allowed: list) -> str:
    """Maximize with reduced-cost row ``obj`` (last entry = -value)."""
    rhs = len(T[0]) - 1 if T else len(obj) - 1
    while True:
        col = next((j for j in allowed if obj[j] > 0), None)
        if col is None:
            return "optimal"
        best = None
        for i, r in enumerate(T):
            a = r[col]
            if a > 0:
                ratio = r[rhs] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        i = best[1]
        _pivot(T, i, col)
        f = obj[col]
        pr = T[i]
        for j, v in enumerate(pr):
            if v:
                obj[j] -= f * v
        basis[i] = col


def linprog_exact(c: Sequence, A_ub=(), b_ub=(), A_ge=(), b_ge=(), A_eq=(), b_eq=(), maximize: bool = True) -> LPResult:
    """Optimize c.x subject to A_ub x <= b_ub, A_ge x >= b_ge, A_eq x = b_eq, x >= 0."""
    n = len(c)
    cons = []
    for A, b, sense in ((A_ub, b_ub, "<="), (A_ge, b_ge, ">="), (A_eq, b_eq, "=")):
        if len(A) != len(b):
            raise ValueError("constraint matrix and right-hand side lengths differ")
        for row, rhs in zip(A, b):
            if len(row) != n:
                raise ValueError("constraint row has the wrong width")
            row = [Fraction(v) for v in row]
            rhs = Fraction(rhs)
            s = sense
            if rhs < 0:
                row = [-v for v in row]
                rhs = -rhs
                s = {"<=": ">=", ">=": "<=", "=": "="}[s]
            cons.append((row, s, rhs))

    m = len(cons)
    n_slack = sum(1 for _, s, _ in cons if s != "=")
    n_art = sum(1 for _, s, _ in cons if s != "<=")
    width = n + n_slack + n_art
    T, basis = [], []
    si, ai = n, n + n_slack
    art_cols = []
    for row, s, rhs in cons:
        r = row + [ZERO] * (n_slack + n_art) + [rhs]
        if s == "<=":
            r[si] = ONE
            basis.append(si)
            si += 1
        else:
            if s == ">=":
                r[si] = -ONE
                si += 1
            r[ai] = ONE
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        T.append(r)

    sign = ONE if maximize else -ONE
    cost = [sign * Fraction(v) for v in c] + [ZERO] * (n_slack + n_art)

    if art_cols:
        # phase 1: maximize -(sum of artificials)
        obj = [ZERO] * (width + 1)
        for j in art_cols:
            obj[j] = -ONE
        for i, b in enumerate(basis):
            if b in art_cols:
                obj = [o + v for o, v in zip(obj, T[i])]
        status = _run(T, basis, obj, list(range(width)))
        if obj[width] != 0:
            return LPResult("infeasible")
        art = set(art_cols)
        # drive zero-valued artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(T):
            if basis[i] in art:
                col = next((j for j in range(n + n_slack) if T[i][j]), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, i, col)
                basis[i] = col
            i += 1
        allowed = list(range(n + n_slack))
    else:
        allowed = list(range(width))

    obj = cost + [ZERO]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            obj = [o - cb * v for o, v in zip(obj, T[i])]
    status = _run(T, basis, obj, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [ZERO] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    value = sum((Fraction(cv) * xv for cv, xv in zip(c, x[:n])), ZERO)
    return LPResult("optimal", x[:n], value)


def feasible(A_ub=(), b_ub=(), A_ge=(), b_ge=(), A_eq=(), b_eq=(), n: int | None = None) -> bool:
    if n is None:
        n = len((list(A_ub) + list(A_ge) + list(A_eq))[0])
    res = linprog_exact([0] * n, A_ub, b_ub, A_ge, b_ge, A_eq, b_eq)
    return res.status == "optimal"
