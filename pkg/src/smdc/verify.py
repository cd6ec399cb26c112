"""Exhaustive information-theoretic checks for linear codes.

``enumerate_joint`` lists every realization of the free symbols (messages
and key, uniform and independent) together with the resulting shares.
Reconstruction is decided by functional dependence and security by exact
count factorization, count(u, w) * total == count(u) * count(w), so no
floating point enters a verdict.  Entropies are available both exactly
(rank of the defining linear map, in units of log p) and from the counts.
"""
from __future__ import annotations

import itertools
import math
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .codec import SmdcCode
from .errors import BudgetExceeded
from .field import rank_mod
from .mds import MdsGenerator

DEFAULT_BUDGET = 10**8
_KEY_LIMIT = 2**62
_BINCOUNT_LIMIT = 2**25
_PACK_CACHE = 6


@dataclass
class DistributionTable:
    """All realizations of a set of named variables under the uniform prior.

    Each column of ``data`` is one state (equally likely); each variable is a
    group of rows.  ``counts`` gives the exact integer occurrence counts of
    any selection of variables.
    """

    p: int
    variables: dict  # name -> tuple of row indices into data
    data: np.ndarray  # (symbols, states)
    total: int
    free_rows: tuple = ()
    _packed: OrderedDict = field(default_factory=OrderedDict, repr=False, compare=False)

    def pack(self, rows: Sequence[int]) -> tuple[np.ndarray, int]:
        """pack_rows with a small LRU cache; checks repack the same groups often."""
        k = tuple(rows)
        hit = self._packed.get(k)
        if hit is not None:
            self._packed.move_to_end(k)
            return hit
        key, span = pack_rows(self.data, k, self.p)
        key.setflags(write=False)
        self._packed[k] = (key, span)
        if len(self._packed) > _PACK_CACHE:
            self._packed.popitem(last=False)
        return key, span

    def rows(self, names) -> list[int]:
        if isinstance(names, str):
            names = [names]
        out = []
        for n in names:
            out.extend(self.variables[n])
        return out

    def key(self, names) -> tuple[np.ndarray, int]:
        return self.pack(self.rows(names))

    def counts(self, names) -> tuple[np.ndarray, np.ndarray]:
        k, span = self.key(names)
        return count_keys(k, span)

    def count_map(self, names) -> dict:
        rows = self.rows(names)
        keys, counts = self.counts(names)
        out = {}
        if not rows:
            return {(): self.total}
        # recover one representative column per key to decode the value tuple
        k, _ = self.key(names)
        order = np.argsort(k, kind="stable")
        first = order[np.searchsorted(k[order], keys)]
        for idx, c in zip(first, counts):
            out[tuple(int(v) for v in self.data[rows, idx])] = int(c)
        return out

    def entropy(self, names, given=()) -> float:
        """Count-based H(names | given) in log-p units."""
        joint = _count_entropy(self.counts(list(_names(names)) + list(_names(given)))[1], self.total, self.p)
        if not _names(given):
            return joint
        return joint - _count_entropy(self.counts(list(_names(given)))[1], self.total, self.p)

    def realization(self, state: int) -> list[int]:
        return [int(v) for v in self.data[list(self.free_rows), state]]


def _names(x) -> list:
    if isinstance(x, str):
        return [x]
    return list(x)


def _count_entropy(counts: np.ndarray, total: int, p: int) -> float:
    c = counts.astype(np.float64)
    return float(np.sum(c * (math.log(total) - np.log(c))) / total / math.log(p))


def _dense(key: np.ndarray, span: int | None = None) -> tuple[np.ndarray, int]:
    """Order-preserving relabeling of the key values to 0..n-1."""
    if span is not None and span <= _BINCOUNT_LIMIT and span <= 4 * max(1, key.size):
        present = np.bincount(key, minlength=span) > 0
        lut = np.cumsum(present, dtype=np.int64) - 1
        return lut[key], int(lut[-1]) + 1 if span else 0
    vals, inv = np.unique(key, return_inverse=True)
    return inv.astype(np.int64).ravel(), len(vals)


def _inverse(x: np.ndarray, span: int) -> tuple[np.ndarray, np.ndarray]:
    """np.unique(x, return_inverse=True) via a lookup table when the span is small."""
    if span <= _BINCOUNT_LIMIT:
        present = np.bincount(x, minlength=span) > 0
        lut = np.cumsum(present, dtype=np.int64) - 1
        return np.nonzero(present)[0], lut[x]
    vals, inv = np.unique(x, return_inverse=True)
    return vals, inv.ravel()


def pack_rows(data: np.ndarray, rows: Sequence[int], p: int) -> tuple[np.ndarray, int]:
    """Injective int64 key per state for the selected rows, with its value span."""
    rows = list(rows)
    n = data.shape[1]
    if not rows:
        return np.zeros(n, dtype=np.int64), 1
    # split where the running span would overflow; each piece packs without relabeling
    pieces, cur, span = [], [], 1
    for r in rows:
        if span * p >= _KEY_LIMIT:
            pieces.append((cur, span))
            cur, span = [], 1
        cur.append(r)
        span *= p
    pieces.append((cur, span))
    key, total_span = None, 1
    for cur, span in pieces:
        k = _pack_chunked(data, cur, p)
        if key is None:
            key, total_span = k, span
        else:
            key, total_span = _combine(key, total_span, k, span)
    return key, total_span


def _pack_chunked(data, rows, p):
    n = data.shape[1]
    key = np.empty(n, dtype=np.int64)
    step = 1 << 16
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        k = key[lo:hi]
        k[:] = data[rows[0], lo:hi]
        for r in rows[1:]:
            k *= p
            k += data[r, lo:hi]
    return key


def count_keys(key: np.ndarray, span: int) -> tuple[np.ndarray, np.ndarray]:
    if span <= _BINCOUNT_LIMIT and span <= 4 * max(1, key.size):
        bc = np.bincount(key, minlength=span)
        vals = np.nonzero(bc)[0]
        return vals, bc[vals]
    return np.unique(key, return_counts=True)


def _combine(k1: np.ndarray, s1: int, k2: np.ndarray, s2: int) -> tuple[np.ndarray, int]:
    if s1 * s2 >= _KEY_LIMIT:
        k1, s1 = _dense(k1, s1)
        if s1 * s2 >= _KEY_LIMIT:
            k2, s2 = _dense(k2, s2)
    return k1 * s2 + k2, s1 * s2


def _distinct(key: np.ndarray, span: int) -> int:
    if span <= _BINCOUNT_LIMIT and span <= 4 * max(1, key.size):
        return int(np.count_nonzero(np.bincount(key, minlength=span)))
    return int(np.unique(key).size)


# ---------------------------------------------------------------------------
# enumeration


def _data_dtype(p: int):
    if p <= 256:
        return np.uint8
    if p <= 65536:
        return np.uint16
    return np.int64


def enumerate_linear(p: int, free_names: Sequence[str], outputs: dict, groups: dict | None = None,
                     budget: int = DEFAULT_BUDGET, workers: int = 1) -> DistributionTable:
    """Enumerate all p^F assignments of the free symbols and evaluate linear outputs.

    ``outputs`` maps a variable name to a coefficient matrix over the free
    symbols; ``groups`` names subsets of free symbols (e.g. message levels).
    """
    F = len(free_names)
    total = p**F
    if total > budget:
        raise BudgetExceeded(total, budget)
    out_names = list(outputs)
    out_mats = [np.atleast_2d(np.asarray(outputs[n], dtype=np.int64)) for n in out_names]
    out_mats = [m.reshape(m.shape[0], F) % p for m in out_mats]
    n_out = sum(m.shape[0] for m in out_mats)
    dtype = _data_dtype(p)
    data = np.empty((F + n_out, total), dtype=dtype)
    G = np.vstack(out_mats) if out_mats else np.zeros((0, F), dtype=np.int64)

    def fill(lo: int, hi: int):
        idx = np.arange(lo, hi, dtype=np.int64)
        for i in range(F):
            data[i, lo:hi] = (idx // p ** (F - 1 - i)) % p
        x = data[:F, lo:hi].astype(np.int64)
        for r in range(n_out):
            acc = np.zeros(hi - lo, dtype=np.int64)
            for j in np.nonzero(G[r])[0]:
                acc += G[r, j] * x[j]
            data[F + r, lo:hi] = acc % p

    chunk = max(1, min(total, 1 << 16))
    ranges = [(lo, min(total, lo + chunk)) for lo in range(0, total, chunk)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            list(ex.map(lambda r: fill(*r), ranges))
    else:
        for r in ranges:
            fill(*r)

    variables = {n: (i,) for i, n in enumerate(free_names)}
    for name, rows in (groups or {}).items():
        variables[name] = tuple(rows)
    pos = F
    for name, m in zip(out_names, out_mats):
        variables[name] = tuple(range(pos, pos + m.shape[0]))
        pos += m.shape[0]
    return DistributionTable(p=p, variables=variables, data=data, total=total, free_rows=tuple(range(F)))


def enumerate_joint(code: SmdcCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> DistributionTable:
    """Joint table of messages M1..ML, key K and shares W1..WL."""
    groups = {f"M{lv}": code.message_index[lv - 1] for lv in range(1, code.L + 1)}
    groups["K"] = code.key_index
    outputs = {f"W{l}": code.share_rows[l - 1] for l in range(1, code.L + 1)}
    return enumerate_linear(code.p, code.variables, outputs, groups, budget, workers)


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class ReconstructionFailure:
    access_set: tuple
    missing_level: int
    realizations: tuple  # two free-symbol assignments with equal W_U and different M_level


def functionally_determined(table: DistributionTable, target_rows: Sequence[int], given_rows: Sequence[int]):
    """None if target is a function of given, else a pair of states that witnesses the violation."""
    if not target_rows:
        return None
    kw, sw = table.pack(given_rows)
    kt, st = table.pack(target_rows)
    if sw * st >= _KEY_LIMIT:
        kw, sw = _dense(kw, sw)
        if sw * st >= _KEY_LIMIT:
            kt, st = _dense(kt, st)
    kc, sc = kw * st + kt, sw * st
    if sc <= _BINCOUNT_LIMIT and sc <= 4 * max(1, kc.size):
        vals = np.nonzero(np.bincount(kc, minlength=sc))[0]
    else:
        vals = np.unique(kc)
    n_joint = vals.size
    g = vals // st
    n_given = int(np.count_nonzero(g[1:] != g[:-1])) + 1 if g.size else 0
    if n_joint == n_given:
        return None
    return _collision(kw, kc)


def _collision(kw: np.ndarray, kc: np.ndarray) -> tuple[int, int]:
    order = np.lexsort((kc, kw))
    w, c = kw[order], kc[order]
    hit = np.nonzero((w[1:] == w[:-1]) & (c[1:] != c[:-1]))[0][0]
    return int(order[hit]), int(order[hit + 1])


def check_reconstruction(code: SmdcCode, table: DistributionTable | None = None,
                         budget: int = DEFAULT_BUDGET) -> list[ReconstructionFailure]:
    """Every nonempty access set U must determine M_1..M_|U|; returns the violations."""
    if table is None:
        table = enumerate_joint(code, budget)
    failures = []
    for size in range(1, code.L + 1):
        for U in itertools.combinations(range(1, code.L + 1), size):
            given = table.rows([f"W{l}" for l in U])
            target = table.rows([f"M{lv}" for lv in range(1, size + 1)])
            if functionally_determined(table, target, given) is None:
                continue
            for lv in range(1, size + 1):
                pair = functionally_determined(table, table.rows(f"M{lv}"), given)
                if pair is not None:
                    failures.append(ReconstructionFailure(
                        U, lv, (table.realization(pair[0]), table.realization(pair[1]))))
                    break
    return failures


# ---------------------------------------------------------------------------
# security


@dataclass
class Leak:
    alpha: int
    access_set: tuple
    shares_value: tuple  # the observed W_A
    message_value: tuple  # a value of M_alpha whose joint count breaks factorization
    joint_count: int
    expected_count: Fraction  # count(u) * count(w) / total
    mutual_information: Fraction  # exact, in symbols
    realization: tuple | None  # a free-symbol assignment producing W_A = shares_value


@dataclass
class SecurityVerdict:
    alpha: int
    access_set: tuple
    leak: Leak | None = None

    @property
    def secure(self) -> bool:
        return self.leak is None


@dataclass
class SecurityReport:
    verdicts: list = field(default_factory=list)

    @property
    def secure(self) -> bool:
        return all(v.secure for v in self.verdicts)

    @property
    def leaks(self) -> list:
        return [v.leak for v in self.verdicts if v.leak is not None]


def independence_violation(table: DistributionTable, rows_u: Sequence[int], rows_w: Sequence[int]):
    """None when the two row groups are exactly independent.

    Otherwise returns (u_key, w_key, joint_count, count_u, count_w, state,
    u_state) for one (u, w) pair where count(u, w) * total != count(u) *
    count(w); ``state`` produces that w and ``u_state`` that u.
    """
    if not rows_u or not rows_w:
        return None
    ku, su = table.pack(rows_u)
    kw, sw = table.pack(rows_w)
    # relabel to dense ids when that brings the joint span into bincount range
    if su * sw > _BINCOUNT_LIMIT:
        kw, sw = _dense(kw, sw)
        if su * sw > _BINCOUNT_LIMIT:
            ku, su = _dense(ku, su)
    kj = kw * su + ku
    vals, cnt = count_keys(kj, su * sw)
    u_of, w_of = vals % su, vals // su
    uu, u_inv = _inverse(u_of, su)
    ww, w_inv = _inverse(w_of, sw)
    cu = np.bincount(u_inv, weights=cnt, minlength=len(uu)).astype(np.int64)
    cw = np.bincount(w_inv, weights=cnt, minlength=len(ww)).astype(np.int64)
    total = table.total
    lhs = cnt.astype(object) if total > 2**31 else cnt
    ok = lhs * total == cu[u_inv] * cw[w_inv]
    if len(vals) == len(uu) * len(ww) and bool(np.all(ok)):
        return None
    if not np.all(ok):
        i = int(np.nonzero(~ok)[0][0])
        a, b, joint = int(u_inv[i]), int(w_inv[i]), int(cnt[i])
    else:
        # some (u, w) pair never occurs although both values do
        present = np.zeros((len(uu), len(ww)), dtype=bool)
        present[u_inv, w_inv] = True
        a, b = (int(x[0]) for x in np.nonzero(~present))
        joint = 0
    state = int(np.nonzero(kw == ww[b])[0][0])
    u_state = int(np.nonzero(ku == uu[a])[0][0])
    return int(uu[a]), int(ww[b]), joint, int(cu[a]), int(cw[b]), state, u_state


def check_security(code: SmdcCode, N: Sequence[int] | None = None, table: DistributionTable | None = None,
                   budget: int = DEFAULT_BUDGET, max_size_only: bool = False) -> SecurityReport:
    """Verify that M_alpha is independent of W_A for every |A| <= N_alpha."""
    if N is None:
        N = code.spec.N
    if table is None:
        table = enumerate_joint(code, budget)
    report = SecurityReport()
    for alpha in range(1, code.L + 1):
        if not code.message_index[alpha - 1]:
            continue
        sizes = [N[alpha - 1]] if max_size_only else range(0, N[alpha - 1] + 1)
        for size in sizes:
            for A in itertools.combinations(range(1, code.L + 1), size):
                verdict = SecurityVerdict(alpha, A)
                if A:
                    hit = independence_violation(table, table.rows(f"M{alpha}"), table.rows([f"W{l}" for l in A]))
                    if hit is not None:
                        verdict.leak = _make_leak(code, table, alpha, A, hit)
                report.verdicts.append(verdict)
    return report


def _make_leak(code, table, alpha, A, hit) -> Leak:
    u_key, w_key, joint, cu, cw, state, u_state = hit
    rows_u = table.rows(f"M{alpha}")
    rows_w = table.rows([f"W{l}" for l in A])
    mi = rank_entropy(code, [f"M{alpha}"]) + rank_entropy(code, [f"W{l}" for l in A]) - rank_entropy(
        code, [f"M{alpha}"] + [f"W{l}" for l in A])
    return Leak(
        alpha=alpha,
        access_set=A,
        shares_value=tuple(int(v) for v in table.data[rows_w, state]),
        message_value=tuple(int(v) for v in table.data[rows_u, u_state]),
        joint_count=joint,
        expected_count=Fraction(cu * cw, table.total),
        mutual_information=Fraction(mi),
        realization=tuple(table.realization(state)),
    )


# ---------------------------------------------------------------------------
# exact entropies


def variable_rows(code: SmdcCode, name: str) -> np.ndarray:
    """Coefficient rows (over the free symbols) of a named variable: M<a>, W<l> or K."""
    if name == "K":
        idx = code.key_index
    elif name.startswith("M"):
        idx = code.message_index[int(name[1:]) - 1]
    elif name.startswith("W"):
        return code.share_rows[int(name[1:]) - 1]
    else:
        raise KeyError(name)
    out = np.zeros((len(idx), code.num_free), dtype=np.int64)
    for r, i in enumerate(idx):
        out[r, i] = 1
    return out


def _stack(code: SmdcCode, names) -> np.ndarray:
    mats = [variable_rows(code, n) for n in _names(names)]
    mats = [m for m in mats if m.shape[0]]
    if not mats:
        return np.zeros((0, code.num_free), dtype=np.int64)
    return np.vstack(mats)


def rank_entropy(code: SmdcCode, names, given=()) -> int:
    """Exact H(names | given) in symbols: rank of the joint map minus rank of the conditioning map."""
    joint = rank_mod(_stack(code, list(_names(names)) + list(_names(given))), code.p)
    if not _names(given):
        return joint
    return joint - rank_mod(_stack(code, given), code.p)


def entropy(source, names, given=()):
    """H(names | given) in log-p units: exact for a code, count-based float for a table."""
    if isinstance(source, SmdcCode):
        return Fraction(rank_entropy(source, names, given))
    return source.entropy(names, given)


def mu_alpha(code: SmdcCode, alpha: int) -> Fraction:
    """Averaged slack L/(a-N_a) * mean over disjoint (B1, B2) of H(W_B1 | W_B2, M_1..M_a)."""
    L = code.L
    n = code.spec.N[alpha - 1]
    k = alpha - n
    msgs = [f"M{j}" for j in range(1, alpha + 1)]
    acc = 0
    pairs = 0
    for B2 in itertools.combinations(range(1, L + 1), n):
        rest = [l for l in range(1, L + 1) if l not in B2]
        for B1 in itertools.combinations(rest, k):
            acc += rank_entropy(code, [f"W{l}" for l in B1], [f"W{l}" for l in B2] + msgs)
            pairs += 1
    assert pairs == math.comb(L, n) * math.comb(L - n, k)
    return Fraction(L, k) * Fraction(acc, pairs)


def mu_alpha_bound_terms(code: SmdcCode, alpha: int) -> tuple[Fraction, Fraction]:
    """(sum_l H(W_l), sum_{j<=alpha} L m_j/(j-N_j) + mu_alpha) with m in symbols."""
    lhs = Fraction(sum(rank_entropy(code, f"W{l}") for l in range(1, code.L + 1)))
    sizes = code.message_sizes
    rhs = sum((Fraction(code.L * sizes[j - 1], j - code.spec.N[j - 1]) for j in range(1, alpha + 1)), Fraction(0))
    return lhs, rhs + mu_alpha(code, alpha)


# ---------------------------------------------------------------------------
# MDS lemmas


@dataclass
class LemmaResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class MdsLemmaReport:
    uniformity: LemmaResult
    message_secrecy: LemmaResult  # any c..k outputs vs the matching message symbols (holds for MDS-A)
    key_secrecy: LemmaResult  # outputs vs mixed message and key symbols (holds for MDS-B only)


def mds_table(gen: MdsGenerator, budget: int = DEFAULT_BUDGET) -> DistributionTable:
    pr = gen.params
    names = [f"U{i + 1}" for i in range(pr.k - pr.c)] + [f"Z{i + 1}" for i in range(pr.c)]
    g = gen.array()
    outputs = {f"Y{j + 1}": g[:, j][None, :] for j in range(pr.n)}
    return enumerate_linear(pr.p, names, outputs, budget=budget)


def check_mds_lemmas(gen: MdsGenerator, budget: int = DEFAULT_BUDGET) -> MdsLemmaReport:
    pr = gen.params
    table = mds_table(gen, budget)
    k, c, n = pr.k, pr.c, pr.n
    U = [f"U{i + 1}" for i in range(k - c)]
    Z = [f"Z{i + 1}" for i in range(c)]
    Y = [f"Y{j + 1}" for j in range(n)]

    uniform = LemmaResult("uniformity")
    for E in itertools.combinations(Y, k):
        uniform.checked += 1
        _, counts = table.counts(list(E))
        if len(counts) != pr.p**k or np.any(counts * pr.p**k != table.total):
            uniform.failures.append(E)

    msg = LemmaResult("message secrecy")
    for t in range(c, k + 1):
        for E in itertools.combinations(Y, t):
            for A in itertools.combinations(U, k - t):
                msg.checked += 1
                if independence_violation(table, table.rows(list(A)), table.rows(list(E))) is not None:
                    msg.failures.append((E, A))

    keys = LemmaResult("key secrecy")
    for t in range(0, k + 1):
        for E in itertools.combinations(Y, t):
            for a1 in range(0, min(k - t, len(U)) + 1):
                a2 = k - t - a1
                if a2 > len(Z):
                    continue
                for A1 in itertools.combinations(U, a1):
                    for A2 in itertools.combinations(Z, a2):
                        keys.checked += 1
                        if independence_violation(table, table.rows(list(A1 + A2)), table.rows(list(E))) is not None:
                            keys.failures.append((E, A1, A2))
    return MdsLemmaReport(uniform, msg, keys)


# ---------------------------------------------------------------------------
# combined report


@dataclass
class VerificationReport:
    states: int
    reconstruction: list
    security: SecurityReport
    entropies: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.reconstruction and self.security.secure

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "states": self.states,
            "reconstruction": {
                "passed": not self.reconstruction,
                "failures": [
                    {"access_set": list(f.access_set), "missing_level": f.missing_level,
                     "realizations": [list(r) for r in f.realizations]}
                    for f in self.reconstruction
                ],
            },
            "security": {
                "passed": self.security.secure,
                "verdicts": [
                    {"alpha": v.alpha, "access_set": list(v.access_set), "secure": v.secure}
                    for v in self.security.verdicts
                ],
                "leaks": [
                    {"alpha": lk.alpha, "access_set": list(lk.access_set), "shares_value": list(lk.shares_value),
                     "message_value": list(lk.message_value), "joint_count": lk.joint_count,
                     "expected_count": str(lk.expected_count), "mutual_information": str(lk.mutual_information),
                     "realization": list(lk.realization) if lk.realization is not None else None}
                    for lk in self.security.leaks
                ],
            },
            "entropies": self.entropies,
        }


def entropy_table(code: SmdcCode) -> dict:
    """Exact H(M_a), H(W_l) and H(M_a | W_A) over the security-relevant A, as strings."""
    L, N = code.L, code.spec.N
    out = {}
    for a in range(1, L + 1):
        out[f"H(M{a})"] = str(rank_entropy(code, [f"M{a}"]))
    for l in range(1, L + 1):
        out[f"H(W{l})"] = str(rank_entropy(code, [f"W{l}"]))
    for a in range(1, L + 1):
        if not code.message_index[a - 1]:
            continue
        for size in range(1, N[a - 1] + 1):
            for A in itertools.combinations(range(1, L + 1), size):
                given = "".join(map(str, A))
                out[f"H(M{a}|W{given})"] = str(rank_entropy(code, [f"M{a}"], [f"W{l}" for l in A]))
    return out


def verify_code(code: SmdcCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> VerificationReport:
    table = enumerate_joint(code, budget, workers)
    return VerificationReport(table.total, check_reconstruction(code, table), check_security(code, table=table),
                              entropy_table(code))
