"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or directly as
``python tests/test_acceptance.py``.
"""
import itertools
import json
import random
import subprocess
import sys
import tempfile
import time
from collections import Counter
from fractions import Fraction as F
from pathlib import Path

import pytest

from smdc import fixtures
from smdc.codec import CodeSpec, build_code
from smdc.errors import NonIntegralLayout
from smdc.mds import MdsParams, build_generator
from smdc.region import (
    check_superposition_optimal,
    compute_eta_star,
    ds_sum_rate,
    f_alpha,
    f_alpha_lp,
    g_eta,
    g_star,
    gp_region_contains,
    star_region_contains,
    sup_sum_rate,
    supporting_rate_tuple,
)
from smdc.verify import check_mds_lemmas, mu_alpha, mu_alpha_bound_terms, rank_entropy, verify_code

_print = print


def _report(n, ok, detail):
    _print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)


def _run(n, fn, capsys=None):
    """Run a criterion body; print its line, then re-raise any failure."""
    try:
        detail = fn()
        ok, err = True, None
    except AssertionError as exc:
        ok, err, detail = False, exc, str(exc)
    if capsys is not None:
        with capsys.disabled():
            _report(n, ok, detail)
    else:
        _report(n, ok, detail)
    if err is not None:
        raise err


def _joint_counts(code, names):
    """Pure-Python oracle, independent of the numpy enumerator."""
    p = code.p
    out = Counter()
    for x in itertools.product(range(p), repeat=code.num_free):
        vals = []
        for n in names:
            if n.startswith("W"):
                for row in code.share_rows[int(n[1:]) - 1]:
                    vals.append(sum(int(c) * v for c, v in zip(row, x)) % p)
            else:
                vals.extend(x[i] for i in code.message_index[int(n[1:]) - 1])
        out[tuple(vals)] += 1
    return out


def _independent(code, a, b):
    ca, cb = _joint_counts(code, [a]), _joint_counts(code, [b])
    cab = _joint_counts(code, [a, b])
    total = code.p ** code.num_free
    na = len(next(iter(ca)))
    if len(cab) != len(ca) * len(cb):
        return False
    return all(c * total == ca[k[:na]] * cb[k[na:]] for k, c in cab.items())


# ---------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    joint, separate = fixtures.table1_joint(), fixtures.table1_separate()
    report = verify_code(joint)
    elapsed = time.perf_counter() - t0
    assert report.states == 5**5 == 3125, f"states={report.states}"
    assert not report.reconstruction, f"reconstruction failures {report.reconstruction}"
    for l in range(1, 4):
        assert rank_entropy(joint, "M3", f"W{l}") == rank_entropy(joint, "M3") == 2, f"H(M3|W{l}) != H(M3)"
        assert _independent(joint, "M3", f"W{l}"), f"counts: M3 not independent of W{l}"
    assert report.passed
    assert joint.message_sizes == separate.message_sizes
    saving = separate.total_symbols - joint.total_symbols
    assert saving == 1, f"saving={saving}"
    assert elapsed < 1.0, f"runtime {elapsed:.2f}s"
    return f"table1-joint: 3125 states, H(M3|W_l)=H(M3)=2, {joint.total_symbols} vs {separate.total_symbols} symbols ({elapsed:.2f}s)"


def criterion_2():
    t0 = time.perf_counter()
    code = fixtures.example1_group_pairwise()
    report = verify_code(code)
    elapsed = time.perf_counter() - t0
    assert code.spec.N == (0, 1, 2, 0) and code.spec.m == (1, 1, 1, 4)
    assert report.states == 11**7, f"states={report.states}"
    assert not report.reconstruction, "reconstruction failed"
    assert report.security.secure, f"leaks {report.security.leaks[:1]}"
    assert code.total_symbols == 13 and sum(code.message_sizes) == 7
    rate = F(code.total_symbols, sum(code.message_sizes))
    assert rate == ds_sum_rate(4, 3, code.spec.m_hat) == F(13, 7), f"rate={rate}"
    assert elapsed < 60.0, f"runtime {elapsed:.1f}s"
    return f"example1: 11^7 states verified, rate {rate} = ds_sum_rate ({elapsed:.1f}s)"


def criterion_3():
    t0 = time.perf_counter()
    joint, separate = fixtures.example3_joint(), fixtures.example3_separate()
    report = verify_code(joint)
    elapsed = time.perf_counter() - t0
    assert report.states == 11**3, f"states={report.states}"
    assert not report.reconstruction, "reconstruction failed"
    checked = {3: 0, 4: 0}
    for v in report.security.verdicts:
        if v.alpha in checked and v.access_set:
            checked[v.alpha] += 1
            assert v.secure, f"M{v.alpha} leaks at {v.access_set}"
    assert checked[3] == 4 + 6 and checked[4] == 4, f"security sets checked {checked}"
    # same four stored symbols, one more message symbol, one fresh key fewer
    assert joint.total_symbols == separate.total_symbols == 4
    extra = sum(joint.message_sizes) - sum(separate.message_sizes)
    keys_saved = len(separate.key_index) - len(joint.key_index)
    assert extra == keys_saved == joint.params["borrowed"] == 1, f"extra={extra} keys_saved={keys_saved}"
    assert elapsed < 1.0, f"runtime {elapsed:.2f}s"
    return f"example3: 1331 states, levels 3/4 secure, saving {extra} symbol ({elapsed:.2f}s)"


def criterion_4():
    t0 = time.perf_counter()
    lines = []
    for c, k, n, p in [(1, 2, 3, 5), (2, 3, 4, 11), (1, 3, 4, 7)]:
        b = check_mds_lemmas(build_generator(MdsParams(c, k, n, p), "B"))
        a = check_mds_lemmas(build_generator(MdsParams(c, k, n, p), "A"))
        for name, res in [("B uniformity", b.uniformity), ("B message", b.message_secrecy), ("B key", b.key_secrecy),
                          ("A uniformity", a.uniformity), ("A message", a.message_secrecy)]:
            assert res.passed and res.checked, f"{(c, k, n, p)} {name}: {len(res.failures)} failures"
        assert not a.key_secrecy.passed, f"{(c, k, n, p)}: MDS-A unexpectedly passes key secrecy"
        lines.append(f"{(c, k, n, p)} A-key-failures={len(a.key_secrecy.failures)}")
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"runtime {elapsed:.2f}s"
    return f"MDS lemmas hold, A fails key secrecy: {', '.join(lines)} ({elapsed:.2f}s)"


def _random_lambda(rng, L):
    while True:
        lam = tuple(F(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(L))
        if any(lam):
            return lam


def criterion_5():
    assert f_alpha(3, (1, 1, 1, 1)) == f_alpha_lp(3, (1, 1, 1, 1))[0] == F(4, 3), "anchor f_3(1,1,1,1) != 4/3"
    rng = random.Random(2024)
    count = 0
    for L in (3, 4, 5, 6):
        for _ in range(200):
            lam = _random_lambda(rng, L)
            for alpha in range(1, L + 1):
                closed, lp = f_alpha(alpha, lam), f_alpha_lp(alpha, lam)[0]
                assert closed == lp, f"f_{alpha}{lam}: closed form {closed} != LP {lp}"
                count += 1
    return f"closed form == exact LP on {count} (L, lambda, alpha) cases, f_3(1,1,1,1) = 4/3"


def _ds_instance(rng, L_max):
    L = rng.randint(2, L_max)
    r = rng.randint(1, L)
    m = [rng.randint(0, 4) for _ in range(L)]
    if not any(m):
        m[rng.randrange(L)] = 1
    m_hat = tuple(F(v, sum(m)) for v in m)
    return L, r, m_hat, _random_lambda(rng, L)


def criterion_6():
    rng = random.Random(6)
    hits = Counter()
    for _ in range(500):
        L, r, m_hat, lam = _ds_instance(rng, 6)
        eta, _ = compute_eta_star(L, r, m_hat)
        values = {e: g_eta(e, lam, m_hat, r) for e in range(r + 1, L + 2)}
        assert values[eta] == max(values.values()), f"L={L} r={r} m={m_hat} lam={lam}: eta*={eta} not maximal"
        hits[eta == L + 1] += 1
    return f"g_eta* = max_eta g_eta on 500 instances ({hits[True]} with eta* = L+1)"


def _l3_profiles():
    return [(0, n2, n3) for n2 in (0, 1) for n3 in (0, 1, 2)]


M_CANDIDATES = [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 2, 2), (1, 1, 2)]
STATE_CAP = 10**6


def criterion_7():
    t0 = time.perf_counter()
    seen, skipped = Counter(), Counter()
    for N in _l3_profiles():
        per_profile = 0
        for m in M_CANDIDATES:
            spec = CodeSpec(3, 7, m, N)
            w = check_superposition_optimal(m, N)
            bound = sup_sum_rate(spec.m_hat, N)
            try:
                if w.optimal:
                    code = build_code(spec, "superposition")
                else:
                    scheme = "pairwise-a" if w.condition == "Condition1" else "pairwise-b"
                    code = build_code(spec, scheme, alpha=w.pair[0], beta=w.pair[1])
            except NonIntegralLayout:
                skipped["no integral layout"] += 1
                continue
            if code.p ** code.num_free > STATE_CAP:
                skipped["over state cap"] += 1
                continue
            report = verify_code(code)
            assert report.passed, f"N={N} m={m} {code.scheme} fails the oracle"
            rate = code.normalized_rates.total
            if w.optimal:
                assert rate == bound, f"N={N} m={m}: superposition rate {rate} != {bound}"
            else:
                assert rate < bound, f"N={N} m={m}: {code.scheme} rate {rate} not below {bound}"
            seen[w.verdict] += 1
            per_profile += 1
        assert per_profile, f"N={N}: no message vector in the matrix could be checked"
    elapsed = time.perf_counter() - t0
    return (f"6 L=3 profiles: {seen['Optimal']} superposition codes at the bound, "
            f"{seen['Suboptimal']} pairwise codes strictly below; skipped {dict(skipped)} ({elapsed:.1f}s)")


def criterion_8():
    checked = 0
    for L in (2, 3):
        for N in itertools.product(*[range(a) for a in range(1, L + 1)]):
            ms = [(1,) * L] + ([(1, 2, 1), (2, 1, 1)] if L == 3 else [(2, 1)])
            for m in ms:
                if not check_superposition_optimal(m, N).optimal:
                    continue
                code = build_code(CodeSpec(L, 7, m, N), "superposition")
                mu = mu_alpha(code, L)
                assert mu == 0, f"N={N} m={m}: mu_L = {mu}"
                for alpha in range(1, L + 1):
                    lhs, rhs = mu_alpha_bound_terms(code, alpha)
                    assert lhs >= rhs, f"N={N} m={m} alpha={alpha}: {lhs} < {rhs}"
                checked += 1
    assert checked, "no optimal profiles in the matrix"
    return f"mu_L = 0 and the sum-entropy bound holds for every alpha on {checked} superposition codes"


def _near_boundary(rng, R):
    out = []
    for v in R:
        v = v + F(rng.randint(-6, 6), 60)
        out.append(max(v, F(0)))
    return out


def criterion_9():
    rng = random.Random(9)
    accepted = rejected = 0
    for _ in range(1000):
        L, r, m_hat, lam = _ds_instance(rng, 4)
        R = _near_boundary(rng, supporting_rate_tuple(lam, L, r, m_hat).values)
        if gp_region_contains(R, L, r, m_hat):
            accepted += 1
            assert star_region_contains(R, L, r, m_hat, lambda_samples=64, seed=rng.randrange(2**31)), \
                f"L={L} r={r} m={m_hat} R={R}: in gp region but outside R*"
        else:
            rejected += 1
    assert accepted and rejected, f"degenerate sample: {accepted} accepted, {rejected} rejected"
    for _ in range(200):
        L, r, m_hat, lam = _ds_instance(rng, 4)
        R = supporting_rate_tuple(lam, L, r, m_hat)
        dot = sum(a * b for a, b in zip(lam, R))
        assert dot == g_star(lam, L, r, m_hat), f"L={L} r={r} lam={lam}: lambda.R={dot}"
        assert gp_region_contains(list(R), L, r, m_hat)
    return f"gp => R* on 1000 tuples ({accepted} in, {rejected} out); lambda.R = g_eta* on 200 directions"


def _pipeline(workdir: Path) -> dict:
    spec = workdir / "spec.json"
    spec.write_text(json.dumps({"L": 3, "p": 7, "m": [1, 1, 1], "N": [0, 1, 2]}))

    def smdc(*args):
        proc = subprocess.run([sys.executable, "-m", "smdc", *map(str, args)], cwd=workdir,
                              capture_output=True, text=True)
        assert proc.returncode == 0, f"smdc {' '.join(map(str, args))}: exit {proc.returncode} {proc.stderr}"

    smdc("--seed", 11, "gen", spec, "--scheme", "superposition", "--out", "code.json")
    smdc("--seed", 11, "gen", "--fixture", "example3", "--out", "ex3.json")
    smdc("--seed", 11, "encode", "code.json", "--out", "shares.bin", "--messages-out", "msgs.bin")
    smdc("--seed", 11, "encode", "ex3.json", "--out", "ex3-shares.bin", "--messages-out", "ex3-msgs.bin")
    smdc("decode", "code.json", "shares.bin", "--access", "1,3", "--out", "decoded.json")
    smdc("decode", "ex3.json", "ex3-shares.bin", "--access", "2,4", "--out", "ex3-decoded.json")
    smdc("verify", "code.json", "--out", "report.json")
    smdc("verify", "ex3.json", "--out", "ex3-report.json")
    smdc("region", "--m", "1/7,1/7,1/7,4/7", "--N", "0,1,2,0", "--out", "region.json")
    smdc("--format", "csv", "region", "--m", "1/7,1/7,1/7,4/7", "--N", "0,1,2,0", "--samples", 8,
         "--out", "region.csv")
    return {p.name: p.read_bytes() for p in sorted(workdir.iterdir())}


def criterion_10():
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        first, second = _pipeline(Path(a)), _pipeline(Path(b))
    assert sorted(first) == sorted(second)
    differ = [name for name in first if first[name] != second[name]]
    assert not differ, f"outputs differ: {differ}"
    return f"two CLI runs byte-identical over {len(first)} files"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n, capsys):
    _run(n, CRITERIA[n], capsys)


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        try:
            _run(n, fn)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
