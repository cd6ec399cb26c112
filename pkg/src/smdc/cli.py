"""``smdc`` command line: gen | encode | decode | verify | region.

Exit codes: 0 success, 1 verification failure, 2 precondition or condition
failure, 3 I/O or format failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import codec, fixtures, formats, region, verify
from .errors import (
    BudgetExceeded,
    ConditionNotMet,
    FormatError,
    InsufficientShares,
    InvalidSpec,
    LengthMismatch,
    NonIntegralLayout,
    ProfileNotDS,
    SmdcError,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONDITION, EXIT_IO = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frac_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _common(defaults: bool) -> argparse.ArgumentParser:
    # the same flags work before or after the subcommand; only the top level carries defaults
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=d(0), help="seed for generators, keys and sampling")
    p.add_argument("--budget", type=int, default=d(verify.DEFAULT_BUDGET), help="state cap for the oracle")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--out", default=d(None), help="output path (stdout when omitted, where allowed)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smdc", description=__doc__.splitlines()[0], parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(False)]

    g = sub.add_parser("gen", parents=common, help="construct a code and write its descriptor")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("spec", nargs="?", help="JSON file {L, p, m, N}")
    src.add_argument("--fixture", choices=sorted(fixtures.FIXTURES), help="a built-in worked-example code")
    g.add_argument("--scheme", choices=codec.SCHEMES, default="superposition")
    g.add_argument("--alpha", type=int)
    g.add_argument("--beta", type=int)
    g.add_argument("-r", "--r", dest="r", type=int)
    g.add_argument("--blocklength", type=int)

    e = sub.add_parser("encode", parents=common, help="encode a message file into a share file")
    e.add_argument("code", help="code descriptor JSON")
    e.add_argument("messages", nargs="?", help="message file; random messages from --seed when omitted")
    e.add_argument("--messages-out", help="also write the messages that were encoded")

    dcd = sub.add_parser("decode", parents=common, help="recover M_1..M_|U| from a share file")
    dcd.add_argument("code")
    dcd.add_argument("shares")
    dcd.add_argument("--access", type=_int_list, help="encoders to use, e.g. 2,4 (default: all)")

    v = sub.add_parser("verify", parents=common, help="exhaustive reconstruction and security check")
    v.add_argument("code", nargs="?", help="code descriptor JSON")
    v.add_argument("--fixture", choices=sorted(fixtures.FIXTURES))
    v.add_argument("--workers", type=int, default=1)

    rg = sub.add_parser("region", parents=common, help="sum rates, optimality and region boundaries")
    rg.add_argument("--m", type=_frac_list, help="message sizes or rates (normalized internally)")
    rg.add_argument("--N", type=_int_list, help="security profile N_1..N_L")
    rg.add_argument("-L", "--L", dest="L", type=int)
    rg.add_argument("-r", "--r", dest="r", type=int, help="DS parameter: N_a = a-1 for a <= r, else 0")
    rg.add_argument("--samples", type=int, default=64, help="random directions on top of the 0/1 ones")
    rg.add_argument("--rates", type=_frac_list, action="append", default=[],
                    help="rate tuple to test for membership (repeatable)")
    return parser


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    if args.fixture:
        code = fixtures.FIXTURES[args.fixture]()
    else:
        spec = formats.load_spec(args.spec)
        code = codec.build_code(spec, args.scheme, seed=args.seed, alpha=args.alpha, beta=args.beta, r=args.r,
                                blocklength=args.blocklength)
    text = formats.dump_json(formats.code_to_json(code))
    rates = ",".join(str(int(v)) for v in code.rates.values)
    if args.out:
        _emit(text, args.out)
        print(f"scheme={code.scheme} blocklength={code.blocklength} rates=({rates}) "
              f"total={code.total_symbols} messages={sum(code.message_sizes)} keys={len(code.key_index)}")
    else:
        _emit(text, None)
        print(f"scheme={code.scheme} blocklength={code.blocklength} rates=({rates})", file=sys.stderr)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = formats.load_code(args.code)
    # keys come from the seed alone, so a given message file always encodes the same way
    key = codec.random_key(code, np.random.default_rng(args.seed))
    if args.messages:
        p, messages = formats.read_messages(args.messages)
        if p != code.p:
            raise FormatError(f"message file is over GF({p}), code over GF({code.p})")
    else:
        rng = np.random.default_rng([args.seed, 1])
        messages = [rng.integers(0, code.p, size=len(ix)).tolist() for ix in code.message_index]
    shares = codec.encode(code, messages, key)
    if args.messages_out:
        formats.write_messages(args.messages_out, code.p, messages)
    blob = formats.shares_to_bytes(code, shares)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(blob)
    else:
        sys.stdout.buffer.write(blob)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = formats.load_code(args.code)
    spec, _, shares = formats.read_shares(args.shares)
    if (spec.L, spec.p) != (code.L, code.p):
        raise FormatError("share file does not belong to this code")
    U = sorted(set(args.access)) if args.access else list(range(1, code.L + 1))
    if any(not 1 <= l <= code.L for l in U):
        raise InsufficientShares(f"access set {U} is not a subset of 1..{code.L}")
    messages = codec.decode(code, U, shares)
    doc = {"access_set": U, "messages": {f"M{a}": msg for a, msg in enumerate(messages, start=1)}}
    _emit(formats.dump_json(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.fixture:
        code = fixtures.FIXTURES[args.fixture]()
    elif args.code:
        code = formats.load_code(args.code)
    else:
        raise InvalidSpec("verify needs a code descriptor or --fixture")
    report = verify.verify_code(code, budget=args.budget, workers=args.workers)
    _emit(formats.dump_json(report.to_json()), args.out)
    for lk in report.security.leaks:
        print(f"leak: M{lk.alpha} vs W{list(lk.access_set)} shares={list(lk.shares_value)} "
              f"message={list(lk.message_value)} I={lk.mutual_information}", file=sys.stderr)
    for f in report.reconstruction:
        print(f"reconstruction failure: U={list(f.access_set)} misses M{f.missing_level}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _region_inputs(args):
    m = args.m
    L = args.L or (len(m) if m else len(args.N) if args.N else None)
    if L is None:
        raise InvalidSpec("region needs --m, --N or --L")
    if m is None:
        m = [Fraction(1)] * L
    if len(m) != L or any(x < 0 for x in m) or sum(m) == 0:
        raise InvalidSpec("--m must give L nonnegative values, not all zero")
    m_hat = [x / sum(m) for x in m]
    N = args.N
    if args.r is not None:
        if not 1 <= args.r <= L:
            raise InvalidSpec(f"r must lie in 1..{L}")
        ds = [a - 1 if a <= args.r else 0 for a in range(1, L + 1)]
        if N is not None and list(N) != ds:
            raise ProfileNotDS(f"N={list(N)} is not the DS profile for r={args.r}")
        N = ds
    if N is None:
        N = [0] * L
    if len(N) != L or any(not 0 <= n < a for a, n in enumerate(N, start=1)):
        raise InvalidSpec("--N must give L values with 0 <= N_a < a")
    return L, m_hat, list(N)


def _ds_r(N) -> int | None:
    L = len(N)
    for r in range(L, 0, -1):
        if codec.is_ds_profile(N, r):
            return r
    return None


def cmd_region(args) -> int:
    L, m_hat, N = _region_inputs(args)
    r = args.r if args.r is not None else _ds_r(N)
    wit = region.check_superposition_optimal(m_hat, N)
    doc = {
        "L": L,
        "m_hat": [_frac_str(x) for x in m_hat],
        "N": N,
        "superposition": {
            "sum_rate": _frac_str(region.sup_sum_rate(m_hat, N)),
            "verdict": wit.verdict,
            "pair": list(wit.pair) if wit.pair else None,
            "condition": wit.condition,
            "threshold": wit.threshold,
        },
    }
    boundary = []
    if r is not None:
        eta, m_aux = region.compute_eta_star(L, r, m_hat)
        doc["ds"] = {"r": r, "eta_star": eta, "aux_key": _frac_str(m_aux),
                     "sum_rate": _frac_str(region.ds_sum_rate(L, r, m_hat))}
        boundary = region.sample_boundary(L, r, m_hat, samples=args.samples, seed=args.seed)
        doc["boundary"] = [{"lambda": [_frac_str(v) for v in lam], "g": _frac_str(g)} for lam, g in boundary]
    members = []
    for R in args.rates:
        if len(R) != L:
            raise InvalidSpec(f"rate tuple {list(map(str, R))} must have {L} entries")
        entry = {"rates": [_frac_str(v) for v in R], "superposition": region.sup_region_contains(R, m_hat, N)}
        if r is not None:
            entry["group_pairwise"] = region.gp_region_contains(R, L, r, m_hat)
            entry["star"] = region.star_region_contains(R, L, r, m_hat, args.samples, args.seed)
        members.append(entry)
    doc["membership"] = members

    if args.format == "csv":
        if r is None:
            raise ProfileNotDS("boundary sampling needs a DS profile (give -r or a DS --N)")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"lambda_{i}" for i in range(1, L + 1)] + ["g_eta_star"])
        for lam, g in boundary:
            w.writerow([_frac_str(v) for v in lam] + [_frac_str(g)])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(formats.dump_json(doc), args.out)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "encode": cmd_encode, "decode": cmd_decode, "verify": cmd_verify, "region": cmd_region}

CONDITION_ERRORS = (ConditionNotMet, ProfileNotDS, NonIntegralLayout, InvalidSpec, InsufficientShares,
                    BudgetExceeded, LengthMismatch)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CONDITION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except (SmdcError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONDITION


if __name__ == "__main__":
    sys.exit(main())
