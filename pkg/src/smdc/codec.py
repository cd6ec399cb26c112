"""SMDC code families and the universal linear decoder.

Every code here is linear.  A code is stored as a list of *free symbols*
(message symbols M<level>.<i> followed by key symbols K<j>) and, for each
encoder, a coefficient matrix whose rows are the coded symbols expressed
as linear forms over the free symbols.  Encoding is a matrix product and
decoding an access set U amounts to expressing the message coordinates as
combinations of the rows held by U.

Four constructions are provided:

* superposition: every level gets its own (N_a, a, L) ramp sub-code;
* pairwise A: coded symbols of level alpha become keys of level beta;
* pairwise B: message symbols of level beta become keys of level alpha;
* group pairwise: for differential-constant profiles, less important
  messages are used as keys for the secure levels 1..r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    ConditionNotMet,
    InsufficientShares,
    InvalidSpec,
    LengthMismatch,
    NonIntegralLayout,
    ProfileNotDS,
)
from .field import MAX_ARRAY_PRIME, check_prime, left_solve_mod, matmul_mod
from .mds import MdsGenerator, MdsParams, build_generator, generator_from_matrix
from .region import RateTuple, compute_eta_star

SCHEMES = ("superposition", "pairwise-a", "pairwise-b", "group-pairwise")
SCHEME_BYTES = {"superposition": 0, "pairwise-a": 1, "pairwise-b": 2, "group-pairwise": 3}


@dataclass(frozen=True)
class CodeSpec:
    """Problem instance: L encoders, field GF(p), message sizes m and security profile N."""

    L: int
    p: int
    m: tuple
    N: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        object.__setattr__(self, "N", tuple(int(x) for x in self.N))
        if self.L < 2:
            raise InvalidSpec("need at least two encoders")
        if len(self.m) != self.L or len(self.N) != self.L:
            raise InvalidSpec(f"m and N must both have length L={self.L}")
        if any(x < 0 for x in self.m):
            raise InvalidSpec("message sizes must be nonnegative")
        for alpha, n in enumerate(self.N, start=1):
            if not 0 <= n < alpha:
                raise InvalidSpec(f"need 0 <= N_{alpha} < {alpha}, got {n}")
        check_prime(self.p)
        if self.p > MAX_ARRAY_PRIME:
            raise InvalidSpec(f"p must be at most {MAX_ARRAY_PRIME}")

    @property
    def m_hat(self) -> tuple:
        total = sum(self.m)
        if total == 0:
            raise InvalidSpec("all message sizes are zero")
        return tuple(Fraction(x, total) for x in self.m)

    def scaled(self, a: int) -> "CodeSpec":
        return CodeSpec(self.L, self.p, tuple(a * x for x in self.m), self.N)

    def to_json(self) -> dict:
        return {"L": self.L, "p": self.p, "m": list(self.m), "N": list(self.N)}

    @classmethod
    def from_json(cls, doc: Mapping) -> "CodeSpec":
        try:
            return cls(int(doc["L"]), int(doc["p"]), tuple(doc["m"]), tuple(doc["N"]))
        except KeyError as exc:
            raise InvalidSpec(f"spec is missing field {exc}") from None


@dataclass(frozen=True)
class SubCode:
    """One ramp/MDS block: which generator, which inputs, which encoders get its outputs."""

    level: int
    block: int
    kind: str  # "ramp" or "tail"
    generator: MdsGenerator | None
    inputs: tuple  # one label per generator row
    positions: tuple  # 1-based encoder per generator column, None when the output is dropped


@dataclass(frozen=True)
class ShareSet:
    shares: tuple
    p: int

    def __getitem__(self, l: int):
        return self.shares[l - 1]

    def subset(self, access_set) -> dict:
        return {l: self.shares[l - 1] for l in sorted(access_set)}


@dataclass
class SmdcCode:
    spec: CodeSpec
    scheme: str
    blocklength: int
    seed: int
    variables: tuple
    message_index: tuple  # per level, indices into variables
    key_index: tuple
    share_rows: tuple  # per encoder, int64 array (rate x free symbols)
    subcodes: tuple = ()
    key_layout: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    _decoders: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def L(self) -> int:
        return self.spec.L

    @property
    def num_free(self) -> int:
        return len(self.variables)

    @property
    def message_sizes(self) -> tuple:
        """Symbols per level actually carried (m scaled by the blocklength)."""
        return tuple(len(ix) for ix in self.message_index)

    @property
    def rates(self) -> RateTuple:
        return RateTuple(tuple(Fraction(rows.shape[0]) for rows in self.share_rows), normalized=False)

    @property
    def normalized_rates(self) -> RateTuple:
        total = sum(self.message_sizes)
        return RateTuple(tuple(Fraction(rows.shape[0], total) for rows in self.share_rows), normalized=True)

    @property
    def total_symbols(self) -> int:
        return sum(rows.shape[0] for rows in self.share_rows)

    @property
    def sub_generators(self) -> list:
        return [s.generator for s in self.subcodes if s.generator is not None]

    def rows_for(self, access_set) -> np.ndarray:
        parts = [self.share_rows[l - 1] for l in sorted(access_set)]
        if not parts:
            return np.zeros((0, self.num_free), dtype=np.int64)
        return np.vstack(parts)

    def labels(self, l: int) -> list[str]:
        return [linear_form_label(row, self.variables, self.p) for row in self.share_rows[l - 1]]

    def describe(self) -> str:
        lines = []
        for l in range(1, self.L + 1):
            lines.append(f"W{l} = (" + ", ".join(self.labels(l)) + ")")
        return "\n".join(lines)

    def message_rows(self, levels) -> np.ndarray:
        idx = [i for lv in levels for i in self.message_index[lv - 1]]
        out = np.zeros((len(idx), self.num_free), dtype=np.int64)
        for r, i in enumerate(idx):
            out[r, i] = 1
        return out

    def decoder(self, access_set) -> np.ndarray:
        """Matrix D with D @ W_U = M_{1:|U|}; raises InsufficientShares if none exists."""
        U = tuple(sorted(set(access_set)))
        if not U or any(not 1 <= l <= self.L for l in U):
            raise ValueError(f"access set must be a nonempty subset of 1..{self.L}, got {access_set}")
        if U not in self._decoders:
            target = self.message_rows(range(1, len(U) + 1))
            d = left_solve_mod(self.rows_for(U), target, self.p)
            if d is None:
                raise InsufficientShares(f"encoders {list(U)} do not determine M_1..M_{len(U)}")
            self._decoders[U] = d
        return self._decoders[U]


def linear_form_label(row, names, p: int) -> str:
    terms = []
    for c, name in zip(row, names):
        c = int(c) % p
        if c == 0:
            continue
        terms.append(name if c == 1 else f"{c}*{name}")
    return " + ".join(terms) if terms else "0"


def encode(code: SmdcCode, messages: Sequence[Sequence[int]], key: Sequence[int] = ()) -> ShareSet:
    """Shares for one realization of (messages, key)."""
    x = _free_vector(code, messages, key)
    return ShareSet(tuple(tuple(int(v) for v in (rows @ x) % code.p) for rows in code.share_rows), code.p)


def encode_many(code: SmdcCode, free: np.ndarray) -> np.ndarray:
    """Vectorized encoding; ``free`` has one realization of all free symbols per row."""
    g = np.vstack([rows for rows in code.share_rows]) if code.total_symbols else np.zeros((0, code.num_free), np.int64)
    return matmul_mod(np.asarray(free, dtype=np.int64), g.T, code.p)


def _free_vector(code: SmdcCode, messages, key) -> np.ndarray:
    if len(messages) != code.L:
        raise LengthMismatch(f"expected {code.L} message blocks, got {len(messages)}")
    x = np.zeros(code.num_free, dtype=np.int64)
    for lv, (msg, ix) in enumerate(zip(messages, code.message_index), start=1):
        msg = [int(v) % code.p for v in msg]
        if len(msg) != len(ix):
            raise LengthMismatch(f"M_{lv} needs {len(ix)} symbols, got {len(msg)}")
        x[list(ix)] = msg
    key = [int(v) % code.p for v in key]
    if len(key) != len(code.key_index):
        raise LengthMismatch(f"key needs {len(code.key_index)} symbols, got {len(key)}")
    if key:
        x[list(code.key_index)] = key
    return x


def random_key(code: SmdcCode, rng: np.random.Generator) -> list[int]:
    return rng.integers(0, code.p, size=len(code.key_index)).tolist()


def decode(code: SmdcCode, access_set, shares) -> list[list[int]]:
    """Recover M_1..M_{|U|} from the shares of the encoders in U.

    ``shares`` is a ShareSet or a mapping encoder -> symbols; it must provide
    exactly the encoders in the access set.
    """
    U = sorted(set(access_set))
    if isinstance(shares, ShareSet):
        shares = shares.subset(U)
    if sorted(shares) != U:
        raise InsufficientShares(f"shares given for {sorted(shares)}, access set is {U}")
    w = []
    for l in U:
        sym = list(shares[l])
        if len(sym) != code.share_rows[l - 1].shape[0]:
            raise LengthMismatch(f"share {l} must have {code.share_rows[l - 1].shape[0]} symbols")
        w.extend(int(v) % code.p for v in sym)
    d = code.decoder(U)
    flat = (d @ np.array(w, dtype=np.int64)) % code.p if w else np.zeros(d.shape[0], np.int64)
    out, pos = [], 0
    for lv in range(1, len(U) + 1):
        n = len(code.message_index[lv - 1])
        out.append([int(v) for v in flat[pos : pos + n]])
        pos += n
    return out


# ---------------------------------------------------------------------------
# assembly


def derive_seed(seed: int, *parts: int) -> int:
    h = int(seed) & (2**64 - 1)
    for part in parts:
        h = (h * 0x9E3779B97F4A7C15 + int(part) + 1) & (2**64 - 1)
    return h


class _Assembler:
    """Allocates free symbols and collects coded symbols per encoder."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        self.p = spec.p
        self.variables: list[str] = []
        self.message_index = []
        for lv, size in enumerate(spec.m, start=1):
            self.message_index.append(tuple(self._new(f"M{lv}.{i + 1}") for i in range(size)))
        self.key_index: list[int] = []
        self.outputs: list[list[tuple[str, np.ndarray]]] = [[] for _ in range(spec.L)]
        self.subcodes: list[SubCode] = []
        self.key_layout: dict = {}
        self.emitted: dict = {}

    def _new(self, name: str) -> int:
        self.variables.append(name)
        return len(self.variables) - 1

    def new_key(self) -> int:
        i = self._new(f"K{len(self.key_index) + 1}")
        self.key_index.append(i)
        return i

    def unit(self, var: int) -> np.ndarray:
        v = np.zeros(len(self.variables), dtype=np.int64)
        v[var] = 1
        return v

    def add_block(self, level, block, gen, inputs, input_labels, drop=(), kind="ramp", positions=None):
        """Encode one block: ``inputs`` are linear forms (message rows then key rows)."""
        arr = gen.array() if gen is not None else None
        k = len(inputs)
        n = arr.shape[1] if arr is not None else len(positions)
        if positions is None:
            positions = list(range(1, n + 1))
        placed, emitted = [], []
        for j in range(n):
            pos = positions[j]
            if pos is None or j in drop:
                placed.append(None)
                emitted.append(None)
                continue
            row = sum((int(arr[i, j]) * inputs[i] for i in range(k)), np.zeros(len(self.variables), np.int64)) % self.p
            self.outputs[pos - 1].append((f"{level}", row))
            placed.append(pos)
            emitted.append(row)
        self.emitted[(level, block)] = emitted
        self.subcodes.append(SubCode(level, block, kind, gen, tuple(input_labels), tuple(placed)))

    def finish(self, spec, scheme, a, seed, params) -> SmdcCode:
        width = len(self.variables)
        share_rows = []
        for outs in self.outputs:
            # variables allocated after a row was built are padded with zero coefficients
            rows = [np.pad(r, (0, width - r.shape[0])) for _, r in outs]
            share_rows.append(np.array(rows, dtype=np.int64).reshape(len(rows), width))
        for r in share_rows:
            r.setflags(write=False)
        return SmdcCode(
            spec=spec,
            scheme=scheme,
            blocklength=a,
            seed=seed,
            variables=tuple(self.variables),
            message_index=tuple(self.message_index),
            key_index=tuple(self.key_index),
            share_rows=tuple(share_rows),
            subcodes=tuple(self.subcodes),
            key_layout=dict(self.key_layout),
            params=dict(params),
        )


def repetition_generator(L: int, p: int) -> MdsGenerator:
    """Level 1 simply replicates M_1 on every encoder."""
    return generator_from_matrix(np.ones((1, L), dtype=np.int64), c=0, p=p, variant="B")


def level_generator(spec: CodeSpec, level: int, c: int, variant: str, seed: int, overrides=None) -> MdsGenerator:
    if overrides and level in overrides:
        gen = overrides[level]
        if (gen.params.k, gen.params.c, gen.params.n) != (level, c, spec.L):
            raise ValueError(f"override for level {level} must be a ({c}, {level}, {spec.L}) generator")
        return gen
    if level == 1:
        return repetition_generator(spec.L, spec.p)
    return build_generator(MdsParams(c=c, k=level, n=spec.L, p=spec.p), variant, derive_seed(seed, level))


def _layout_ok(size: int, level: int, n_keys: int, L: int) -> bool:
    """A level of ``size`` symbols is integral if it fills whole blocks.

    The only exception is an unprotected level L: any leftover t < L symbols
    go uncoded to the last t encoders, which costs exactly t symbols, the same
    as the fractional symmetric layout.
    """
    if size == 0:
        return True
    if level == L and n_keys == 0:
        return True
    return size % (level - n_keys) == 0


def _choose_blocklength(sizes_at: Callable[[int], list], spec: CodeSpec, requested: int | None) -> int:
    """Smallest a >= 1 for which every (size, level, keys) layout is integral."""
    def ok(a):
        return all(_layout_ok(s, lv, nk, spec.L) for s, lv, nk in sizes_at(a))

    if requested is not None:
        if requested < 1:
            raise ValueError("blocklength must be positive")
        if not ok(requested):
            bad = [(lv, s, lv - nk) for s, lv, nk in sizes_at(requested) if not _layout_ok(s, lv, nk, spec.L)]
            raise NonIntegralLayout(
                "levels with sizes not divisible by their block size: "
                + ", ".join(f"level {lv}: {s} symbols, block {b}" for lv, s, b in bad)
            )
        return requested
    bound = 1
    for alpha in range(1, spec.L + 1):
        bound = math.lcm(bound, alpha - spec.N[alpha - 1])
    for a in range(1, bound + 1):
        if ok(a):
            return a
    raise NonIntegralLayout("no integral blocklength found")  # unreachable: a = bound always works


def _encode_level(asm: _Assembler, spec: CodeSpec, level: int, symbols: Sequence[int], c: int, gen: MdsGenerator,
                  key_source=None, first_block_keys=None, first_block_drop=()):
    """Split ``symbols`` into blocks of k-c and encode each block with ``gen``.

    ``key_source`` yields (linear form, label) pairs for key slots; fresh key
    symbols are used when it is None.  ``first_block_keys`` overrides the
    leading key slots of block 0 (pairwise constructions).
    """
    L = spec.L
    width = level - c
    blocks = len(symbols) // width
    for b in range(blocks):
        msg = symbols[b * width : (b + 1) * width]
        inputs = [asm.unit(v) for v in msg]
        labels = [asm.variables[v] for v in msg]
        for slot in range(c):
            if b == 0 and first_block_keys and slot < len(first_block_keys):
                form, label = first_block_keys[slot]
            elif key_source is not None:
                form, label = key_source()
            else:
                kv = asm.new_key()
                form, label = asm.unit(kv), asm.variables[kv]
            asm.key_layout[(level, b + 1, slot + 1)] = label
            inputs.append(form)
            labels.append(label)
        inputs = [np.pad(v, (0, len(asm.variables) - v.shape[0])) for v in inputs]
        asm.add_block(level, b + 1, gen, inputs, labels, drop=first_block_drop if b == 0 else ())
    tail = symbols[blocks * width :]
    if tail:
        # unprotected top level: leftover symbols sent as-is to the last encoders
        assert level == L and c == 0, "non-integral layout slipped through"
        t = len(tail)
        eye = generator_from_matrix(np.eye(t, dtype=np.int64), c=0, p=spec.p, variant="fixture")
        asm.add_block(level, blocks + 1, eye, [asm.unit(v) for v in tail], [asm.variables[v] for v in tail],
                      kind="tail", positions=list(range(L - t + 1, L + 1)))


def build_superposition(spec: CodeSpec, seed: int = 0, blocklength: int | None = None,
                        generators: Mapping[int, MdsGenerator] | None = None) -> SmdcCode:
    """Each level encoded separately by an (N_a, a, L) ramp code (MDS-B)."""
    a = _choose_blocklength(lambda a: [(a * spec.m[i], i + 1, spec.N[i]) for i in range(spec.L)], spec, blocklength)
    scaled = spec.scaled(a)
    asm = _Assembler(scaled)
    for lv in range(1, spec.L + 1):
        syms = asm.message_index[lv - 1]
        if not syms:
            continue
        c = spec.N[lv - 1]
        gen = level_generator(spec, lv, c, "B", seed, generators)
        _encode_level(asm, spec, lv, list(syms), c, gen)
    return asm.finish(spec, "superposition", a, seed, {})


def condition_1(N, alpha: int, beta: int) -> bool:
    na, nb = N[alpha - 1], N[beta - 1]
    return na < nb < alpha


def condition_2(N, alpha: int, beta: int) -> bool:
    na, nb = N[alpha - 1], N[beta - 1]
    return nb <= na and na > 0


def _check_pair(spec: CodeSpec, alpha: int, beta: int):
    if not 1 <= alpha < beta <= spec.L:
        raise ConditionNotMet(f"need 1 <= alpha < beta <= L, got ({alpha}, {beta})")
    if spec.m[alpha - 1] == 0 or spec.m[beta - 1] == 0:
        raise ConditionNotMet(f"levels {alpha} and {beta} must both carry messages")


def build_pairwise_a(spec: CodeSpec, alpha: int, beta: int, seed: int = 0, blocklength: int | None = None,
                     generators: Mapping[int, MdsGenerator] | None = None) -> SmdcCode:
    """Use the first theta coded symbols of level alpha as keys of level beta.

    Requires N_alpha < N_beta < alpha.  Both levels use MDS-A, so the first
    theta outputs of level beta equal its keys, i.e. the already stored
    Y_alpha^1..Y_alpha^theta, and are not stored again.
    """
    _check_pair(spec, alpha, beta)
    if not condition_1(spec.N, alpha, beta):
        raise ConditionNotMet(f"N_{alpha} < N_{beta} < {alpha} fails for N={spec.N}")
    nb = spec.N[beta - 1]
    theta = min(nb, alpha - nb)
    a = _choose_blocklength(lambda a: [(a * spec.m[i], i + 1, spec.N[i]) for i in range(spec.L)], spec, blocklength)
    asm = _Assembler(spec.scaled(a))
    for lv in range(1, spec.L + 1):
        syms = list(asm.message_index[lv - 1])
        if not syms:
            continue
        c = spec.N[lv - 1]
        variant = "A" if lv in (alpha, beta) else "B"
        gen = level_generator(spec, lv, c, variant, seed, generators)
        if lv == beta:
            first_alpha = asm.emitted[(alpha, 1)]
            forms = [(first_alpha[i].copy(), f"Y{alpha}^{i + 1}") for i in range(theta)]
            _encode_level(asm, spec, lv, syms, c, gen, first_block_keys=forms, first_block_drop=set(range(theta)))
        else:
            _encode_level(asm, spec, lv, syms, c, gen)
    return asm.finish(spec, "pairwise-a", a, seed, {"alpha": alpha, "beta": beta, "theta": theta})


def build_pairwise_b(spec: CodeSpec, alpha: int, beta: int, seed: int = 0, blocklength: int | None = None,
                     generators: Mapping[int, MdsGenerator] | None = None) -> SmdcCode:
    """Use eta = min(N_alpha, alpha - N_beta) message symbols of level beta as keys of level alpha.

    Requires N_beta <= N_alpha and N_alpha > 0.  If level beta has fewer
    than eta symbols, all of them are borrowed.
    """
    _check_pair(spec, alpha, beta)
    if not condition_2(spec.N, alpha, beta):
        raise ConditionNotMet(f"N_{beta} <= N_{alpha} and N_{alpha} > 0 fails for N={spec.N}")
    na, nb = spec.N[alpha - 1], spec.N[beta - 1]
    eta = min(na, alpha - nb)

    def sizes(a):
        out = []
        for i in range(spec.L):
            s = a * spec.m[i]
            if i + 1 == beta:
                s -= min(eta, s)
            out.append((s, i + 1, spec.N[i]))
        return out

    a = _choose_blocklength(sizes, spec, blocklength)
    asm = _Assembler(spec.scaled(a))
    borrowed = list(asm.message_index[beta - 1][: min(eta, len(asm.message_index[beta - 1]))])
    for lv in range(1, spec.L + 1):
        syms = list(asm.message_index[lv - 1])
        if lv == beta:
            syms = syms[len(borrowed):]
        if not syms:
            continue
        c = spec.N[lv - 1]
        gen = level_generator(spec, lv, c, "B", seed, generators)
        if lv == alpha:
            forms = [(asm.unit(v), asm.variables[v]) for v in borrowed]
            _encode_level(asm, spec, lv, syms, c, gen, first_block_keys=forms)
        else:
            _encode_level(asm, spec, lv, syms, c, gen)
    return asm.finish(spec, "pairwise-b", a, seed, {"alpha": alpha, "beta": beta, "eta": eta, "borrowed": len(borrowed)})


def is_ds_profile(N, r: int) -> bool:
    return all(n == (alpha - 1 if alpha <= r else 0) for alpha, n in enumerate(N, start=1))


def build_group_pairwise(spec: CodeSpec, r: int, seed: int = 0, blocklength: int | None = None,
                         generators: Mapping[int, MdsGenerator] | None = None) -> SmdcCode:
    """Group pairwise code for the (L, r) differential-constant profile.

    Levels 1..r use (a-1, a, L) MDS-B sub-codes whose key slots are filled, in
    order, by M_{r+1}, ..., M_{eta*-1}, the head of M_{eta*}, then fresh key
    symbols.  What is left (tail of M_{eta*} and the levels above it) is coded
    without keys.
    """
    L = spec.L
    if not 1 <= r <= L:
        raise ProfileNotDS(f"r must lie in 1..{L}")
    if not is_ds_profile(spec.N, r):
        raise ProfileNotDS(f"N={spec.N} is not the ({L}, {r}) differential-constant profile")

    def leftover(a):
        m = [a * x for x in spec.m]
        demand = sum((alpha - 1) * m[alpha - 1] for alpha in range(1, r + 1))
        left = {}
        for alpha in range(r + 1, L + 1):
            take = min(demand, m[alpha - 1])
            demand -= take
            left[alpha] = m[alpha - 1] - take
        return left, demand

    def sizes(a):
        left, _ = leftover(a)
        return [(s, alpha, 0) for alpha, s in left.items()]

    a = _choose_blocklength(sizes, spec, blocklength)
    asm = _Assembler(spec.scaled(a))
    eta_star, aux = compute_eta_star(L, r, asm_m := [len(ix) for ix in asm.message_index])
    donors = [v for alpha in range(r + 1, L + 1) for v in asm.message_index[alpha - 1]]
    queue = iter(donors)
    used: list[int] = []

    def next_key():
        try:
            v = next(queue)
            used.append(v)
        except StopIteration:
            v = asm.new_key()
        return asm.unit(v), asm.variables[v]

    for lv in range(1, r + 1):
        syms = list(asm.message_index[lv - 1])
        if not syms:
            continue
        gen = level_generator(spec, lv, lv - 1, "B", seed, generators)
        _encode_level(asm, spec, lv, syms, lv - 1, gen, key_source=next_key)
    used_set = set(used)
    for lv in range(r + 1, L + 1):
        syms = [v for v in asm.message_index[lv - 1] if v not in used_set]
        if not syms:
            continue
        gen = level_generator(spec, lv, 0, "B", seed, generators)
        _encode_level(asm, spec, lv, syms, 0, gen)
    assert len(asm.key_index) == aux
    return asm.finish(spec, "group-pairwise", a, seed, {"r": r, "eta_star": eta_star, "aux_key": aux,
                                                         "m_scaled": asm_m})


def build_code(spec: CodeSpec, scheme: str, seed: int = 0, alpha: int | None = None, beta: int | None = None,
               r: int | None = None, blocklength: int | None = None, generators=None) -> SmdcCode:
    if scheme == "superposition":
        return build_superposition(spec, seed, blocklength, generators)
    if scheme in ("pairwise-a", "pairwise-b"):
        if alpha is None or beta is None:
            raise ConditionNotMet(f"{scheme} needs alpha and beta")
        fn = build_pairwise_a if scheme == "pairwise-a" else build_pairwise_b
        return fn(spec, alpha, beta, seed, blocklength, generators)
    if scheme == "group-pairwise":
        if r is None:
            raise ProfileNotDS("group-pairwise needs r")
        return build_group_pairwise(spec, r, seed, blocklength, generators)
    raise ValueError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
