"""Prime-field arithmetic and exact linear algebra over GF(p).

Two layers live here. ``FieldElement`` and ``Matrix`` are small immutable
value types for callers who want checked arithmetic. The ``*_mod`` helpers
work on plain integer numpy arrays and are what the coding and verification
code uses internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, MismatchedModulus, NotPrime, SingularMatrix


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    """Trial division; p is small everywhere in this package."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"modulus {p!r} is not prime")
    return int(p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise MismatchedModulus(f"GF({self.modulus}) vs GF({other.modulus})")
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElement(int(other), self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.modulus})")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def field_ops(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` to two elements of the same field."""
    if a.modulus != b.modulus:
        raise MismatchedModulus(f"GF({a.modulus}) vs GF({b.modulus})")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field op {op!r}")


@dataclass(frozen=True)
class Matrix:
    """Dense matrix over GF(p), stored row-major as reduced integers."""

    rows: int
    cols: int
    entries: tuple
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")
        object.__setattr__(self, "entries", tuple(int(v) % self.modulus for v in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r), p)

    @classmethod
    def from_array(cls, arr, p: int) -> "Matrix":
        arr = np.asarray(arr, dtype=np.int64)
        return cls(arr.shape[0], arr.shape[1], tuple(arr.ravel().tolist()), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls.from_array(np.eye(n, dtype=np.int64), p)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_lists(self) -> list[list[int]]:
        return self.to_array().tolist()

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.entries[i * self.cols + j], self.modulus)

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_array(self.to_array().T, self.modulus)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.modulus != self.modulus:
            raise MismatchedModulus(f"GF({self.modulus}) vs GF({other.modulus})")
        return Matrix.from_array(matmul_mod(self.to_array(), other.to_array(), self.modulus), self.modulus)


# ---------------------------------------------------------------------------
# numpy layer


MAX_ARRAY_PRIME = 2**31 - 1  # (p-1)^2 must fit in int64


def _array_prime(p: int) -> int:
    if p > MAX_ARRAY_PRIME:
        raise ValueError(f"array arithmetic supports p <= {MAX_ARRAY_PRIME}, got {p}")
    return p


def matmul_mod(a, b, p: int) -> np.ndarray:
    _array_prime(p)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    # entries are < p, so chunk the inner dimension to keep partial sums in int64
    limit = max(1, (2**62) // max(1, (p - 1) ** 2))
    if a.shape[-1] <= limit:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[-1], limit):
        out = (out + a[:, s : s + limit] @ b[s : s + limit]) % p
    return out


def row_reduce(arr, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p. Returns (rref, pivot columns)."""
    _array_prime(p)
    m = np.array(arr, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-D array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod(arr, p: int) -> int:
    arr = np.asarray(arr)
    if arr.size == 0:
        return 0
    return len(row_reduce(arr, p)[1])


def solve_mod(a, b, p: int) -> np.ndarray:
    """Unique x with a @ x = b for square full-rank a; b may be a vector or a matrix."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("solve_mod needs a square matrix")
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    bb = b.reshape(n, -1)
    red, piv = row_reduce(np.hstack([a, bb]), p)
    if piv[:n] != list(range(n)):
        raise SingularMatrix(f"matrix has rank {sum(1 for c in piv if c < n)} < {n}")
    x = red[:n, n:]
    return x[:, 0] if vec else x


def inverse_mod(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return solve_mod(a, np.eye(a.shape[0], dtype=np.int64), p)


def left_solve_mod(a, target, p: int) -> np.ndarray | None:
    """Find X with X @ a = target (mod p), or None if some target row is outside a's row space.

    Used to build decoders: rows of ``a`` are the observed linear forms and the
    rows of ``target`` are the forms we want to recover.
    """
    a = np.asarray(a, dtype=np.int64) % p
    target = np.asarray(target, dtype=np.int64) % p
    k = a.shape[0]
    if k == 0:
        return np.zeros((target.shape[0], 0), dtype=np.int64) if not target.any() else None
    # transpose problem: a.T @ X.T = target.T
    aug = np.hstack([a.T, target.T])
    red, piv = row_reduce(aug, p)
    if any(c >= k for c in piv):
        return None
    sol = np.zeros((k, target.shape[0]), dtype=np.int64)
    for row, c in enumerate(piv):
        sol[c] = red[row, k:]
    return sol.T % p


# ---------------------------------------------------------------------------
# checked wrappers on the value types


def rank(m: Matrix) -> int:
    return rank_mod(m.to_array(), m.modulus)


def solve_linear(a: Matrix, b: Iterable[FieldElement | int]) -> list[FieldElement]:
    if a.rows != a.cols:
        raise ValueError("solve_linear needs a square matrix")
    vals = []
    for v in b:
        if isinstance(v, FieldElement):
            if v.modulus != a.modulus:
                raise MismatchedModulus(f"GF({a.modulus}) vs GF({v.modulus})")
            vals.append(v.value)
        else:
            vals.append(int(v))
    if len(vals) != a.rows:
        raise ValueError("right-hand side has the wrong length")
    x = solve_mod(a.to_array(), np.array(vals, dtype=np.int64), a.modulus)
    return [FieldElement(int(v), a.modulus) for v in x]


def symbol_width(p: int) -> int:
    """Bytes per symbol in the wire format: ceil(ceil(log2 p) / 8)."""
    bits = (int(p) - 1).bit_length()
    return max(1, (bits + 7) // 8)
