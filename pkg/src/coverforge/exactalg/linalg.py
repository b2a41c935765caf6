"""Dense exact linear algebra over the supported fields.

GF(p) matrices are reduced with numpy int64 arithmetic (p < 2**31);
rational matrices use fraction-free (Bareiss) forward elimination; the
algebraic fields fall back to plain Gauss-Jordan with exact field ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .fields import QQ, Field, PrimeField


@dataclass
class Matrix:
    rows: list[list]
    field: Field
    ncols: int | None = None

    def __post_init__(self):
        if self.ncols is None:
            self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @property
    def shape(self):
        return len(self.rows), self.ncols

    def kernel(self) -> list[list]:
        return kernel(self.rows, self.field, self.ncols)

    def rank(self) -> int:
        return rank(self.rows, self.field, self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return Matrix(matmul(self.rows, other.rows, self.field), self.field, other.ncols)
        return matvec(self.rows, other, self.field)


# ---------------------------------------------------------------------------
# GF(p) with numpy
# ---------------------------------------------------------------------------


def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an int64 matrix mod p."""
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod_p(a, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def kernel_mod_p(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of the right null space, one vector per row of the result."""
    a = np.asarray(a, dtype=np.int64)
    if ncols is None:
        ncols = a.shape[1]
    if a.size == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref_mod_p(a.reshape(-1, ncols), p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


# ---------------------------------------------------------------------------
# generic fields
# ---------------------------------------------------------------------------


def _bareiss_rational(rows: list[list[Fraction]], ncols: int):
    """Echelon form over QQ by integer fraction-free elimination."""
    mat = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        mat.append([int(Fraction(x) * den) for x in row])
    nrows = len(mat)
    pivots = []
    r, prev = 0, 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        for i in range(r + 1, nrows):
            row = mat[i]
            f = row[c]
            if f:
                mat[i] = [(pr[c] * row[j] - f * pr[j]) // prev for j in range(ncols)]
            else:
                mat[i] = [pr[c] * row[j] // prev for j in range(ncols)]
        prev = pr[c]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rref(rows: Sequence[Sequence], field: Field, ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if isinstance(field, PrimeField):
        if not rows:
            return [], []
        r, piv = rref_mod_p(np.array(rows, dtype=np.int64).reshape(-1, ncols), field.p)
        return [[int(x) for x in row] for row in r], piv
    if field == QQ:
        ech, pivots = _bareiss_rational([list(r) for r in rows], ncols)
        mat = [[Fraction(x) for x in row] for row in ech]
    else:
        mat, pivots = _gauss_echelon([list(r) for r in rows], field, ncols)
    # back substitution to reduced form
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        inv = field.inv(mat[i][c])
        mat[i] = [field.mul(x, inv) for x in mat[i]]
        for k in range(i):
            f = mat[k][c]
            if not field.is_zero(f):
                mat[k] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[k], mat[i])]
    return mat, pivots


def _gauss_echelon(mat, field: Field, ncols: int):
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not field.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(x, inv) for x in mat[r]]
        for i in range(r + 1, nrows):
            f = mat[i][c]
            if not field.is_zero(f):
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rank(rows, field: Field, ncols: int | None = None) -> int:
    if not rows:
        return 0
    if isinstance(field, PrimeField):
        return rank_mod_p(np.array(rows, dtype=np.int64).reshape(len(rows), -1), field.p)
    return len(rref(rows, field, ncols)[1])


def kernel(rows, field: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right null space {v : M v = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if isinstance(field, PrimeField):
        k = kernel_mod_p(np.array(rows, dtype=np.int64).reshape(-1, ncols) if rows else np.zeros((0, ncols)), field.p, ncols)
        return [[int(x) for x in row] for row in k]
    r, pivots = rref(rows, field, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r[i][f])
        basis.append(v)
    return basis


def matvec(rows, v, field: Field) -> list:
    out = []
    for row in rows:
        acc = field.zero
        for a, b in zip(row, v):
            if not field.is_zero(a) and not field.is_zero(b):
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def matmul(a, b, field: Field) -> list[list]:
    if isinstance(field, PrimeField):
        p = field.p
        res = (np.array(a, dtype=object).dot(np.array(b, dtype=object))) % p
        return [[int(x) for x in row] for row in res]
    bt = list(zip(*b))
    return [[_dot(row, col, field) for col in bt] for row in a]


def _dot(u, v, field):
    acc = field.zero
    for x, y in zip(u, v):
        if not field.is_zero(x) and not field.is_zero(y):
            acc = field.add(acc, field.mul(x, y))
    return acc


def solve(rows, rhs, field: Field):
    """One solution x of M x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    r, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][ncols]
    return x


def determinant(rows, field: Field):
    n = len(rows)
    mat = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not field.is_zero(mat[i][c])), None)
        if piv is None:
            return field.zero
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = field.neg(det)
        det = field.mul(det, mat[c][c])
        inv = field.inv(mat[c][c])
        for i in range(c + 1, n):
            f = field.mul(mat[i][c], inv)
            if not field.is_zero(f):
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[c])]
    return det


def integer_determinant(rows) -> int:
    """Exact determinant of an integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
