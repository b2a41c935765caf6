"""Smith normal form over the integers."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import integer_determinant


@dataclass
class SNFResult:
    diagonal: list[int]
    left: list[list[int]]
    right: list[list[int]]

    def check(self, a: list[list[int]]) -> bool:
        """left * a * right is diagonal with entries ``diagonal``."""
        m = len(a)
        n = len(a[0]) if a else len(self.right)
        prod = _mul(_mul(self.left, a), self.right)
        for i in range(m):
            for j in range(n):
                want = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                if prod[i][j] != want:
                    return False
        d = [x for x in self.diagonal if x]
        if any(d[k + 1] % d[k] for k in range(len(d) - 1)):
            return False
        return abs(integer_determinant(self.left)) == 1 and abs(integer_determinant(self.right)) == 1


def _mul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: list[list[int]], transforms: bool = True) -> SNFResult:
    """Smith normal form ``left * a * right = diag`` with unimodular transforms.

    Pivots are chosen by minimal absolute value; entries are Python ints so
    intermediate growth is harmless.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(map(int, row)) for row in a]
    u = _identity(m) if transforms else None
    v = _identity(n) if transforms else None

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = s[src], s[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if u is not None:
            us, ud = u[src], u[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in s:
            if row[src]:
                row[dst] += q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = s[t][t]
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
            # smallest leftover in the pivot row/column becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                x = s[i][t]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), i, None)
            for j in range(t + 1, n):
                x = s[t][j]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), None, j)
            if cand is not None:
                if cand[1] is not None:
                    swap_rows(cand[1], t)
                else:
                    swap_cols(cand[2], t)
                continue
            bad = None
            for i in range(t + 1, m):
                if any(x % p for x in s[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        diag.append(s[t][t])
    return SNFResult(diag, u or [], v or [])


def elementary_divisors(a: list[list[int]]) -> list[int]:
    return [d for d in smith_normal_form(a, transforms=False).diagonal if d]


def abelian_invariants_sparse(rows: list[dict[int, int]], ncols: int) -> tuple[list[int], int]:
    """Torsion invariants (>1) and free rank of Z^ncols / rowspace.

    Unit pivots are eliminated first on the sparse rows (Markowitz choice),
    which removes almost all Schreier generators of a Reidemeister-Schreier
    presentation; the small remainder goes through the dense SNF.
    """
    rows = [{c: x for c, x in r.items() if x} for r in rows]
    rows = [r for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for k, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(k)
    alive = set(range(len(rows)))
    eliminated_cols = 0
    while True:
        best = None
        for k in alive:
            r = rows[k]
            for c, x in r.items():
                if x == 1 or x == -1:
                    cost = (len(r) - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, k, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, k, c = best
        piv = rows[k]
        sgn = piv[c]
        for other in list(col_rows[c]):
            if other == k:
                continue
            r = rows[other]
            q = r[c] * sgn  # r -= q * piv eliminates column c
            for cc, x in piv.items():
                nv = r.get(cc, 0) - q * x
                if nv:
                    if cc not in r:
                        col_rows.setdefault(cc, set()).add(other)
                    r[cc] = nv
                else:
                    if cc in r:
                        del r[cc]
                        col_rows[cc].discard(other)
            if not r:
                alive.discard(other)
        for cc in piv:
            col_rows[cc].discard(k)
        alive.discard(k)
        rows[k] = {}
        eliminated_cols += 1
    used_cols = sorted({c for k in alive for c in rows[k]})
    index = {c: i for i, c in enumerate(used_cols)}
    dense = []
    for k in sorted(alive):
        row = [0] * len(used_cols)
        for c, x in rows[k].items():
            row[index[c]] = x
        dense.append(row)
    if dense:
        d = [x for x in smith_normal_form(dense, transforms=False).diagonal if x]
    else:
        d = []
    rank = eliminated_cols + len(d)
    torsion = [x for x in d if x > 1]
    return torsion, ncols - rank
