"""Joint eigenspace decomposition of spaces of forms under a (C7 x C7) torus."""

from __future__ import annotations

from typing import Sequence

from ..exactalg.fields import CyclotomicField, CycElement, Field, FieldError, PrimeField, root_of_unity
from ..exactalg.linalg import kernel, rank, solve
from ..exactalg.poly import MultiPoly
from .actions import ActionError, ActionGen, RootScalar, act_on_form, is_eigenvector


def zeta7(field: Field):
    if isinstance(field, CyclotomicField):
        return CycElement.zeta(1)
    if isinstance(field, PrimeField):
        if (field.p - 1) % 7:
            raise FieldError(f"{field} has no primitive 7th root of unity")
        return root_of_unity(7, field.p)
    raise FieldError(f"{field} does not contain a 7th root of unity")


def eigen_exponent(lam, field: Field, n: int = 7) -> int | None:
    """k with lam = zeta_n^k, or None."""
    z = zeta7(field) if n == 7 else _root(field, n)
    acc = field.one
    for k in range(n):
        if field.is_zero(field.sub(acc, lam)):
            return k
        acc = field.mul(acc, z)
    return None


def _root(field, n):
    if isinstance(field, PrimeField):
        return root_of_unity(n, field.p)
    raise FieldError(f"{field}: only 7th roots are supported outside GF(p)")


def monomial_weight(e, weights: Sequence[Sequence[int]], modulus: int = 7) -> tuple:
    """Weight vector of a monomial from per-variable weight vectors."""
    k = len(weights[0]) if weights else 0
    out = [0] * k
    for i, m in enumerate(e):
        if m:
            for j in range(k):
                out[j] += m * weights[i][j]
    return tuple(x % modulus for x in out)


def _coords(polys, field):
    mons = sorted({m for p in polys for m in p.terms}, reverse=True)
    rows = [[p.coefficient(m) for m in mons] for p in polys]
    return mons, rows


def action_matrix(g: ActionGen, space: Sequence[MultiPoly]) -> list[list]:
    """Matrix A with g.f_k = sum_l A[k][l] f_l; raises if the span is not stable."""
    field = space[0].field
    images = [act_on_form(g, f) for f in space]
    mons, rows = _coords(list(space) + images, field)
    basis = rows[: len(space)]
    if rank(basis, field, len(mons)) != len(space):
        raise ActionError("space elements are linearly dependent")
    # solve x * basis = image for each image (transpose system)
    bt = [[basis[k][c] for k in range(len(space))] for c in range(len(mons))]
    out = []
    for img in rows[len(space):]:
        x = solve(bt, img, field)
        if x is None:
            raise ActionError(f"space is not stable under {g.name}")
        out.append(x)
    return out


def weight_decompose(
    space: Sequence[MultiPoly], torus: Sequence[ActionGen], field: Field | None = None
) -> dict[tuple, list[MultiPoly]]:
    """Map weight tuple -> basis of the joint eigenspace.

    Weights are read from eigenvalues zeta7^k of each torus generator.  When
    every element is already a joint eigenvector the weights are read
    directly; otherwise action matrices are diagonalized.
    """
    space = list(space)
    if not space:
        return {}
    field = field or space[0].field
    for a in torus:
        for b in torus:
            if a * b != b * a:
                raise ActionError(f"torus generators {a.name} and {b.name} do not commute")
    z = zeta7(field)
    direct: dict[tuple, list[MultiPoly]] = {}
    ok = True
    for f in space:
        w = []
        for g in torus:
            lam = is_eigenvector(g, f)
            k = None if lam is None else eigen_exponent(lam, field)
            if k is None:
                ok = False
                break
            w.append(k)
        if not ok:
            break
        direct.setdefault(tuple(w), []).append(f)
    if ok:
        return direct
    mats = [action_matrix(g, space) for g in torus]
    n = len(space)
    out: dict[tuple, list[MultiPoly]] = {}
    total = 0
    zp = [field.one]
    for _ in range(6):
        zp.append(field.mul(zp[-1], z))

    def rec(prefix, constraint_rows):
        nonlocal total
        if len(prefix) == len(mats):
            ker = kernel(constraint_rows, field, n) if constraint_rows else [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
            if ker:
                vecs = []
                for v in ker:
                    f = MultiPoly(space[0].vars, {}, field)
                    for c, b in zip(v, space):
                        if not field.is_zero(c):
                            f = f + b.scale(c)
                    vecs.append(f)
                out[tuple(prefix)] = vecs
                total += len(vecs)
            return
        a = mats[len(prefix)]
        for k in range(7):
            # left eigenvectors: v A = zeta^k v  <=>  (A^T - zeta^k) v = 0
            rows = [[field.sub(a[j][i], zp[k]) if i == j else a[j][i] for j in range(n)] for i in range(n)]
            if rank(constraint_rows + rows, field, n) < n:
                rec(prefix + [k], constraint_rows + rows)

    rec([], [])
    if total != n:
        raise ActionError(f"torus is not diagonalizable on this space ({total} of {n} dimensions)")
    return out


def weight_table(symbol_weights: Sequence[tuple], degree: int) -> dict[tuple, int]:
    """Dimension of each weight space of Sym^degree of weighted symbols."""
    from ..exactalg.poly import monomials_of_degree

    out: dict[tuple, int] = {}
    for e in monomials_of_degree(len(symbol_weights), degree):
        w = monomial_weight(e, symbol_weights)
        out[w] = out.get(w, 0) + 1
    return out


def _echelon_polys(polys: Sequence[MultiPoly], field: Field) -> list[MultiPoly]:
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    from ..exactalg.linalg import rref

    mons = sorted({m for f in polys for m in f.terms}, reverse=True)
    rows = [[f.coefficient(m) for m in mons] for f in polys]
    red, piv = rref(rows, field, len(mons))
    return [MultiPoly(polys[0].vars, {m: c for m, c in zip(mons, r) if not field.is_zero(c)}, field) for r in red[: len(piv)]]


def eigen_decompose(
    space: Sequence[MultiPoly], actions: Sequence[ActionGen], field: Field | None = None
) -> dict[tuple, list[MultiPoly]]:
    """Split a stable span into joint eigenspaces of commuting finite-order actions.

    Key: exponents (k_1, ..., k_r) with g_i . f = zeta_{n_i}^{k_i} f, where
    zeta_n is the field image of exp(2 pi i / n) used for action scalars.
    Each eigenspace basis is echelonized.  Raises if the actions do not
    commute or the span is not stable.
    """
    space = [f for f in space if not f.is_zero()]
    if not space:
        return {}
    field = field or space[0].field
    for a in actions:
        for b in actions:
            if a * b != b * a:
                raise ActionError(f"{a.name} and {b.name} do not commute")
    parts: dict[tuple, list[MultiPoly]] = {(): _echelon_polys(space, field)}
    total = len(parts[()])
    for g in actions:
        n = g.order()
        z = RootScalar.zeta(n).to_field(field)
        zinv = field.inv(z)
        ninv = field.inv(field(n) if not isinstance(field, PrimeField) else n % field.p)
        new: dict[tuple, list[MultiPoly]] = {}
        for key, basis in parts.items():
            orbits = []
            for f in basis:
                seq = [f]
                for _ in range(n - 1):
                    seq.append(act_on_form(g, seq[-1]))
                orbits.append(seq)
            for k in range(n):
                comps = []
                for seq in orbits:
                    acc = MultiPoly.zero(seq[0].vars, field)
                    c = field.one
                    step = field.pow(zinv, k)
                    for h in seq:
                        acc = acc + h.scale(field.mul(c, ninv))
                        c = field.mul(c, step)
                    comps.append(acc)
                ech = _echelon_polys(comps, field)
                if ech:
                    new[key + (k,)] = ech
        parts = new
        if sum(len(v) for v in parts.values()) != total:
            raise ActionError(f"span is not stable under {g.name}")
    return parts
