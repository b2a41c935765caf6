"""Change of coordinates diagonalizing an order-3 action over GF(p)."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from ..equivariant.actions import ActionError, ActionGen, RootScalar
from ..exactalg.fields import FieldError, PrimeField
from ..exactalg.linalg import rref, solve
from ..exactalg.poly import MultiPoly
from ..exactalg.modular import nontrivial_cube_root_of_unity


@dataclass
class C3Diagonalization:
    forms: list[list[int]]  # new coordinate k = sum forms[k][i] x_i
    exponents: list[int]  # g3 . y_k = omega^exponents[k] y_k
    omega: int
    inverse: list[list[int]]  # x_i = sum inverse[i][k] y_k
    ideal: list[MultiPoly]
    action: ActionGen
    vars: list[str]


def _act_linear(g: ActionGen, vec: Sequence[int], field: PrimeField) -> list[int]:
    """Coefficient vector of g applied to the linear form sum vec[i] x_i."""
    sc = g.field_scalars(field)
    out = [0] * len(vec)
    for i, c in enumerate(vec):
        if c:
            t = g.targets[i]
            out[t] = (out[t] + c * sc[i]) % field.p
    return out


def eigen_linear_forms(g3: ActionGen, field: PrimeField) -> tuple[list[list[int]], list[int], int]:
    """Eigenbasis of the linear forms, sorted by eigenvalue exponent then index."""
    p = field.p
    if (p - 1) % 3:
        raise FieldError(f"p = {p} is not 1 mod 3")
    if g3.order() not in (1, 3):
        raise ActionError(f"{g3.name} does not have order dividing 3")
    w = nontrivial_cube_root_of_unity(p)
    n = g3.size
    inv3 = pow(3, -1, p)
    forms, exps = [], []
    for k in range(3):
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            acc = [0] * n
            v = e
            for j in range(3):
                c = pow(w, (-j * k) % 3, p) * inv3 % p
                acc = [(a + c * b) % p for a, b in zip(acc, v)]
                v = _act_linear(g3, v, field)
            if any(acc):
                rows.append((i, acc))
        chosen = []
        for i, acc in rows:
            if _rank(chosen + [acc], field) > len(chosen):
                chosen.append(acc)
        for acc in chosen:
            lead = next(c for c in acc if c)
            li = pow(lead, -1, p)
            forms.append([c * li % p for c in acc])
            exps.append(k)
    if len(forms) != n:
        raise ActionError("action is not diagonalizable over this field")
    return forms, exps, w


def _rank(rows, field) -> int:
    if not rows:
        return 0
    return len(rref(rows, field, len(rows[0]))[1])


def diagonalize_c3(model, g3: ActionGen | None = None, new_names: Sequence[str] | None = None):
    """Rewrite the ideal in eigen-coordinates of g3 and split each degree
    piece of the ideal into eigen-relations (then echelonize them).

    ``model`` is a VarietyModel (returned updated) or a list of polynomials
    (a C3Diagonalization is returned)."""
    polys = list(getattr(model, "ideal", model))
    if g3 is None:
        g3 = next(a for a in model.actions if a.name == "g3")
    field = polys[0].field
    if not isinstance(field, PrimeField):
        raise FieldError("C3 diagonalization runs over GF(p)")
    forms, exps, w = eigen_linear_forms(g3, field)
    n = len(forms)
    # x = T y with T the inverse of the forms matrix (rows: forms)
    fT = [[forms[k][i] for k in range(n)] for i in range(n)]  # fT[i][k]
    inv = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        # sum_k y_k forms[k] = x  =>  solve forms^T a = e_i
        a = solve(fT, e, field)
        if a is None:
            raise ActionError("eigenforms are not a basis")
        inv.append(a)  # x_i = sum_k a[k] y_k
    names = list(new_names) if new_names else [f"Y{k}" for k in range(n)]
    ys = [MultiPoly.variable(names, k, field) for k in range(n)]
    images = []
    for i in range(n):
        acc = MultiPoly.zero(names, field)
        for k in range(n):
            if inv[i][k]:
                acc = acc + ys[k].scale(inv[i][k])
        images.append(acc)
    rewritten = [f.substitute(images) for f in polys]
    diag = ActionGen.diagonal("g3", [RootScalar(1, Fraction(k, 3)) for k in exps])
    ideal = _eigen_split(rewritten, diag, field)
    result = C3Diagonalization(forms, exps, w, inv, ideal, diag, names)
    if isinstance(model, (list, tuple)):
        return result
    return replace(model, coords=names, ideal=ideal, actions=[diag], metadata={**model.metadata, "c3_omega": w, "c3_forms": forms})


def _eigen_split(polys: list[MultiPoly], g: ActionGen, field: PrimeField) -> list[MultiPoly]:
    """Basis of each degree piece made of g-eigenvectors, echelonized."""
    from ..equivariant.actions import act_on_form

    p = field.p
    w = nontrivial_cube_root_of_unity(p)
    inv3 = pow(3, -1, p)
    by_deg: dict[int, list[MultiPoly]] = {}
    for f in polys:
        if not f.is_zero():
            by_deg.setdefault(f.degree(), []).append(f)
    out = []
    for d in sorted(by_deg):
        group = by_deg[d]
        for k in range(3):
            comps = []
            for f in group:
                acc = MultiPoly.zero(f.vars, field)
                v = f
                for j in range(3):
                    acc = acc + v.scale(pow(w, (-j * k) % 3, p) * inv3 % p)
                    v = act_on_form(g, v)
                if not acc.is_zero():
                    comps.append(acc)
            out += _echelon(comps, field)
    return out


def _echelon(polys: list[MultiPoly], field: PrimeField) -> list[MultiPoly]:
    if not polys:
        return []
    mons = sorted({m for f in polys for m in f.terms}, reverse=True)
    rows = [[f.coefficient(m) for m in mons] for f in polys]
    red, piv = rref(rows, field, len(mons))
    out = []
    for r in red[: len(piv)]:
        out.append(MultiPoly(polys[0].vars, {m: c for m, c in zip(mons, r) if c}, field))
    return out


def monomial_count(polys: Sequence[MultiPoly]) -> int:
    return sum(f.support_size() for f in polys)
