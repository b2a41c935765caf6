"""Linear forms s1..s4 on W with s1 s2 = s3 s4 and prescribed weights.

s1, s2 have weight a+1, s3 weight 2 and s4 weight 2a for a diagonal order-7
action; the covering involution swaps s1 and s2 and fixes s3, s4.  The
identity is imposed modulo the degree-2 part of the ideal of W.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..equivariant.actions import ActionGen
from ..exactalg.fields import PrimeField
from ..exactalg.linalg import rref
from ..exactalg.poly import MultiPoly, monomials_of_degree
from .model import ModelError, VarietyModel
from .sampling import solve_zero_dim


class SectionError(RuntimeError):
    pass


@dataclass
class SectionSolution:
    s1: MultiPoly
    s2: MultiPoly
    s3: MultiPoly
    s4: MultiPoly

    def as_tuple(self) -> tuple:
        return (self.s1, self.s2, self.s3, self.s4)

    def key(self):
        """Gauge-normalized key identifying the solution up to scaling and the swap s1 <-> s2."""
        a = tuple(sorted(self.s1.normalized().terms.items()))
        b = tuple(sorted(self.s2.normalized().terms.items()))
        return (min(a, b), max(a, b), tuple(sorted(self.s3.normalized().terms.items())), tuple(sorted(self.s4.normalized().terms.items())))


def diagonal_weights(g: ActionGen, order: int = 7) -> list[int]:
    if not g.is_diagonal():
        raise ModelError(f"action {g.name} is not diagonal")
    out = []
    for s in g.scalars:
        if s.coef != 1 or (s.turn * order).denominator != 1:
            raise ModelError(f"action {g.name} has a scalar that is not an {order}-th root of unity")
        out.append(int(s.turn * order) % order)
    return out


def involution_signs(g: ActionGen) -> list[int]:
    if not g.is_diagonal():
        raise ModelError(f"involution {g.name} is not diagonal")
    out = []
    for s in g.scalars:
        if s.coef != 1 or s.turn not in (0, Fraction(1, 2)):
            raise ModelError(f"involution {g.name} has a scalar other than +-1")
        out.append(1 if s.turn == 0 else -1)
    return out


class QuadricNormalForm:
    """Coordinates of quadrics modulo the span of the degree-2 generators."""

    def __init__(self, W: VarietyModel):
        self.field = W.field
        self.mons = monomials_of_degree(len(W.coords), 2)
        self.index = {m: i for i, m in enumerate(self.mons)}
        quads = [f for f in W.ideal if f.degree() == 2]
        rows = [[f.coefficient(m) for m in self.mons] for f in quads]
        red, piv = rref(rows, self.field, len(self.mons)) if rows else ([], [])
        self.rows = red[: len(piv)]
        self.pivots = list(piv)
        pset = set(self.pivots)
        self.free = [j for j in range(len(self.mons)) if j not in pset]

    def reduce(self, coeffs: list) -> list:
        """Residual entries (free monomials) of a coefficient vector whose
        entries are scalars or MultiPolys in the unknowns."""
        v = list(coeffs)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if _is_zero(c):
                continue
            for j in self.free:
                if row[j]:
                    v[j] = v[j] - c * row[j]
        out = [v[j] for j in self.free]
        return [x if isinstance(x, MultiPoly) else x % self.field.p for x in out]


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, MultiPoly) else c == 0


def _product_coeffs(a: dict, b: dict, n: int, index, zero) -> list:
    out = [zero] * len(index)
    for i, ca in a.items():
        for j, cb in b.items():
            e = [0] * n
            e[i] += 1
            e[j] += 1
            k = index[tuple(e)]
            out[k] = out[k] + ca * cb
    return out


def find_weighted_sections(
    W: VarietyModel,
    a: int,
    weight_action: str = "t3",
    involution: str = "iota",
) -> list[SectionSolution]:
    """All solutions up to scaling and the swap s1 <-> s2 (possibly none).

    Gauge: the first nonzero coefficient of s1 and of s3 is 1; every choice
    of first nonzero position is a separate branch solved exactly.  A
    positive-dimensional branch means the constraints do not pin the
    sections down and raises SectionError.
    """
    field = W.field
    if not isinstance(field, PrimeField):
        raise SectionError("sections are solved over GF(q)")
    p = field.p
    n = len(W.coords)
    wts = diagonal_weights(W.action(weight_action))
    sg = involution_signs(W.action(involution))
    idx1 = [i for i in range(n) if wts[i] == (a + 1) % 7]
    idx3 = [i for i in range(n) if wts[i] == 2 % 7 and sg[i] == 1]
    idx4 = [i for i in range(n) if wts[i] == (2 * a) % 7 and sg[i] == 1]
    if not idx1 or not idx3 or not idx4:
        return []
    nf = QuadricNormalForm(W)
    names = [f"c{i}" for i in idx1] + [f"d{i}" for i in idx3] + [f"e{i}" for i in idx4]
    m = len(names)
    U = [MultiPoly.variable(names, k, field) for k in range(m)]
    zero = MultiPoly.zero(names, field)
    one = MultiPoly.constant(names, 1, field)
    sols: dict = {}
    for b1 in range(len(idx1)):
        for b3 in range(len(idx3)):
            cs = [zero] * b1 + [one] + U[b1 + 1 : len(idx1)]
            ds = [zero] * b3 + [one] + U[len(idx1) + b3 + 1 : len(idx1) + len(idx3)]
            es = U[len(idx1) + len(idx3) :]
            fixed = [U[k] for k in range(b1 + 1)] + [U[len(idx1) + k] for k in range(b3 + 1)]
            s1 = dict(zip(idx1, cs))
            s2 = {i: (c if sg[i] == 1 else -c) for i, c in s1.items()}
            s3 = dict(zip(idx3, ds))
            s4 = dict(zip(idx4, es))
            q = _product_coeffs(s1, s2, n, nf.index, zero)
            r = _product_coeffs(s3, s4, n, nf.index, zero)
            eqs = [x for x in nf.reduce([u - v for u, v in zip(q, r)]) if not x.is_zero()]
            # gauge-fixed unknowns are pinned explicitly so the system stays square
            eqs += [U[k] - (1 if k in (b1, len(idx1) + b3) else 0) for k in range(m) if U[k] in fixed]
            found = solve_zero_dim(eqs, p)
            if found is None:
                raise SectionError(f"positive-dimensional solution set in branch ({idx1[b1]}, {idx3[b3]})")
            for sol in found:
                forms = []
                for part in (s1, s2, s3, s4):
                    terms = {}
                    for i, c in part.items():
                        v = c.evaluate(list(sol)) if isinstance(c, MultiPoly) else c
                        if v % p:
                            e = [0] * n
                            e[i] = 1
                            terms[tuple(e)] = v % p
                    forms.append(MultiPoly(W.coords, terms, field))
                if any(f.is_zero() for f in forms):
                    continue
                s = SectionSolution(*forms)
                sols.setdefault(s.key(), s)
    return [sols[k] for k in sorted(sols)]


def check_identity(W: VarietyModel, sol: SectionSolution) -> bool:
    """s1 s2 - s3 s4 lies in the span of the quadrics of W."""
    nf = QuadricNormalForm(W)
    d = sol.s1 * sol.s2 - sol.s3 * sol.s4
    return all(c == 0 for c in nf.reduce([d.coefficient(m) for m in nf.mons]))


def _ratio(f: MultiPoly, g: MultiPoly):
    """lambda with f = lambda g, or None."""
    if f.is_zero() or g.is_zero() or set(f.terms) != set(g.terms):
        return None
    fld = f.field
    e = next(iter(g.terms))
    lam = fld.div(f.terms[e], g.terms[e])
    return lam if f == g.scale(lam) else None


def compare_up_to_gauge(found: Sequence[MultiPoly], expected: Sequence[MultiPoly]) -> bool:
    """Whether (s1..s4) match up to s1,s2 -> l s1, l s2; s3 -> m s3; s4 -> l^2/m s4,
    allowing the swap s1 <-> s2."""
    f1, f2, f3, f4 = found
    for e1, e2 in ((expected[0], expected[1]), (expected[1], expected[0])):
        l1, l2 = _ratio(f1, e1), _ratio(f2, e2)
        mu = _ratio(f3, expected[2])
        nu = _ratio(f4, expected[3])
        if None in (l1, l2, mu, nu) or l1 != l2:
            continue
        fld = f1.field
        if fld.mul(mu, nu) == fld.mul(l1, l1):
            return True
    return False
