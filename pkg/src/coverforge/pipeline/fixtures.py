"""Small built-in models used by tests and the acceptance suite."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from ..equivariant.actions import ActionGen, RootScalar, act_on_form
from ..exactalg.fields import GF, PrimeField
from ..exactalg.poly import MultiPoly
from ..exactalg.polyio import parse_poly
from .model import VarietyModel
from .multable import MulTable, ProductEntry, all_pairs


def _model(name, vars, texts, p, actions=(), **meta) -> VarietyModel:
    F = GF(p)
    return VarietyModel(name, list(vars), [parse_poly(t, vars, F) for t in texts], F, list(actions), meta)


def projective_plane(p: int = 43) -> VarietyModel:
    return _model("P2", ["x", "y", "z"], [], p, dimension=2)


def twisted_cubic(p: int = 43) -> VarietyModel:
    """Image of (s^3, s^2 t, s t^2, t^3)."""
    return _model("twisted-cubic", ["x0", "x1", "x2", "x3"], ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"], p, dimension=1)


VERONESE_VARS = ["a", "b", "c", "d", "e", "f"]  # x^2, y^2, z^2, xy, xz, yz


def veronese_surface(p: int = 43) -> VarietyModel:
    rels = ["a*b - d^2", "a*c - e^2", "b*c - f^2", "a*f - d*e", "b*e - d*f", "c*d - e*f"]
    return _model("veronese", VERONESE_VARS, rels, p, dimension=2)


def veronese_point(x: int, y: int, z: int, p: int) -> tuple:
    return tuple(v % p for v in (x * x, y * y, z * z, x * y, x * z, y * z))


def conic(p: int = 7) -> VarietyModel:
    return _model("conic", ["x", "y", "z"], ["x^2 + y*z"], p, dimension=1)


def nodal_cubic(p: int = 43) -> VarietyModel:
    return _model("nodal-cubic", ["x", "y", "z"], ["y^2*z - x^3 - x^2*z"], p, dimension=1)


def fermat_cubic(p: int = 337) -> VarietyModel:
    sigma = ActionGen.permutation("g3", (1, 2, 0))
    return _model("fermat-cubic", ["x", "y", "z"], ["x^3 + y^3 + z^3"], p, [sigma], dimension=1)


def cyclic_permutation_3() -> ActionGen:
    return ActionGen.permutation("g3", (1, 2, 0))


def section_fixture(p: int = 43) -> VarietyModel:
    """A stand-in for W with coordinates (E^2, AB, CD, AD + BC, AD - BC).

    With A, B of weight 1 and C, D of weight a = 3 for the order-7 action,
    the weights are (0, 2, 6, 4, 4); the involution swaps B, D-type products
    AD and BC.  The image is the quadric P3^2 - P4^2 - 4 P1 P2 = 0, on which
    s1 = (P3 + P4)/2 = AD, s2 = (P3 - P4)/2 = BC, s3 = P1, s4 = P2.
    """
    t3 = ActionGen.diagonal("t3", [RootScalar(1, Fraction(k, 7)) for k in (0, 2, 6, 4, 4)])
    iota = ActionGen.diagonal("iota", [RootScalar(s) for s in (1, 1, 1, 1, -1)])
    return _model("section-fixture", [f"P{i}" for i in range(5)], ["P3^2 - P4^2 - 4*P1*P2"], p, [t3, iota], dimension=3)


# ---------------------------------------------------------------------------
# a mu_7 cover of the Fermat cubic
# ---------------------------------------------------------------------------
#
# Base forms h, sh = g3.h, s2h = g3.g3.h and m = x + y + z (g3-invariant).
# The cover adjoins E with E^7 = N = h sh^2 s2h^4; the C7 generator sends
# E -> zeta E, and g3 lifts by E -> E^4 / (sh s2h^2), which has order 3
# because E^63 = N^9.  Functions on the cover are E^k times a Laurent
# monomial in the base forms.

FORMS = ("h", "sh", "s2h", "m")
_SHIFT = {"h": "sh", "sh": "s2h", "s2h": "h", "m": "m"}
N_EXPONENTS = {"h": 1, "sh": 2, "s2h": 4}
LIFT_EXPONENTS = {"sh": -1, "s2h": -2}  # g3 . E = E^4 * sh^-1 * s2h^-2


@dataclass(frozen=True)
class CoverFunction:
    k: int  # power of E, reduced to 0..6 using E^7 = N
    exps: tuple  # exponents of FORMS

    @classmethod
    def make(cls, k: int, exps: dict) -> "CoverFunction":
        c = Counter(exps)
        q, r = divmod(k, 7)
        for f, e in N_EXPONENTS.items():
            c[f] += q * e
        return cls(r, tuple(c.get(f, 0) for f in FORMS))

    def as_dict(self) -> dict:
        return dict(zip(FORMS, self.exps))

    def __mul__(self, other: "CoverFunction") -> "CoverFunction":
        return CoverFunction.make(self.k + other.k, {f: a + b for f, a, b in zip(FORMS, self.exps, other.exps)})

    def inverse(self) -> "CoverFunction":
        # E^-k = E^(7-k) / N
        d = {f: -e for f, e in self.as_dict().items()}
        if self.k == 0:
            return CoverFunction(0, tuple(d[f] for f in FORMS))
        for f, e in N_EXPONENTS.items():
            d[f] -= e
        return CoverFunction.make(7 - self.k, d)

    def lift_g3(self) -> "CoverFunction":
        """Pull back along the lift of g3."""
        d = {f: 0 for f in FORMS}
        for f, e in self.as_dict().items():
            d[_SHIFT[f]] += e
        for f, e in LIFT_EXPONENTS.items():
            d[f] += e * self.k
        return CoverFunction.make(4 * self.k, d)


@dataclass
class Mu7Fixture:
    base: VarietyModel
    g3: ActionGen
    forms: dict  # name -> MultiPoly
    basis: dict  # residue -> CoverFunction
    table: MulTable  # exact table (all scales 1)

    def form_value(self, name: str, pt) -> int:
        return self.forms[name].evaluate(list(pt))

    def function_value(self, f: CoverFunction, pt, e_value: int) -> int | None:
        p = self.base.field.p
        num, den = 1, 1
        for name, e in f.as_dict().items():
            v = self.form_value(name, pt) % p
            if e > 0:
                num = num * pow(v, e, p) % p
            elif e < 0:
                den = den * pow(v, -e, p) % p
        if den == 0:
            return None
        return num * pow(e_value, f.k, p) * pow(den, -1, p) % p


def _form_product(forms: dict, exps: dict, field: PrimeField, vars) -> tuple[MultiPoly, MultiPoly]:
    num = MultiPoly.constant(vars, 1, field)
    den = MultiPoly.constant(vars, 1, field)
    for name, e in exps.items():
        if e > 0:
            num = num * forms[name] ** e
        elif e < 0:
            den = den * forms[name] ** (-e)
    return num, den


def mu7_cover_fixture(p: int = 337, h_text: str = "x + 2*y + 5*z") -> Mu7Fixture:
    base = fermat_cubic(p)
    F = base.field
    g3 = base.action("g3")
    h = parse_poly(h_text, base.coords, F)
    forms = {
        "h": h,
        "sh": act_on_form(g3, h),
        "s2h": act_on_form(g3, act_on_form(g3, h)),
        "m": parse_poly("x + y + z", base.coords, F),
    }
    E = CoverFunction(1, (0, 0, 0, 0))
    inv_m = CoverFunction(0, (0, 0, 0, -1))
    basis = {0: CoverFunction(0, (0, 0, 0, 0))}
    basis[1] = E * inv_m
    basis[4] = basis[1].lift_g3()
    basis[2] = basis[4].lift_g3()
    basis[6] = CoverFunction.make(6, {"m": -6})
    basis[3] = basis[6].lift_g3()
    basis[5] = basis[3].lift_g3()
    for k, f in basis.items():
        if f.k != k:
            raise AssertionError(f"basis element {k} has character {f.k}")
    entries = {}
    for i, j in all_pairs():
        t = (i + j) % 7
        ratio = basis[i] * basis[j] * basis[t].inverse()
        if ratio.k != 0:
            raise AssertionError("product ratio is not a function on the base")
        num, den = _form_product(forms, ratio.as_dict(), F, base.coords)
        entries[(i, j)] = ProductEntry((i, j), t, num, den, 1)
    table = MulTable(F, base.coords, entries, "exact")
    return Mu7Fixture(base, g3, forms, basis, table)


def mu7_cover_coordinates(fx: Mu7Fixture) -> tuple[list, ActionGen]:
    """Degree-1 functions (x, y, z, E, g3 E, g3^2 E) on the cover and the C3 lift on them."""
    from .multable import CoverCoordinate

    F, V = fx.base.field, fx.base.coords
    one = MultiPoly.constant(V, 1, F)
    m = fx.forms["m"]
    coords = [CoverCoordinate(0, MultiPoly.variable(V, i, F), one) for i in range(3)]
    coords += [CoverCoordinate(k, m, one) for k in (1, 4, 2)]  # m e_k = E, g3 E, g3^2 E up to scale
    return coords, ActionGen.permutation("g3", (1, 2, 0, 4, 5, 3))


def veronese_cover_inputs(p: int = 43) -> tuple[VarietyModel, MultiPoly, list[MultiPoly]]:
    """Y = Veronese surface, U10 and three further quadrics for a double cover."""
    Y = veronese_surface(p)
    V, F = Y.coords, Y.field
    U10 = parse_poly("a*b + c^2 + d*e", V, F)
    basis = [parse_poly(s, V, F) for s in ("a^2", "b*f", "e*f + c*d")]
    return Y, U10, basis


def quadric_cone_fixture(p: int = 43) -> VarietyModel:
    """Z0 Z3 = Z1^2 with g2 = diag(-1, 1, 1, -1) and a trivial order-7 action.

    {Z0 = 0} meets the cone in a double line, so the anti-invariant cubic
    Z1 Z2 Z3 vanishes there without lying in (Z0) + I in degree 3: five
    invariant quadrics modulo the ideal and one extra cubic.
    """
    g2 = ActionGen.diagonal("g2", [RootScalar(s) for s in (-1, 1, 1, -1)])
    return _model("quadric-cone", ["Z0", "Z1", "Z2", "Z3"], ["Z0*Z3 - Z1^2"], p, [g2, ActionGen.identity(4, "t3")], dimension=2)
