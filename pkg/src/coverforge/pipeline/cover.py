"""Double cover W -> Y from a square root of a section U10."""

from __future__ import annotations

import random
from math import ceil, comb
from typing import Sequence

from ..equivariant.actions import ActionGen, RootScalar
from ..exactalg.fields import QQw, sqrt_mod
from ..exactalg.linalg import rank
from ..exactalg.poly import MultiPoly, monomials_of_degree
from ..exactalg.polyio import parse_poly
from .interpolate import InterpolationError, interpolate_by_parity
from .model import ModelError, PointSample, VarietyModel, normalize_point
from .sampling import sample_points

Y_VARS = [f"U{i}" for i in range(10)]

# U10 with the scaling that keeps W defined over QQ(sqrt(-7)); w = sqrt(-7)
U10_TEXT = (
    "(49 + 13*w)/56*(1/64*(-17 - 7*w)*U0^2 + U1*U4 + U2*U5 + U3*U6"
    " + 1/8*(-1 + w)*U1*U7 + 1/8*(-1 + w)*U2*U8 + 1/8*(-1 + w)*U3*U9)"
)


def u10_form() -> MultiPoly:
    return parse_poly(U10_TEXT, Y_VARS, QQw)


def involution(n_old: int, n_new: int) -> ActionGen:
    return ActionGen.diagonal("iota", [RootScalar(1)] * n_old + [RootScalar(-1)] * n_new)


def lift_points(Y: VarietyModel, sample: PointSample, forms: Sequence[MultiPoly], seed: int = 0) -> list[tuple]:
    """One lift (y, +-U(y)/r) per point, r^2 = U10(y) = forms[0](y), with a
    seeded random sign (the two lifts agree on even monomials, so taking both
    would halve the information per point).  Points where U10(y) is zero or
    not a square in GF(q) are skipped."""
    p = Y.field.p
    rng = random.Random(seed)
    out = []
    for y in sample.points:
        u = forms[0].evaluate(list(y))
        if u == 0:
            continue
        r = sqrt_mod(u, p)
        if r is None:
            continue
        rinv = pow(r, -1, p)
        vals = [f.evaluate(list(y)) * rinv % p for f in forms]
        sgn = rng.choice((1, -1))
        out.append(normalize_point(tuple(y) + tuple(sgn * v % p for v in vals), p))
    return out


def build_double_cover(
    Y: VarietyModel,
    U10: MultiPoly,
    new_basis: Sequence[MultiPoly] = (),
    seed: int = 0,
    margin: float = 1.25,
    fresh_fraction: float = 0.25,
    strategy: str = "slice",
    names: Sequence[str] | None = None,
) -> VarietyModel:
    """W with coordinates P_i = U_i (old) and U_i / sqrt(U10) (new, U10 first).

    Quadratic relations are interpolated separately on even and odd
    monomials for the covering involution (+1 on old, -1 on new
    coordinates); a relation mixing parities is an error.
    """
    field = Y.field
    if not hasattr(field, "p"):
        raise ModelError("build the cover over GF(q); reduce the model first")
    forms = [U10] + list(new_basis)
    for f in forms:
        if tuple(f.vars) != tuple(Y.coords) or f.field != field:
            raise ModelError("U10 and the new basis must be forms on Y over the model field")
        if not f.is_homogeneous() or f.degree() != 2:
            raise ModelError("U10 and the new basis must be quadrics")
    n_old, n_new = len(Y.coords), len(forms)
    n = n_old + n_new
    coords = list(names) if names else [f"P{i}" for i in range(n)]
    need = ceil(margin * comb(n + 1, 2))
    total = need + max(10, ceil(fresh_fraction * need))
    pts: list[tuple] = []
    seen = set()
    round_ = 0
    while len(pts) < total:
        sample = sample_points(Y, max(20, total - len(pts)), strategy=strategy, seed=seed + 7919 * round_, exclude=())
        for q in lift_points(Y, sample, forms, seed + round_):
            if q not in seen:
                seen.add(q)
                pts.append(q)
        round_ += 1
        if round_ > 50:
            raise InterpolationError("could not lift enough points to the cover")
    pts = pts[:total]
    train = PointSample(field, pts[:need], seed, strategy)
    fresh = PointSample(field, pts[need:], seed, strategy)
    parts = interpolate_by_parity(train, 2, coords, range(n_old, n), margin=margin, fresh=fresh)
    ideal = parts[0] + parts[1]
    W = VarietyModel(
        "W",
        coords,
        ideal,
        field,
        [involution(n_old, n_new)],
        {**{k: v for k, v in Y.metadata.items() if k in ("dimension", "prime", "prime_root")}, "stage": "double-cover", "seed": seed, "eigen_actions": "iota"},
    )
    check_cover_identity(W, U10, n_old)
    return W


def cover_identity(W: VarietyModel, U10: MultiPoly, n_old: int) -> MultiPoly:
    """P_{n_old}^2 - U10(P_0..P_{n_old-1})."""
    images = [W.variable(i) for i in range(n_old)]
    return W.variable(n_old) ** 2 - U10.substitute(images)


def check_cover_identity(W: VarietyModel, U10: MultiPoly, n_old: int) -> None:
    target = cover_identity(W, U10, n_old)
    quads = [f for f in W.ideal if f.degree() == 2]
    mons = monomials_of_degree(len(W.coords), 2)
    rows = [[f.coefficient(m) for m in mons] for f in quads]
    r = rank(rows, W.field, len(mons)) if rows else 0
    if rank(rows + [[target.coefficient(m) for m in mons]], W.field, len(mons)) != r:
        raise InterpolationError("P_new0^2 = U10 is not among the interpolated relations")
