"""Descent from Z to the quotient X by a cyclic group of order 14 (C2 x C7).

Coordinates on X are invariant degree-2 functions on Z: invariant quadrics
modulo the ideal, plus ratios C / Z0 where C is an anti-invariant cubic that
vanishes on the curve {Z0 = 0} of Z (Z0 itself is anti-invariant).  The
second kind are needed when invariant quadrics do not span all invariant
degree-2 functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, comb
from typing import Sequence

import numpy as np

from ..equivariant.actions import ActionGen
from ..equivariant.weights import eigen_decompose
from ..exactalg.fields import PrimeField
from ..exactalg.linalg import kernel_mod_p, rank_mod_p
from ..exactalg.poly import MultiPoly, evaluation_matrix, monomials_of_degree
from .interpolate import interpolate_vanishing_forms
from .model import ModelError, PointSample, VarietyModel, normalize_point


class DescentError(RuntimeError):
    pass


@dataclass
class DescentReport:
    invariant_quadrics: int
    extra_cubics: int
    relations: int
    relation_degree: int
    points: int
    notes: dict = field(default_factory=dict)


def _vectors(polys: Sequence[MultiPoly], mons: Sequence[tuple], p: int) -> np.ndarray:
    index = {m: i for i, m in enumerate(mons)}
    out = np.zeros((len(polys), len(mons)), dtype=np.int64)
    for r, f in enumerate(polys):
        for e, c in f.terms.items():
            out[r, index[e]] = c % p
    return out


def _rank(rows: np.ndarray, p: int) -> int:
    return rank_mod_p(rows, p) if rows.shape[0] else 0


def _independent_modulo(cands: Sequence[MultiPoly], base: Sequence[MultiPoly], mons, p: int) -> list[MultiPoly]:
    """Greedy choice of candidates independent modulo span(base)."""
    rows = _vectors(list(base), mons, p)
    r = _rank(rows, p)
    chosen = []
    for f in cands:
        trial = np.vstack([rows, _vectors([f], mons, p)])
        rt = _rank(trial, p)
        if rt > r:
            rows, r = trial, rt
            chosen.append(f)
    return chosen


def isotypic_forms(
    coords: Sequence[str], degree: int, actions: Sequence[ActionGen], exponents: Sequence[int], field: PrimeField
) -> list[MultiPoly]:
    """Forms f of the given degree with g_i . f = zeta_{n_i}^{k_i} f."""
    mons = monomials_of_degree(len(coords), degree)
    space = [MultiPoly(coords, {m: 1}, field) for m in mons]
    parts = eigen_decompose(space, list(actions), field)
    return parts.get(tuple(exponents), [])


def ideal_in_degree(Z: VarietyModel, degree: int) -> list[MultiPoly]:
    """Spanning set of I_degree from generators of degree <= degree."""
    out = []
    for f in Z.ideal:
        d = f.degree()
        if d > degree:
            continue
        for m in monomials_of_degree(len(Z.coords), degree - d):
            out.append(f * MultiPoly(Z.coords, {m: 1}, Z.field))
    return out


def descend_to_X(
    Z: VarietyModel,
    points: Sequence[Sequence[int]],
    boundary_points: Sequence[Sequence[int]],
    involution: str = "g2",
    c7: str = "t3",
    anti_coordinate: int = 0,
    quadrics: Sequence[MultiPoly] | None = None,
    cubics: Sequence[MultiPoly] | None = None,
    expected_quadrics: int | None = 7,
    expected_extra: int | None = 3,
    relation_degree: int = 3,
    margin: float = 1.25,
    names: Sequence[str] | None = None,
    x_actions: Sequence[ActionGen] = (),
    seed: int = 0,
) -> tuple[VarietyModel, DescentReport]:
    """X coordinates and relations among them.

    ``points`` are points of Z used for interpolation (those with Z0 = 0
    are skipped); ``boundary_points`` lie on Z and on {Z0 = 0}.  Supplied
    ``quadrics``/``cubics`` are checked to span the computed spaces and
    then used as the coordinates.
    """
    field = Z.field
    p = field.p
    g2, g7 = Z.action(involution), Z.action(c7)
    if g2 * g7 != g7 * g2:
        raise ModelError(f"{involution} and {c7} do not commute")
    z0 = Z.variable(anti_coordinate)
    from ..equivariant.actions import is_eigenvector

    if is_eigenvector(g2, z0) != (p - 1) or is_eigenvector(g7, z0) != 1:
        raise ModelError(f"{Z.coords[anti_coordinate]} must be anti-invariant under {involution} and invariant under {c7}")
    acts = [g2, g7]
    # invariant quadrics modulo I_2
    mons2 = monomials_of_degree(len(Z.coords), 2)
    I2 = ideal_in_degree(Z, 2)
    inv2 = isotypic_forms(Z.coords, 2, acts, (0, 0), field)
    quad_basis = _independent_modulo(inv2, I2, mons2, p)
    if expected_quadrics is not None and len(quad_basis) != expected_quadrics:
        raise DescentError(f"invariant quadric space has dimension {len(quad_basis)}, expected {expected_quadrics}")
    if quadrics is not None:
        qs = list(quadrics)
        for f in qs:
            if not (is_eigenvector(g2, f) == 1 and is_eigenvector(g7, f) == 1):
                raise DescentError(f"supplied quadric {f} is not invariant")
        if len(_independent_modulo(qs, I2, mons2, p)) != len(quad_basis) or len(qs) != len(quad_basis):
            raise DescentError("supplied quadrics do not form a basis modulo the ideal")
        quad_basis = qs
    # anti-invariant cubics vanishing on {Z0 = 0}
    mons3 = monomials_of_degree(len(Z.coords), 3)
    anti3 = isotypic_forms(Z.coords, 3, acts, (1, 0), field)
    bpts = [pt for pt in boundary_points if pt[anti_coordinate] % p == 0]
    if not bpts:
        raise DescentError("no points on {Z0 = 0} supplied")
    ev = evaluation_matrix(anti3, bpts, field) if anti3 else np.zeros((len(bpts), 0), dtype=np.int64)
    ker = kernel_mod_p(ev, p, len(anti3)) if anti3 else np.zeros((0, 0), dtype=np.int64)
    vanishing = []
    for row in ker:
        f = MultiPoly.zero(Z.coords, field)
        for c, g in zip(row, anti3):
            if c:
                f = f + g.scale(int(c))
        vanishing.append(f)
    I3 = ideal_in_degree(Z, 3)
    base3 = I3 + [z0 * q for q in quad_basis]
    extra = _independent_modulo(vanishing, base3, mons3, p)
    if expected_extra is not None and len(extra) != expected_extra:
        raise DescentError(f"extra anti-invariant cubics: {len(extra)}, expected {expected_extra}")
    if cubics is not None:
        cs = list(cubics)
        for f in cs:
            if any(f.evaluate(list(pt)) for pt in bpts):
                raise DescentError("supplied cubic does not vanish on the boundary points")
            if is_eigenvector(g2, f) != p - 1 or is_eigenvector(g7, f) != 1:
                raise DescentError("supplied cubic is not anti-invariant")
        if len(_independent_modulo(cs, base3, mons3, p)) != len(extra) or len(cs) != len(extra):
            raise DescentError("supplied cubics do not span the extra space")
        extra = cs
    # images of points
    n_x = len(quad_basis) + len(extra)
    xnames = list(names) if names else [f"X{i}" for i in range(n_x)]
    images, seen = [], set()
    for pt in points:
        z = pt[anti_coordinate] % p
        if z == 0:
            continue
        zi = pow(z, -1, p)
        vals = [q.evaluate(list(pt)) % p for q in quad_basis] + [c.evaluate(list(pt)) * zi % p for c in extra]
        if not any(vals):
            continue
        x = normalize_point(vals, p)
        if x not in seen:
            seen.add(x)
            images.append(x)
    need = ceil(margin * comb(n_x + relation_degree - 1, relation_degree))
    if len(images) <= need:
        raise DescentError(f"{len(images)} image points; need more than {need} for degree-{relation_degree} relations")
    train = PointSample(field, images[:need], seed, "descent")
    fresh = PointSample(field, images[need:], seed, "descent")
    rels = interpolate_vanishing_forms(train, relation_degree, xnames, margin=margin, fresh=fresh)
    X = VarietyModel(
        "X",
        xnames,
        rels,
        field,
        list(x_actions),
        {"stage": "descend-x", "seed": seed, "dimension": Z.dimension if Z.dimension is not None else 2},
    )
    report = DescentReport(len(quad_basis), len(extra), len(rels), relation_degree, len(images))
    X.metadata["coordinates"] = "; ".join([str(q) for q in quad_basis] + [f"({c})/{Z.coords[anti_coordinate]}" for c in extra])
    return X, report


def printed_descent_forms(p: int, root: int | None = None) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """The listed invariant quadrics and the C3 orbit of the listed cubic, over GF(p)."""
    from ..equivariant.actions import c3_orbit
    from ..equivariant.symbols import DESCENT_CUBIC_TEXT, INVARIANT_QUADRICS_TEXT, Z_VARS, printed_z_actions
    from ..exactalg.fields import QQw
    from ..exactalg.modular import reduce_mod_p
    from ..exactalg.polyio import parse_poly

    quads = [reduce_mod_p(parse_poly(t, Z_VARS, QQw), p, root) for t in INVARIANT_QUADRICS_TEXT]
    cubic = reduce_mod_p(parse_poly(DESCENT_CUBIC_TEXT, Z_VARS, QQw), p, root)
    return quads, c3_orbit(cubic, printed_z_actions()["g3"])
