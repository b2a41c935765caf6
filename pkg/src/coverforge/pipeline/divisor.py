"""Sections of a model with a prescribed zero divisor and symmetry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..equivariant.actions import ActionGen, RootScalar
from ..exactalg.linalg import kernel_mod_p
from ..exactalg.poly import MultiPoly, evaluation_matrix, monomials_of_degree
from ..verify.groebner import _divides, groebner_basis
from .model import DivisorConstraint, DivisorCurve, ModelError, VarietyModel
from .sampling import sample_points


class DivisorError(RuntimeError):
    def __init__(self, message: str, dimension: int | None = None):
        super().__init__(message)
        self.dimension = dimension


@dataclass
class Invariance:
    """Require g.F = scalar * F, with (g.F)(x) = F(g x)."""

    action: ActionGen
    scalar: RootScalar = RootScalar()


def standard_monomials(model: VarietyModel, degree: int) -> list[tuple]:
    """Degree-``degree`` monomials not in the leading ideal of the model."""
    mons = monomials_of_degree(len(model.coords), degree)
    if not model.ideal:
        return mons
    lead = groebner_basis(model.ideal, field=model.field).leading_monomials()
    return [m for m in mons if not any(_divides(g, m) for g in lead)]


def tangent_space(model: VarietyModel, pt: Sequence[int]) -> np.ndarray:
    """Kernel of the Jacobian of the model ideal at ``pt`` (tangent space of the cone)."""
    p = model.field.p
    n = len(model.coords)
    if not model.ideal:
        return np.eye(n, dtype=np.int64)
    jac = np.array([[g.evaluate(list(pt)) for g in f.gradient()] for f in model.ideal], dtype=np.int64) % p
    return kernel_mod_p(jac, p, n)


def _gradient_rows(mons: Sequence[tuple], pt: Sequence[int], p: int) -> np.ndarray:
    """Row k, column j: d(mons[j])/dx_k at pt."""
    n = len(pt)
    out = np.zeros((n, len(mons)), dtype=np.int64)
    for j, m in enumerate(mons):
        for k in range(n):
            e = m[k]
            if not e:
                continue
            v = e % p
            for i, d in enumerate(m):
                v = v * pow(pt[i], d - (1 if i == k else 0), p) % p
            out[k, j] = v
    return out


def curve_model(model: VarietyModel, curve: DivisorCurve) -> VarietyModel:
    forms = list(model.ideal) + list(curve.forms)
    return VarietyModel(f"{model.name}|{curve.name}", model.coords, forms, model.field)


def curve_points(model: VarietyModel, curve: DivisorCurve, count: int, seed: int) -> list[tuple]:
    if curve.points is not None:
        pts = [tuple(x) for x in curve.points]
    else:
        sub = curve_model(model, curve)
        pts = sample_points(sub, count, seed=seed, allow_fewer=True).points
    for pt in pts:
        if not model.contains_point(pt) or any(f.evaluate(list(pt)) for f in curve.forms):
            raise ModelError(f"point {pt} is not on curve {curve.name}")
    return pts


def divisor_conditions(
    model: VarietyModel, mons: Sequence[tuple], constraint: DivisorConstraint, points_per_curve: int, seed: int
) -> np.ndarray:
    p = model.field.p
    rows = []
    for ci, curve in enumerate(constraint.curves):
        if curve.sign != "zero":
            raise DivisorError(f"curve {curve.name} is a pole; clear poles before solving")
        if curve.multiplicity > 2:
            raise DivisorError(f"multiplicity {curve.multiplicity} along {curve.name} is not supported")
        pts = curve_points(model, curve, points_per_curve, seed + 1000 * ci)
        rows.append(evaluation_matrix(list(mons), pts, model.field))
        if curve.multiplicity == 2:
            for pt in pts:
                tan = tangent_space(model, pt)
                if tan.shape[0]:
                    rows.append(tan @ _gradient_rows(mons, pt, p) % p)
    if not rows:
        return np.zeros((0, len(mons)), dtype=np.int64)
    return np.vstack(rows) % p


def invariance_conditions(
    model: VarietyModel, mons: Sequence[tuple], invariance: Sequence[Invariance], count: int, seed: int
) -> np.ndarray:
    field = model.field
    p = field.p
    if not invariance:
        return np.zeros((0, len(mons)), dtype=np.int64)
    pts = sample_points(model, count, seed=seed + 7).points
    rows = []
    base = evaluation_matrix(list(mons), pts, field)
    for inv in invariance:
        lam = inv.scalar.to_field(field)
        moved = [inv.action.apply_point(list(pt), field) for pt in pts]
        rows.append((evaluation_matrix(list(mons), moved, field) - lam * base) % p)
    return np.vstack(rows) % p


def find_section_with_divisor(
    model: VarietyModel,
    degree: int,
    constraint: DivisorConstraint,
    invariance: Sequence[Invariance] = (),
    points_per_curve: int | None = None,
    seed: int = 0,
    monomials: Sequence[tuple] | None = None,
) -> MultiPoly:
    """The unique (up to scalar) degree-``degree`` form on the model with the
    given zeros and symmetry, normalized so its lex-first coefficient is 1.

    Candidates are the standard monomials modulo the model ideal, so distinct
    candidates give distinct functions on the model.  Multiplicity-1 curves
    give value conditions at sampled curve points; multiplicity-2 curves also
    require the gradient to vanish on the tangent space of the model there.
    """
    if constraint.poles():
        raise DivisorError("constraint has poles; apply clear_poles first")
    mons = list(monomials) if monomials is not None else standard_monomials(model, degree)
    n = len(mons)
    per_curve = points_per_curve or max(2 * n, 10)
    parts = [
        divisor_conditions(model, mons, constraint, per_curve, seed),
        invariance_conditions(model, mons, list(invariance), n + 10, seed),
    ]
    a = np.vstack([x for x in parts if x.shape[0]]) if any(x.shape[0] for x in parts) else np.zeros((0, n), dtype=np.int64)
    ker = kernel_mod_p(a, model.field.p, n)
    if ker.shape[0] != 1:
        what = "inconsistent constraints or degree too small" if ker.shape[0] == 0 else "too few conditions"
        raise DivisorError(f"solution space has dimension {ker.shape[0]} ({what})", ker.shape[0])
    f = MultiPoly(model.coords, {m: int(c) for m, c in zip(mons, ker[0]) if c}, model.field)
    return f.normalized()
