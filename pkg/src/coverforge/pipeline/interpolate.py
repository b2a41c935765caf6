"""Vanishing forms through a point sample, by kernels of evaluation matrices."""

from __future__ import annotations

from math import ceil
from typing import Callable, Sequence

import numpy as np

from ..equivariant.actions import ActionGen
from ..equivariant.weights import eigen_decompose
from ..exactalg.fields import PrimeField
from ..exactalg.linalg import kernel_mod_p, rref_mod_p
from ..exactalg.poly import MultiPoly, evaluation_matrix, monomials_of_degree
from .model import PointSample


class InterpolationError(RuntimeError):
    pass


def _basis_forms(kernel: np.ndarray, mons, vars, field: PrimeField) -> list[MultiPoly]:
    if kernel.shape[0] == 0:
        return []
    red, piv = rref_mod_p(kernel, field.p)
    out = []
    for row in red[: len(piv)]:
        out.append(MultiPoly(vars, {m: int(c) for m, c in zip(mons, row) if c}, field))
    return out


def vanishing_kernel(points: Sequence[Sequence[int]], mons: Sequence[tuple], field: PrimeField) -> np.ndarray:
    """Coefficient vectors (over ``mons``) of forms vanishing at every point."""
    m = evaluation_matrix(list(mons), points, field)
    return kernel_mod_p(m, field.p, len(mons))


def interpolate_vanishing_forms(
    points: PointSample,
    degree: int,
    variables: Sequence[str],
    monomial_filter: Callable[[tuple], bool] | None = None,
    split_actions: Sequence[ActionGen] = (),
    margin: float = 1.25,
    fresh: PointSample | None = None,
    monomials: Sequence[tuple] | None = None,
) -> list[MultiPoly]:
    """Basis of the degree-``degree`` forms vanishing on the sample.

    The candidate monomials can be restricted by ``monomial_filter`` (for
    example to a weight or parity class of a diagonal action).  At least
    ``margin`` times as many points as monomials are used for the kernel;
    the result is then checked on ``fresh`` points, or on the unused tail
    of the sample when ``fresh`` is not given.  With ``split_actions`` the
    basis is rebuilt from joint eigenspaces so each form is an eigenvector.
    """
    field = points.field
    vars = list(variables)
    mons = list(monomials) if monomials is not None else monomials_of_degree(len(vars), degree)
    if monomial_filter is not None:
        mons = [m for m in mons if monomial_filter(m)]
    if not mons:
        return []
    need = ceil(margin * len(mons))
    pts = list(points.points)
    if len(pts) < need:
        raise InterpolationError(f"{len(pts)} points for {len(mons)} monomials; need at least {need}")
    train = pts[:need]
    check = list(fresh.points) if fresh is not None else pts[need:]
    if not check:
        raise InterpolationError("no fresh points left for verification")
    if fresh is not None and set(check) & set(train):
        raise InterpolationError("fresh sample overlaps the interpolation sample")
    forms = _basis_forms(vanishing_kernel(train, mons, field), mons, vars, field)
    verify_on_points(forms, check)
    if split_actions and forms:
        parts = eigen_decompose(forms, list(split_actions), field)
        forms = [f for key in sorted(parts) for f in parts[key]]
    return forms


def verify_on_points(forms: Sequence[MultiPoly], points: Sequence[Sequence[int]]) -> None:
    if not forms or not points:
        return
    field = forms[0].field
    vals = evaluation_matrix(list(forms), points, field)
    bad = np.nonzero(vals.any(axis=0))[0]
    if len(bad):
        raise InterpolationError(
            f"{len(bad)} of {len(forms)} interpolated forms fail on the fresh sample "
            "(too few points or special position)"
        )


def interpolate_by_parity(
    points: PointSample,
    degree: int,
    variables: Sequence[str],
    odd: Sequence[int],
    margin: float = 1.25,
    fresh: PointSample | None = None,
) -> dict[int, list[MultiPoly]]:
    """Forms split by parity of the total degree in the ``odd`` variables.

    The full kernel is also computed; if it is larger than the sum of the
    parity parts, some relation mixes parities and an error is raised.
    """
    odd = set(odd)

    def parity(m):
        return sum(k for i, k in enumerate(m) if i in odd) % 2

    full = interpolate_vanishing_forms(points, degree, variables, margin=margin, fresh=fresh)
    out = {}
    for par in (0, 1):
        out[par] = interpolate_vanishing_forms(
            points, degree, variables, monomial_filter=lambda m, par=par: parity(m) == par, margin=margin, fresh=fresh
        )
    if len(full) != len(out[0]) + len(out[1]):
        raise InterpolationError(
            f"parity-mixed relations: {len(full)} relations but {len(out[0])} even + {len(out[1])} odd"
        )
    return out
