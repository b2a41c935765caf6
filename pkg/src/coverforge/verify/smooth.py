"""Jacobian-criterion smoothness checks modulo p."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from ..exactalg.fields import PrimeField
from ..exactalg.poly import MultiPoly
from .groebner import groebner_basis
from .hilbert import hilbert_polynomial


@dataclass
class SmoothnessReport:
    smooth: bool
    singular_dim: int  # projective dimension of the (possibly enlarged) singular locus, -1 if empty
    prime: int
    codim: int
    method: str  # "exact-minors" or "projected-minors"
    certified: bool  # False when a projected locus is nonempty (it only bounds the true one)
    minors: int
    runtime: float
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "singular_dim": self.singular_dim,
            "prime": self.prime,
            "codim": self.codim,
            "method": self.method,
            "certified": self.certified,
            "minors": self.minors,
            "runtime": round(self.runtime, 3),
            **self.notes,
        }


def maximal_minors(rows: Sequence[Sequence[MultiPoly]]) -> list[MultiPoly]:
    """All c x c minors of a c x n polynomial matrix, by Laplace expansion
    shared across column subsets."""
    c = len(rows)
    n = len(rows[0])
    one = MultiPoly.constant(rows[0][0].vars, 1, rows[0][0].field)
    prev = {(): one}
    for k in range(1, c + 1):
        cur = {}
        row = rows[k - 1]
        for S in combinations(range(n), k):
            acc = None
            for pos, j in enumerate(S):
                sub = prev.get(S[:pos] + S[pos + 1 :])
                if sub is None or sub.is_zero() or row[j].is_zero():
                    continue
                t = row[j] * sub
                if (k - 1 + pos) % 2:
                    t = -t
                acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                cur[S] = acc
        prev = cur
    return list(prev.values())


def _jacobian(polys: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    return [f.gradient() for f in polys]


def _combine(rows, coeffs, field):
    n = len(rows[0])
    out = []
    for j in range(n):
        acc = MultiPoly.zero(rows[0][0].vars, field)
        for a, r in zip(coeffs, rows):
            if a:
                acc = acc + r[j].scale(a)
        out.append(acc)
    return out


def projective_dimension(polys: Sequence[MultiPoly], field: PrimeField | None = None, timeout: float | None = None) -> int:
    gb = groebner_basis(polys, field=field, timeout=timeout)
    return hilbert_polynomial(gb).dimension


def smoothness_check_mod_p(
    ideal,
    expected_dim: int | None = None,
    exact_limit: int = 20,
    projections: int = 3,
    seed: int = 0,
    timeout: float | None = None,
) -> SmoothnessReport:
    """Singular locus = V(I + c x c minors of the Jacobian), c = codimension.

    When there are few row subsets all minors are used.  Otherwise random
    combinations of the equations are taken (``projections`` rounds of c
    combinations each); the locus they cut out contains the true singular
    locus, so an empty result certifies smoothness.
    """
    polys = list(getattr(ideal, "ideal", ideal))
    if not polys:
        raise ValueError("empty ideal")
    field = polys[0].field
    if not isinstance(field, PrimeField):
        raise ValueError("smoothness is checked over GF(p)")
    start = time.monotonic()
    n = polys[0].nvars
    if expected_dim is None:
        expected_dim = projective_dimension(polys, field, timeout)
    codim = n - 1 - expected_dim
    notes = {}
    meta = getattr(ideal, "metadata", None) or {}
    for k in ("prime_root", "zeta7", "zeta3"):
        if k in meta:
            notes[k] = meta[k]
    if codim <= 0:
        return SmoothnessReport(True, -1, field.p, codim, "ambient", True, 0, time.monotonic() - start, notes)
    jac = _jacobian(polys)
    m = len(polys)
    if comb(m, codim) <= exact_limit:
        minors = []
        for S in combinations(range(m), codim):
            minors += maximal_minors([jac[i] for i in S])
        dim = projective_dimension(polys + minors, field, timeout)
        return SmoothnessReport(dim < 0, dim, field.p, codim, "exact-minors", True, len(minors), time.monotonic() - start, notes)
    rng = random.Random(seed)
    extra: list[MultiPoly] = []
    dim = n
    for r in range(projections):
        rows = [_combine(jac, [rng.randrange(field.p) for _ in range(m)], field) for _ in range(codim)]
        extra += maximal_minors(rows)
        dim = projective_dimension(polys + extra, field, timeout)
        if dim < 0:
            break
    notes["projection_rounds"] = r + 1
    return SmoothnessReport(dim < 0, dim, field.p, codim, "projected-minors", dim < 0, len(extra), time.monotonic() - start, notes)


def singular_locus_ideal(polys: Sequence[MultiPoly], codim: int) -> list[MultiPoly]:
    """I + all codim x codim minors (exact; use on small fixtures)."""
    jac = _jacobian(polys)
    out = list(polys)
    for S in combinations(range(len(polys)), codim):
        out += maximal_minors([jac[i] for i in S])
    return out
