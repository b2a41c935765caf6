"""Sampling GF(q)-points on projective models.

Strategies:
  file    points read from a file (validated against the ideal)
  slice   intersect with random hyperplanes down to dimension 0 and solve
  search  fix random values for all but ``codim`` coordinates and solve
"""

from __future__ import annotations

import random
from itertools import product
from typing import Sequence

from ..exactalg.fields import GF, PrimeField
from ..exactalg.poly import MultiPoly
from ..verify.groebner import GroebnerTimeout, MonomialOrder, groebner_basis
from ..verify.hilbert import hilbert_polynomial
from .model import ModelError, PointSample, VarietyModel, load_points_text, normalize_point


class SamplingError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# univariate polynomials mod p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    out = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return out


def univariate_roots(coeffs: Sequence[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in GF(p) of a nonzero polynomial (coefficients low to high)."""
    f = _trim([c % p for c in coeffs])
    if not f:
        raise SamplingError("zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    # split off the rational part: gcd(f, x^p - x)
    xp = _ppowmod([0, 1], p, f, p)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = _pgcd(f, _trim(xp), p)
    rng = rng or random.Random(0)
    out: list[int] = []

    def split(h):
        if len(h) <= 1:
            return
        if len(h) == 2:
            out.append((-h[0]) * pow(h[1], -1, p) % p)
            return
        if p == 2:
            for x in (0, 1):
                if sum(c * pow(x, i, p) for i, c in enumerate(h)) % p == 0:
                    out.append(x)
            return
        while True:
            a = rng.randrange(p)
            t = _ppowmod([a, 1], (p - 1) // 2, h, p)
            t = t + [0] * max(0, 1 - len(t))
            t[0] = (t[0] - 1) % p
            d = _pgcd(h, _trim(t), p)
            if 1 < len(d) < len(h):
                split(d)
                q = _pdiv(h, d, p)
                split(q)
                return

    split(g)
    return sorted(set(out))


def _pdiv(a, b, p):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        _trim(a)
    return q


# ---------------------------------------------------------------------------
# zero-dimensional affine systems
# ---------------------------------------------------------------------------


def solve_zero_dim(polys: Sequence[MultiPoly], p: int, rng: random.Random | None = None, timeout: float | None = 30.0) -> list[tuple] | None:
    """All GF(p)-solutions of an affine system, or None if it is not zero-dimensional.

    Uses a lex Groebner basis; the last variable is solved from the
    univariate element and the system is specialized recursively.
    """
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return None
    vars = polys[0].vars
    n = len(vars)
    F = GF(p)
    if n == 0:
        return [()] if all(f.is_zero() for f in polys) else []
    try:
        gb = groebner_basis(polys, MonomialOrder("lex"), F, timeout=timeout)
    except GroebnerTimeout:
        return None
    if gb.is_unit():
        return []
    last = [g for g in gb.generators if all(all(k == 0 for k in e[:-1]) for e in g.terms)]
    if not last:
        return None
    uni = last[0]
    coeffs = [0] * (uni.degree() + 1)
    for e, c in uni.terms.items():
        coeffs[e[-1]] = c
    out = []
    sub_vars = vars[:-1]
    for r in univariate_roots(coeffs, p, rng):
        if n == 1:
            out.append((r,))
            continue
        images = [MultiPoly.variable(sub_vars, i, F) for i in range(n - 1)] + [MultiPoly.constant(sub_vars, r, F)]
        spec = [g.substitute(images) for g in gb.generators]
        nonzero = [s for s in spec if not s.is_zero()]
        if any(s.degree() == 0 for s in nonzero):
            continue
        if not nonzero:
            return None
        rest = solve_zero_dim(nonzero, p, rng, timeout)
        if rest is None:
            return None
        out += [s + (r,) for s in rest]
    return out


# ---------------------------------------------------------------------------
# sampling strategies
# ---------------------------------------------------------------------------


def model_dimension(model: VarietyModel) -> int:
    d = model.dimension
    if d is not None:
        return d
    if not model.ideal:
        return model.ambient_dim
    gb = groebner_basis(model.ideal, field=model.field)
    return hilbert_polynomial(gb).dimension


def _random_point_on_subspace(model, p, rng, free_dim):
    """Random affine parametrization x = x0 + sum u_k v_k of dimension free_dim."""
    n = len(model.coords)
    base = [rng.randrange(p) for _ in range(n)]
    dirs = [[rng.randrange(p) for _ in range(n)] for _ in range(free_dim)]
    return base, dirs


def _slice_once(model: VarietyModel, dim: int, rng: random.Random) -> list[tuple]:
    p = model.field.p
    n = len(model.coords)
    F = model.field
    # the projective slice by dim hyperplanes meets V in finitely many points;
    # in the affine chart of a random hyperplane it is an affine subspace of
    # dimension (n - 1 - dim), parametrized by u_1..u_k
    k = n - 1 - dim
    base, dirs = _random_point_on_subspace(model, p, rng, k)
    names = [f"u{i}" for i in range(k)]
    if k == 0:
        pt = tuple(base)
        return [normalize_point(pt, p)] if any(pt) and model.contains_point(pt) else []
    us = [MultiPoly.variable(names, i, F) for i in range(k)]
    images = []
    for j in range(n):
        acc = MultiPoly.constant(names, base[j], F)
        for i in range(k):
            if dirs[i][j]:
                acc = acc + us[i].scale(dirs[i][j])
        images.append(acc)
    eqs = [f.substitute(images) for f in model.ideal]
    if not eqs:
        raise SamplingError("slicing needs a nonempty ideal")
    sols = solve_zero_dim(eqs, p, rng)
    if sols is None:
        return []
    out = []
    for s in sols:
        pt = tuple((base[j] + sum(s[i] * dirs[i][j] for i in range(k))) % p for j in range(n))
        if any(pt) and model.contains_point(pt):
            out.append(normalize_point(pt, p))
    return out


def _search_once(model: VarietyModel, dim: int, rng: random.Random) -> list[tuple]:
    p = model.field.p
    n = len(model.coords)
    F = model.field
    codim = n - 1 - dim
    free = rng.sample(range(n), codim)
    fixed = [j for j in range(n) if j not in free]
    vals = {j: rng.randrange(p) for j in fixed}
    chart = rng.choice(fixed)
    vals[chart] = 1
    names = [f"u{i}" for i in range(codim)]
    images = []
    for j in range(n):
        if j in vals:
            images.append(MultiPoly.constant(names, vals[j], F))
        else:
            images.append(MultiPoly.variable(names, free.index(j), F))
    eqs = [f.substitute(images) for f in model.ideal]
    if codim == 0:
        pt = tuple(vals[j] for j in range(n))
        return [normalize_point(pt, p)]
    sols = solve_zero_dim(eqs, p, rng)
    if sols is None:
        return []
    out = []
    for s in sols:
        pt = tuple(vals[j] if j in vals else s[free.index(j)] for j in range(n))
        if model.contains_point(pt):
            out.append(normalize_point(pt, p))
    return out


def sample_points(
    model: VarietyModel,
    count: int,
    strategy: str = "slice",
    seed: int = 0,
    path: str | None = None,
    budget: int | None = None,
    exclude: Sequence[tuple] = (),
    allow_fewer: bool = False,
    stall: int = 40,
) -> PointSample:
    """``count`` distinct verified points, deterministic given the seed.

    With ``allow_fewer`` the search stops after ``stall`` rounds without a
    new point and returns what it has (for loci with few rational points).
    """
    F = model.field
    if not isinstance(F, PrimeField):
        raise SamplingError(f"sampling needs a GF(q) model, got {F}")
    p = F.p
    n = len(model.coords)
    if count > _projective_size(p, n - 1):
        raise SamplingError(f"GF({p}) has fewer than {count} points in P^{n - 1}")
    if strategy == "file":
        if path is None:
            raise SamplingError("strategy 'file' needs a path")
        with open(path) as fh:
            sample, _ = load_points_text(fh.read())
        pts = [pt for pt in sample.points if pt not in set(exclude)]
        bad = [pt for pt in pts if not model.contains_point(pt)]
        if bad:
            raise SamplingError(f"{len(bad)} file points are not on {model.name}")
        if len(pts) < count:
            raise SamplingError(f"file has only {len(pts)} usable points, {count} requested")
        return PointSample(F, pts[:count], seed, "file")
    rng = random.Random(seed)
    dim = model_dimension(model)
    if dim < 0:
        raise SamplingError(f"{model.name} is empty")
    once = {"slice": _slice_once, "search": _search_once}.get(strategy)
    if once is None:
        raise SamplingError(f"unknown sampling strategy {strategy!r}")
    budget = budget or max(200, 50 * count)
    seen = set(exclude)
    out: list[tuple] = []
    idle = 0
    for _ in range(budget):
        idle += 1
        for pt in once(model, dim, rng):
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
                idle = 0
                if len(out) == count:
                    return PointSample(F, out, seed, strategy)
        if allow_fewer and idle >= stall and out:
            return PointSample(F, out, seed, strategy)
    raise SamplingError(f"sampling budget exhausted with {len(out)} of {count} points on {model.name}")


def _projective_size(p: int, n: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


def enumerate_points(model: VarietyModel) -> list[tuple]:
    """Every GF(q)-point of the model (tiny ambient spaces only)."""
    p = model.field.p
    n = len(model.coords)
    if p ** n > 2 * 10**6:
        raise SamplingError("ambient space too large for enumeration")
    out = []
    for v in product(range(p), repeat=n):
        if any(v) and normalize_point(v, p) == v and model.contains_point(v):
            out.append(v)
    return out


def validate_points(model: VarietyModel, sample: PointSample) -> None:
    if len(set(sample.points)) != len(sample.points):
        raise ModelError("sample contains repeated points")
    for pt in sample.points:
        if not model.contains_point(pt):
            raise ModelError(f"point {pt} is not on {model.name}")
