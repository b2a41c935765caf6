"""Validated loading of model files."""

from __future__ import annotations

from ..equivariant.actions import act_on_form
from ..exactalg.fields import PrimeField
from ..exactalg.linalg import rank_mod_p
from ..exactalg.poly import monomials_of_degree
from ..pipeline import model as _model
from ..pipeline.model import ModelError, VarietyModel, action_stable_on_points
from ..pipeline.sampling import SamplingError, model_dimension, sample_points

# 43 = 1 mod 7 and -7 is a square mod 43, so every supported field reduces there
CHECK_PRIME = 43
# slicing needs a lex basis in this many unknowns; beyond it only the exact check runs
MAX_SLICE_CODIM = 3


def _degree_part(gens, d: int, n: int) -> list[dict]:
    """Spanning set of I_d: monomial multiples of the generators of degree <= d."""
    rows = []
    for h in gens:
        e = h.degree()
        if e > d:
            continue
        for m in monomials_of_degree(n, d - e):
            rows.append({tuple(a + b for a, b in zip(k, m)): c for k, c in h.terms.items()})
    return rows


def unstable_actions(model: VarietyModel) -> list[str]:
    """Actions g with g.f outside I_{deg f} for some generator f (exact, GF(p))."""
    p, n = model.field.p, len(model.coords)
    bad = []
    spans: dict[int, tuple] = {}
    for g in model.actions:
        for f in model.ideal:
            d = f.degree()
            if d not in spans:
                rows = _degree_part(model.ideal, d, n)
                cols = {m: i for i, m in enumerate(monomials_of_degree(n, d))}
                mat = [[0] * len(cols) for _ in rows]
                for r, row in zip(mat, rows):
                    for m, c in row.items():
                        r[cols[m]] = c % p
                spans[d] = (cols, mat, rank_mod_p(mat, p))
            cols, mat, rk = spans[d]
            v = [0] * len(cols)
            for m, c in act_on_form(g, f).terms.items():
                v[cols[m]] = c % p
            if rank_mod_p(mat + [v], p) != rk:
                bad.append(g.name)
                break
    return bad


def validate_model(model: VarietyModel, points: int = 5, seed: int = 0) -> list[str]:
    """Problems found: inhomogeneous generators, actions that do not preserve
    the ideal, or that move one of ``points`` sampled points off the variety."""
    problems = [f"generator {i} is not homogeneous" for i, f in enumerate(model.ideal) if not f.is_homogeneous()]
    if problems or not model.actions or not model.ideal:
        return problems
    m = model if isinstance(model.field, PrimeField) else model.reduce_mod(CHECK_PRIME)
    bad = unstable_actions(m)
    if len(m.coords) - 1 - model_dimension(m) <= MAX_SLICE_CODIM:
        try:
            pts = sample_points(m, points, seed=seed).points
        except SamplingError as exc:
            return [f"cannot sample {points} points: {exc}"]
        bad += [g for g in action_stable_on_points(m, pts) if g not in bad]
    return [f"action {name} does not preserve the variety" for name in bad]


def load_model_file(path: str, validate: bool = True, points: int = 5, seed: int = 0) -> VarietyModel:
    """Parse a model file; with ``validate`` raise ModelError on any problem."""
    m = _model.load_model_file(path)
    if validate:
        problems = validate_model(m, points, seed)
        if problems:
            raise ModelError(f"{path}: " + "; ".join(problems))
    return m
