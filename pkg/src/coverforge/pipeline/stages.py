"""File-based pipeline stages with JSON manifests.

Every stage reads its inputs from text files, writes its outputs next to a
``<stage>.manifest.json`` recording the stage name, seed, prime, counts and
SHA-256 checksums of inputs and outputs.  A missing input raises
``MissingInput`` so orchestration can report the stage as skipped.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from typing import Sequence

from ..exactalg.fields import PrimeField
from ..exactalg.modular import reduce_mod_p, sqrt_minus7
from ..exactalg.polyio import format_poly_text, read_poly_text
from .cover import Y_VARS, build_double_cover, lift_points, u10_form
from .descent import descend_to_X, printed_descent_forms
from .model import (
    ModelError,
    PointSample,
    VarietyModel,
    dump_model,
    dump_points,
    load_model_file,
    load_points_text,
)
from .multable import (
    build_multiplication_table,
    dump_multable,
    emit_model_Z,
    fix_scalings_by_associativity,
    load_cover_coordinates_text,
    load_multable_text,
)
from .sampling import sample_points
from .sections import check_identity, find_weighted_sections


class MissingInput(FileNotFoundError):
    pass


@dataclass
class StageResult:
    stage: str
    outputs: dict[str, str]
    counts: dict
    manifest: str
    runtime: float = 0.0
    extra: dict = field(default_factory=dict)


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def require(path: str | None, what: str) -> str:
    if not path:
        raise MissingInput(f"missing input: {what}")
    if not os.path.exists(path):
        raise MissingInput(f"missing input: {what} ({path})")
    return path


def write_manifest(out_dir: str, stage: str, seed: int, prime: int | None, counts: dict, inputs: dict, outputs: dict, root: int | None = None) -> str:
    data = {
        "stage": stage,
        "seed": seed,
        "prime": prime,
        "root": root,
        "counts": counts,
        "inputs": {k: {"path": v, "sha256": sha256_file(v)} for k, v in sorted(inputs.items()) if v},
        "outputs": {k: {"path": v, "sha256": sha256_file(v)} for k, v in sorted(outputs.items())},
    }
    path = os.path.join(out_dir, f"{stage}.manifest.json")
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _write(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _read_points(path: str) -> PointSample:
    with open(path) as fh:
        return load_points_text(fh.read())[0]


def _gf_model(path: str, prime: int, root: int | None) -> VarietyModel:
    m = load_model_file(path)
    if isinstance(m.field, PrimeField):
        if m.field.p != prime:
            raise ModelError(f"{path} is over GF({m.field.p}), expected GF({prime})")
        return m
    return m.reduce_mod(prime, root)


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------


def stage_double_cover(
    y_path: str | None,
    basis_path: str | None,
    out_dir: str,
    prime: int = 43,
    root: int | None = None,
    seed: int = 0,
    margin: float = 1.25,
    points: int = 200,
    strategy: str = "slice",
    u10_path: str | None = None,
) -> StageResult:
    """W from Y, U10 and the nine further quadrics U11..U19 vanishing on {s = 0}."""
    t0 = time.time()
    require(y_path, "Y equations")
    require(basis_path, "U11..U19 basis")
    root = sqrt_minus7(prime) if root is None else root
    Y = _gf_model(y_path, prime, root)
    bf = read_poly_text(open(basis_path).read())
    basis = [reduce_mod_p(f, prime, root) if not isinstance(f.field, PrimeField) else f for f in bf.polys]
    if u10_path:
        U10 = read_poly_text(open(u10_path).read()).polys[0]
    else:
        if list(Y.coords) != Y_VARS:
            raise ModelError(f"built-in U10 is written in {Y_VARS[0]}..{Y_VARS[-1]}; pass a U10 file")
        U10 = u10_form()
    if not isinstance(U10.field, PrimeField):
        U10 = reduce_mod_p(U10, prime, root)
    W = build_double_cover(Y, U10, basis, seed=seed, margin=margin, strategy=strategy)
    W.metadata.update({"prime": prime, "prime_root": root})
    w_path = _write(out_dir, "W.txt", dump_model(W))
    ysample = sample_points(Y, points, strategy=strategy, seed=seed + 1)
    wpts = lift_points(Y, ysample, [U10] + basis, seed + 1)
    p_path = _write(out_dir, "W.points.txt", dump_points(PointSample(W.field, wpts, seed + 1, "lift"), W.coords))
    quads = [f for f in W.ideal if f.degree() == 2]
    counts = {"quadrics": len(quads), "points": len(wpts)}
    outs = {"model": w_path, "points": p_path}
    man = write_manifest(out_dir, "double-cover", seed, prime, counts, {"Y": y_path, "basis": basis_path, "U10": u10_path}, outs, root)
    return StageResult("double-cover", outs, counts, man, time.time() - t0)


def stage_sections(w_path: str | None, a: int, out_dir: str, seed: int = 0) -> StageResult:
    t0 = time.time()
    require(w_path, "W model")
    W = load_model_file(w_path)
    sols = find_weighted_sections(W, a)
    polys, headers = [], [f"# a = {a}; {len(sols)} solution(s), each as s1 s2 s3 s4"]
    for s in sols:
        if not check_identity(W, s):
            raise ModelError("s1 s2 - s3 s4 is not in the ideal")
        polys += list(s.as_tuple())
    out = _write(out_dir, f"sections-a{a}.txt", format_poly_text(W.field, W.coords, polys, headers))
    counts = {"a": a, "solutions": len(sols)}
    p = W.field.p if isinstance(W.field, PrimeField) else None
    man = write_manifest(out_dir, f"sections-a{a}", seed, p, counts, {"W": w_path}, {"sections": out})
    return StageResult(f"sections-a{a}", {"sections": out}, counts, man, time.time() - t0, {"solutions": sols})


def stage_multable(reps_path: str | None, model_path: str | None, out_dir: str, g3: str = "g3", seed: int = 0) -> StageResult:
    """Raw table from one representative entry per C3 orbit of pairs."""
    t0 = time.time()
    require(reps_path, "orbit representatives")
    require(model_path, "base model carrying the C3 action")
    model = load_model_file(model_path)
    reps = load_multable_text(open(reps_path).read())
    table = build_multiplication_table({k: (e.num, e.den) for k, e in reps.entries.items()}, model.action(g3), reps.residue_map)
    if not table.check_weights() or not table.check_c3(model.action(g3)):
        raise ModelError("raw table violates weight additivity or C3 equivariance")
    out = _write(out_dir, "multable.raw.txt", dump_multable(table))
    counts = {"entries": len(table.entries)}
    man = write_manifest(out_dir, "multable", seed, table.field.p, counts, {"representatives": reps_path, "model": model_path}, {"table": out})
    return StageResult("multable", {"table": out}, counts, man, time.time() - t0)


def stage_fix_scalings(table_path: str | None, points_path: str | None, out_dir: str, seed: int = 0, count: int = 30) -> StageResult:
    t0 = time.time()
    require(table_path, "raw multiplication table")
    require(points_path, "base points")
    t = load_multable_text(open(table_path).read())
    pts = _read_points(points_path).points[:count]
    fixed = fix_scalings_by_associativity(t, pts)
    rep = fixed.meta["associativity"]
    out = _write(out_dir, "multable.fixed.txt", dump_multable(fixed))
    counts = {"equations": rep.equations, "unknowns": rep.unknowns, "points": len(pts)}
    man = write_manifest(out_dir, "fix-scalings", seed, t.field.p, counts, {"table": table_path, "points": points_path}, {"table": out})
    return StageResult("fix-scalings", {"table": out}, counts, man, time.time() - t0)


def stage_emit_z(
    table_path: str | None,
    coords_path: str | None,
    points_path: str | None,
    out_dir: str,
    degree: int = 2,
    seed: int = 0,
    margin: float = 1.25,
    actions_path: str | None = None,
) -> StageResult:
    """Relations among the cover coordinates; ``actions_path`` is an optional
    model file whose actions (e.g. g2, g3) are attached and checked."""
    t0 = time.time()
    require(table_path, "fixed multiplication table")
    require(coords_path, "cover coordinates")
    require(points_path, "base points")
    t = load_multable_text(open(table_path).read())
    coords, names = load_cover_coordinates_text(open(coords_path).read())
    acts = load_model_file(actions_path).actions if actions_path else []
    base = _read_points(points_path).points
    Z, pts = emit_model_Z(t, coords, base, degree, names, acts, margin, seed)
    z_path = _write(out_dir, "Z.txt", dump_model(Z))
    p_path = _write(out_dir, "Z.points.txt", dump_points(PointSample(t.field, pts, seed, "lift"), Z.coords))
    counts = {"relations": len(Z.ideal), "degree": degree, "points": len(pts)}
    outs = {"model": z_path, "points": p_path}
    ins = {"table": table_path, "coords": coords_path, "points": points_path, "actions": actions_path}
    man = write_manifest(out_dir, "emit-z", seed, t.field.p, counts, ins, outs)
    return StageResult("emit-z", outs, counts, man, time.time() - t0)


def stage_descend_x(
    z_path: str | None,
    points_path: str | None,
    out_dir: str,
    boundary_path: str | None = None,
    seed: int = 0,
    margin: float = 1.25,
    boundary_count: int = 60,
    use_printed: bool = True,
    root: int | None = None,
    expected_quadrics: int | None = 7,
    expected_extra: int | None = 3,
    relation_degree: int = 3,
) -> StageResult:
    """X from Z; boundary points on {Z0 = 0} are sampled when not supplied."""
    t0 = time.time()
    require(z_path, "Z model")
    require(points_path, "Z points")
    Z = load_model_file(z_path)
    p = Z.field.p
    pts = _read_points(points_path).points
    if boundary_path:
        bpts = _read_points(boundary_path).points
    else:
        bmodel = Z.with_ideal(Z.ideal + [Z.variable(0)])
        bpts = sample_points(bmodel, boundary_count, seed=seed + 3, allow_fewer=True).points
    quads = cubics = None
    if use_printed and len(Z.coords) == 13:
        quads, cubics = printed_descent_forms(p, root)
    X, rep = descend_to_X(
        Z,
        pts,
        bpts,
        quadrics=quads,
        cubics=cubics,
        expected_quadrics=expected_quadrics,
        expected_extra=expected_extra,
        relation_degree=relation_degree,
        margin=margin,
        seed=seed,
    )
    x_path = _write(out_dir, "X.txt", dump_model(X))
    counts = {"invariant_quadrics": rep.invariant_quadrics, "extra_cubics": rep.extra_cubics, "relations": rep.relations, "points": rep.points}
    ins = {"Z": z_path, "points": points_path, "boundary": boundary_path}
    man = write_manifest(out_dir, "descend-x", seed, p, counts, ins, {"model": x_path})
    return StageResult("descend-x", {"model": x_path}, counts, man, time.time() - t0, {"report": rep})


STAGE_ORDER: Sequence[str] = ("group", "rep", "double-cover", "sections", "multable", "fix-scalings", "emit-z", "descend-x", "verify")
