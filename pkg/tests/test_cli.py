from __future__ import annotations

import json
import os

import pytest

from coverforge.cli import main as climain
from coverforge.cli.claims import CLAIMS, run_claim
from coverforge.cli.config import ConfigError, RunConfig, parse_config_text
from coverforge.cli.ingest import load_model_file, validate_model
from coverforge.cli.report import ClaimReport
from coverforge.pipeline import dump_model, load_model_text, sample_points
from coverforge.pipeline.fixtures import (
    fermat_cubic,
    mu7_cover_coordinates,
    mu7_cover_fixture,
    quadric_cone_fixture,
    twisted_cubic,
    veronese_cover_inputs,
)
from coverforge.pipeline.model import ModelError, PointSample, dump_points
from coverforge.pipeline.multable import MulTable, dump_cover_coordinates, dump_multable, pair_orbits
from coverforge.pipeline.stages import sha256_file


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------


def test_config_parsing(tmp_path):
    _write(tmp_path / "Y.txt", "")
    cfg = parse_config_text("stages = group, rep\nseed = 4\nmargin = 1.5\ny_equations = Y.txt  # relative\n", str(tmp_path))
    assert cfg.stages == ["group", "rep"] and cfg.seed == 4 and cfg.margin == 1.5
    assert cfg.y_equations == os.path.join(str(tmp_path), "Y.txt")
    cfg.validate()


@pytest.mark.parametrize(
    "text",
    ["stages = group, frobnicate", "stages = rep, group", "margin = 0.5", "y_equations = nowhere.txt"],
)
def test_config_validation_errors(tmp_path, text):
    with pytest.raises(ConfigError):
        parse_config_text(text, str(tmp_path)).validate()


def test_config_syntax_errors():
    with pytest.raises(ConfigError):
        parse_config_text("seed: 4")
    with pytest.raises(ConfigError):
        parse_config_text("seed = four")
    with pytest.raises(ConfigError):
        parse_config_text("colour = red")


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = _write(tmp_path / "run.cfg", "stages = group\nz_model = missing.txt\n")
    assert climain.main(["run", "--config", cfg]) == 2
    assert "missing.txt" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# model ingestion
# ---------------------------------------------------------------------------


def test_hand_written_plane_model(tmp_path):
    text = "name: P2\nfield: GF(43)\nvars: x y z\nmeta dimension: 2\n"
    path = _write(tmp_path / "P2.txt", text)
    m = load_model_file(path)
    assert m.coords == ["x", "y", "z"] and m.ideal == [] and m.dimension == 2


def test_model_round_trip_is_byte_identical(tmp_path):
    Y, U10, basis = veronese_cover_inputs(43)
    from coverforge.pipeline import build_double_cover

    W = build_double_cover(Y, U10, basis, seed=1)
    a = _write(tmp_path / "W.txt", dump_model(W))
    b = _write(tmp_path / "W2.txt", dump_model(load_model_file(a)))
    assert open(a).read() == open(b).read()


def test_corrupted_coefficient_fails_loudly(tmp_path):
    X = fermat_cubic(43)
    text = dump_model(X)
    assert validate_model(load_model_text(text)) == []
    bad = text.replace("x^3 + y^3 + z^3", "x^3 + 2*y^3 + z^3")
    assert bad != text
    path = _write(tmp_path / "bad.txt", bad)
    with pytest.raises(ModelError, match="g3"):
        load_model_file(path)


def test_corrupted_cover_model_fails_exact_check():
    from coverforge.cli.ingest import unstable_actions
    from coverforge.equivariant import is_eigenvector
    from coverforge.pipeline import build_double_cover

    Y, U10, basis = veronese_cover_inputs(43)
    W = build_double_cover(Y, U10, basis, seed=1)
    assert unstable_actions(W) == []
    iota = W.action("iota")
    # an iota-odd relation picks up an iota-even term
    k = next(i for i, f in enumerate(W.ideal) if is_eigenvector(iota, f) == 42)
    f = W.ideal[k]
    terms = dict(f.terms)
    terms[(2,) + (0,) * 9] = 1
    bad = W.with_ideal(W.ideal[:k] + [type(f)(f.vars, terms, f.field)] + W.ideal[k + 1 :])
    assert unstable_actions(bad) == ["iota"]


def test_inhomogeneous_generator_is_rejected(tmp_path):
    path = _write(tmp_path / "m.txt", "name: m\nfield: GF(43)\nvars: x y z\nx^2 + y*z\nx^2 + y\n")
    with pytest.raises(ModelError):
        load_model_file(path)


# ---------------------------------------------------------------------------
# run / reports
# ---------------------------------------------------------------------------


def test_run_group_only(tmp_path):
    cfg = RunConfig(stages=["group"], out_dir=str(tmp_path))
    rep = climain.run(cfg)
    assert [c.claim_id for c in rep.claims] == ["G1", "G2", "G3", "G4", "G5"]
    assert all(c.status == "pass" for c in rep.claims) and rep.exit_code == 0


def test_run_rep_only(tmp_path):
    rep = climain.run(RunConfig(stages=["rep"], out_dir=str(tmp_path)))
    assert [(c.claim_id, c.status) for c in rep.claims] == [("G6", "pass"), ("G7", "pass")]


def test_run_without_y_skips_data_stages(tmp_path):
    cfg = RunConfig(stages=["rep", "double-cover", "descend-x", "verify"], out_dir=str(tmp_path))
    rep = climain.run(cfg)
    assert [(s.stage, s.status) for s in rep.stages] == [("double-cover", "skipped"), ("descend-x", "skipped")]
    assert all("missing input" in s.detail for s in rep.stages)
    assert {c.claim_id: c.status for c in rep.claims if c.claim_id.startswith("D")} == {"D1": "skipped", "D2": "skipped", "D3": "skipped"}
    assert rep.exit_code == 0


def test_report_is_reproducible(tmp_path):
    cfg = RunConfig(stages=["rep", "double-cover", "verify"], out_dir=str(tmp_path))
    a = climain.run(cfg).to_json(runtimes=False)
    b = climain.run(cfg).to_json(runtimes=False)
    assert a == b
    assert "runtime" not in a


def test_report_exit_codes():
    r = ClaimReport()
    r.add(run_claim("G6"))
    assert r.exit_code == 0
    failing = run_claim("G6")
    failing.status = "fail"
    r.add(failing)
    assert r.exit_code == 1


def test_claim_registry_is_complete():
    assert sorted(CLAIMS) == sorted([f"G{i}" for i in range(1, 8)] + [f"P{i}" for i in range(1, 7)] + ["D1", "D2", "D3"])


def test_cli_rep_verb_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert climain.main(["rep", "--report", str(out)]) == 0
    assert "G6" in capsys.readouterr().out
    data = json.loads(out.read_text())
    assert {c["claim_id"] for c in data["claims"]} == {"G6", "G7"}


def test_cli_missing_model_exits_2(tmp_path):
    assert climain.main(["verify", "gb", str(tmp_path / "none.txt")]) == 2


# ---------------------------------------------------------------------------
# verify verbs
# ---------------------------------------------------------------------------


def test_verify_hilbert_json(tmp_path, capsys):
    path = _write(tmp_path / "T.txt", dump_model(twisted_cubic(43)))
    assert climain.main(["verify", "hilbert", path, "--upto", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["hilbert"] == "3*m + 1" and out["dimension"] == 1 and out["degree"] == 3
    assert out["hilbert_function"] == [1, 4, 7, 10]


def test_verify_smooth_and_diagonalize(tmp_path, capsys):
    path = _write(tmp_path / "X.txt", dump_model(fermat_cubic(37)))
    assert climain.main(["verify", "smooth", path]) == 0
    assert json.loads(capsys.readouterr().out)["smooth"] is True
    d = str(tmp_path / "Xd.txt")
    assert climain.main(["verify", "diagonalize-c3", path, "--out", d]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["output"] == d and os.path.exists(d)


def test_d2_reports_fail_on_wrong_model(tmp_path):
    path = _write(tmp_path / "X.txt", dump_model(fermat_cubic(37)))
    cfg = RunConfig(x_equations=path, out_dir=str(tmp_path))
    res = run_claim("D2", cfg)
    assert res.status == "fail"


# ---------------------------------------------------------------------------
# file-based pipeline
# ---------------------------------------------------------------------------


def test_pipeline_multable_to_z(tmp_path, capsys):
    fx = mu7_cover_fixture(337)
    reps = {o[0]: fx.table.entries[o[0]] for o in pair_orbits()}
    reps_path = _write(tmp_path / "reps.txt", dump_multable(MulTable(fx.table.field, fx.table.vars, reps, "representatives")))
    base_path = _write(tmp_path / "base.txt", dump_model(fx.base))
    pts = sample_points(fx.base, 300, seed=11)
    pts_path = _write(tmp_path / "base.points.txt", dump_points(pts, fx.base.coords))
    coords, _ = mu7_cover_coordinates(fx)
    names = [f"C{k}" for k in range(len(coords))]
    coords_path = _write(tmp_path / "coords.txt", dump_cover_coordinates(fx.base.field, fx.base.coords, coords, names))
    out = str(tmp_path / "out")

    assert climain.main(["pipeline", "multable", "--reps", reps_path, "--model", base_path, "--out", out]) == 0
    raw = os.path.join(out, "multable.raw.txt")
    assert climain.main(["pipeline", "fix-scalings", "--table", raw, "--points-file", pts_path, "--out", out]) == 0
    fixed = os.path.join(out, "multable.fixed.txt")
    args = ["pipeline", "emit-z", "--table", fixed, "--coords", coords_path, "--points-file", pts_path, "--degree", "3", "--out", out]
    assert climain.main(args) == 0
    capsys.readouterr()

    Z = load_model_file(os.path.join(out, "Z.txt"))
    assert Z.ideal and all(f.degree() == 3 for f in Z.ideal)
    with open(os.path.join(out, "emit-z.manifest.json")) as fh:
        man = json.load(fh)
    assert man["outputs"]["model"]["sha256"] == sha256_file(os.path.join(out, "Z.txt"))
    assert man["inputs"]["table"]["sha256"] == sha256_file(fixed)


def test_pipeline_descend_on_cone(tmp_path, capsys):
    cone = quadric_cone_fixture(43)
    z = _write(tmp_path / "Z.txt", dump_model(cone))
    pts = _write(tmp_path / "Z.points.txt", dump_points(sample_points(cone, 200, seed=3), cone.coords))
    bpts = [(0, 0, 1, t) for t in range(43)] + [(0, 0, 0, 1)]
    b = _write(tmp_path / "boundary.txt", dump_points(PointSample(cone.field, bpts, 0, "enumerate"), cone.coords))
    out = str(tmp_path / "out")
    assert climain.main(["pipeline", "descend-x", "--z", z, "--points-file", pts, "--boundary", b, "--out", out, "--expected-quadrics", "5", "--expected-extra", "1", "--relation-degree", "2"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["counts"]["invariant_quadrics"] == 5 and res["counts"]["extra_cubics"] == 1
    X = load_model_file(res["outputs"]["model"])
    assert len(X.coords) == 6


def test_run_pipeline_stage_error_blocks_later_stages(tmp_path):
    bad = _write(tmp_path / "Z.txt", dump_model(quadric_cone_fixture(43)))
    pts = _write(tmp_path / "pts.txt", "garbage\n")
    cfg = RunConfig(stages=["descend-x", "verify"], z_model=bad, z_points=pts, out_dir=str(tmp_path / "out"))
    rep = climain.run(cfg)
    assert rep.stages[0].status == "error"
    assert rep.exit_code == 1
