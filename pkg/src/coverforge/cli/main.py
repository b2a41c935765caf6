"""``coverforge`` command line.

::

    coverforge group                      # G1-G5
    coverforge rep                        # G6-G7
    coverforge fixtures                   # P1-P6
    coverforge pipeline <stage> [flags]   # one file-based pipeline stage
    coverforge verify <verb> MODEL        # Groebner/Hilbert/smoothness tools
    coverforge run --config FILE          # configured stages and claims

Exit status: 0 when every claim passes, 1 on a claim failure, 2 on a
configuration or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from ..exactalg.fields import PrimeField
from ..exactalg.modular import sqrt_minus7
from ..exactalg.polyio import ParseError
from ..pipeline import stages as st
from ..pipeline.model import ModelError, dump_model
from .claims import DATA_CLAIMS, FIXTURE_CLAIMS, GROUP_CLAIMS, REP_CLAIMS, run_claim
from .config import STAGES, ConfigError, RunConfig, parse_config_text
from .ingest import load_model_file
from .report import ClaimReport, StageRecord

log = logging.getLogger("coverforge")

WORKDIR_ENV = "COVERFORGE_WORKDIR"
INPUT_ERRORS = (ConfigError, ModelError, ParseError, st.MissingInput, FileNotFoundError)

CLAIM_STAGES = {"group": GROUP_CLAIMS, "rep": REP_CLAIMS, "fixtures": FIXTURE_CLAIMS, "verify": DATA_CLAIMS}


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------


def _out(cfg: RunConfig, name: str) -> str:
    return os.path.join(cfg.out_dir, name)


def _produced(cfg: RunConfig, name: str) -> str | None:
    path = _out(cfg, name)
    return path if os.path.exists(path) else None


def _run_pipeline_stage(stage: str, cfg: RunConfig) -> st.StageResult:
    if stage == "double-cover":
        return st.stage_double_cover(cfg.y_equations, cfg.u_basis, cfg.out_dir, cfg.prime, cfg.root, cfg.seed, cfg.margin, cfg.points)
    if stage == "sections":
        return st.stage_sections(cfg.w_model or _produced(cfg, "W.txt"), cfg.a, cfg.out_dir, cfg.seed)
    if stage == "multable":
        return st.stage_multable(cfg.representatives, cfg.base_model, cfg.out_dir, seed=cfg.seed)
    if stage == "fix-scalings":
        return st.stage_fix_scalings(_produced(cfg, "multable.raw.txt"), cfg.base_points, cfg.out_dir, cfg.seed)
    if stage == "emit-z":
        table = _produced(cfg, "multable.fixed.txt")
        return st.stage_emit_z(table, cfg.cover_coords, cfg.base_points, cfg.out_dir, 2, cfg.seed, cfg.margin, cfg.z_actions)
    if stage == "descend-x":
        z = cfg.z_model or _produced(cfg, "Z.txt")
        pts = cfg.z_points or _produced(cfg, "Z.points.txt")
        return st.stage_descend_x(z, pts, cfg.out_dir, cfg.z_boundary, cfg.seed, cfg.margin, root=cfg.root)
    raise ConfigError(f"unknown pipeline stage {stage!r}")


def run(cfg: RunConfig) -> ClaimReport:
    """Execute the configured stages in order; always returns a report."""
    cfg.validate()
    os.makedirs(cfg.out_dir, exist_ok=True)
    report = ClaimReport(config=cfg.as_dict())
    blocked = ""
    for stage in cfg.stages:
        if stage in CLAIM_STAGES:
            for cid in CLAIM_STAGES[stage]:
                res = run_claim(cid, cfg)
                log.info(res.line())
                report.add(res)
            continue
        if blocked:
            report.stages.append(StageRecord(stage, "skipped", f"upstream failure in {blocked}"))
            continue
        t0 = time.time()
        try:
            r = _run_pipeline_stage(stage, cfg)
        except st.MissingInput as exc:
            rec = StageRecord(stage, "skipped", str(exc))
        except Exception as exc:  # embedded in the report; later stages are skipped
            rec = StageRecord(stage, "error", f"{type(exc).__name__}: {exc}", runtime=time.time() - t0)
            blocked = stage
        else:
            rec = StageRecord(stage, "done", "", r.outputs, r.counts, r.runtime)
        log.info(rec.line())
        report.stages.append(rec)
    return report


def write_report(report: ClaimReport, path: str | None) -> None:
    if path:
        d = os.path.dirname(path)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(report.to_json())


def _emit(report: ClaimReport, args) -> int:
    for line in report.lines():
        print(line)
    write_report(report, args.report)
    return report.exit_code


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def _config_from_args(args) -> RunConfig:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = parse_config_text(fh.read(), os.path.dirname(os.path.abspath(args.config)))
    else:
        cfg = RunConfig()
        cfg.out_dir = os.environ.get(WORKDIR_ENV, cfg.out_dir)
    for key in ("seed", "prime", "points", "margin", "root"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, v)
    if getattr(args, "out", None):
        cfg.out_dir = args.out
    if getattr(args, "report", None):
        cfg.report = args.report
    else:
        args.report = cfg.report
    return cfg


def cmd_claims(args) -> int:
    cfg = _config_from_args(args)
    report = ClaimReport(config=cfg.as_dict())
    ids = CLAIM_STAGES[args.command]
    if getattr(args, "only", None):
        ids = [i for i in ids if i in args.only]
    for cid in ids:
        report.add(run_claim(cid, cfg))
    return _emit(report, args)


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    if args.stages:
        cfg.stages = [s.strip() for s in args.stages.split(",") if s.strip()]
    return _emit(run(cfg), args)


def cmd_pipeline(args) -> int:
    out = args.out or os.environ.get(WORKDIR_ENV, ".")
    v = args.verb
    if v == "double-cover":
        r = st.stage_double_cover(args.y, args.basis, out, args.prime or 43, args.root, args.seed or 0, args.margin or 1.25, args.points or 200, u10_path=args.u10)
    elif v == "sections":
        r = st.stage_sections(args.w, args.a, out, args.seed or 0)
    elif v == "multable":
        r = st.stage_multable(args.reps, args.model, out, seed=args.seed or 0)
    elif v == "fix-scalings":
        r = st.stage_fix_scalings(args.table, args.points_file, out, args.seed or 0)
    elif v == "emit-z":
        r = st.stage_emit_z(args.table, args.coords, args.points_file, out, args.degree, args.seed or 0, args.margin or 1.25, args.actions)
    else:
        r = st.stage_descend_x(
            args.z,
            args.points_file,
            out,
            args.boundary,
            args.seed or 0,
            args.margin or 1.25,
            root=args.root,
            expected_quadrics=args.expected_quadrics,
            expected_extra=args.expected_extra,
            relation_degree=args.relation_degree,
        )
    print(json.dumps({"stage": r.stage, "outputs": r.outputs, "counts": r.counts, "manifest": r.manifest}, indent=2, sort_keys=True))
    return 0


def _verify_model(args):
    m = load_model_file(args.model, seed=args.seed or 0)
    root = None
    if not isinstance(m.field, PrimeField):
        p = args.prime or 37
        root = args.root if args.root is not None else (sqrt_minus7(p) if m.field.tag == "QQw" else None)
        m = m.reduce_mod(p, root)
    return m, root


def cmd_verify(args) -> int:
    from ..verify import diagonalize_c3, groebner_basis, hilbert_polynomial, monomial_count, smoothness_check_mod_p

    t0 = time.time()
    m, root = _verify_model(args)
    out = {"dimension": None, "degree": None, "hilbert_coeffs": None, "smooth": None, "prime": m.field.p, "root": root}
    v = args.verb
    if v in ("gb", "hilbert"):
        gb = groebner_basis(m.ideal, field=m.field, backend=args.backend)
        h = hilbert_polynomial(gb)
        out.update(dimension=h.dimension, degree=h.degree, hilbert_coeffs=[str(c) for c in h.polynomial], gb_size=len(gb.generators))
        out["hilbert"] = h.poly_string()
        if v == "hilbert":
            out["hilbert_function"] = [h.hilbert_function(k) for k in range(args.upto + 1)]
    elif v == "smooth":
        rep = smoothness_check_mod_p(m.ideal, expected_dim=m.dimension)
        out.update(smooth=rep.smooth, details=rep.as_dict())
    elif v == "diagonalize-c3":
        d = diagonalize_c3(m)
        out.update(monomials_before=monomial_count(m.ideal), monomials_after=monomial_count(d.ideal))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(dump_model(d))
            out["output"] = args.out
    elif v == "reduce":
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(dump_model(m))
            out["output"] = args.out
        else:
            sys.stdout.write(dump_model(m))
    out["runtime"] = round(time.time() - t0, 3)
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value run configuration")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--seed", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--root", type=int, help="image of sqrt(-7) mod the prime")
    p.add_argument("--points", type=int)
    p.add_argument("--margin", type=float)
    p.add_argument("--out", help="output directory (default: $%s)" % WORKDIR_ENV)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coverforge", description=__doc__.split("\n\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, ids in (("group", GROUP_CLAIMS), ("rep", REP_CLAIMS), ("fixtures", FIXTURE_CLAIMS)):
        p = sub.add_parser(name, help=f"claims {ids[0]}-{ids[-1]}")
        _common(p)
        p.add_argument("--only", nargs="+", choices=ids)
        p.set_defaults(func=cmd_claims)

    p = sub.add_parser("run", help="run configured stages and claims")
    _common(p)
    p.add_argument("--stages", help="comma-separated subset of: " + ", ".join(STAGES))
    p.set_defaults(func=cmd_run)

    pp = sub.add_parser("pipeline", help="one pipeline stage")
    vs = pp.add_subparsers(dest="verb", required=True)
    v = vs.add_parser("double-cover")
    _common(v)
    v.add_argument("--y", required=True, help="Y model file")
    v.add_argument("--basis", required=True, help="U11..U19 polynomial file")
    v.add_argument("--u10", help="U10 polynomial file (default: built-in)")
    v = vs.add_parser("sections")
    _common(v)
    v.add_argument("--w", required=True, help="W model file")
    v.add_argument("--a", type=int, default=3, choices=(3, 5, 6))
    v = vs.add_parser("multable")
    _common(v)
    v.add_argument("--reps", required=True, help="orbit-representative table file")
    v.add_argument("--model", required=True, help="base model with the g3 action")
    v = vs.add_parser("fix-scalings")
    _common(v)
    v.add_argument("--table", required=True)
    v.add_argument("--points-file", required=True)
    v = vs.add_parser("emit-z")
    _common(v)
    v.add_argument("--table", required=True)
    v.add_argument("--coords", required=True)
    v.add_argument("--points-file", required=True)
    v.add_argument("--degree", type=int, default=2)
    v.add_argument("--actions", help="model file carrying actions on the cover coordinates")
    v = vs.add_parser("descend-x")
    _common(v)
    v.add_argument("--z", required=True)
    v.add_argument("--points-file", required=True)
    v.add_argument("--boundary", help="points of Z on {Z0 = 0}")
    v.add_argument("--expected-quadrics", type=int, default=7, help="invariant quadrics modulo I_2")
    v.add_argument("--expected-extra", type=int, default=3, help="extra anti-invariant cubics")
    v.add_argument("--relation-degree", type=int, default=3)
    pp.set_defaults(func=cmd_pipeline)

    vp = sub.add_parser("verify", help="verification tools on a model file")
    vv = vp.add_subparsers(dest="verb", required=True)
    for name in ("gb", "hilbert", "smooth", "diagonalize-c3", "reduce"):
        v = vv.add_parser(name)
        _common(v)
        v.add_argument("model")
        if name in ("gb", "hilbert"):
            v.add_argument("--backend", choices=("buchberger", "f4"), default="f4")
        if name == "hilbert":
            v.add_argument("--upto", type=int, default=6)
    vp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"coverforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
