"""Projective models, point samples and divisor constraints, with text I/O."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from typing import Sequence

from ..equivariant.actions import ActionGen, act_on_form, parse_action_line
from ..exactalg.fields import Field, PrimeField, GF, field_from_tag
from ..exactalg.modular import reduce_mod_p
from ..exactalg.poly import MultiPoly
from ..exactalg.polyio import ParseError, compress_vars, read_poly_text


class ModelError(ValueError):
    pass


@dataclass
class VarietyModel:
    name: str
    coords: list[str]
    ideal: list[MultiPoly]
    field: Field
    actions: list[ActionGen] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coords = list(self.coords)
        for f in self.ideal:
            if tuple(f.vars) != tuple(self.coords):
                raise ModelError(f"{self.name}: generator over {f.vars} does not match coordinates")
        for g in self.actions:
            if g.size != len(self.coords):
                raise ModelError(f"{self.name}: action {g.name} acts on {g.size} coordinates, model has {len(self.coords)}")

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    @property
    def dimension(self) -> int | None:
        d = self.metadata.get("dimension")
        return None if d is None else int(d)

    def action(self, name: str) -> ActionGen:
        for g in self.actions:
            if g.name == name:
                return g
        raise KeyError(f"{self.name} has no action {name!r}")

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.ideal)

    def contains_point(self, pt: Sequence[int]) -> bool:
        return all(f.evaluate(list(pt)) == 0 for f in self.ideal)

    def variable(self, i) -> MultiPoly:
        return MultiPoly.variable(self.coords, i, self.field)

    def reduce_mod(self, p: int, root: int | None = None) -> "VarietyModel":
        """Reduction of a characteristic-zero model to GF(p)."""
        if isinstance(self.field, PrimeField):
            if self.field.p != p:
                raise ModelError(f"{self.name} is already over {self.field}")
            return self
        ideal = [reduce_mod_p(f, p, root) for f in self.ideal]
        meta = dict(self.metadata, prime=p)
        if root is not None:
            meta["prime_root"] = root
        return replace(self, ideal=ideal, field=GF(p), metadata=meta)

    def with_ideal(self, ideal: list[MultiPoly], **meta) -> "VarietyModel":
        return replace(self, ideal=list(ideal), metadata={**self.metadata, **meta})

    def checksum(self) -> str:
        return hashlib.sha256(dump_model(self).encode()).hexdigest()[:16]


def action_stable_on_points(model: VarietyModel, points: Sequence[Sequence[int]]) -> list[str]:
    """Names of actions that move some sampled point off the model."""
    bad = []
    for g in model.actions:
        for pt in points:
            if not model.contains_point(g.apply_point(list(pt), model.field)):
                bad.append(g.name)
                break
    return bad


def ideal_is_action_stable(model: VarietyModel, g: ActionGen) -> bool:
    """Symbolic check: each g.f lies in the span of generators of its degree
    (sufficient when the ideal is generated in one degree)."""
    from ..equivariant.actions import is_stable

    by_deg: dict[int, list[MultiPoly]] = {}
    for f in model.ideal:
        by_deg.setdefault(f.degree(), []).append(f)
    return all(is_stable(g, fs) for fs in by_deg.values())


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_META_KEYS = ("dimension", "embedding", "hilbert", "prime", "prime_root", "stage", "seed")


def dump_model(model: VarietyModel) -> str:
    lines = [f"name: {model.name}", f"field: {model.field.tag}", f"vars: {compress_vars(model.coords)}"]
    for k in sorted(model.metadata):
        v = model.metadata[k]
        if isinstance(v, (str, int)) and k != "name":
            lines.append(f"meta {k}: {v}")
    for g in model.actions:
        lines.append(g.format())
    lines += [str(f) for f in model.ideal]
    return "\n".join(lines) + "\n"


def load_model_text(text: str) -> VarietyModel:
    pf = read_poly_text(text)
    name = "model"
    actions = []
    meta: dict = {}
    for key, entries in pf.headers.items():
        for lineno, val in entries:
            if key == "name":
                name = val
            elif key.startswith("action "):
                try:
                    actions.append(parse_action_line(f"{key}: {val}", len(pf.vars)))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            elif key.startswith("meta "):
                k = key[5:].strip()
                meta[k] = int(val) if val.lstrip("-").isdigit() else val
            else:
                raise ParseError(f"unknown header {key!r}", lineno)
    # keep actions in file order
    order = {}
    for key, entries in pf.headers.items():
        if key.startswith("action "):
            order[key[7:].strip()] = entries[0][0]
    actions.sort(key=lambda g: order.get(g.name, 0))
    return VarietyModel(name, pf.vars, pf.polys, pf.field, actions, meta)


def load_model_file(path) -> VarietyModel:
    with open(path) as fh:
        return load_model_text(fh.read())


def save_model_file(model: VarietyModel, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_model(model))


# ---------------------------------------------------------------------------
# samples and divisors
# ---------------------------------------------------------------------------


@dataclass
class PointSample:
    field: PrimeField
    points: list[tuple]
    seed: int | None = None
    strategy: str = "given"

    def __len__(self):
        return len(self.points)

    def split(self, n: int) -> tuple["PointSample", "PointSample"]:
        a = replace(self, points=self.points[:n])
        b = replace(self, points=self.points[n:])
        return a, b


def normalize_point(pt: Sequence[int], p: int) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    for x in pt:
        if x % p:
            inv = pow(x, -1, p)
            return tuple(y * inv % p for y in pt)
    raise ModelError("the zero vector is not a projective point")


def dump_points(sample: PointSample, coords: Sequence[str]) -> str:
    lines = [f"field: {sample.field.tag}", f"vars: {compress_vars(coords)}"]
    if sample.seed is not None:
        lines.append(f"seed: {sample.seed}")
    lines.append(f"strategy: {sample.strategy}")
    lines += [" ".join(str(x) for x in pt) for pt in sample.points]
    return "\n".join(lines) + "\n"


def load_points_text(text: str) -> tuple[PointSample, list[str]]:
    from ..exactalg.polyio import expand_vars

    field = None
    coords: list[str] = []
    seed = None
    strategy = "file"
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            k, v = (s.strip() for s in line.split(":", 1))
            if k == "field":
                field = field_from_tag(v)
            elif k == "vars":
                coords = expand_vars(v)
            elif k == "seed":
                seed = int(v)
            elif k == "strategy":
                strategy = v
            else:
                raise ParseError(f"unknown header {k!r}", lineno)
            continue
        try:
            pts.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ParseError("point coordinates must be integers", lineno) from None
    if not isinstance(field, PrimeField):
        raise ParseError("point files need a GF(p) field header")
    p = field.p
    out = []
    for pt in pts:
        if coords and len(pt) != len(coords):
            raise ParseError(f"point has {len(pt)} coordinates, expected {len(coords)}")
        out.append(normalize_point(pt, p))
    return PointSample(field, out, seed, strategy), coords


@dataclass
class DivisorCurve:
    """A curve on a model cut out by extra forms, with a multiplicity."""

    name: str
    forms: list[MultiPoly]
    multiplicity: int = 1
    sign: str = "zero"
    points: list[tuple] | None = None

    def __post_init__(self):
        if self.multiplicity <= 0:
            raise ModelError(f"curve {self.name}: multiplicity must be positive")
        if self.sign not in ("zero", "pole"):
            raise ModelError(f"curve {self.name}: sign must be 'zero' or 'pole'")


@dataclass
class DivisorConstraint:
    curves: list[DivisorCurve]

    def zeros(self) -> list[DivisorCurve]:
        return [c for c in self.curves if c.sign == "zero"]

    def poles(self) -> list[DivisorCurve]:
        return [c for c in self.curves if c.sign == "pole"]


def clear_poles(constraint: DivisorConstraint, multiplier: Sequence[DivisorCurve]) -> DivisorConstraint:
    """Zero divisor of F * M where div(M) = ``multiplier`` (all zeros).

    Curves are matched by name; every pole of F must be cancelled.
    """
    mult: dict[str, int] = {}
    curves: dict[str, DivisorCurve] = {}
    for c in constraint.curves:
        mult[c.name] = mult.get(c.name, 0) + (c.multiplicity if c.sign == "zero" else -c.multiplicity)
        curves.setdefault(c.name, c)
    for c in multiplier:
        if c.sign != "zero":
            raise ModelError("the multiplier divisor must be effective")
        mult[c.name] = mult.get(c.name, 0) + c.multiplicity
        curves.setdefault(c.name, c)
    out = []
    for name, m in mult.items():
        if m < 0:
            raise ModelError(f"pole along {name} is not cancelled by the multiplier")
        if m > 0:
            out.append(replace(curves[name], multiplicity=m, sign="zero"))
    return DivisorConstraint(out)


def act_on_model(g: ActionGen, model: VarietyModel) -> list[MultiPoly]:
    return [act_on_form(g, f) for f in model.ideal]
