"""Multiplication tables of degree-7 cyclic covers.

The basis e_0 = 1, e_1..e_6 of the cover's function field over the base
consists of eigenfunctions of the C7 action, e_k having character k.
Products are e_i e_j = F_ij e_{(i+j) mod 7} with F_ij a rational function
on the base, stored as scale * num / den.  The C3 action multiplies
residues by 4; entries are populated along C3 orbits of unordered pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import product
from math import ceil, gcd
from typing import Sequence

from ..equivariant.actions import ActionGen, act_on_form, is_stable
from ..equivariant.weights import eigen_decompose
from ..exactalg.fields import PrimeField, primitive_root
from ..exactalg.poly import MultiPoly
from ..exactalg.snf import smith_normal_form

RESIDUES = range(1, 7)


class MulTableError(RuntimeError):
    pass


def pair_key(i: int, j: int) -> tuple[int, int]:
    i, j = i % 7, j % 7
    return (i, j) if i <= j else (j, i)


def all_pairs() -> list[tuple[int, int]]:
    return [(i, j) for i in RESIDUES for j in RESIDUES if i <= j]


def pair_orbit(pair: tuple[int, int], residue_map: int = 4) -> list[tuple[int, int]]:
    out = [pair_key(*pair)]
    while True:
        nxt = pair_key(out[-1][0] * residue_map, out[-1][1] * residue_map)
        if nxt == out[0]:
            return out
        out.append(nxt)


def pair_orbits(residue_map: int = 4) -> list[list[tuple[int, int]]]:
    seen, out = set(), []
    for pr in all_pairs():
        if pr not in seen:
            orb = pair_orbit(pr, residue_map)
            seen.update(orb)
            out.append(orb)
    return out


@dataclass
class ProductEntry:
    pair: tuple[int, int]
    target: int
    num: MultiPoly
    den: MultiPoly
    scale: int = 1

    def value(self, pt: Sequence[int], p: int) -> int | None:
        d = self.den.evaluate(list(pt)) % p
        if d == 0:
            return None
        return self.scale * self.num.evaluate(list(pt)) * pow(d, -1, p) % p


@dataclass
class MulTable:
    field: PrimeField
    vars: list[str]
    entries: dict[tuple[int, int], ProductEntry]
    state: str = "raw"
    residue_map: int = 4
    meta: dict = field(default_factory=dict)

    def entry(self, i: int, j: int) -> ProductEntry:
        return self.entries[pair_key(i, j)]

    def F(self, i: int, j: int, pt: Sequence[int]) -> int | None:
        """Value of F_ij at a base point (F_0j = 1)."""
        if i % 7 == 0 or j % 7 == 0:
            return 1
        return self.entry(i, j).value(pt, self.field.p)

    def check_weights(self) -> bool:
        return all(e.target == (e.pair[0] + e.pair[1]) % 7 for e in self.entries.values())

    def check_c3(self, g3: ActionGen) -> bool:
        """F_{4i,4j} = g3 . F_ij as rational functions, with equal scales."""
        p = self.field.p
        for (i, j), e in self.entries.items():
            t = self.entry(i * self.residue_map, j * self.residue_map)
            num, den = act_on_form(g3, e.num), act_on_form(g3, e.den)
            if (num * t.den).scale(e.scale) != (t.num * den).scale(t.scale % p):
                return False
        return True

    def scales(self) -> dict:
        return {k: e.scale for k, e in sorted(self.entries.items())}

    def same_as(self, other: "MulTable") -> bool:
        """Identical entries as rational functions with scales."""
        for k, e in self.entries.items():
            o = other.entries[k]
            if (e.num * o.den).scale(e.scale) != (o.num * e.den).scale(o.scale):
                return False
        return True


def build_multiplication_table(
    representatives: dict[tuple[int, int], tuple[MultiPoly, MultiPoly]],
    g3: ActionGen,
    residue_map: int = 4,
    normalize: bool = True,
) -> MulTable:
    """Raw table from one (num, den) per C3 orbit of pairs.

    Orbit members are filled in by applying g3 to num and den; the scale of
    each representative is unknown at this stage, so num and den are
    normalized (lex-first coefficient 1) and scales start at 1.
    """
    reps = {pair_key(*k): v for k, v in representatives.items()}
    entries: dict = {}
    first = next(iter(reps.values()))[0]
    for orb in pair_orbits(residue_map):
        hit = [pr for pr in orb if pr in reps]
        if len(hit) != 1:
            raise MulTableError(f"need exactly one representative for the orbit {orb}, got {hit}")
        start = orb.index(hit[0])
        num, den = reps[hit[0]]
        if normalize:
            num, den = num.normalized(), den.normalized()
        for k in range(len(orb)):
            pr = orb[(start + k) % len(orb)]
            entries[pr] = ProductEntry(pr, (pr[0] + pr[1]) % 7, num, den, 1)
            num, den = act_on_form(g3, num), act_on_form(g3, den)
    return MulTable(first.field, list(first.vars), entries, "raw", residue_map)


# ---------------------------------------------------------------------------
# associativity
# ---------------------------------------------------------------------------


class DiscreteLog:
    def __init__(self, p: int):
        self.p = p
        self.g = primitive_root(p)
        self.table = {}
        x = 1
        for k in range(p - 1):
            self.table[x] = k
            x = x * self.g % p

    def __call__(self, x: int) -> int:
        return self.table[x % self.p]

    def exp(self, k: int) -> int:
        return pow(self.g, k % (self.p - 1), self.p)


def solve_linear_mod(a: list[list[int]], b: list[int], modulus: int) -> tuple[list[int] | None, int]:
    """Solve a x = b over Z/modulus via Smith normal form.

    Returns (one solution or None, number of solutions).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    snf = smith_normal_form(a)
    L, R, diag = snf.left, snf.right, snf.diagonal
    c = [sum(L[i][k] * b[k] for k in range(m)) % modulus for i in range(m)]
    y = [0] * n
    count = 1
    for i in range(m):
        d = diag[i] if i < len(diag) and i < n else 0
        if d == 0:
            if c[i] % modulus:
                return None, 0
            continue
        g = gcd(d, modulus)
        if c[i] % g:
            return None, 0
        mod_g = modulus // g
        y[i] = (c[i] // g) * pow(d // g, -1, mod_g) % mod_g if mod_g > 1 else 0
        count *= g
    rank = sum(1 for i in range(min(m, n)) if i < len(diag) and diag[i])
    count *= modulus ** (n - rank)
    x = [sum(R[i][k] * y[k] for k in range(n)) % modulus for i in range(n)]
    return x, count


@dataclass
class AssociativityReport:
    equations: int
    unknowns: int
    solutions: int
    trivial_checked: int
    scalars: dict


def _triples():
    return [(i, j, k) for i in RESIDUES for j in RESIDUES for k in RESIDUES]


def normalize_entry(e: ProductEntry, p: int) -> ProductEntry:
    """Same function with num and den scaled to lex-first coefficient 1."""
    cn = e.num.leading_lex()[1] % p
    cd = e.den.leading_lex()[1] % p
    return replace(e, num=e.num.normalized(), den=e.den.normalized(), scale=e.scale * cn * pow(cd, -1, p) % p)


class _Values:
    """Cached F values at a fixed list of points (None where undefined)."""

    def __init__(self, t: MulTable, points):
        self.points = [tuple(pt) for pt in points]
        self.vals = {pr: [e.value(pt, t.field.p) for pt in self.points] for pr, e in t.entries.items()}
        self.n = len(self.points)

    def F(self, i, j, k):
        if i % 7 == 0 or j % 7 == 0:
            return 1
        return self.vals[pair_key(i, j)][k]


def _rho(vals: _Values, i, j, k, idx, p):
    """G(j,k) G(i,j+k) / (G(i,j) G(i+j,k)) at a point, or None."""
    v = [vals.F(j, k, idx), vals.F(i, j + k, idx), vals.F(i, j, idx), vals.F(i + j, k, idx)]
    if any(x is None or x == 0 for x in v):
        return None
    return v[0] * v[1] * pow(v[2] * v[3], -1, p) % p


def fix_scalings_by_associativity(
    t: MulTable, points: Sequence[Sequence[int]], gauge: Sequence[tuple[int, int]] = ((1, 1), (6, 6))
) -> MulTable:
    """One unknown scalar per C3 orbit of pairs, fixed by associativity.

    For each triple, lambda(i,j) lambda(i+j,k) / (lambda(j,k) lambda(i,j+k))
    must equal the ratio rho of the current entries, and rho must be
    constant over the sample points.  Taking discrete logs gives a linear
    system over Z/(q-1), solved by Smith normal form.  Entries are stored
    with normalized num and den; the gauge pairs are set to scale 1, which
    removes the C3-invariant rescaling freedom of the basis.
    """
    p = t.field.p
    M = p - 1
    dlog = DiscreteLog(p)
    t = replace(t, entries={pr: normalize_entry(e, p) for pr, e in t.entries.items()})
    orbits = pair_orbits(t.residue_map)
    orbit_of = {pr: k for k, orb in enumerate(orbits) for pr in orb}
    known = {}
    for g in gauge:
        o = orbit_of[pair_key(*g)]
        lg = (-dlog(t.entry(*g).scale)) % M
        if known.get(o, lg) != lg:
            raise MulTableError(f"gauge pairs {gauge} conflict within one orbit")
        known[o] = lg
    free = [k for k in range(len(orbits)) if k not in known]
    col = {k: c for c, k in enumerate(free)}
    vals = _Values(t, points)
    rows, rhs = [], []
    trivial = 0
    for i, j, k in _triples():
        rhos = {_rho(vals, i, j, k, idx, p) for idx in range(vals.n)}
        rhos.discard(None)
        if not rhos:
            continue
        if len(rhos) > 1:
            raise MulTableError(f"associativity ratio for ({i},{j},{k}) is not constant: an entry is wrong up to more than a scalar")
        rho = rhos.pop()
        coeff = [0] * len(orbits)
        for pr, sgn in (((i, j), 1), ((i + j, k), 1), ((j, k), -1), ((i, j + k), -1)):
            if pr[0] % 7 and pr[1] % 7:
                coeff[orbit_of[pair_key(*pr)]] += sgn
        target = (dlog(rho) - sum(coeff[o] * lg for o, lg in known.items())) % M
        row = [coeff[c] for c in free]
        if not any(row):
            trivial += 1
            if target:
                raise MulTableError(f"inconsistent associativity at ({i},{j},{k}) independently of the free scalings")
            continue
        rows.append(row)
        rhs.append(target)
    x, count = solve_linear_mod(rows, rhs, M) if rows else ([0] * len(free), M ** len(free))
    if x is None:
        raise MulTableError("inconsistent associativity system (some entry has a wrong scalar)")
    if count != 1:
        raise MulTableError(f"associativity leaves {count} scalings; add gauge conditions")
    lam = {o: dlog.exp(lg) for o, lg in known.items()}
    for o in free:
        lam[o] = dlog.exp(x[col[o]])
    entries = {pr: replace(e, scale=e.scale * lam[orbit_of[pr]] % p) for pr, e in t.entries.items()}
    out = MulTable(t.field, t.vars, entries, "associativity-fixed", t.residue_map, dict(t.meta))
    bad = verify_associativity(out, points)
    if bad:
        raise MulTableError(f"associativity still fails at {len(bad)} triples after fixing")
    out.meta["associativity"] = AssociativityReport(len(rows), len(free), count, trivial, {o: lam[o] for o in sorted(lam)})
    return out


def verify_associativity(t: MulTable, points: Sequence[Sequence[int]]) -> list[tuple]:
    """Triples (i, j, k) in 0..6 where (e_i e_j) e_k != e_i (e_j e_k) at some point."""
    p = t.field.p
    vals = _Values(t, points)
    bad = []
    for i, j, k in product(range(7), repeat=3):
        for idx in range(vals.n):
            v = [vals.F(i, j, idx), vals.F(i + j, k, idx), vals.F(j, k, idx), vals.F(i, j + k, idx)]
            if any(x is None for x in v):
                continue
            if v[0] * v[1] % p != v[2] * v[3] % p:
                bad.append((i, j, k))
                break
    return bad


def rescale_table(t: MulTable, c: Sequence[int]) -> MulTable:
    """Table for the basis c_k e_k (c_0 = 1): F_ij -> F_ij c_i c_j / c_{i+j}."""
    p = t.field.p
    cc = [1] + [x % p for x in c[1:7]] if len(c) == 7 else [1] + [x % p for x in c]
    entries = {}
    for (i, j), e in t.entries.items():
        s = e.scale * cc[i] * cc[j] * pow(cc[(i + j) % 7], -1, p) % p
        entries[(i, j)] = replace(e, scale=s)
    return MulTable(t.field, t.vars, entries, t.state, t.residue_map, dict(t.meta))


# ---------------------------------------------------------------------------
# points of the cover
# ---------------------------------------------------------------------------


def lift_point(t: MulTable, pt: Sequence[int], rng: random.Random | None = None, dlog: DiscreteLog | None = None) -> list[int] | None:
    """Values (e_0..e_6) over a base point: e_1^7 = prod_m F_{m,1}, then
    e_{m+1} = e_m e_1 / F_{m,1}.  None if some F is undefined or zero there,
    or the 7th root does not exist in GF(q)."""
    p = t.field.p
    if (p - 1) % 7:
        raise MulTableError(f"GF({p}) has no 7th roots of unity")
    fs = [t.F(m, 1, pt) for m in RESIDUES]
    if any(v is None or v == 0 for v in fs):
        return None
    prod_ = 1
    for v in fs:
        prod_ = prod_ * v % p
    dlog = dlog or DiscreteLog(p)
    lg = dlog(prod_)
    if lg % 7:
        return None
    rng = rng or random.Random(0)
    e1 = dlog.exp(lg // 7 + rng.randrange(7) * (p - 1) // 7)
    vals = [1, e1]
    for m in range(1, 6):
        vals.append(vals[-1] * e1 * pow(fs[m - 1], -1, p) % p)
    return vals


# ---------------------------------------------------------------------------
# relations among functions on the cover
# ---------------------------------------------------------------------------


@dataclass
class CoverCoordinate:
    """The function (num / den) * e_residue on the cover."""

    residue: int
    num: MultiPoly
    den: MultiPoly


def cover_points(
    t: MulTable, coords: Sequence[CoverCoordinate], base_points: Sequence[Sequence[int]], seed: int = 0
) -> list[tuple]:
    """Projective points (coordinate values) over base points, one lift each."""
    from .model import normalize_point

    p = t.field.p
    rng = random.Random(seed)
    dlog = DiscreteLog(p)
    out, seen = [], set()
    for pt in base_points:
        e = lift_point(t, pt, rng, dlog)
        if e is None:
            continue
        vals = []
        for c in coords:
            d = c.den.evaluate(list(pt)) % p
            if d == 0:
                break
            vals.append(c.num.evaluate(list(pt)) * pow(d, -1, p) * e[c.residue % 7] % p)
        if len(vals) != len(coords) or not any(vals):
            continue
        q = normalize_point(vals, p)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def emit_model_Z(
    t: MulTable,
    coords: Sequence[CoverCoordinate],
    base_points: Sequence[Sequence[int]],
    degree: int,
    names: Sequence[str] | None = None,
    actions: Sequence[ActionGen] = (),
    margin: float = 1.25,
    seed: int = 0,
    name: str = "Z",
):
    """Relations of the given degree among cover coordinates.

    The C7 action is diagonal on the coordinates (weight = residue), so the
    monomials are interpolated one weight class at a time.  Further actions
    commuting with C7 split each class into eigenforms; the others (such as
    the C3 lift, which permutes weights) must leave the emitted ideal
    stable.  Every relation is checked on lifted points not used for
    interpolation.
    """
    from fractions import Fraction

    from ..equivariant.actions import RootScalar
    from .interpolate import InterpolationError, interpolate_vanishing_forms
    from .model import PointSample, VarietyModel
    from ..exactalg.poly import monomials_of_degree

    if t.state != "associativity-fixed":
        raise MulTableError("fix the scalings before emitting relations")
    field = t.field
    n = len(coords)
    names = list(names) if names else [f"Z{i}" for i in range(n)]
    pts = cover_points(t, coords, base_points, seed)
    weights = [c.residue % 7 for c in coords]
    c7 = ActionGen.diagonal("c7", [RootScalar(1, Fraction(w, 7)) for w in weights])
    mons = monomials_of_degree(n, degree)
    commuting = [a for a in actions if a * c7 == c7 * a]
    others = [a for a in actions if a not in commuting]
    ideal = []
    for w in range(7):
        cls = [m for m in mons if sum(k * x for k, x in zip(m, weights)) % 7 == w]
        if not cls:
            continue
        need = ceil(margin * len(cls))
        if len(pts) < need + 5:
            raise InterpolationError(f"{len(pts)} lifted points for a weight class of {len(cls)} monomials")
        train = PointSample(field, pts[:need], seed, "lift")
        fresh = PointSample(field, pts[need:], seed, "lift")
        part = interpolate_vanishing_forms(train, degree, names, monomials=cls, margin=margin, fresh=fresh)
        if part and commuting:
            split = eigen_decompose(part, commuting, field)
            part = [f for key in sorted(split) for f in split[key]]
        ideal += part
    for a in others:
        if not is_stable(a, ideal):
            raise MulTableError(f"emitted relations are not stable under {a.name}")
    meta = {"stage": "emit-z", "seed": seed, "eigen_actions": ",".join(["c7"] + [a.name for a in commuting])}
    model = VarietyModel(name, names, ideal, field, [c7] + list(actions), meta)
    return model, pts


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------
#
#   field: GF(337)
#   vars: x y z
#   state: raw
#   residue_map: 4
#   entry 1 1 -> 2 scale 1
#   num: <poly>
#   den: <poly>
#
# Cover coordinate files use "coord NAME residue K" blocks instead.


def _header_lines(field: PrimeField, vars: Sequence[str]) -> list[str]:
    from ..exactalg.polyio import compress_vars

    return [f"field: {field.tag}", f"vars: {compress_vars(vars)}"]


def dump_multable(t: MulTable) -> str:
    lines = _header_lines(t.field, t.vars) + [f"state: {t.state}", f"residue_map: {t.residue_map}"]
    for (i, j), e in sorted(t.entries.items()):
        lines += [f"entry {i} {j} -> {e.target} scale {e.scale}", f"num: {e.num}", f"den: {e.den}"]
    return "\n".join(lines) + "\n"


def _parse_blocks(text: str, head: str):
    """(field, vars, settings, blocks) where blocks are (lineno, words, {num, den})."""
    from ..exactalg.fields import field_from_tag
    from ..exactalg.polyio import ParseError, expand_vars, parse_poly

    field = vars = None
    settings: dict = {}
    blocks: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(head + " "):
            blocks.append((lineno, line.split()[1:], {}))
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value' or '{head} ...'", lineno)
        key, val = key.strip(), val.strip()
        if key == "field":
            field = field_from_tag(val)
        elif key == "vars":
            vars = expand_vars(val)
        elif key in ("num", "den"):
            if not blocks or field is None or vars is None:
                raise ParseError(f"'{key}' outside a {head} block", lineno)
            try:
                blocks[-1][2][key] = parse_poly(val, vars, field)
            except ParseError as exc:
                raise ParseError(str(exc), lineno, exc.col) from None
        else:
            settings[key] = val
    if not isinstance(field, PrimeField) or vars is None:
        raise ParseError("need 'field: GF(p)' and 'vars:' headers")
    for lineno, _, polys in blocks:
        if set(polys) != {"num", "den"}:
            raise ParseError(f"{head} block needs num and den", lineno)
    return field, vars, settings, blocks


def load_multable_text(text: str) -> MulTable:
    from ..exactalg.polyio import ParseError

    field, vars, settings, blocks = _parse_blocks(text, "entry")
    entries = {}
    for lineno, words, polys in blocks:
        try:
            i, j, arrow, target, kw, scale = words
            if arrow != "->" or kw != "scale":
                raise ValueError
            pr = pair_key(int(i), int(j))
            entries[pr] = ProductEntry(pr, int(target) % 7, polys["num"], polys["den"], int(scale) % field.p)
        except ValueError:
            raise ParseError("entry header must be 'entry I J -> K scale S'", lineno) from None
    missing = [pr for pr in all_pairs() if pr not in entries]
    if missing and settings.get("state") != "representatives":
        raise ParseError(f"table is missing entries {missing}")
    return MulTable(field, vars, entries, settings.get("state", "raw"), int(settings.get("residue_map", 4)))


def dump_cover_coordinates(field: PrimeField, vars: Sequence[str], coords: Sequence[CoverCoordinate], names: Sequence[str]) -> str:
    lines = _header_lines(field, vars)
    for name, c in zip(names, coords):
        lines += [f"coord {name} residue {c.residue % 7}", f"num: {c.num}", f"den: {c.den}"]
    return "\n".join(lines) + "\n"


def load_cover_coordinates_text(text: str) -> tuple[list[CoverCoordinate], list[str]]:
    from ..exactalg.polyio import ParseError

    _, _, _, blocks = _parse_blocks(text, "coord")
    coords, names = [], []
    for lineno, words, polys in blocks:
        if len(words) != 3 or words[1] != "residue":
            raise ParseError("coord header must be 'coord NAME residue K'", lineno)
        names.append(words[0])
        coords.append(CoverCoordinate(int(words[2]) % 7, polys["num"], polys["den"]))
    return coords, names
