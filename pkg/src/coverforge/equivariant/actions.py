"""Generalized permutation actions on coordinates and on forms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..exactalg.fields import (
    CycElement,
    CyclotomicField,
    Field,
    FieldError,
    PrimeField,
    root_of_unity,
)
from ..exactalg.poly import MultiPoly


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class RootScalar:
    """``coef * exp(2 pi i * turn)`` with rational coef and turn in [0, 1)."""

    coef: Fraction = Fraction(1)
    turn: Fraction = Fraction(0)

    def __post_init__(self):
        coef, turn = Fraction(self.coef), Fraction(self.turn)
        if coef == 0:
            raise ActionError("action scalars must be nonzero")
        if coef < 0:  # -c is c * exp(pi i)
            coef, turn = -coef, turn + Fraction(1, 2)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "turn", turn % 1)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "RootScalar":
        return cls(Fraction(1), Fraction(k, n))

    def __mul__(self, other: "RootScalar") -> "RootScalar":
        return RootScalar(self.coef * other.coef, self.turn + other.turn)

    def inverse(self) -> "RootScalar":
        return RootScalar(1 / self.coef, -self.turn)

    def __pow__(self, n: int) -> "RootScalar":
        return RootScalar(self.coef**n, self.turn * n)

    def is_one(self) -> bool:
        return self.coef == 1 and self.turn == 0

    def order_denominator(self) -> int:
        return self.turn.denominator

    def to_field(self, field: Field):
        """Image in ``field``; GF(p) uses the roots g^((p-1)/n) of the least primitive root g."""
        n = self.turn.denominator
        k = self.turn.numerator
        if isinstance(field, PrimeField):
            if (field.p - 1) % n:
                raise FieldError(f"{field} has no primitive {n}-th root of unity")
            return field.mul(field(self.coef), pow(root_of_unity(n, field.p), k, field.p) if n > 1 else 1)
        if n == 1:
            return field(self.coef)
        if n == 2:
            return field(-self.coef)
        if isinstance(field, CyclotomicField) and 14 % n == 0:
            m = Fraction(k, n) * 7  # exp(2 pi i m / 7)
            if m.denominator == 1:
                return field(CycElement.zeta(int(m)) * self.coef)
            # odd multiple of 1/14: exp(pi i (2m)) = -z^(m + 7/2)
            return field(CycElement.zeta(int(m + Fraction(7, 2))) * (-self.coef))
        raise FieldError(f"{field} does not contain exp(2 pi i {self.turn})")

    def __str__(self):
        parts = []
        n, k = self.turn.denominator, self.turn.numerator
        if n == 2:
            c = -self.coef
            return str(c)
        if n != 1:
            base = {7: "z", 3: "c"}.get(n)
            if base is not None:
                parts.append(f"{base}^{k}" if k != 1 else base)
            else:
                parts.append(f"e({k}/{n})")
        if self.coef != 1 or not parts:
            parts.insert(0, str(self.coef))
        return "*".join(parts)


def parse_scalar(text: str) -> RootScalar:
    """``-1``, ``z^3`` (7th root), ``c^2`` (cube root), ``2/3``, ``-z^2``, ``e(1/14)``."""
    out = RootScalar()
    text = text.strip()
    if text.startswith("-"):
        out = out * RootScalar(-1)
        text = text[1:]
    for part in filter(None, text.split("*")):
        m = re.fullmatch(r"([zc])(?:\^(-?\d+))?", part)
        if m:
            n = 7 if m.group(1) == "z" else 3
            out = out * RootScalar.zeta(n, int(m.group(2) or 1))
            continue
        m = re.fullmatch(r"e\((-?\d+)/(\d+)\)", part)
        if m:
            out = out * RootScalar(1, Fraction(int(m.group(1)), int(m.group(2))))
            continue
        try:
            out = out * RootScalar(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise ActionError(f"bad scalar {part!r}") from None
    return out


@dataclass(frozen=True)
class ActionGen:
    """Coordinate i is sent to ``scalars[i] * x[targets[i]]``.

    On forms this is the substitution x_i -> scalars[i] * x_{targets[i]}.
    Products follow matrix multiplication of the row-image matrices, so a
    word in generators is evaluated left to right.
    """

    name: str
    targets: tuple
    scalars: tuple

    def __post_init__(self):
        t = tuple(int(x) for x in self.targets)
        s = tuple(x if isinstance(x, RootScalar) else RootScalar(x) for x in self.scalars)
        if len(t) != len(s):
            raise ActionError("targets and scalars differ in length")
        if sorted(t) != list(range(len(t))):
            raise ActionError(f"action {self.name!r} is not a permutation of coordinates")
        object.__setattr__(self, "targets", t)
        object.__setattr__(self, "scalars", s)

    @property
    def size(self) -> int:
        return len(self.targets)

    @classmethod
    def identity(cls, n: int, name: str = "id") -> "ActionGen":
        return cls(name, tuple(range(n)), (RootScalar(),) * n)

    @classmethod
    def permutation(cls, name: str, targets: Sequence[int], signs: Sequence[int] | None = None) -> "ActionGen":
        signs = signs or [1] * len(targets)
        return cls(name, tuple(targets), tuple(RootScalar(s) for s in signs))

    @classmethod
    def diagonal(cls, name: str, scalars: Sequence[RootScalar]) -> "ActionGen":
        return cls(name, tuple(range(len(scalars))), tuple(scalars))

    def __mul__(self, other: "ActionGen") -> "ActionGen":
        if self.size != other.size:
            raise ActionError("actions on different coordinate counts")
        t = tuple(other.targets[self.targets[i]] for i in range(self.size))
        s = tuple(self.scalars[i] * other.scalars[self.targets[i]] for i in range(self.size))
        return ActionGen(f"{self.name}*{other.name}", t, s)

    def inverse(self) -> "ActionGen":
        n = self.size
        t = [0] * n
        s = [RootScalar()] * n
        for i in range(n):
            j = self.targets[i]
            t[j] = i
            s[j] = self.scalars[i].inverse()
        return ActionGen(f"{self.name}^-1", tuple(t), tuple(s))

    def __pow__(self, k: int) -> "ActionGen":
        if k < 0:
            return self.inverse() ** (-k)
        out = ActionGen.identity(self.size)
        base, n = self, k
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return ActionGen(f"{self.name}^{k}", out.targets, out.scalars)

    def is_identity(self) -> bool:
        return all(t == i for i, t in enumerate(self.targets)) and all(s.is_one() for s in self.scalars)

    def __eq__(self, other):
        return isinstance(other, ActionGen) and self.targets == other.targets and self.scalars == other.scalars

    def __hash__(self):
        return hash((self.targets, self.scalars))

    def order(self, cap: int = 10**4) -> int:
        g = self
        for k in range(1, cap + 1):
            if g.is_identity():
                return k
            g = g * self
        raise ActionError(f"action {self.name!r} has infinite or very large order")

    def is_diagonal(self) -> bool:
        return all(t == i for i, t in enumerate(self.targets))

    def is_monomial_permutation(self) -> bool:
        return all(s.is_one() or (s.coef == 1 and s.turn == Fraction(1, 2)) for s in self.scalars)

    def field_scalars(self, field: Field) -> list:
        return [s.to_field(field) for s in self.scalars]

    def apply_point(self, point: Sequence, field: Field) -> list:
        """Coordinates of the image point: x_i -> scalars[i] * x[targets[i]]."""
        sc = self.field_scalars(field)
        return [field.mul(sc[i], point[self.targets[i]]) for i in range(self.size)]

    def format(self) -> str:
        toks = []
        for t, s in zip(self.targets, self.scalars):
            toks.append(str(t) if s.is_one() else f"{t}*{s}")
        return f"action {self.name}: " + " ".join(toks)


def act_on_form(g: ActionGen, f: MultiPoly) -> MultiPoly:
    """Substitute x_i -> s_i x_{t_i}.  This is a right action:
    act_on_form(h, act_on_form(g, f)) == act_on_form(g * h, f)."""
    if f.nvars != g.size:
        raise ActionError(f"form has {f.nvars} variables, action acts on {g.size}")
    field = f.field
    sc = g.field_scalars(field)
    out: dict = {}
    n = g.size
    for e, c in f.terms.items():
        ne = [0] * n
        coeff = c
        for i, k in enumerate(e):
            if k:
                ne[g.targets[i]] += k
                coeff = field.mul(coeff, field.pow(sc[i], k))
        key = tuple(ne)
        out[key] = field.add(out[key], coeff) if key in out else coeff
    return MultiPoly(f.vars, out, field)


def act_word(gens: dict[str, ActionGen], word) -> ActionGen:
    """Evaluate a group word (fpgroup.Word) on named actions."""
    n = next(iter(gens.values())).size
    out = ActionGen.identity(n)
    for name, e in word.letters:
        if name not in gens:
            raise ActionError(f"no action for generator {name!r}")
        out = out * (gens[name] ** e)
    return out


def c3_orbit(f: MultiPoly, g3: ActionGen) -> list[MultiPoly]:
    if g3.order() != 3:
        raise ActionError(f"{g3.name} does not have order 3")
    f1 = act_on_form(g3, f)
    f2 = act_on_form(g3, f1)
    if act_on_form(g3, f2) != f:
        raise ActionError("orbit does not close")
    return [f, f1, f2]


def is_eigenvector(g: ActionGen, f: MultiPoly):
    """Return lambda with g.f = lambda f, or None."""
    if f.is_zero():
        return None
    gf = act_on_form(g, f)
    e0, c0 = f.leading_lex()
    fld = f.field
    lam = fld.div(gf.coefficient(e0), c0)
    if gf == f.scale(lam):
        return lam
    return None


def is_stable(g: ActionGen, polys: Sequence[MultiPoly]) -> bool:
    """Whether the span of ``polys`` is mapped into itself."""
    from ..exactalg.linalg import rank

    if not polys:
        return True
    images = [act_on_form(g, f) for f in polys]
    mons = sorted({m for p in list(polys) + images for m in p.terms})
    fld = polys[0].field
    rows = [[p.coefficient(m) for m in mons] for p in polys]
    r = rank(rows, fld, len(mons))
    return rank(rows + [[p.coefficient(m) for m in mons] for p in images], fld, len(mons)) == r


# ---------------------------------------------------------------------------
# action files
# ---------------------------------------------------------------------------


def parse_action_line(line: str, n: int | None = None) -> ActionGen:
    """``action g3: 0 2 3 1 5 6 4 ...`` with optional ``target*scalar`` tokens."""
    m = re.fullmatch(r"\s*action\s+(\S+)\s*:\s*(.*)", line)
    if not m:
        raise ActionError(f"not an action line: {line!r}")
    name, body = m.group(1), m.group(2)
    targets, scalars = [], []
    for tok in body.split():
        t, _, s = tok.partition("*")
        try:
            targets.append(int(t))
        except ValueError:
            raise ActionError(f"bad target {t!r} in action {name}") from None
        scalars.append(parse_scalar(s) if s else RootScalar())
    if n is not None and len(targets) != n:
        raise ActionError(f"action {name} lists {len(targets)} coordinates, expected {n}")
    return ActionGen(name, tuple(targets), tuple(scalars))


def field_supports(field: Field, g: ActionGen) -> bool:
    try:
        g.field_scalars(field)
        return True
    except FieldError:
        return False


def common_denominator(actions: Sequence[ActionGen]) -> int:
    out = 1
    for g in actions:
        for s in g.scalars:
            out = lcm(out, s.order_denominator())
    return out


__all__ = [
    "ActionError",
    "ActionGen",
    "RootScalar",
    "act_on_form",
    "act_word",
    "c3_orbit",
    "common_denominator",
    "field_supports",
    "is_eigenvector",
    "is_stable",
    "parse_action_line",
    "parse_scalar",
]
