"""Sparse multivariate polynomials over the exact fields."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .fields import QQ, Field, PrimeField

Monomial = tuple  # exponent vector


class PolyError(ValueError):
    pass


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree d, lexicographically descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomial_string(e: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts) if parts else "1"


class MultiPoly:
    """Map monomial -> nonzero coefficient, with a declared variable list."""

    __slots__ = ("vars", "terms", "field")

    def __init__(self, vars: Sequence[str], terms: dict | None = None, field: Field = QQ):
        self.vars = tuple(vars)
        self.field = field
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise PolyError(f"monomial {e} does not match {n} variables")
                if not field.is_zero(c):
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def variable(cls, vars, name_or_index, field: Field = QQ):
        vars = tuple(vars)
        i = name_or_index if isinstance(name_or_index, int) else vars.index(name_or_index)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): field.one}, field)

    @classmethod
    def constant(cls, vars, c, field: Field = QQ):
        return cls(vars, {(0,) * len(vars): field(c)}, field)

    @classmethod
    def monomial(cls, vars, exps, coeff=None, field: Field = QQ):
        return cls(vars, {tuple(exps): field.one if coeff is None else coeff}, field)

    @classmethod
    def zero(cls, vars, field: Field = QQ):
        return cls(vars, {}, field)

    # -- basic queries ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def coefficient(self, e) -> object:
        return self.terms.get(tuple(e), self.field.zero)

    def leading_lex(self):
        """(monomial, coefficient) of the lexicographically first monomial."""
        e = max(self.terms)
        return e, self.terms[e]

    def support_size(self) -> int:
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise PolyError("variable lists differ")
        if self.field != other.field:
            raise PolyError(f"field mismatch: {self.field} vs {other.field}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.vars, other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                v = f.add(out[e], c)
                if f.is_zero(v):
                    del out[e]
                else:
                    out[e] = v
            else:
                out[e] = c
        return MultiPoly(self.vars, out, f)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly(self.vars, {e: f.neg(c) for e, c in self.terms.items()}, f)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        f = self.field
        if f.is_zero(c):
            return MultiPoly(self.vars, {}, f)
        return MultiPoly(self.vars, {e: f.mul(x, c) for e, x in self.terms.items()}, f)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(self.field(other))
        self._check(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = f.mul(c1, c2)
                if e in out:
                    out[e] = f.add(out[e], v)
                else:
                    out[e] = v
        return MultiPoly(self.vars, out, f)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power")
        result = MultiPoly.constant(self.vars, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        if not self.terms:
            return other == 0
        return False

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and evaluation -----------------------------------------

    def diff(self, var) -> "MultiPoly":
        i = var if isinstance(var, int) else self.vars.index(var)
        f = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = f.mul(c, f(k))
        return MultiPoly(self.vars, out, f)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} coordinates, expected {self.nvars}")
        f = self.field
        if isinstance(f, PrimeField):
            p = f.p
            pows = [[1] for _ in point]
            acc = 0
            for e, c in self.terms.items():
                t = c
                for i, k in enumerate(e):
                    if k:
                        pw = pows[i]
                        while len(pw) <= k:
                            pw.append(pw[-1] * point[i] % p)
                        t = t * pw[k] % p
                acc += t
            return acc % p
        acc = f.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * (x ** k)
            acc = acc + t
        return acc

    __call__ = evaluate

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by images[i] (all images share one ring)."""
        if len(images) != self.nvars:
            raise PolyError("need one image per variable")
        if not images:
            return self
        ring_vars, f = images[0].vars, images[0].field
        result = MultiPoly(ring_vars, {}, f)
        cache: dict = {}
        for e, c in self.terms.items():
            t = MultiPoly.constant(ring_vars, 1, f).scale(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    t = t * cache[key]
            result = result + t
        return result

    def map_coefficients(self, fn: Callable, field: Field) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()}, field)

    def rename(self, vars: Sequence[str]) -> "MultiPoly":
        if len(vars) != self.nvars:
            raise PolyError("rename needs the same number of variables")
        return MultiPoly(vars, self.terms, self.field)

    def normalized(self) -> "MultiPoly":
        """Scale so the lexicographically first coefficient is 1."""
        if not self.terms:
            return self
        _, c = self.leading_lex()
        return self.scale(self.field.inv(c))

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.field
        pieces = []
        for e in self.monomials():
            c = self.terms[e]
            mon = monomial_string(e, self.vars)
            cs = f.format(c) if not isinstance(f, PrimeField) else str(c)
            if mon == "1":
                pieces.append(cs)
            elif cs == "1":
                pieces.append(mon)
            elif cs == "-1":
                pieces.append("-" + mon)
            else:
                pieces.append(f"{cs}*{mon}")
        out = pieces[0]
        for p in pieces[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def evaluation_matrix(polys_or_monomials, points: Iterable[Sequence], field: PrimeField):
    """Rows = points, columns = monomials (exponent tuples) or polynomials."""
    import numpy as np

    p = field.p
    pts = np.array(list(points), dtype=np.int64) % p
    items = list(polys_or_monomials)
    if items and isinstance(items[0], MultiPoly):
        cols = [[q.evaluate(list(map(int, pt))) for q in items] for pt in pts]
        return np.array(cols, dtype=np.int64).reshape(len(pts), len(items))
    if not items:
        return np.zeros((len(pts), 0), dtype=np.int64)
    exps = np.array(items, dtype=np.int64)
    maxdeg = int(exps.max()) if exps.size else 0
    # powers[k] = pts ** k mod p
    powers = [np.ones_like(pts)]
    for _ in range(maxdeg):
        powers.append(powers[-1] * pts % p)
    out = np.ones((len(pts), len(items)), dtype=np.int64)
    for j in range(exps.shape[1]):
        col_exps = exps[:, j]
        for k in set(col_exps.tolist()):
            if k == 0:
                continue
            sel = np.nonzero(col_exps == k)[0]
            out[:, sel] = out[:, sel] * powers[k][:, j : j + 1] % p
    return out


def poly_from_vector(vec, monomials: Sequence[Monomial], vars, field: Field) -> MultiPoly:
    return MultiPoly(vars, {m: c for m, c in zip(monomials, vec) if not field.is_zero(c)}, field)


def poly_to_vector(f: MultiPoly, monomials: Sequence[Monomial]) -> list:
    index = {m: i for i, m in enumerate(monomials)}
    v = [f.field.zero] * len(monomials)
    for e, c in f.terms.items():
        if e not in index:
            raise PolyError(f"monomial {e} outside the given basis")
        v[index[e]] = c
    return v
