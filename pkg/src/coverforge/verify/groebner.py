"""Groebner bases over GF(p).

Polynomials are handled internally as ``{exponent tuple: int}`` dicts.  The
baseline engine is Buchberger's algorithm with the Gebauer-Moeller criteria
and sugar selection; ``backend="f4"`` reduces all pairs of the lowest degree
at once by row reduction of a Macaulay-style matrix (homogeneous input only).
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..exactalg.fields import GF, PrimeField
from ..exactalg.linalg import rref_mod_p
from ..exactalg.poly import MultiPoly


class GroebnerTimeout(RuntimeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "degrevlex"
    priority: tuple | None = None  # variable indices, most significant first

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e):
        if self.priority is not None:
            e = tuple(e[i] for i in self.priority)
        if self.kind == "lex":
            return tuple(e)
        return (sum(e),) + tuple(-x for x in reversed(e))


DEGREVLEX = MonomialOrder()


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Poly:
    """Sparse polynomial mod p with its leading monomial cached."""

    __slots__ = ("terms", "lm", "sugar")

    def __init__(self, terms: dict, key, sugar: int | None = None):
        self.terms = terms
        self.lm = max(terms, key=key) if terms else None
        self.sugar = sugar if sugar is not None else max((sum(e) for e in terms), default=0)


def _monic(terms: dict, lm, p: int) -> dict:
    inv = pow(terms[lm], -1, p)
    return {m: c * inv % p for m, c in terms.items()}


def _reduce(terms: dict, basis: list[_Poly], key, p: int, full: bool = True) -> dict:
    """Remainder of ``terms`` modulo the polynomials in ``basis`` (all monic)."""
    f = dict(terms)
    heap = [(_neg(key(m)), m) for m in f]
    heapq.heapify(heap)
    out: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                for gm, gc in g.terms.items():
                    if gm == g.lm:
                        continue
                    t = _add(gm, q)
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        if t not in f:
                            heapq.heappush(heap, (_neg(key(t)), t))
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            out[m] = c
            if not full:
                out.update(f)
                return out
    return out


def _neg(k):
    return tuple(-x for x in k)


@dataclass
class GroebnerBasis:
    generators: list[MultiPoly]
    order: MonomialOrder
    field: PrimeField
    homogeneous_input: bool = True
    stats: dict = field(default_factory=dict)

    @property
    def vars(self):
        return self.generators[0].vars if self.generators else self.stats.get("vars", ())

    def leading_monomials(self) -> list[tuple]:
        key = self.order.key
        return [max(g.terms, key=key) for g in self.generators]

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def reduce(self, f: MultiPoly) -> MultiPoly:
        """Normal form of f."""
        p = self.field.p
        key = self.order.key
        basis = [_Poly({m: int(c) for m, c in g.terms.items()}, key) for g in self.generators]
        r = _reduce({m: int(c) % p for m, c in f.terms.items()}, basis, key, p)
        return MultiPoly(f.vars, r, self.field)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()


def _to_internal(polys: Sequence[MultiPoly], p: int) -> list[dict]:
    out = []
    for f in polys:
        d = {m: int(c) % p for m, c in f.terms.items() if int(c) % p}
        if d:
            out.append(d)
    return out


def groebner_basis(
    ideal: Sequence[MultiPoly],
    order: MonomialOrder = DEGREVLEX,
    field: PrimeField | None = None,
    backend: str = "buchberger",
    timeout: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal over GF(p)."""
    ideal = list(ideal)
    if field is None:
        if not ideal:
            raise ValueError("empty ideal needs an explicit field")
        field = ideal[0].field
    if not isinstance(field, PrimeField):
        raise ValueError(f"Groebner bases are computed over GF(p), not {field}")
    vars = ideal[0].vars if ideal else ()
    homogeneous = all(f.is_homogeneous() for f in ideal)
    p = field.p
    key = order.key
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    gens = _to_internal(ideal, p)
    stats: dict = {"vars": vars, "input": len(ideal), "pairs": 0, "zero_reductions": 0}
    if backend == "buchberger":
        polys = _buchberger(gens, key, p, deadline, stats)
    elif backend == "f4":
        if not homogeneous:
            raise ValueError("the f4 backend requires homogeneous input")
        polys = _f4(gens, key, p, deadline, stats)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    reduced = _interreduce(polys, key, p)
    reduced.sort(key=lambda t: key(max(t, key=key)))
    stats["runtime"] = time.monotonic() - start
    out = [MultiPoly(vars, t, field) for t in reduced]
    return GroebnerBasis(out, order, field, homogeneous, stats)


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise GroebnerTimeout("Groebner basis computation exceeded its time budget")


class _PairSet:
    """Gebauer-Moeller bookkeeping shared by both backends."""

    def __init__(self, key):
        self.key = key
        self.polys: list[_Poly] = []
        self.basis: list[int] = []
        self.pairs: list[tuple] = []  # (sugar, lcm key, i, j, lcm)

    def pair(self, i, j):
        a, b = self.polys[i], self.polys[j]
        l = _lcm(a.lm, b.lm)
        sugar = max(a.sugar + sum(l) - sum(a.lm), b.sugar + sum(l) - sum(b.lm))
        return (sugar, self.key(l), i, j, l)

    def add(self, h: _Poly) -> int:
        self.polys.append(h)
        k = len(self.polys) - 1
        lh = h.lm
        rest = [(g, _lcm(self.polys[g].lm, lh)) for g in self.basis]
        kept: list = []
        while rest:
            g, l = rest.pop(0)
            if _coprime(self.polys[g].lm, lh) or not any(_divides(l2, l) for _, l2 in rest + kept):
                kept.append((g, l))
        new = [self.pair(g, k) for g, l in kept if not _coprime(self.polys[g].lm, lh)]
        old = []
        for item in self.pairs:
            _, _, i, j, l = item
            if _divides(lh, l) and _lcm(self.polys[i].lm, lh) != l and _lcm(self.polys[j].lm, lh) != l:
                continue  # chain criterion
            old.append(item)
        self.pairs = old + new
        self.basis = [g for g in self.basis if not _divides(lh, self.polys[g].lm)] + [k]
        return k

    def pop_lowest(self, all_of_degree: bool = False):
        self.pairs.sort(key=lambda t: (t[0], t[1]))
        if not all_of_degree:
            return [self.pairs.pop(0)]
        d = self.pairs[0][0]
        out = [t for t in self.pairs if t[0] == d]
        self.pairs = [t for t in self.pairs if t[0] != d]
        return out


def _spoly(a: _Poly, b: _Poly, l, p: int) -> dict:
    qa, qb = _sub(l, a.lm), _sub(l, b.lm)
    out: dict = {}
    for m, c in a.terms.items():
        out[_add(m, qa)] = c
    for m, c in b.terms.items():
        t = _add(m, qb)
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(gens: list[dict], key, p: int, deadline, stats) -> list[dict]:
    ps = _PairSet(key)
    for g in sorted(gens, key=lambda t: key(max(t, key=key))):
        basis = [ps.polys[i] for i in ps.basis]
        r = _reduce(g, basis, key, p)
        if r:
            lm = max(r, key=key)
            ps.add(_Poly(_monic(r, lm, p), key))
    while ps.pairs:
        _check_deadline(deadline)
        (sugar, _, i, j, l), = ps.pop_lowest()
        stats["pairs"] += 1
        s = _spoly(ps.polys[i], ps.polys[j], l, p)
        basis = [ps.polys[k] for k in ps.basis]
        r = _reduce(s, basis, key, p)
        if not r:
            stats["zero_reductions"] += 1
            continue
        lm = max(r, key=key)
        ps.add(_Poly(_monic(r, lm, p), key, sugar))
    return [ps.polys[k].terms for k in ps.basis]


def _f4(gens: list[dict], key, p: int, deadline, stats) -> list[dict]:
    ps = _PairSet(key)
    # seed with an echelonized input, grouped by degree
    by_deg: dict[int, list[dict]] = {}
    for g in gens:
        by_deg.setdefault(sum(next(iter(g))), []).append(g)
    pending = sorted(by_deg)
    while pending or ps.pairs:
        _check_deadline(deadline)
        d_pairs = ps.pairs[0][0] if ps.pairs else None
        if ps.pairs:
            d_pairs = min(t[0] for t in ps.pairs)
        d_in = pending[0] if pending else None
        d = min(x for x in (d_pairs, d_in) if x is not None)
        rows: list[dict] = []
        if d_in == d:
            rows.extend(by_deg[d])
            pending.pop(0)
        if d_pairs == d:
            chosen = ps.pop_lowest(all_of_degree=True)
            stats["pairs"] += len(chosen)
            seen = set()
            for _, _, i, j, l in chosen:
                for k in (i, j):
                    q = _sub(l, ps.polys[k].lm)
                    if (k, q) not in seen:
                        seen.add((k, q))
                        rows.append({_add(m, q): c for m, c in ps.polys[k].terms.items()})
        new = _f4_reduce(rows, [ps.polys[k] for k in ps.basis], key, p)
        stats["zero_reductions"] += max(0, len(rows) - len(new))
        for t in sorted(new, key=lambda t: key(max(t, key=key))):
            ps.add(_Poly(t, key, d))
    return [ps.polys[k].terms for k in ps.basis]


def _f4_reduce(rows: list[dict], basis: list[_Poly], key, p: int) -> list[dict]:
    """Symbolic preprocessing plus row reduction; returns the rows with new
    leading monomials."""
    if not rows:
        return []
    mons = set()
    for r in rows:
        mons.update(r)
    done = set()
    reducers = []
    todo = list(mons)
    while todo:
        m = todo.pop()
        if m in done:
            continue
        done.add(m)
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                red = {_add(gm, q): c for gm, c in g.terms.items()}
                reducers.append(red)
                for t in red:
                    if t not in mons:
                        mons.add(t)
                        todo.append(t)
                break
    cols = sorted(mons, key=key, reverse=True)
    index = {m: i for i, m in enumerate(cols)}
    reducer_lms = {max(r, key=key) for r in reducers}
    allrows = reducers + rows
    mat = np.zeros((len(allrows), len(cols)), dtype=np.int64)
    for i, r in enumerate(allrows):
        for m, c in r.items():
            mat[i, index[m]] = c
    red, pivots = rref_mod_p(mat, p)
    out = []
    for i, c in enumerate(pivots):
        if cols[c] in reducer_lms:
            continue
        nz = np.nonzero(red[i])[0]
        out.append({cols[j]: int(red[i, j]) for j in nz})
    return out


def _interreduce(polys: list[dict], key, p: int) -> list[dict]:
    items = [_Poly(_monic(t, max(t, key=key), p), key) for t in polys if t]
    items.sort(key=lambda g: key(g.lm))
    minimal = []
    for g in items:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = {m: c for m, c in g.terms.items() if m != g.lm}
        r = _reduce(tail, others, key, p)
        r[g.lm] = 1
        out.append(r)
    return out


def spoly_certificate(gb: GroebnerBasis) -> list[tuple[int, int, bool]]:
    """Buchberger's criterion: (i, j, reduces to zero) for every pair."""
    p = gb.field.p
    key = gb.order.key
    basis = [_Poly({m: int(c) for m, c in g.terms.items()}, key) for g in gb.generators]
    out = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            l = _lcm(basis[i].lm, basis[j].lm)
            s = _spoly(basis[i], basis[j], l, p)
            out.append((i, j, not _reduce(s, basis, key, p)))
    return out


def is_groebner(gb: GroebnerBasis) -> bool:
    return all(ok for _, _, ok in spoly_certificate(gb))


def ideal_over_gf(polys: Sequence[MultiPoly], p: int) -> list[MultiPoly]:
    """Coerce polynomials with integer or GF(p) coefficients into GF(p)."""
    F = GF(p)
    return [f if f.field == F else f.map_coefficients(F, F) for f in polys]
