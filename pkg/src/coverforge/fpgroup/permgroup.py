"""Permutation groups: products, orbits and Schreier-Sims.

Permutations are tuples of images of 0..n-1 acting on the right:
``mul(p, q)`` applies p first, then q.
"""

from __future__ import annotations

from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    r = identity(len(p))
    while k:
        if k & 1:
            r = mul(r, p)
        p = mul(p, p)
        k >>= 1
    return r


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def perm_order(p: Perm) -> int:
    from math import lcm

    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out = lcm(out, k)
    return out


class SchreierSims:
    """Deterministic Schreier-Sims producing a base and strong generating set.

    ``level_gens[i]`` holds the strong generators fixing the first i base
    points; the chain is completed when every Schreier generator of every
    level sifts to the identity through the deeper levels.
    """

    def __init__(self, gens: Sequence[Perm], degree: int | None = None):
        gens = [tuple(g) for g in gens if not is_identity(tuple(g))]
        if degree is None:
            degree = len(gens[0]) if gens else 0
        self.n = degree
        self.base: list[int] = []
        self.level_gens: list[list[Perm]] = []
        self.orbits: list[dict[int, Perm]] = []
        for g in gens:
            self._extend(g, 0)
        self._complete()

    def _gens_at(self, level: int) -> list[Perm]:
        out = []
        for k in range(level, len(self.level_gens)):
            out.extend(self.level_gens[k])
        return out

    def _orbit(self, level: int):
        b = self.base[level]
        gens = self._gens_at(level)
        trans = {b: identity(self.n)}
        queue = [b]
        for pt in queue:
            for g in gens:
                q = g[pt]
                if q not in trans:
                    trans[q] = mul(trans[pt], g)
                    queue.append(q)
        self.orbits[level] = trans

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            pt = g[self.base[level]]
            t = self.orbits[level].get(pt)
            if t is None:
                return g, level
            g = mul(g, inverse(t))
        return g, len(self.base)

    def _extend(self, h: Perm, level: int):
        """Add h (fixing base points < level) as a strong generator."""
        while level < len(self.base) and h[self.base[level]] == self.base[level]:
            level += 1
        if level == len(self.base):
            self.base.append(next(i for i in range(self.n) if h[i] != i))
            self.level_gens.append([])
            self.orbits.append({})
        self.level_gens[level].append(h)
        for k in range(level + 1):
            self._orbit(k)

    def _complete(self):
        level = len(self.base) - 1
        while level >= 0:
            added = False
            trans = self.orbits[level]
            gens = self._gens_at(level)
            for pt, t in list(trans.items()):
                for s in gens:
                    sg = mul(mul(t, s), inverse(trans[s[pt]]))
                    if is_identity(sg):
                        continue
                    h, lvl = self.sift(sg, level + 1)
                    if not is_identity(h):
                        self._extend(h, level + 1)
                        added = True
                        break
                if added:
                    break
            if added:
                level = len(self.base) - 1
            else:
                level -= 1

    def order(self) -> int:
        out = 1
        for o in self.orbits:
            out *= len(o)
        return out

    def contains(self, g: Perm) -> bool:
        h, _ = self.sift(tuple(g))
        return is_identity(h)


def group_order(gens: Sequence[Perm], degree: int | None = None) -> int:
    gens = list(gens)
    if not gens:
        return 1
    return SchreierSims(gens, degree).order()


def is_abelian(gens: Sequence[Perm]) -> bool:
    return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def orbit(point: int, gens: Sequence[Perm]) -> list[int]:
    seen = {point}
    queue = [point]
    for p in queue:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return queue


def enumerate_elements(gens: Sequence[Perm], degree: int, cap: int = 10**6) -> set[Perm]:
    """All elements by closure; only for small groups (used as a brute-force oracle)."""
    e = identity(degree)
    seen = {e}
    queue = [e]
    for x in queue:
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    raise RuntimeError("group too large to enumerate")
    return seen
