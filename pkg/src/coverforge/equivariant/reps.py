"""Representations of D14 x C7 and the admissible second weight a.

Labels ``V_{x,y}``: x is "+" or "-" (one-dimensional, through D14 -> C2) or
1, 2, 4 (two-dimensional, rotation eigenvalues zeta^{+-x}); y is the
character exponent of the second C7 factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..exactalg.fields import CycElement

KINDS = ("+", "-", 1, 2, 4)
C3_KIND = {"+": "+", "-": "-", 1: 4, 4: 2, 2: 1}


@dataclass(frozen=True)
class RepLabel:
    kind: object
    y: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown representation kind {self.kind!r}")
        object.__setattr__(self, "y", self.y % 7)

    def sort_key(self):
        return (str(self.kind), self.y)

    @property
    def dim(self) -> int:
        return 1 if self.kind in ("+", "-") else 2

    def c3(self) -> "RepLabel":
        """Conjugation by the C3 generator: V_{k,y} -> V_{4k,2y}."""
        return RepLabel(C3_KIND[self.kind], 2 * self.y)

    def character(self, rot: int, refl: bool, s: int) -> tuple:
        """Character at (rho^rot or sigma rho^rot, tau^s) as coefficients of
        1, zeta, ..., zeta^6 (an element of Z[x]/(x^7 - 1))."""
        v = [0] * 7
        if self.kind in ("+", "-"):
            v[self.y * s % 7] = -1 if (self.kind == "-" and refl) else 1
        elif not refl:
            v[(self.kind * rot + self.y * s) % 7] += 1
            v[(-self.kind * rot + self.y * s) % 7] += 1
        return tuple(v)

    def __str__(self):
        return f"V_{{{self.kind},{self.y}}}"


TRIVIAL = RepLabel("+", 0)


def _char_sum(labels, rot, refl, s) -> list[int]:
    acc = [0] * 7
    for lab in labels:
        for k, c in enumerate(lab.character(rot, refl, s)):
            acc[k] += c
    return acc


def _equals_integer(v, n: int) -> bool:
    """Whether sum v_k zeta^k == n; the only relation is 1 + zeta + ... + zeta^6 = 0."""
    return all(v[k] == v[1] for k in range(1, 7)) and v[0] - v[1] == n


def character_value(labels, rot: int, refl: bool, s: int) -> CycElement:
    """Exact character value in QQ(z7)."""
    acc = CycElement()
    for k, c in enumerate(_char_sum(labels, rot, refl, s)):
        if c:
            acc = acc + CycElement.zeta(k) * c
    return acc


def regular_rep_check(labels, add_trivial: bool = True) -> bool:
    """Whether labels (plus one trivial summand) restrict to the regular
    representation of both D14 = D14 x {1} and C14 = <sigma> x C7."""
    labels = list(labels) + ([TRIVIAL] if add_trivial else [])
    if sum(lab.dim for lab in labels) != 14:
        raise ValueError(f"labels have total dimension {sum(lab.dim for lab in labels)}, expected 14")
    # D14: rotations rho^k and reflections sigma rho^k
    for refl in (False, True):
        for k in range(7):
            if not _equals_integer(_char_sum(labels, k, refl, 0), 14 if (k == 0 and not refl) else 0):
                return False
    # C14: sigma^e x tau^s
    for refl in (False, True):
        for s in range(7):
            if not _equals_integer(_char_sum(labels, 0, refl, s), 14 if (s == 0 and not refl) else 0):
                return False
    return True


def _regular_fast(labels) -> bool:
    """Equivalent counting test: multiplicities of irreducible restrictions."""
    d14 = {"+": 1, "-": 0, 1: 0, 2: 0, 4: 0}
    c14 = {}
    for lab in labels:
        d14[lab.kind] += 1
        if lab.dim == 1:
            key = (lab.kind, lab.y)
            c14[key] = c14.get(key, 0) + 1
        else:
            for sgn in ("+", "-"):
                c14[(sgn, lab.y)] = c14.get((sgn, lab.y), 0) + 1
    c14[("+", 0)] = c14.get(("+", 0), 0) + 1
    if d14 != {"+": 1, "-": 1, 1: 2, 2: 2, 4: 2}:
        return False
    return all(c14.get((sgn, y), 0) == 1 for sgn in ("+", "-") for y in range(7)) and len(c14) == 14


def c3_closed(labels) -> bool:
    key = RepLabel.sort_key
    return sorted((lab.c3() for lab in labels), key=key) == sorted(labels, key=key)


def admissible_decompositions():
    """All 13-dimensional label multisets passing the regularity and C3 tests."""
    shapes = []
    for counts in product(range(14), range(14), range(7), range(7), range(7)):
        npl, nmi, n1, n2, n4 = counts
        if npl + nmi + 2 * (n1 + n2 + n4) == 13:
            shapes.append(counts)
    out = []
    for npl, nmi, n1, n2, n4 in shapes:
        groups = [("+", npl), ("-", nmi), (1, n1), (2, n2), (4, n4)]
        if not _d14_regular([RepLabel(k, 0) for k, n in groups for _ in range(n)]):
            continue
        slots = [kind for kind, n in groups for _ in range(n)]
        for labels in _assign_weights(slots):
            if _regular_fast(labels) and c3_closed(labels):
                out.append(tuple(sorted(labels, key=RepLabel.sort_key)))
    return out


def _assign_weights(slots):
    """Second weights for each slot, nondecreasing within a kind, pruning any
    C14 character that would appear twice (the trivial one is taken by H^2)."""
    used = {("+", 0)}
    labels: list[RepLabel] = []

    def chars(kind, y):
        return [(kind, y)] if kind in ("+", "-") else [("+", y), ("-", y)]

    def rec(i):
        if i == len(slots):
            yield list(labels)
            return
        kind = slots[i]
        lo = labels[-1].y if labels and labels[-1].kind == kind else 0
        for y in range(lo, 7):
            cs = chars(kind, y)
            if any(c in used for c in cs) or len(set(cs)) < len(cs):
                continue
            used.update(cs)
            labels.append(RepLabel(kind, y))
            yield from rec(i + 1)
            labels.pop()
            used.difference_update(cs)

    yield from rec(0)


def _d14_regular(labels) -> bool:
    labels = list(labels) + [TRIVIAL]
    for refl in (False, True):
        for k in range(7):
            if not _equals_integer(_char_sum(labels, k, refl, 0), 14 if (k == 0 and not refl) else 0):
                return False
    return True


def normalized_a_values(labels) -> set[int]:
    """Rescale the second C7 so one V1 block has y=1 and report the other's y."""
    v1 = [lab.y for lab in labels if lab.kind == 1]
    out = set()
    for c in v1:
        if c == 0:
            continue
        inv = pow(c, -1, 7)
        others = list(v1)
        others.remove(c)
        for o in others:
            out.add(o * inv % 7)
    return out


def lefschetz_admissible_a(reduce_inverse: bool = False, verify_exact: bool = True) -> set[int]:
    """Residues a such that V_{-,0} + V_{1,1} + V_{4,2} + V_{2,4} + V_{1,a} + V_{4,2a} + V_{2,4a}
    passes the regularity tests, found by exhaustive search.

    ``reduce_inverse`` additionally identifies a with a^-1 (swapping which V1
    block is normalized), keeping the smaller representative.
    """
    found = set()
    for labels in admissible_decompositions():
        if verify_exact and not regular_rep_check(labels):
            raise AssertionError("fast and exact regularity tests disagree")
        found |= normalized_a_values(labels)
    if reduce_inverse:
        found = {min(a, pow(a, -1, 7)) for a in found}
    return found


def h0_decomposition(a: int) -> list[RepLabel]:
    """Candidate H0 decomposition for the residue a: the sign character plus two C3-orbits of characters."""
    return [
        RepLabel("-", 0),
        RepLabel(1, 1),
        RepLabel(4, 2),
        RepLabel(2, 4),
        RepLabel(1, a),
        RepLabel(4, 2 * a),
        RepLabel(2, 4 * a),
    ]


def rejection_reason(a: int) -> str | None:
    """Why the candidate a fails, or None when admissible."""
    a %= 7
    labels = h0_decomposition(a)
    if a in (0, 1):
        return "second weights of the V1 blocks are not distinct nonzero residues"
    if not regular_rep_check(labels):
        return "not a regular representation of C14"
    return None
