"""The 13 weighted section symbols r_{i,j} and the actions of t1..t4 on them."""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionGen, RootScalar


@dataclass(frozen=True)
class SectionSymbol:
    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % 7)
        object.__setattr__(self, "j", self.j % 7)

    @property
    def weight(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def name(self) -> str:
        def s(x):
            return str(x - 7) if x > 3 else str(x)

        return f"r{s(self.i)}_{s(self.j)}"

    def parity_partner(self) -> "SectionSymbol":
        return SectionSymbol(-self.i, self.j)

    def c3(self) -> "SectionSymbol":
        return SectionSymbol(4 * self.i, 2 * self.j)


def canonical_symbols(a: int = 3) -> list[SectionSymbol]:
    """Basis order (r00, r11, r-1,1, r42, r-4,2, r24, r-2,4, r1a, r-1a, r4,2a, r-4,2a, r2,4a, r-2,4a)."""
    out = [SectionSymbol(0, 0)]
    for j0 in (1, a):
        for i, j in ((1, j0), (4, 2 * j0), (2, 4 * j0)):
            out += [SectionSymbol(i, j), SectionSymbol(-i, j)]
    if len({s.weight for s in out}) != 13:
        raise ValueError(f"a={a} gives repeated weights")
    return out


def z_symbols() -> list[SectionSymbol]:
    """Z0..Z12 = (r00, r11, r42, r24, r-1,1, r-4,2, r-2,4, r13, r46, r25, r-1,3, r-4,6, r-2,5)."""
    pairs = [(0, 0), (1, 1), (4, 2), (2, 4), (-1, 1), (-4, 2), (-2, 4), (1, 3), (4, 6), (2, 5), (-1, 3), (-4, 6), (-2, 5)]
    return [SectionSymbol(i, j) for i, j in pairs]


def symbol_actions(symbols: list[SectionSymbol]) -> dict[str, ActionGen]:
    """t1: C2 (r00 -> -r00, r_{i,j} <-> r_{-i,j}); t2: r_{i,j} -> z^i r_{i,j};
    t3: r_{i,j} -> z^j r_{i,j}; t4: r_{i,j} -> r_{4i,2j}."""
    index = {s.weight: k for k, s in enumerate(symbols)}
    n = len(symbols)

    def perm(f):
        return tuple(index[f(s).weight] for s in symbols)

    t1 = ActionGen(
        "t1",
        perm(SectionSymbol.parity_partner),
        tuple(RootScalar(-1) if s.weight == (0, 0) else RootScalar() for s in symbols),
    )
    t2 = ActionGen("t2", tuple(range(n)), tuple(RootScalar.zeta(7, s.i) for s in symbols))
    t3 = ActionGen("t3", tuple(range(n)), tuple(RootScalar.zeta(7, s.j) for s in symbols))
    t4 = ActionGen("t4", perm(SectionSymbol.c3), (RootScalar(),) * n)
    return {"t1": t1, "t2": t2, "t3": t3, "t4": t4}


def z_actions() -> dict[str, ActionGen]:
    """g3 and g2 on Z0..Z12 together with the torus actions."""
    acts = symbol_actions(z_symbols())
    return {
        "g3": ActionGen("g3", acts["t4"].targets, acts["t4"].scalars),
        "g2": ActionGen("g2", acts["t1"].targets, acts["t1"].scalars),
        "t2": acts["t2"],
        "t3": acts["t3"],
    }


# Printed coordinate permutations on Z0..Z12 (source indices of each image slot)
G3_PRINTED = (0, 2, 3, 1, 5, 6, 4, 8, 9, 7, 11, 12, 10)
G2_PRINTED = (0, 4, 5, 6, 1, 2, 3, 10, 11, 12, 7, 8, 9)
G2_PRINTED_SIGNS = (-1,) + (1,) * 12


def printed_z_actions() -> dict[str, ActionGen]:
    return {
        "g3": ActionGen.permutation("g3", G3_PRINTED),
        "g2": ActionGen.permutation("g2", G2_PRINTED, G2_PRINTED_SIGNS),
    }


Z_VARS = [f"Z{k}" for k in range(13)]

# Invariant quadrics on Z listed in the descent step
INVARIANT_QUADRICS_TEXT = [
    "Z0^2",
    "Z12*Z5 + Z2*Z9",
    "Z10*Z6 + Z3*Z7",
    "Z11*Z4 + Z1*Z8",
    "Z10*Z3 + Z6*Z7",
    "Z1*Z11 + Z4*Z8",
    "Z12*Z2 + Z5*Z9",
]

# One cubic of the C3 orbit vanishing on {Z0 = 0}
DESCENT_CUBIC_TEXT = (
    "Z1*Z10^2 - 1/4*(-7 + 3*w)*Z10*Z2*Z5 - 2*Z1*Z3*Z5 + 1/2*(1 - w)*Z12^2*Z6"
    " + 2*Z2*Z4*Z6 - Z11*Z6^2 - Z1*Z10*Z7 + Z10*Z4*Z7 + 1/4*(-7 + 3*w)*Z2*Z5*Z7"
    " - Z4*Z7^2 + Z3^2*Z8 - 1/2*(1 - w)*Z3*Z9^2"
)
