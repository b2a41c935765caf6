"""The presentation of the ambient arithmetic group and its named subgroups."""

from __future__ import annotations

from .words import FpPresentation, SubgroupSpec, Word, commutator, parse_word

GAMMA_BAR_GENS = ["z", "b"]

GAMMA_BAR_RELATORS = [
    "z^7",
    "(b^{-2}z)^3",
    "(b^2z^{-2}b^2z^2)^3",
    "(b^2z^{-2}b^2z^4)^3",
    "b^3z^{-2}b^{-1}z^2b^{-2}z",
    "b^3zb^3z^3bz^2b^{-1}z^{-1}",
    "b^3z^2b^2z^{-2}b^{-1}z^{-1}b^{-3}zb^{-1}z^{-1}",
]

GAMMA_X_WORDS = ["b^3", "zb^3z", "bz^2b^{-1}z"]
GAMMA_Y_WORDS = ["b^3", "(zbz^{-1})^3", "bzb^2z^{-2}", "zbz^3b^{-1}"]

T_WORDS = {
    "t1": "b^3",
    "t2": "bzb^2z^{-2}b^3",
    "t3": "bz^2b^{-1}z",
    "t4": "b^4",
}

QUOTIENT_GENS = ["t1", "t2", "t3", "t4"]
QUOTIENT_RELATORS = [
    "t1^2",
    "t2^7",
    "(t1t2)^2",
    "t3^7",
    "[t1,t3]",
    "[t2,t3]",
    "t4^3",
    "t4t1t4^{-1}t1^{-1}",
    "t4t2t4^{-1}t2^{-4}",
    "t4t3t4^{-1}t3^{-2}",
]

PRESENTATION_TEXT = "\n".join(
    ["gens: z b"]
    + [f"rel: {r}" for r in GAMMA_BAR_RELATORS]
    + ["sub X: " + "; ".join(GAMMA_X_WORDS), "sub Y: " + "; ".join(GAMMA_Y_WORDS)]
    + [f"word {k}: {v}" for k, v in T_WORDS.items()]
) + "\n"


def gamma_bar() -> FpPresentation:
    return FpPresentation(list(GAMMA_BAR_GENS), [parse_word(r, GAMMA_BAR_GENS) for r in GAMMA_BAR_RELATORS], "Gamma_bar")


def t_words() -> dict[str, Word]:
    return {k: parse_word(v, GAMMA_BAR_GENS) for k, v in T_WORDS.items()}


def gamma_x() -> SubgroupSpec:
    return SubgroupSpec([parse_word(w, GAMMA_BAR_GENS) for w in GAMMA_X_WORDS], name="Gamma_X")


def gamma_y() -> SubgroupSpec:
    return SubgroupSpec([parse_word(w, GAMMA_BAR_GENS) for w in GAMMA_Y_WORDS], name="Gamma_Y")


def pairwise_commutators(words: list[Word]) -> list[Word]:
    return [commutator(words[i], words[j]) for i in range(len(words)) for j in range(i + 1, len(words))]


def gamma_z() -> SubgroupSpec:
    """Normal closure in the ambient group of the commutators of the generators of Gamma_X."""
    return SubgroupSpec(pairwise_commutators(gamma_x().generator_words), "normal-closure", name="Gamma_Z")


def gamma_w() -> SubgroupSpec:
    """Subgroup generated by Gamma_Z and t2."""
    z = gamma_z()
    return SubgroupSpec([t_words()["t2"]], "as-given", normal_words=z.generator_words, name="Gamma_W")


def quotient_target() -> FpPresentation:
    return FpPresentation(list(QUOTIENT_GENS), [parse_word(r, QUOTIENT_GENS) for r in QUOTIENT_RELATORS], "Q294")
