"""Permutation quotients from coset tables."""

from __future__ import annotations

from dataclasses import dataclass

from . import permgroup as pg
from .todd_coxeter import CosetTable, DEFAULT_LIMIT, coset_enumerate
from .words import FpPresentation, Word, WordError


class QuotientError(RuntimeError):
    pass


@dataclass
class FiniteQuotient:
    """Right action of the ambient generators on the cosets."""

    generators: list[str]
    generator_images: list[tuple]
    order: int

    @property
    def degree(self) -> int:
        return len(self.generator_images[0]) if self.generator_images else 1

    def image(self, word: Word) -> tuple:
        index = {g: i for i, g in enumerate(self.generators)}
        p = pg.identity(self.degree)
        for g, e in word.letters:
            if g not in index:
                raise WordError(f"generator {g!r} not in the source presentation")
            p = pg.mul(p, pg.power(self.generator_images[index[g]], e))
        return p

    def subgroup_order(self, words: list[Word]) -> int:
        return pg.group_order([self.image(w) for w in words], self.degree)

    def is_abelian(self) -> bool:
        return pg.is_abelian(self.generator_images)


def coset_action_quotient(table: CosetTable, pres: FpPresentation, check_relators: bool = True) -> FiniteQuotient:
    if not table.is_complete():
        raise QuotientError("coset table is incomplete")
    if list(table.generators) != list(pres.generators):
        raise QuotientError("table and presentation use different generators")
    images = [table.permutation(i) for i in range(len(pres.generators))]
    q = FiniteQuotient(list(pres.generators), images, 0)
    if check_relators:
        for r in pres.relators:
            if not pg.is_identity(q.image(r)):
                raise QuotientError(f"relator {r} acts nontrivially on the cosets")
    q.order = pg.group_order(images, table.index)
    return q


def quotient_by(pres: FpPresentation, sub, limit: int = DEFAULT_LIMIT) -> FiniteQuotient:
    table = coset_enumerate(pres, sub, limit, raise_on_overflow=True)
    return coset_action_quotient(table, pres)


@dataclass
class PresentationCheck:
    relators_hold: bool
    generates: bool
    quotient_order: int
    image_order: int
    target_order: int | None
    failed_relators: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.relators_hold
            and self.generates
            and self.target_order is not None
            and self.target_order == self.quotient_order
        )


def check_quotient_presentation(
    q: FiniteQuotient, target: FpPresentation, images: list[Word], limit: int = DEFAULT_LIMIT
) -> PresentationCheck:
    if len(images) != len(target.generators):
        raise WordError("need one image word per target generator")
    perms = [q.image(w) for w in images]
    failed = []
    for r in target.relators:
        p = pg.identity(q.degree)
        for g, e in r.letters:
            p = pg.mul(p, pg.power(perms[target.generators.index(g)], e))
        if not pg.is_identity(p):
            failed.append(str(r))
    image_order = pg.group_order(perms, q.degree)
    target_table = coset_enumerate(target, None, limit)
    t_order = target_table.index if target_table.is_complete() else None
    return PresentationCheck(not failed, image_order == q.order, q.order, image_order, t_order, failed)


def verify_quotient_presentation(
    q: FiniteQuotient, target: FpPresentation, images: list[Word], limit: int = DEFAULT_LIMIT
) -> bool:
    """The images satisfy the target relators, generate q, and |target| = |q|.

    The first two give a surjection from the presented group onto q; equal
    orders make it an isomorphism.
    """
    return check_quotient_presentation(q, target, images, limit).ok
