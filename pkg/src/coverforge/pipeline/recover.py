"""Recovery of QQ(sqrt(-7)) coefficients from modular runs.

A run at prime p with sqrt(-7) = r produces normalized polynomials over
GF(p).  Running again with the other root -r gives the conjugate images.
Both images at several primes determine a + b w coefficientwise by CRT and
rational reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exactalg.fields import QQw, FieldError
from ..exactalg.modular import check_root, reconstruct_quadratic, reduce_mod_p
from ..exactalg.poly import MultiPoly


class RecoveryError(RuntimeError):
    pass


@dataclass
class ModularImage:
    p: int
    root: int  # image of w
    plus: MultiPoly  # computed with w -> root
    minus: MultiPoly  # computed with w -> -root


def recover_polynomial(images: Sequence[ModularImage], check: ModularImage | None = None) -> MultiPoly:
    """a + b w coefficients from images at several primes.

    All images must share the monomial support (use the same normalization
    in every run).  ``check`` is an extra prime used only to confirm the
    reconstruction.
    """
    if not images:
        raise RecoveryError("no modular images")
    support = set(images[0].plus.terms)
    for im in images:
        check_root(im.p, im.root)
        if set(im.plus.terms) != support or set(im.minus.terms) != support:
            raise RecoveryError(f"monomial support differs at p={im.p}; normalize consistently")
    terms = {}
    for e in support:
        q = reconstruct_quadratic([(im.p, im.root, im.plus.terms[e], im.minus.terms[e]) for im in images])
        if q is None:
            raise RecoveryError(f"reconstruction failed for monomial {e}; use more primes")
        terms[e] = q
    f = MultiPoly(images[0].plus.vars, terms, QQw)
    if check is not None:
        try:
            ok = reduce_mod_p(f, check.p, check.root) == check.plus and reduce_mod_p(f, check.p, (-check.root) % check.p) == check.minus
        except FieldError:
            ok = False
        if not ok:
            raise RecoveryError(f"reconstruction does not match the check prime {check.p}")
    return f
