"""Finitely presented groups: words, coset enumeration, quotients, rewriting."""

from .words import (
    FpPresentation,
    PresentationFile,
    SubgroupSpec,
    Word,
    WordError,
    commutator,
    format_presentation,
    parse_word,
    read_presentation_text,
)
from .todd_coxeter import (
    CosetTable,
    DEFAULT_LIMIT,
    EnumerationOverflow,
    coset_enumerate,
    group_order,
    index,
    is_normal,
)
from .quotient import (
    FiniteQuotient,
    PresentationCheck,
    QuotientError,
    check_quotient_presentation,
    coset_action_quotient,
    quotient_by,
    verify_quotient_presentation,
)
from .rewriting import (
    AbelianInvariants,
    SubgroupPresentation,
    abelian_invariants,
    derived_subgroup_spec,
    subgroup_generators,
    subgroup_presentation,
)
from . import data, permgroup
