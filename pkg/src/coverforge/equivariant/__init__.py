"""Group actions on coordinates and forms, weights, and representation bookkeeping."""

from .actions import (
    ActionError,
    ActionGen,
    RootScalar,
    act_on_form,
    act_word,
    c3_orbit,
    is_eigenvector,
    is_stable,
    parse_action_line,
    parse_scalar,
)
from .reps import (
    RepLabel,
    admissible_decompositions,
    lefschetz_admissible_a,
    h0_decomposition,
    regular_rep_check,
    rejection_reason,
)
from .symbols import (
    SectionSymbol,
    canonical_symbols,
    printed_z_actions,
    symbol_actions,
    z_actions,
    z_symbols,
)
from .weights import action_matrix, monomial_weight, weight_decompose, weight_table
