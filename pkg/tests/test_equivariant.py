from __future__ import annotations

import random
from itertools import combinations_with_replacement

import pytest

from coverforge.equivariant import (
    ActionError,
    ActionGen,
    RepLabel,
    RootScalar,
    act_on_form,
    act_word,
    c3_orbit,
    canonical_symbols,
    is_eigenvector,
    is_stable,
    lefschetz_admissible_a,
    h0_decomposition,
    parse_action_line,
    printed_z_actions,
    regular_rep_check,
    rejection_reason,
    symbol_actions,
    weight_decompose,
    weight_table,
    z_actions,
    z_symbols,
)
from coverforge.equivariant.reps import admissible_decompositions
from coverforge.equivariant.symbols import DESCENT_CUBIC_TEXT, INVARIANT_QUADRICS_TEXT, Z_VARS
from coverforge.exactalg import GF, QQw, QQz7, MultiPoly, monomials_of_degree, parse_poly
from coverforge.exactalg.modular import reduce_mod_p
from coverforge.fpgroup import data


def test_identity_action_fixes_forms():
    V = ["x", "y", "z"]
    f = parse_poly("x^3 - 2*x*y*z + y^2*z", V)
    assert act_on_form(ActionGen.identity(3), f) == f


def test_printed_g3_on_quadric():
    g3 = printed_z_actions()["g3"]
    f = parse_poly("Z1*Z11 + Z4*Z8", Z_VARS)
    assert act_on_form(g3, f) == parse_poly("Z2*Z12 + Z5*Z9", Z_VARS)


def test_g2_is_an_involution():
    g2 = printed_z_actions()["g2"]
    rng = random.Random(0)
    F = GF(43)
    f = MultiPoly(Z_VARS, {m: rng.randrange(43) for m in rng.sample(monomials_of_degree(13, 3), 30)}, F)
    assert act_on_form(g2, act_on_form(g2, f)) == f
    assert act_on_form(g2, f) != f


def test_right_action_law():
    acts = z_actions()
    f = parse_poly("Z0*Z1*Z7 + Z3^2*Z12", Z_VARS, QQz7)
    g, h = acts["g3"], acts["t2"]
    assert act_on_form(h, act_on_form(g, f)) == act_on_form(g * h, f)


def test_derived_actions_match_printed_permutations():
    derived, printed = z_actions(), printed_z_actions()
    assert derived["g3"].targets == printed["g3"].targets
    assert derived["g2"] == printed["g2"]


def test_symbol_weights_are_distinct():
    for a in (3, 5, 6):
        syms = canonical_symbols(a)
        assert len({s.weight for s in syms}) == 13
        assert sum(1 for s in syms if s.weight == (0, 0)) == 1
    with pytest.raises(ValueError):
        canonical_symbols(1)


def test_weight_decompose_on_symbols():
    syms = canonical_symbols(3)
    acts = symbol_actions(syms)
    names = [s.name for s in syms]
    space = [MultiPoly.variable(names, k, QQz7) for k in range(13)]
    parts = weight_decompose(space, [acts["t2"], acts["t3"]])
    assert len(parts) == 13 and all(len(v) == 1 for v in parts.values())
    assert set(parts) == {s.weight for s in syms}


def test_weight_decompose_two_variables():
    F = GF(43)
    z = pow(3, 6, 43)  # element of order 7 in GF(43)
    assert pow(z, 7, 43) == 1 and z != 1
    g = ActionGen.diagonal("g", [RootScalar.zeta(7, 1), RootScalar.zeta(7, -1)])
    space = [MultiPoly(["u", "v"], {m: 1}, F) for m in monomials_of_degree(2, 2)]
    parts = weight_decompose(space, [g])
    assert {k: len(v) for k, v in parts.items()} == {(2,): 1, (0,): 1, (5,): 1}


def test_weight_decompose_needs_diagonalization():
    # a 7-cycle on coordinates is not diagonal but splits into all 7 weights
    F = GF(43)
    V = [f"u{i}" for i in range(7)]
    cyc = ActionGen.permutation("c", [(i + 1) % 7 for i in range(7)])
    parts = weight_decompose([MultiPoly.variable(V, i, F) for i in range(7)], [cyc])
    assert sorted(parts) == [(k,) for k in range(7)]
    for (k,), basis in parts.items():
        assert all(is_eigenvector(cyc, f) == pow(pow(3, 6, 43), k, 43) for f in basis)


def _brute_weight_count(weights, degree, mask):
    count = 0
    for combo in combinations_with_replacement(range(len(weights)), degree):
        if all(sum(weights[k][c] for k in combo) % 7 == 0 for c in mask):
            count += 1
    return count


def test_sym2_weight_spaces_against_enumeration():
    ws = [s.weight for s in z_symbols()]
    table = weight_table(ws, 2)
    assert table[(0, 0)] == _brute_weight_count(ws, 2, (0, 1)) == 1
    first = sum(v for k, v in table.items() if k[0] == 0)
    assert first == _brute_weight_count(ws, 2, (0,)) == 13


def test_c3_orbit_of_invariant_form():
    g3 = printed_z_actions()["g3"]
    f = parse_poly("Z0^2 + Z1*Z2*Z3", Z_VARS)
    assert c3_orbit(f, g3) == [f, f, f]


def test_c3_orbit_of_weight_11_symbol():
    syms = canonical_symbols(3)
    acts = symbol_actions(syms)
    names = [s.name for s in syms]
    r11 = MultiPoly.variable(names, 1, QQz7)
    orbit = c3_orbit(r11, acts["t4"])
    weights = []
    for f in orbit:
        (e,) = f.terms
        weights.append(syms[e.index(1)].weight)
    assert weights == [(1, 1), (4, 2), (2, 4)]


def test_descent_cubic_orbit_parity():
    p = 337
    acts = z_actions()
    cubic = reduce_mod_p(parse_poly(DESCENT_CUBIC_TEXT, Z_VARS, QQw), p)
    for f in c3_orbit(cubic, printed_z_actions()["g3"]):
        assert is_eigenvector(acts["t3"], f) == 1
        assert is_eigenvector(acts["g2"], f) == p - 1


def test_invariant_quadrics_are_invariant():
    p = 337
    acts = z_actions()
    for t in INVARIANT_QUADRICS_TEXT:
        q = reduce_mod_p(parse_poly(t, Z_VARS, QQw), p)
        assert all(is_eigenvector(acts[k], q) == 1 for k in ("g2", "t3"))


def test_relators_hold_on_symbol_actions():
    target = data.quotient_target()
    for a in (3, 5, 6):
        acts = symbol_actions(canonical_symbols(a))
        for r in target.relators:
            assert act_word(acts, r).is_identity()


def test_wrong_action_breaks_a_relator():
    target = data.quotient_target()
    acts = symbol_actions(canonical_symbols(3))
    bad = dict(acts)
    t4 = acts["t4"]
    bad["t4"] = ActionGen("t4", t4.targets, (RootScalar.zeta(7, 1),) + t4.scalars[1:])
    assert not all(act_word(bad, r).is_identity() for r in target.relators)


def test_lefschetz_admissible():
    assert lefschetz_admissible_a() == {3, 5, 6}


@pytest.mark.parametrize("a", [0, 1, 2, 4])
def test_rejected_residues(a):
    assert a not in lefschetz_admissible_a()
    assert rejection_reason(a) is not None


def test_regular_rep_check():
    assert regular_rep_check(h0_decomposition(3))
    swapped = [RepLabel("+", 0)] + h0_decomposition(3)[1:]
    assert not regular_rep_check(swapped)
    assert not regular_rep_check(h0_decomposition(2))


def test_admissible_decompositions_are_c3_closed():
    found = list(admissible_decompositions())
    assert found
    for labels in found:
        key = sorted(l.sort_key() for l in labels)
        assert sorted(l.c3().sort_key() for l in labels) == key
        assert regular_rep_check(labels)


def test_stability_and_eigenvectors():
    g = printed_z_actions()["g3"]
    orbit = c3_orbit(parse_poly("Z1*Z7", Z_VARS, GF(43)), g)
    assert is_stable(g, orbit)
    assert not is_stable(g, orbit[:2])
    assert is_eigenvector(g, orbit[0]) is None


def test_parse_action_line():
    g = parse_action_line("action g: 1*-1 0 2*z^3", 3)
    assert g.targets == (1, 0, 2)
    assert g.scalars[0] == RootScalar(-1)
    assert g.scalars[2] == RootScalar.zeta(7, 3)
    with pytest.raises(ActionError):
        parse_action_line("action g: 0 0 1", 3)
