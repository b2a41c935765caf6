from __future__ import annotations

import pytest

from coverforge.fpgroup import (
    EnumerationOverflow,
    FpPresentation,
    SubgroupSpec,
    Word,
    WordError,
    abelian_invariants,
    check_quotient_presentation,
    coset_action_quotient,
    coset_enumerate,
    data,
    derived_subgroup_spec,
    format_presentation,
    group_order,
    index,
    is_normal,
    parse_word,
    permgroup as pg,
    quotient_by,
    read_presentation_text,
    subgroup_presentation,
    verify_quotient_presentation,
)


def pres(gens, rels):
    return FpPresentation(gens, [parse_word(r, gens) for r in rels])


def test_parse_power():
    assert parse_word("z^7", ["z", "b"]).letters == (("z", 7),)


def test_parse_free_reduction():
    assert parse_word("b z b^{-1} b z^{-1}", ["z", "b"]).letters == (("b", 1),)


def test_parse_t2_word():
    w = parse_word("bzb^2z^{-2}b^3", ["z", "b"])
    assert w.letters == (("b", 1), ("z", 1), ("b", 2), ("z", -2), ("b", 3))


def test_parse_parenthesised_power_and_inverse():
    w = parse_word("(zbz^{-1})^3", ["z", "b"])
    assert w == parse_word("zb^3z^{-1}", ["z", "b"])
    assert (w * w.inverse()).is_identity()


def test_parse_rejects_unknown_generator():
    with pytest.raises(WordError):
        parse_word("a^2", ["z", "b"])


def test_cyclic_order():
    assert group_order(pres(["z"], ["z^7"])) == 7


def test_symmetric_group_order():
    assert group_order(pres(["s", "t"], ["s^2", "t^3", "(st)^2"])) == 6


def test_overflow_is_reported():
    free = FpPresentation(["a", "b"], [])
    with pytest.raises(EnumerationOverflow):
        coset_enumerate(free, None, limit=50, raise_on_overflow=True)


def test_gamma_x_and_y_index():
    G = data.gamma_bar()
    assert index(G, data.gamma_x()) == 21
    assert index(G, data.gamma_y()) == 21


def test_normality_in_gamma_bar():
    G = data.gamma_bar()
    assert is_normal(G, data.gamma_y())
    assert not is_normal(G, data.gamma_x())
    assert is_normal(G, data.gamma_w())


def test_quotient_by_gamma_y_is_nonabelian_21():
    q = quotient_by(data.gamma_bar(), data.gamma_y())
    assert q.order == 21
    assert not q.is_abelian()


def test_quotient_of_cyclic_group():
    P = pres(["z"], ["z^7"])
    q = coset_action_quotient(coset_enumerate(P), P)
    assert q.order == 7 and q.is_abelian()


def test_gamma_z_quotient_presentation():
    q = quotient_by(data.gamma_bar(), data.gamma_z())
    assert q.order == 294
    tw = data.t_words()
    images = [tw[k] for k in data.QUOTIENT_GENS]
    assert verify_quotient_presentation(q, data.quotient_target(), images)


def test_quotient_presentation_detects_wrong_images():
    q = quotient_by(data.gamma_bar(), data.gamma_z())
    tw = data.t_words()
    images = [tw["t2"], tw["t1"], tw["t3"], tw["t4"]]
    chk = check_quotient_presentation(q, data.quotient_target(), images)
    assert not chk.ok and chk.failed_relators


def test_t_subgroups_of_order_14():
    q = quotient_by(data.gamma_bar(), data.gamma_z())
    tw = data.t_words()
    a = [q.image(tw["t1"]), q.image(tw["t3"])]
    b = [q.image(tw["t1"]), q.image(tw["t2"])]
    assert pg.group_order(a, q.degree) == 14 and pg.is_abelian(a)
    assert pg.group_order(b, q.degree) == 14 and not pg.is_abelian(b)


def test_subgroup_presentation_of_c4():
    P = pres(["a"], ["a^4"])
    t = coset_enumerate(P, [parse_word("a^2", ["a"])])
    sp = subgroup_presentation(P, t)
    assert group_order(sp.presentation) == 2


def test_free_group_index_two_subgroup_has_rank_three():
    # Nielsen-Schreier: rank 1 + [F:H](r - 1) = 3
    F = FpPresentation(["a", "b"], [])
    sub = [parse_word(w, ["a", "b"]) for w in ("a^2", "b", "aba^{-1}")]
    t = coset_enumerate(F, sub)
    assert t.index == 2
    sp = subgroup_presentation(F, t)
    inv = abelian_invariants(sp.presentation)
    assert inv.free_rank == 3 and inv.torsion == []


def test_abelian_invariants_of_free_abelian():
    inv = abelian_invariants(pres(["a", "b"], ["aba^{-1}b^{-1}"]))
    assert inv.free_rank == 2 and inv.torsion == []


def test_abelian_invariants_of_gamma_x():
    G = data.gamma_bar()
    sp = subgroup_presentation(G, coset_enumerate(G, data.gamma_x()))
    inv = abelian_invariants(sp.presentation)
    assert inv.torsion == [14] and inv.free_rank == 0


def test_derived_subgroup_of_gamma_x_has_index_294():
    G = data.gamma_bar()
    spec = derived_subgroup_spec(G, data.gamma_x())
    assert index(G, spec) == 294


def test_derived_subgroup_of_free_abelian_is_trivial():
    P = pres(["a", "b"], ["aba^{-1}b^{-1}", "a^3", "b^5"])
    whole = SubgroupSpec([parse_word("a", ["a", "b"]), parse_word("b", ["a", "b"])])
    spec = derived_subgroup_spec(P, whole, method="given")
    assert index(P, spec) == group_order(P)


def _s3_elements():
    # brute force on permutations of three points
    s, t = (1, 0, 2), (1, 2, 0)
    return pg.enumerate_elements([s, t], 3)


def test_derived_subgroup_of_s3_matches_brute_force():
    elems = _s3_elements()
    comms = {pg.mul(pg.mul(pg.inverse(x), pg.inverse(y)), pg.mul(x, y)) for x in elems for y in elems}
    derived = pg.enumerate_elements(list(comms), 3)
    P = pres(["s", "t"], ["s^2", "t^3", "(st)^2"])
    whole = SubgroupSpec([parse_word("s", ["s", "t"]), parse_word("t", ["s", "t"])])
    spec = derived_subgroup_spec(P, whole, method="given")
    assert index(P, spec) == len(elems) // len(derived) == 2


def test_schreier_sims_order_matches_enumeration():
    gens = [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)]
    assert pg.group_order(gens, 5) == len(pg.enumerate_elements(gens, 5)) == 120


def test_presentation_text_round_trip():
    G = data.gamma_bar()
    text = format_presentation(G, {"X": data.gamma_x().generator_words})
    pf = read_presentation_text(text)
    assert pf.presentation.generators == G.generators
    assert pf.presentation.relators == G.relators
    assert pf.subgroups["X"] == data.gamma_x().generator_words


def test_words_multiply_and_invert():
    w = Word.gen("b", 2) * Word.gen("z", -1)
    assert (w ** -1).letters == (("z", 1), ("b", -2))
    assert len(w ** 3) == 9
