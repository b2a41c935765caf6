from __future__ import annotations

import random
from math import comb

import pytest

from coverforge.equivariant import act_on_form, is_eigenvector
from coverforge.exactalg import GF, MultiPoly, QQw, parse_poly
from coverforge.exactalg.modular import reduce_mod_p, sqrt_minus7
from coverforge.pipeline import (
    DescentError,
    DivisorConstraint,
    DivisorCurve,
    InterpolationError,
    ModularImage,
    MulTableError,
    RecoveryError,
    VarietyModel,
    build_double_cover,
    build_multiplication_table,
    check_cover_identity,
    descend_to_X,
    dump_model,
    emit_model_Z,
    find_section_with_divisor,
    find_weighted_sections,
    fix_scalings_by_associativity,
    interpolate_by_parity,
    interpolate_vanishing_forms,
    load_model_text,
    recover_polynomial,
    sample_points,
    verify_associativity,
)
from coverforge.pipeline.descent import ideal_in_degree, isotypic_forms
from coverforge.pipeline.fixtures import (
    conic,
    mu7_cover_coordinates,
    mu7_cover_fixture,
    quadric_cone_fixture,
    section_fixture,
    twisted_cubic,
    veronese_cover_inputs,
    veronese_surface,
)
from coverforge.pipeline.model import dump_points, load_points_text
from coverforge.pipeline.multable import (
    dump_cover_coordinates,
    dump_multable,
    load_cover_coordinates_text,
    load_multable_text,
    pair_orbits,
    rescale_table,
)
from coverforge.pipeline.sampling import enumerate_points
from coverforge.pipeline.sections import check_identity, compare_up_to_gauge


@pytest.fixture(scope="module")
def mu7():
    return mu7_cover_fixture(337)


def test_conic_has_eight_points_over_gf7():
    C = conic(7)
    brute = [(x, y, z) for x in range(7) for y in range(7) for z in range(7) if (x * x + y * z) % 7 == 0 and (x, y, z) != (0, 0, 0)]
    assert len(brute) // 6 == 8 == len(enumerate_points(C))
    s = sample_points(C, 8, seed=1)
    assert len(set(s.points)) == 8


def test_sampled_points_lie_on_model():
    V = veronese_surface(43)
    s = sample_points(V, 50, seed=3)
    assert all(f.evaluate(list(pt)) % 43 == 0 for pt in s.points for f in V.ideal)
    assert sample_points(V, 50, seed=3).points == s.points


def test_search_strategy():
    T = twisted_cubic(43)
    s = sample_points(T, 20, strategy="search", seed=2)
    assert all(T.contains_point(pt) for pt in s.points)


def test_point_file_round_trip():
    T = twisted_cubic(43)
    s = sample_points(T, 10, seed=0)
    text = dump_points(s, T.coords)
    back, coords = load_points_text(text)
    assert back.points == s.points and coords == T.coords


def test_interpolation_twisted_cubic():
    T = twisted_cubic(43)
    forms = interpolate_vanishing_forms(sample_points(T, 30, seed=5), 2, T.coords)
    assert len(forms) == 3
    assert all(f.evaluate([s**3 % 43, s * s % 43, s % 43, 1]) % 43 == 0 for f in forms for s in range(43))


def test_interpolation_needs_enough_points():
    T = twisted_cubic(43)
    with pytest.raises(InterpolationError):
        interpolate_vanishing_forms(sample_points(T, 8, seed=5), 2, T.coords)


def test_interpolation_by_parity():
    V = veronese_surface(43)
    parts = interpolate_by_parity(sample_points(V, 60, seed=6), 2, V.coords, odd=[3, 4])
    assert sum(len(v) for v in parts.values()) == 6


def test_divisor_line_through_two_points():
    F, V = GF(43), ["x", "y", "z"]
    P2 = VarietyModel("P2", V, [], F, metadata={"dimension": 2})
    x, y, z = (MultiPoly.variable(V, i, F) for i in range(3))
    A = DivisorCurve("A", [x.scale(2) - y, x.scale(3) - z])  # (1, 2, 3)
    B = DivisorCurve("B", [y, x - z])  # (1, 0, 1)
    line = find_section_with_divisor(P2, 1, DivisorConstraint([A, B]))
    assert line.evaluate([1, 2, 3]) % 43 == 0 and line.evaluate([1, 0, 1]) % 43 == 0
    assert line.degree() == 1


def test_divisor_underdetermined_is_an_error():
    F, V = GF(43), ["x", "y", "z"]
    P2 = VarietyModel("P2", V, [], F, metadata={"dimension": 2})
    x, y, z = (MultiPoly.variable(V, i, F) for i in range(3))
    A = DivisorCurve("A", [y, z])
    with pytest.raises(Exception):
        find_section_with_divisor(P2, 1, DivisorConstraint([A]))


def test_double_cover_on_veronese():
    Y, U10, basis = veronese_cover_inputs(43)
    W = build_double_cover(Y, U10, basis, seed=1)
    n = len(W.coords)
    assert n == 6 + 1 + 3
    iota = W.action("iota")
    quads = [f for f in W.ideal if f.degree() == 2]
    assert all(is_eigenvector(iota, f) is not None for f in quads)
    check_cover_identity(W, U10, 6)
    # oracle: sympy kernel of all quadratic monomials on independently lifted points
    from coverforge.cli.claims import brute_force_relations, _span_equal
    from coverforge.pipeline.cover import lift_points

    pts = lift_points(Y, sample_points(Y, 150, seed=77), [U10] + basis, seed=77)
    oracle, mons = brute_force_relations(pts, W.coords, 2, 43)
    assert len(quads) == len(oracle)
    assert _span_equal(quads, oracle, mons, 43)


def test_model_text_round_trip():
    Y, U10, basis = veronese_cover_inputs(43)
    W = build_double_cover(Y, U10, basis, seed=1)
    text = dump_model(W)
    assert dump_model(load_model_text(text)) == text


def test_weighted_sections_fixture():
    W = section_fixture(43)
    sols = find_weighted_sections(W, 3)
    assert len(sols) == 1
    s = sols[0]
    assert check_identity(W, s)
    F, V = W.field, W.coords
    half = pow(2, -1, 43)
    expected = [
        parse_poly("P3 + P4", V, F).scale(half),
        parse_poly("P3 - P4", V, F).scale(half),
        parse_poly("P1", V, F),
        parse_poly("P2", V, F),
    ]
    assert compare_up_to_gauge(s.as_tuple(), expected)
    assert act_on_form(W.action("iota"), s.s1).normalized() == s.s2.normalized()


def test_weighted_sections_wrong_weight_has_no_solution():
    assert find_weighted_sections(section_fixture(43), 6) == []


def test_multiplication_table_weights(mu7):
    assert mu7.table.check_weights()
    assert mu7.table.check_c3(mu7.g3)
    for (i, j), e in mu7.table.entries.items():
        assert e.target == (i + j) % 7


def test_associativity_fixing(mu7):
    rng = random.Random(4)
    pts = sample_points(mu7.base, 30, seed=9).points
    reps = {o[0]: (mu7.table.entries[o[0]].num.scale(rng.randrange(1, 337)), mu7.table.entries[o[0]].den) for o in pair_orbits()}
    raw = build_multiplication_table(reps, mu7.g3)
    fixed = fix_scalings_by_associativity(raw, pts)
    assert verify_associativity(fixed, pts) == []
    assert fixed.same_as(fix_scalings_by_associativity(mu7.table, pts))


def test_gauge_invariance(mu7):
    pts = sample_points(mu7.base, 30, seed=9).points
    c = [1, 5, 5, 11, 5, 11, 11]
    a = fix_scalings_by_associativity(rescale_table(mu7.table, c), pts)
    assert a.same_as(fix_scalings_by_associativity(mu7.table, pts))


def test_corrupted_entry_is_detected(mu7):
    pts = sample_points(mu7.base, 30, seed=9).points
    entries = dict(mu7.table.entries)
    e = entries[(2, 3)]
    entries[(2, 3)] = type(e)(e.pair, e.target, e.num, e.den, e.scale * 7 % 337)
    bad = type(mu7.table)(mu7.table.field, mu7.table.vars, entries, "raw")
    with pytest.raises(MulTableError):
        fix_scalings_by_associativity(bad, pts)


def test_multable_text_round_trip(mu7):
    text = dump_multable(mu7.table)
    assert dump_multable(load_multable_text(text)) == text
    coords, _ = mu7_cover_coordinates(mu7)
    names = [f"C{k}" for k in range(len(coords))]
    ctext = dump_cover_coordinates(mu7.base.field, mu7.base.coords, coords, names)
    back, bnames = load_cover_coordinates_text(ctext)
    assert bnames == names and len(back) == len(coords)


def test_emit_z_relations_vanish_on_fresh_points(mu7):
    pts = sample_points(mu7.base, 300, seed=11).points
    coords, g3 = mu7_cover_coordinates(mu7)
    table = fix_scalings_by_associativity(mu7.table, pts[:30])
    Z, zpts = emit_model_Z(table, coords, pts, 3, actions=[g3], seed=1)
    assert Z.ideal and all(f.is_homogeneous() and f.degree() == 3 for f in Z.ideal)
    assert all(Z.contains_point(pt) for pt in zpts)
    c7 = Z.action("c7")
    assert all(is_eigenvector(c7, f) is not None for f in Z.ideal)


def test_descent_on_cone():
    cone = quadric_cone_fixture(43)
    pts = sample_points(cone, 200, seed=3).points
    boundary = [(0, 0, 1, t) for t in range(43)] + [(0, 0, 0, 1)]
    X, rep = descend_to_X(cone, pts, boundary, expected_quadrics=5, expected_extra=1, relation_degree=2)
    assert (rep.invariant_quadrics, rep.extra_cubics) == (5, 1)
    assert len(X.coords) == 6
    # dimension count: quadrics in 6 variables minus h^0 of the degree-4 part of the cone invariants
    assert rep.relations == len(X.ideal) > 0


def test_descent_rejects_wrong_expectation():
    cone = quadric_cone_fixture(43)
    pts = sample_points(cone, 200, seed=3).points
    boundary = [(0, 0, 1, t) for t in range(43)]
    with pytest.raises(DescentError):
        descend_to_X(cone, pts, boundary, expected_quadrics=7, expected_extra=1, relation_degree=2)


def test_isotypic_forms_on_cone():
    cone = quadric_cone_fixture(43)
    acts = [cone.action("g2"), cone.action("t3")]
    inv = isotypic_forms(cone.coords, 2, acts, (0, 0), cone.field)
    anti = isotypic_forms(cone.coords, 2, acts, (1, 0), cone.field)
    assert len(inv) + len(anti) == comb(5, 2)
    assert len(ideal_in_degree(cone, 2)) == 1


def test_recover_from_modular_images():
    V = ["x", "y"]
    f = parse_poly("x^2 + (5/8 + 1/8*w)*x*y - 3/7*y^2", V, QQw)
    images = []
    for p in (1009, 1051, 1093):
        r = sqrt_minus7(p)
        images.append(ModularImage(p, r, reduce_mod_p(f, p, r), reduce_mod_p(f, p, p - r)))
    p = 1171
    r = sqrt_minus7(p)
    check = ModularImage(p, r, reduce_mod_p(f, p, r), reduce_mod_p(f, p, p - r))
    assert recover_polynomial(images, check) == f
    wrong = ModularImage(p, r, reduce_mod_p(f, p, p - r), reduce_mod_p(f, p, r))
    with pytest.raises(RecoveryError):
        recover_polynomial(images, wrong)
