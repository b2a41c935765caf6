from __future__ import annotations

import random
from fractions import Fraction

import pytest

from coverforge.equivariant import ActionGen, is_eigenvector, is_stable
from coverforge.exactalg import GF, MultiPoly, monomials_of_degree, parse_poly
from coverforge.exactalg.modular import nontrivial_cube_root_of_unity
from coverforge.pipeline.fixtures import (
    cyclic_permutation_3,
    fermat_cubic,
    nodal_cubic,
    twisted_cubic,
    veronese_surface,
)
from coverforge.verify import (
    DEGREVLEX,
    GroebnerBasis,
    GroebnerTimeout,
    diagonalize_c3,
    groebner_basis,
    hilbert_from_monomials,
    hilbert_polynomial,
    is_groebner,
    monomial_count,
    singular_locus_ideal,
    smoothness_check_mod_p,
)

F7, F37, F43 = GF(7), GF(37), GF(43)


def test_gb_of_single_variable():
    V = ["x", "y"]
    gb = groebner_basis([parse_poly("3*x", V, F7)])
    assert gb.generators == [parse_poly("x", V, F7)]


def test_gb_of_principal_ideal_is_monic():
    V = ["x", "y", "z"]
    f = parse_poly("5*x^2*y + 3*z^3 + y^3", V, F43)
    gb = groebner_basis([f])
    assert len(gb.generators) == 1
    g = gb.generators[0]
    lead = f.terms[max(f.terms, key=DEGREVLEX.key)]
    assert g == f.scale(pow(lead, -1, 43))
    assert g.terms[max(g.terms, key=DEGREVLEX.key)] == 1


def test_backends_agree_and_are_groebner():
    rng = random.Random(0)
    V = ["a", "b", "c", "d"]
    mons = monomials_of_degree(4, 2)
    polys = [MultiPoly(V, {m: rng.randrange(43) for m in rng.sample(mons, 5)}, F43) for _ in range(3)]
    a = groebner_basis(polys, backend="buchberger")
    b = groebner_basis(polys, backend="f4")
    assert a.generators == b.generators
    assert is_groebner(a)


def test_gb_reduction_decides_membership():
    T = twisted_cubic(43)
    gb = groebner_basis(T.ideal)
    x0, x1, x2, x3 = (MultiPoly.variable(T.coords, i, F43) for i in range(4))
    assert gb.reduce(T.ideal[0] * x3 + T.ideal[2] * x0).is_zero()
    assert not gb.reduce(x0 * x3).is_zero()


def test_gb_timeout():
    rng = random.Random(1)
    V = [f"v{i}" for i in range(7)]
    mons = monomials_of_degree(7, 3)
    polys = [MultiPoly(V, {m: rng.randrange(1, 43) for m in rng.sample(mons, 20)}, F43) for _ in range(5)]
    with pytest.raises(GroebnerTimeout):
        groebner_basis(polys, timeout=0.01)


def test_hilbert_of_plane():
    gb = GroebnerBasis([], DEGREVLEX, F43, True, {"vars": ("x", "y", "z")})
    h = hilbert_polynomial(gb)
    assert h.polynomial == [Fraction(1), Fraction(3, 2), Fraction(1, 2)]
    assert all(h.poly_value(m) == (m + 1) * (m + 2) // 2 for m in range(8))


def test_hilbert_of_twisted_cubic():
    h = hilbert_polynomial(groebner_basis(twisted_cubic(43).ideal))
    assert h.poly_string() == "3*m + 1"
    assert (h.dimension, h.degree) == (1, 3)
    # parametrization count: degree-m forms restrict to binary forms of degree 3m
    assert [h.hilbert_function(m) for m in range(5)] == [3 * m + 1 for m in range(5)]


def test_hilbert_of_veronese():
    h = hilbert_polynomial(groebner_basis(veronese_surface(43).ideal))
    # degree-m forms on the Veronese are plane forms of degree 2m
    assert all(h.poly_value(m) == (2 * m + 1) * (2 * m + 2) // 2 for m in range(6))
    assert (h.dimension, h.degree) == (2, 4)


def test_hilbert_of_plane_curve():
    V = ["x", "y", "z"]
    h = hilbert_polynomial(groebner_basis([parse_poly("x^3 + y^3 + z^3", V, F43)]))
    assert h.poly_string() == "3*m"


def test_hilbert_from_monomials_complete_intersection():
    h = hilbert_from_monomials([(2, 0, 0), (0, 2, 0)], 3)
    assert (h.dimension, h.degree) == (0, 4)


def test_nodal_cubic_is_singular_at_node():
    rep = smoothness_check_mod_p(nodal_cubic(43).ideal)
    assert not rep.smooth and rep.singular_dim == 0
    loc = singular_locus_ideal(nodal_cubic(43).ideal, 1)
    assert all(f.evaluate([0, 0, 1]) % 43 == 0 for f in loc)


def test_smooth_conic():
    rep = smoothness_check_mod_p([parse_poly("x^2 + y^2 + z^2", ["x", "y", "z"], F7)])
    assert rep.smooth and rep.certified


def test_smooth_twisted_cubic_and_veronese():
    assert smoothness_check_mod_p(twisted_cubic(43).ideal).smooth
    assert smoothness_check_mod_p(veronese_surface(43).ideal, expected_dim=2).smooth


def test_singular_cone():
    rep = smoothness_check_mod_p([parse_poly("x*z - y^2", ["x", "y", "z", "w"], F43)])
    assert not rep.smooth


def test_c3_diagonalization_is_dft():
    V = ["x", "y", "z"]
    polys = [parse_poly("x^3 + y^3 + z^3", V, F37)]
    d = diagonalize_c3(polys, cyclic_permutation_3())
    w = nontrivial_cube_root_of_unity(37)
    want = {tuple(pow(w, j * k, 37) for j in range(3)) for k in range(3)}
    got = {tuple(c * pow(row[0], -1, 37) % 37 for c in row) for row in d.forms}
    assert got == want
    assert is_stable(d.action, d.ideal)
    assert all(is_eigenvector(d.action, f) is not None for f in d.ideal)


def test_c3_identity_leaves_ideal():
    V = ["x", "y", "z"]
    polys = [parse_poly("x^3 + 2*y^2*z", V, F37)]
    d = diagonalize_c3(polys, ActionGen.identity(3, "g3"))
    assert d.forms == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert len(d.ideal) == 1 and d.ideal[0].normalized().terms == polys[0].normalized().terms


def test_c3_diagonalization_reduces_monomials():
    X = fermat_cubic(37)
    d = diagonalize_c3(X)
    assert monomial_count(d.ideal) <= monomial_count(X.ideal) + 2
    assert hilbert_polynomial(groebner_basis(d.ideal)).poly_string() == hilbert_polynomial(groebner_basis(X.ideal)).poly_string()
    assert smoothness_check_mod_p(d.ideal).smooth
