from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from coverforge.exactalg import (
    GF,
    QQ,
    QQw,
    QQz7,
    FieldError,
    Matrix,
    MultiPoly,
    ParseError,
    field_arith,
    format_poly_text,
    matrix_kernel,
    monomials_of_degree,
    parse_poly,
    poly_eval,
    poly_gradient,
    rank,
    read_poly_text,
    reduce_mod_p,
    sampling_prime,
    smith_normal_form,
)
from coverforge.exactalg.linalg import kernel_mod_p, matmul, rank_mod_p, solve
from coverforge.exactalg.modular import (
    crt,
    nontrivial_cube_root_of_unity,
    rational_reconstruction,
    reconstruct_quadratic,
    sqrt_minus7,
)
from coverforge.exactalg.snf import abelian_invariants_sparse, elementary_divisors


def test_norm_in_qq_sqrt_minus_7():
    w = QQw.gen
    assert field_arith(1 + w, 1 - w, "*") == QQw(8)


def test_zeta7_inverse_pair():
    z = QQz7.gen
    assert field_arith(z, z**6, "*") == QQz7.one
    assert z**7 == QQz7.one


def test_quadratic_times_conjugate():
    x = QQw(Fraction(49, 56), Fraction(13, 56))
    # (49^2 + 7 * 13^2) / 56^2
    assert x * x.conjugate() == QQw(Fraction(49**2 + 7 * 13**2, 56**2))
    assert x * x.conjugate() == QQw(Fraction(8, 7))


def test_division_and_zero_division():
    x = QQw(3, -2)
    assert field_arith(field_arith(x, QQw(1, 1), "/"), QQw(1, 1), "*") == x
    with pytest.raises(ZeroDivisionError):
        field_arith(x, QQw(0), "/")


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(10) == 3
    assert field_arith(3, 5, "/", F) * 5 % 7 == 3


def test_gf_requires_prime():
    with pytest.raises(FieldError):
        GF(21)


def test_kernel_of_identity_is_empty():
    I = [[QQ(int(i == j)) for j in range(3)] for i in range(3)]
    assert matrix_kernel(Matrix(I, QQ)) == []


def test_kernel_of_all_ones_row():
    k = Matrix([[1, 1, 1]], GF(7)).kernel()
    assert len(k) == 2
    assert all(sum(v) % 7 == 0 for v in k)


def test_random_rank_45_kernel():
    rng = np.random.default_rng(0)
    p = 43
    a = rng.integers(0, p, (50, 45))
    b = rng.integers(0, p, (45, 55))
    m = (a @ b) % p
    assert rank_mod_p(m, p) == 45
    k = kernel_mod_p(m, p)
    assert k.shape == (10, 55)
    assert not ((m @ k.T) % p).any()


def test_exact_rank_and_solve_over_qq():
    rows = [[QQ(1), QQ(2)], [QQ(2), QQ(4)]]
    assert rank(rows, QQ) == 1
    assert solve([[QQ(2), QQ(1)], [QQ(1), QQ(3)]], [QQ(3), QQ(4)], QQ) == [QQ(1), QQ(1)]


def test_matmul_over_cyclotomic():
    z = QQz7.gen
    a = [[z, QQz7.zero], [QQz7.zero, z**6]]
    assert matmul(a, a, QQz7) == [[z**2, QQz7.zero], [QQz7.zero, z**5]]


def test_snf_diagonal_input():
    assert smith_normal_form([[2, 0], [0, 4]]).diagonal == [2, 4]


def test_snf_coprime_entries():
    a = [[2, 0], [0, 3]]
    r = smith_normal_form(a)
    assert r.diagonal == [1, 6]
    assert r.check(a)


def test_snf_cyclic_relator():
    assert elementary_divisors([[14]]) == [14]


def test_snf_random_matrices_check():
    rng = random.Random(1)
    for _ in range(10):
        a = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(3)]
        assert smith_normal_form(a).check(a)


def test_sparse_abelian_invariants():
    # Z^3 / <(2, 0, 0), (0, 4, 0)>
    torsion, free = abelian_invariants_sparse([{0: 2}, {1: 4}], 3)
    assert sorted(torsion) == [2, 4] and free == 1


def test_poly_eval_over_qq():
    assert poly_eval(parse_poly("x^2 + y^2", ["x", "y"]), [3, 4]) == 25


def test_homogeneous_scaling():
    rng = random.Random(2)
    F = GF(43)
    V = ["a", "b", "c"]
    f = MultiPoly(V, {m: rng.randrange(43) for m in monomials_of_degree(3, 3)}, F)
    pt = [rng.randrange(43) for _ in V]
    lam = rng.randrange(1, 43)
    assert f.evaluate([lam * x % 43 for x in pt]) == pow(lam, 3, 43) * f.evaluate(pt) % 43


def test_gradient_of_x2y():
    V = ["x", "y"]
    g = poly_gradient(parse_poly("x^2*y", V))
    assert g == [parse_poly("2*x*y", V), parse_poly("x^2", V)]


def test_euler_identity():
    rng = random.Random(3)
    V = ["x", "y", "z"]
    f = MultiPoly(V, {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in monomials_of_degree(3, 4)}, QQ)
    xs = [MultiPoly.variable(V, i) for i in range(3)]
    euler = sum((x * d for x, d in zip(xs, f.gradient())), MultiPoly.zero(V))
    assert euler == f.scale(QQ(4))


def test_gradient_of_constant():
    V = ["x", "y"]
    assert all(d.is_zero() for d in MultiPoly.constant(V, 5).gradient())


def test_parse_error_reports_column():
    with pytest.raises(ParseError) as exc:
        parse_poly("x^^2", ["x", "y"])
    assert exc.value.col is not None


def test_poly_text_round_trip():
    V = ["U0", "U1", "U2"]
    polys = [parse_poly(t, V, QQw) for t in ("U0^2 + (1/8)*(5 + w)*U1*U2", "U2^2 - 3*U0*U1")]
    text = format_poly_text(QQw, V, polys, ["# example"])
    pf = read_poly_text(text)
    assert pf.vars == V and pf.polys == polys
    assert format_poly_text(QQw, V, pf.polys, ["# example"]) == text


def test_sqrt_minus7_and_cube_root_mod_37():
    r = sqrt_minus7(37)
    assert r * r % 37 == 30
    c = nontrivial_cube_root_of_unity(37)
    assert c != 1 and pow(c, 3, 37) == 1


def test_reduction_is_a_homomorphism():
    V = ["x"]
    f = parse_poly("(1 + w)*x", V, QQw) * parse_poly("(1 - w)*x", V, QQw)
    r = sqrt_minus7(37)
    assert reduce_mod_p(f, 37, r) == MultiPoly(V, {(2,): 8}, GF(37))
    assert (1 + r) * (1 - r) % 37 == 8


def test_smallest_sampling_prime():
    # congruence search oracle: smallest prime = 1 mod 21
    brute = next(p for p in range(22, 200) if all(p % d for d in range(2, p)) and p % 21 == 1)
    assert sampling_prime() == brute == 43


def test_rational_and_quadratic_reconstruction():
    x = QQw(Fraction(-5, 8), Fraction(3, 8))
    primes = [1009, 1051, 1093]
    samples = []
    for p in primes:
        r = sqrt_minus7(p)
        vp = (x.a.numerator * pow(x.a.denominator, -1, p) + x.b.numerator * pow(x.b.denominator, -1, p) * r) % p
        vm = (x.a.numerator * pow(x.a.denominator, -1, p) - x.b.numerator * pow(x.b.denominator, -1, p) * r) % p
        samples.append((p, r, vp, vm))
    assert reconstruct_quadratic(samples) == x
    a, m = crt([2, 3], [5, 7])
    assert a % 5 == 2 and a % 7 == 3 and m == 35
    assert rational_reconstruction(3 * pow(7, -1, 10007) % 10007, 10007) == Fraction(3, 7)
