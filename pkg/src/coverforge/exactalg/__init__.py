"""Exact arithmetic: fields, dense linear algebra, polynomials."""

from .fields import (
    QQ,
    QQw,
    QQz7,
    GF,
    CycElement,
    Field,
    FieldError,
    PrimeField,
    QuadElement,
    field_arith,
    field_from_tag,
)
from .linalg import Matrix, kernel, rank, rref
from .modular import reduce_mod_p, sampling_prime
from .poly import MultiPoly, monomials_of_degree
from .polyio import ParseError, parse_poly, read_poly_text, format_poly_text
from .snf import SNFResult, smith_normal_form


def poly_eval(f, point):
    return f.evaluate(point)


def poly_gradient(f):
    return f.gradient()


def matrix_kernel(m):
    return m.kernel()
