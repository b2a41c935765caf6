"""Hilbert series and polynomials of monomial ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .groebner import GroebnerBasis, _divides


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_sub(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    n = max(len(a), len(b) + shift)
    out = a + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] -= c
    return out


def hilbert_numerator(gens: list[tuple]) -> list[int]:
    """Coefficients of N(t) with HS(S/I) = N(t) / (1 - t)^n, I generated by monomials."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if all(sum(1 for x in g if x) == 1 for g in gens):
        # pure powers: product of (1 - t^a)
        out = [1]
        for g in gens:
            a = sum(g)
            out = _poly_sub(out, out, a)
        return out
    # pivot on the last generator: HS(I) = HS(I') - t^deg(m) HS(I' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest]
    return _poly_sub(hilbert_numerator(rest), hilbert_numerator(colon), sum(m))


def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


@dataclass
class HilbertData:
    nvars: int
    numerator: list[int]  # N(t)
    reduced_numerator: list[int]  # Q(t) with N = (1-t)^(n-d) Q
    krull_dim: int  # dimension of the affine cone
    values: list[int]  # h(0..cutoff)
    polynomial: list[Fraction]  # coefficients of m^0, m^1, ...
    regularity: int  # h(m) = P(m) for m >= regularity

    @property
    def dimension(self) -> int:
        """Projective dimension (-1 for the empty scheme)."""
        return self.krull_dim - 1

    @property
    def degree(self) -> int:
        return sum(self.reduced_numerator) if self.krull_dim > 0 else 0

    def hilbert_function(self, m: int) -> int:
        return _series_coefficient(self.numerator, self.nvars, m)

    def poly_value(self, m: int) -> Fraction:
        return sum(c * m**k for k, c in enumerate(self.polynomial))

    def poly_string(self, var: str = "m") -> str:
        parts = []
        for k in range(len(self.polynomial) - 1, -1, -1):
            c = self.polynomial[k]
            if c == 0:
                continue
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = str(abs(c))
            if mon and abs(c) == 1:
                cs = ""
            elif mon:
                cs += "*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, cs + mon))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, t in parts[1:]:
            out += f" {sign} {t}"
        return out


def _series_coefficient(num: list[int], n: int, m: int) -> int:
    # coefficient of t^m in N(t) / (1 - t)^n
    if n == 0:
        return num[m] if m < len(num) else 0
    return sum(c * comb(m - k + n - 1, n - 1) for k, c in enumerate(num) if k <= m)


def _binomial_poly(shift: int, r: int) -> list[Fraction]:
    """Coefficients in m of C(m - shift + r, r)."""
    out = [Fraction(1)]
    for i in range(1, r + 1):
        # multiply by (m - shift + i)
        a = Fraction(i - shift)
        new = [Fraction(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            new[k] += c * a
            new[k + 1] += c
        out = new
    f = factorial(r)
    return [c / f for c in out]


def hilbert_from_monomials(lead: list[tuple], nvars: int, cutoff: int = 10) -> HilbertData:
    num = _trim(hilbert_numerator(list(lead)))
    q = list(num)
    d = nvars
    while d > 0 and sum(q) == 0:
        # divide by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = _trim(out) if out else [0]
        d -= 1
    poly: list[Fraction] = [Fraction(0)]
    if d > 0:
        poly = [Fraction(0)] * d
        for k, c in enumerate(q):
            for i, b in enumerate(_binomial_poly(k, d - 1)):
                poly[i] += c * b
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    reg = max(0, len(q) - d)
    values = [_series_coefficient(num, nvars, m) for m in range(cutoff + 1)]
    return HilbertData(nvars, num, q, d, values, poly, reg)


def hilbert_polynomial(gb: GroebnerBasis, cutoff: int = 10) -> HilbertData:
    if not gb.homogeneous_input:
        raise ValueError("Hilbert polynomials need a homogeneous ideal")
    n = len(gb.vars)
    return hilbert_from_monomials(gb.leading_monomials(), n, cutoff)


def monomial_count_dimension(lead: list[tuple], nvars: int, degree: int) -> int:
    """Brute-force h(degree): standard monomials of the given degree."""
    from ..exactalg.poly import monomials_of_degree

    return sum(1 for e in monomials_of_degree(nvars, degree) if not any(_divides(g, e) for g in lead))


__all__ = [
    "HilbertData",
    "hilbert_from_monomials",
    "hilbert_numerator",
    "hilbert_polynomial",
    "monomial_count_dimension",
]
