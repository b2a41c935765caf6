"""Reduction modulo primes, CRT and rational reconstruction."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .fields import (
    QQ,
    QQw,
    QQz7,
    CycElement,
    FieldError,
    GF,
    QuadElement,
    gauss_sum,
    is_prime,
    root_of_unity,
    sqrt_mod,
)
from .poly import MultiPoly


def reduce_rational(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise FieldError(f"denominator of {x} is divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def check_root(p: int, root: int) -> None:
    if (root * root + 7) % p:
        raise FieldError(f"{root}^2 is not -7 mod {p}")


def sqrt_minus7(p: int, zeta7: int | None = None) -> int:
    """Square root of -7 mod p.

    When p = 1 (mod 7) the Gauss sum at the chosen 7th root of unity is used,
    so that reductions of QQ(w) and QQ(z7) data are mutually consistent.
    Otherwise the smaller of the two roots is returned.
    """
    if (p - 1) % 7 == 0:
        z = root_of_unity(7, p) if zeta7 is None else zeta7
        g = gauss_sum()
        r = sum(int(c) * pow(z, k, p) for k, c in enumerate(g.c)) % p
        check_root(p, r)
        return r
    r = sqrt_mod(-7 % p, p)
    if r is None:
        raise FieldError(f"-7 is not a square mod {p}")
    return r


def reduce_element(x, p: int, root: int | None = None, zeta7: int | None = None) -> int:
    if isinstance(x, (int, Fraction)):
        return reduce_rational(x, p)
    if isinstance(x, QuadElement):
        if root is None:
            root = sqrt_minus7(p, zeta7)
        check_root(p, root)
        return (reduce_rational(x.a, p) + reduce_rational(x.b, p) * root) % p
    if isinstance(x, CycElement):
        z = root_of_unity(7, p) if zeta7 is None else zeta7
        if pow(z, 7, p) != 1 or z % p == 1:
            raise FieldError(f"{z} is not a primitive 7th root of unity mod {p}")
        return sum(reduce_rational(c, p) * pow(z, k, p) for k, c in enumerate(x.c)) % p
    raise TypeError(f"cannot reduce {x!r}")


def reduce_mod_p(f: MultiPoly, p: int, root_choice: int | None = None, zeta7: int | None = None) -> MultiPoly:
    """Coefficientwise reduction of a QQ / QQ(w) / QQ(z7) polynomial to GF(p).

    ``root_choice`` is the image of w and must square to -7 mod p.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if f.field == QQw:
        if root_choice is None:
            root_choice = sqrt_minus7(p, zeta7)
        check_root(p, root_choice)
    elif f.field not in (QQ, QQz7):
        raise FieldError(f"cannot reduce polynomials over {f.field}")
    F = GF(p)
    return f.map_coefficients(lambda c: reduce_element(c, p, root_choice, zeta7), F)


def primes_congruent(modulus: int, residue: int = 1, start: int = 2, count: int = 1) -> list[int]:
    out = []
    q = max(start, 2)
    while len(out) < count:
        if q % modulus == residue % modulus and is_prime(q):
            out.append(q)
        q += 1
    return out


def sampling_prime(start: int = 2) -> int:
    """Smallest prime q = 1 (mod 21) that is >= start (zeta7, zeta3, sqrt(-7) all exist)."""
    return primes_congruent(21, 1, start)[0]


def nontrivial_cube_root_of_unity(p: int) -> int:
    return root_of_unity(3, p)


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # x + m*t = r (mod q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x % m, m


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """n/d = a (mod m) with |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    frac = Fraction(r1, s1)
    if (frac.numerator - a * frac.denominator) % m:
        return None
    return frac


def reconstruct_quadratic(samples: list[tuple[int, int, int, int]]) -> QuadElement | None:
    """Recover ``a + b*w`` from its images under both embeddings at several primes.

    Each sample is ``(p, r, v_plus, v_minus)`` with ``v_plus = a + b r`` and
    ``v_minus = a - b r`` modulo p.
    """
    ra, rb, mods = [], [], []
    for p, r, vp, vm in samples:
        check_root(p, r)
        inv2 = pow(2, -1, p)
        ra.append((vp + vm) * inv2 % p)
        rb.append((vp - vm) * inv2 * pow(r, -1, p) % p)
        mods.append(p)
    A, M = crt(ra, mods)
    B, _ = crt(rb, mods)
    a = rational_reconstruction(A, M)
    b = rational_reconstruction(B, M)
    if a is None or b is None:
        return None
    return QuadElement(a, b)
