"""Exact coefficient fields.

Four fields are supported:

* ``QQ``      rationals, elements are :class:`fractions.Fraction`
* ``QQ(w)``   the quadratic field with ``w^2 = -7``, elements are :class:`QuadElement`
* ``QQ(z7)``  the 7th cyclotomic field, elements are :class:`CycElement`
* ``GF(p)``   prime fields, elements are plain ``int`` residues in ``[0, p)``

Every field object exposes the same small arithmetic interface (``add``,
``mul``, ``inv`` ...) so that polynomial and matrix code can be written once.
Elements of the characteristic-zero fields also support the usual operators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable


class FieldError(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


# ---------------------------------------------------------------------------
# Q(sqrt(-7))
# ---------------------------------------------------------------------------


class QuadElement:
    """``a + b*w`` with ``w^2 = -7``."""

    __slots__ = ("a", "b")
    D = -7

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, QuadElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElement(
            self.a * other.a + self.D * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QQ(w)")
        return QuadElement(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadElement._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElement(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElement({self.a}, {self.b})"

    def __str__(self):
        return QQw.format(self)


# ---------------------------------------------------------------------------
# Q(zeta_7)
# ---------------------------------------------------------------------------


class CycElement:
    """Element of Q(zeta_7) stored as coefficients of 1, z, ..., z^5.

    The representation is canonical: ``z^6`` is always rewritten as
    ``-(1 + z + ... + z^5)``.
    """

    __slots__ = ("c",)
    N = 7

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(0)] * 6
        for k, x in enumerate(coeffs):
            x = _frac(x)
            k %= 7
            if k == 6:
                for j in range(6):
                    c[j] -= x
            else:
                c[k] += x
        self.c = tuple(c)

    @classmethod
    def zeta(cls, k: int = 1) -> "CycElement":
        v = [0] * 7
        v[k % 7] = 1
        return cls(v)

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, CycElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls([x])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElement(a + b for a, b in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return CycElement(-a for a in self.c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElement(a - b for a, b in zip(self.c, other.c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * 11
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        # z^7 = 1 folds degrees 7..10 down to 0..3
        folded = prod[:7]
        for k in range(7, 11):
            folded[k - 7] += prod[k]
        return CycElement(folded)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycElement":
        """Apply the automorphism ``z -> z^k``."""
        if k % 7 == 0:
            raise FieldError("z -> z^0 is not an automorphism")
        v = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            v[(i * k) % 7] += a
        return CycElement(v)

    def norm(self) -> Fraction:
        prod = CycElement([1])
        for k in range(1, 7):
            prod = prod * self.galois(k)
        if any(prod.c[1:]):
            raise FieldError("norm did not land in QQ")
        return prod.c[0]

    def inverse(self) -> "CycElement":
        if not self:
            raise ZeroDivisionError("division by zero in QQ(z7)")
        # x^{-1} = (product of the other conjugates) / norm
        others = CycElement([1])
        for k in range(2, 7):
            others = others * self.galois(k)
        n = (self * others).c[0]
        return CycElement(a / n for a in others.c)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycElement._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CycElement([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.c == other.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"CycElement({list(map(str, self.c))})"

    def __str__(self):
        return QQz7.format(self)


# ---------------------------------------------------------------------------
# field objects
# ---------------------------------------------------------------------------


class Field:
    """Arithmetic interface shared by all coefficient fields."""

    tag: str = ""
    characteristic: int = 0

    def __repr__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    # characteristic-zero fields share operator-based defaults
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in {self.tag}")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        result, base = self.one, a
        if n < 0:
            base, n = self.inv(a), -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return not a

    def contains(self, a) -> bool:
        raise NotImplementedError

    def random(self, rng: random.Random, bound: int = 10):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)


class RationalField(Field):
    tag = "QQ"

    def __call__(self, x=0):
        return _frac(x)

    def contains(self, a):
        return isinstance(a, (int, Fraction))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(a)

    def random(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def format(self, a):
        return str(Fraction(a))


class QuadraticField(Field):
    """QQ(w) with w^2 = -7; ``w`` is written for the generator."""

    tag = "QQ(w)"

    def __call__(self, a=0, b=0):
        if isinstance(a, QuadElement):
            return a
        return QuadElement(a, b)

    @property
    def gen(self) -> QuadElement:
        return QuadElement(0, 1)

    def contains(self, a):
        return isinstance(a, (int, Fraction, QuadElement))

    def random(self, rng, bound=10):
        return QuadElement(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
        )

    def format(self, x):
        x = QuadElement._coerce(x)
        a, b = x.a, x.b
        if b == 0:
            return str(a)
        if b == 1:
            bs = "w"
        elif b == -1:
            bs = "-w"
        else:
            bs = f"{b}*w"
        if a == 0:
            return bs
        sep = "" if bs.startswith("-") else "+"
        return f"({a}{sep}{bs})"


class CyclotomicField(Field):
    """QQ(z7); ``z`` is written for a primitive 7th root of unity."""

    tag = "QQ(z7)"

    def __call__(self, x=0):
        if isinstance(x, CycElement):
            return x
        if isinstance(x, QuadElement):
            return embed_quad_in_cyclotomic(x)
        return CycElement([x])

    @property
    def gen(self) -> CycElement:
        return CycElement.zeta(1)

    def contains(self, a):
        return isinstance(a, (int, Fraction, CycElement))

    def random(self, rng, bound=10):
        return CycElement(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(6))

    def format(self, x):
        x = CycElement._coerce(x)
        parts = []
        for k, a in enumerate(x.c):
            if not a:
                continue
            mon = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mon:
                parts.append(str(a))
            elif a == 1:
                parts.append(mon)
            elif a == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{a}*{mon}")
        if not parts:
            return "0"
        if len(parts) == 1:
            return parts[0]
        return "(" + "+".join(parts).replace("+-", "-") + ")"


class PrimeField(Field):
    """GF(p); elements are ints reduced into ``[0, p)``."""

    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"GF({p})"

    def __call__(self, x=0):
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} into {self.tag}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.tag}")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    def random(self, rng, bound=None):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def sqrt(self, a) -> int | None:
        """A square root of ``a`` (the smaller representative) or None."""
        return sqrt_mod(a, self.p)

    def root_of_unity(self, n: int) -> int:
        return root_of_unity(n, self.p)


QQ = RationalField()
QQw = QuadraticField()
QQz7 = CyclotomicField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str) -> Field:
    tag = tag.strip().replace(" ", "")
    if tag == "QQ":
        return QQ
    if tag in ("QQ(w)", "QQ(sqrt(-7))"):
        return QQw
    if tag in ("QQ(z7)", "QQ(zeta7)"):
        return QQz7
    m = re.fullmatch(r"GF\((\d+)\)", tag)
    if m:
        return GF(int(m.group(1)))
    raise FieldError(f"unknown field tag {tag!r}")


def field_of(x) -> Field:
    """Field tag of a characteristic-zero element."""
    if isinstance(x, (int, Fraction)):
        return QQ
    if isinstance(x, QuadElement):
        return QQw
    if isinstance(x, CycElement):
        return QQz7
    raise TypeError(f"no field tag for {x!r}")


def field_arith(a, b, op: str, field: Field | None = None):
    """Exact ``a op b`` for two elements of the same field.

    For GF(p) elements (plain ints) the field must be passed explicitly.
    """
    if field is None:
        fa, fb = field_of(a), field_of(b)
        if fa != fb and not (QQ in (fa, fb)):
            raise FieldError(f"field tag mismatch: {fa} vs {fb}")
        field = fa if fa != QQ else fb
        a, b = field(a), field(b)
    elif isinstance(field, PrimeField):
        if not (isinstance(a, int) and isinstance(b, int)):
            raise FieldError("GF(p) arithmetic expects int residues")
        a, b = field(a), field(b)
    ops = {"+": field.add, "-": field.sub, "*": field.mul, "/": field.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


# ---------------------------------------------------------------------------
# embeddings and number theory helpers
# ---------------------------------------------------------------------------

# sign of the Gauss sum chosen for w; recorded so runs can report it
GAUSS_SIGN = 1


def gauss_sum() -> CycElement:
    """z + z^2 + z^4 - z^3 - z^5 - z^6, whose square is -7."""
    v = [0, 1, 1, -1, 1, -1, -1]
    return CycElement(v)


def embed_quad_in_cyclotomic(x: QuadElement, sign: int = GAUSS_SIGN) -> CycElement:
    g = gauss_sum()
    return CycElement([x.a]) + g * (sign * x.b)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks; returns the smaller of the two roots, or None."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def primitive_root(p: int) -> int:
    phi = p - 1
    factors = _prime_factors(phi)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    if p == 2:
        return 1
    raise FieldError(f"no primitive root mod {p}")


def root_of_unity(n: int, p: int) -> int:
    """The primitive n-th root of unity g^((p-1)/n) for the least primitive root g."""
    if (p - 1) % n:
        raise FieldError(f"GF({p}) has no primitive {n}-th root of unity")
    return pow(primitive_root(p), (p - 1) // n, p)


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out
