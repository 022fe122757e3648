"""Exact arithmetic in the cyclotomic field Q(zeta_r).

Elements are stored as integer numerators over a single positive common
denominator, in the power basis 1, zeta, ..., zeta^(phi(r)-1) of
Q[x]/(Phi_r).  The generator zeta plays the role of the deformation
parameter q throughout the package.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CyclotomicField",
    "CycScalar",
    "cyclotomic_polynomial",
    "field",
]


def _poly_divexact(num, den):
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "division was not exact"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class CyclotomicField:
    """The field Q(zeta_r) for an odd r >= 3.

    Use :func:`field` to obtain instances; they are cached per ``r`` so that
    identity comparison of fields is meaningful.
    """

    def __init__(self, r: int):
        if not isinstance(r, int) or r < 3 or r % 2 == 0:
            raise ValueError(f"r must be an odd integer >= 3, got {r!r}")
        self.r = r
        self.phi = _totient(r)
        self.modulus = cyclotomic_polynomial(r)
        # reduced power-basis vectors of zeta^j for 0 <= j < r
        pows = []
        for j in range(r):
            vec = [0] * (r + 1)
            vec[j] = 1
            for i in range(len(vec) - 1, self.phi - 1, -1):
                c = vec[i]
                if c:
                    for t, m in enumerate(self.modulus):
                        vec[i - self.phi + t] -= c * m
            pows.append(tuple(vec[: self.phi]))
        self._pow = tuple(pows)
        self._units = tuple(j for j in range(2, r) if gcd(j, r) == 1)
        self.zero = CycScalar(self, (0,) * self.phi, 1, _normalized=True)
        self.one = self.from_int(1)

    def __repr__(self):
        return f"CyclotomicField({self.r})"

    def __reduce__(self):
        return (field, (self.r,))

    # -- construction -----------------------------------------------------

    def from_int(self, n: int) -> CycScalar:
        return CycScalar(self, (n,) + (0,) * (self.phi - 1), 1)

    def from_rational(self, x) -> CycScalar:
        x = Fraction(x)
        return CycScalar(self, (x.numerator,) + (0,) * (self.phi - 1), x.denominator)

    def coerce(self, x) -> CycScalar:
        if isinstance(x, CycScalar):
            if x.field is not self:
                raise ValueError("scalars from different cyclotomic fields")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def from_coefficients(self, coeffs) -> CycScalar:
        """Build an element from ``phi`` rational power-basis coordinates."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.phi:
            raise ValueError(f"expected {self.phi} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycScalar(self, tuple(int(c * den) for c in coeffs), den)

    # -- q-combinatorics --------------------------------------------------

    def q_power(self, k: int) -> CycScalar:
        """zeta^k, reduced modulo Phi_r."""
        return CycScalar(self, self._pow[k % self.r], 1, _normalized=True)

    @property
    def q(self) -> CycScalar:
        return self.q_power(1)

    def q_int(self, n: int, base: int = 1) -> CycScalar:
        """The q-integer (1 - Q^n)/(1 - Q) with Q = q^base (base 1 or 2)."""
        step = self.q_power(base)
        if step == self.one:
            raise ZeroDivisionError("q-integer with base equal to 1")
        return (self.one - self.q_power(base * n)) / (self.one - step)

    def q_bracket_sym(self, n: int) -> CycScalar:
        """Balanced q-integer (q^n - q^-n)/(q - q^-1)."""
        return (self.q_power(n) - self.q_power(-n)) / (self.q_power(1) - self.q_power(-1))

    def mu(self) -> CycScalar:
        """mu = 1 - q^-2."""
        return self.one - self.q_power(-2)

    # -- text form --------------------------------------------------------

    def parse(self, text) -> CycScalar:
        """Inverse of :meth:`CycScalar.to_json`; accepts a JSON string or list."""
        if isinstance(text, str):
            text = json.loads(text)
        return self.from_coefficients(Fraction(s) for s in text)


@lru_cache(maxsize=None)
def field(r: int) -> CyclotomicField:
    """Cached :class:`CyclotomicField` for ``r``."""
    return CyclotomicField(r)


class CycScalar:
    """Immutable element of a :class:`CyclotomicField`."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField, num: tuple, den: int, _normalized=False):
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            g = gcd(den, *num)
            if g != 1:
                num = tuple(c // g for c in num)
                den //= g
        self.field = fld
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    # -- arithmetic -------------------------------------------------------

    def _other(self, other):
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return CycScalar(self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        d1, d2 = self.den, other.den
        return CycScalar(
            self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.field, tuple(-a for a in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        fld = self.field
        r, phi = fld.r, fld.phi
        x, y = self.num, other.num
        acc = [0] * r
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        acc[(i + j) % r] += a * b
        out = acc[:phi]
        for j in range(phi, r):
            c = acc[j]
            if c:
                for t, m in enumerate(fld._pow[j]):
                    if m:
                        out[t] += c * m
        return CycScalar(fld, tuple(out), self.den * other.den)

    __rmul__ = __mul__

    def _galois(self, j: int) -> CycScalar:
        fld = self.field
        out = [0] * fld.phi
        for i, c in enumerate(self.num):
            if c:
                for t, m in enumerate(fld._pow[(i * j) % fld.r]):
                    out[t] += c * m
        return CycScalar(fld, tuple(out), self.den)

    def inverse(self) -> CycScalar:
        """Multiplicative inverse via the product of Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.field.from_rational(Fraction(self.den, self.num[0]))
        conj = self.field.one
        for j in self.field._units:
            conj = conj * self._galois(j)
        norm = self * conj
        assert norm.is_rational(), "norm should be rational"
        return conj * Fraction(norm.den, norm.num[0])

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return other.field is self.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.field.r, self.num, self.den))
        return self._hash

    # -- text -------------------------------------------------------------

    def to_json(self) -> list[str]:
        """Coefficient strings "p/q" ordered by power-basis degree."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients()]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients()):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"CycScalar(r={self.field.r}, {self})"
