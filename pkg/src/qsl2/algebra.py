"""The reduced quantum group C_q[SL_2] at an odd root of unity q^r = 1.

Normal-ordered monomials a^m b^n c^k with 0 <= m, n, k < r form a basis of
dimension r^3.  The generator d is not stored; it is eliminated as
d = a^(r-1) (1 + q^-1 b c).

Because b and c each q-commute past a and commute with each other,
multiplying normal forms only needs exponent bookkeeping:

    (a^m b^n c^k)(a^m' b^n' c^k') = q^((n+k) m') a^(m+m') b^(n+n') c^(k+k')

followed by a^r = 1 and b^r = c^r = 0.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .cyclotomic import CyclotomicField, CycScalar, field as get_field
from .linalg import LinOp, _axpy

__all__ = ["ReducedQuantumSL2", "AlgElem", "algebra"]

_MONO_RE = re.compile(r"(?:a(?:\^\d+)?)?(?:b(?:\^\d+)?)?(?:c(?:\^\d+)?)?")
_FACTOR_RE = re.compile(r"([abc])(?:\^(\d+))?")


class ReducedQuantumSL2:
    """Structure data for the r^3-dimensional reduced algebra."""

    def __init__(self, r: int):
        self.field: CyclotomicField = get_field(r)
        self.r = r
        self.dim = r ** 3
        K = self.field
        self._qpow = [K.q_power(j) for j in range(r)]
        self.one = self.monomial(0, 0, 0)
        self.a = self.monomial(1, 0, 0)
        self.b = self.monomial(0, 1, 0)
        self.c = self.monomial(0, 0, 1)
        # d = a^{r-1} + q^{-1} a^{r-1} b c
        self.d = self.monomial(r - 1, 0, 0) + self.monomial(r - 1, 1, 1) * K.q_power(-1)
        self._d_cache: dict[int, tuple] = {}

    def __repr__(self):
        return f"ReducedQuantumSL2(r={self.r})"

    # -- indexing ---------------------------------------------------------

    def index(self, m: int, n: int, k: int) -> int:
        r = self.r
        return ((m % r) * r + n) * r + k

    def exponents(self, idx: int) -> tuple[int, int, int]:
        r = self.r
        return idx // (r * r), (idx // r) % r, idx % r

    def monomial(self, m: int, n: int, k: int, coeff=None) -> "AlgElem":
        """a^m b^n c^k (zero when n or k is >= r; m is read modulo r)."""
        if n < 0 or k < 0:
            raise ValueError("negative b or c exponent")
        if n >= self.r or k >= self.r:
            return AlgElem(self, {})
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        return AlgElem(self, {self.index(m, n, k): c} if c else {})

    def scalar(self, c) -> "AlgElem":
        return self.one * self.field.coerce(c)

    def element(self, coeffs: dict) -> "AlgElem":
        return AlgElem(self, {k: v for k, v in coeffs.items() if v})

    def monomial_str(self, idx: int) -> str:
        m, n, k = self.exponents(idx)
        parts = []
        for sym, e in (("a", m), ("b", n), ("c", k)):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        return " ".join(parts) if parts else "1"

    def parse_monomial(self, text: str) -> int:
        """Index of a normal-ordered monomial written like ``a^2 b c^2``."""
        text = text.replace(" ", "")
        if text == "1":
            return 0
        if not _MONO_RE.fullmatch(text) or not text:
            raise ValueError(f"not a normal-ordered monomial: {text!r}")
        exps = {"a": 0, "b": 0, "c": 0}
        for sym, e in _FACTOR_RE.findall(text):
            exps[sym] = int(e) if e else 1
        if max(exps.values()) >= self.r:
            raise ValueError(f"exponent out of range in {text!r}")
        return self.index(exps["a"], exps["b"], exps["c"])

    def parse(self, text: str) -> "AlgElem":
        """Evaluate an expression in a, b, c, d, q, mu such as ``a (1 - q b c)``."""
        from .derham import complex_for

        w = complex_for(self.r).parse(text)
        if w.degree != 0:
            raise ValueError(f"{text!r} is a {w.degree}-form, not a function")
        return AlgElem(self, dict(w.vec))

    # -- multiplication ---------------------------------------------------

    def mono_mul(self, i: int, j: int):
        """Product of basis monomials: ``(coefficient, index)`` or ``None`` if zero."""
        r = self.r
        m1, n1, k1 = self.exponents(i)
        m2, n2, k2 = self.exponents(j)
        n, k = n1 + n2, k1 + k2
        if n >= r or k >= r:
            return None
        return self._qpow[((n1 + k1) * m2) % r], self.index(m1 + m2, n, k)

    def mul(self, x: "AlgElem", y: "AlgElem") -> "AlgElem":
        out: dict = {}
        for i, u in x.coeffs.items():
            for j, v in y.coeffs.items():
                prod = self.mono_mul(i, j)
                if prod is None:
                    continue
                c, idx = prod
                t = u * v * c
                s = out.get(idx)
                t = t if s is None else s + t
                if t:
                    out[idx] = t
                else:
                    out.pop(idx, None)
        return AlgElem(self, out)

    def right_mult_matrix(self, x: "AlgElem") -> LinOp:
        """Matrix of y -> y x in the monomial basis."""
        cols = []
        for j in range(self.dim):
            cols.append(self.mul(AlgElem(self, {j: self.field.one}), x).coeffs)
        return LinOp.from_columns(self.dim, cols, self.field)

    def left_mult_matrix(self, x: "AlgElem") -> LinOp:
        cols = []
        for j in range(self.dim):
            cols.append(self.mul(x, AlgElem(self, {j: self.field.one})).coeffs)
        return LinOp.from_columns(self.dim, cols, self.field)

    # -- exterior derivative on functions ---------------------------------

    def d_monomial(self, idx: int) -> tuple[dict, dict, dict, dict]:
        """d(a^m b^n c^k) as right coefficients of (e_a, e_b, e_c, e_d).

        Shifted monomials with a negative a-exponent wrap via a^r = 1; those
        whose b or c exponent leaves [0, r-1] vanish.  A negative b or c
        exponent can only occur with a vanishing q-integer prefactor.
        """
        cached = self._d_cache.get(idx)
        if cached is not None:
            return cached
        K, r = self.field, self.r
        m, n, k = self.exponents(idx)
        q = K.q_power
        mu = K.mu()

        def qi(t):
            return K.q_int(t, 2)

        terms = ([], [], [], [])  # (coefficient, (m, n, k))
        terms[0].append((q(m + n - k) - 1, (m, n, k)))
        terms[1].append((mu * q(n - k + 1) * qi(k), (m + 1, n, k - 1)))
        terms[2].append((mu * q(-k - n) * qi(m + n), (m - 1, n, k + 1)))
        terms[2].append((mu * q(-k - n + 1) * qi(n), (m - 1, n - 1, k)))
        terms[3].append((mu * mu * q(-k - m - n + 2) * qi(k + 1) * qi(m + n), (m, n, k)))
        terms[3].append((mu * mu * q(-k - m - n + 3) * qi(n) * qi(k), (m, n - 1, k - 1)))
        terms[3].append((q(-m - n + k) - 1, (m, n, k)))

        out = []
        for comp in terms:
            acc: dict = {}
            for coeff, (mm, nn, kk) in comp:
                if not coeff:
                    continue
                assert nn >= 0 and kk >= 0, "negative exponent with nonzero prefactor"
                if nn >= r or kk >= r:
                    continue
                j = self.index(mm, nn, kk)
                s = acc.get(j)
                s = coeff if s is None else s + coeff
                if s:
                    acc[j] = s
                else:
                    acc.pop(j, None)
            out.append(acc)
        result = tuple(out)
        self._d_cache[idx] = result
        return result

    def d(self, x: "AlgElem") -> tuple["AlgElem", "AlgElem", "AlgElem", "AlgElem"]:
        """dx = sum_i e_i . f_i, returned as the right coefficients (f_a, f_b, f_c, f_d)."""
        out = [dict(), dict(), dict(), dict()]
        for idx, c in x.coeffs.items():
            for slot, comp in zip(out, self.d_monomial(idx)):
                _axpy(slot, -c, comp)
        return tuple(AlgElem(self, o) for o in out)


@lru_cache(maxsize=None)
def algebra(r: int) -> ReducedQuantumSL2:
    """Cached algebra instance for ``r``."""
    return ReducedQuantumSL2(r)


class AlgElem:
    """Element of the reduced algebra: sparse map monomial index -> scalar."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: ReducedQuantumSL2, coeffs: dict):
        self.alg = alg
        self.coeffs = coeffs

    def _lift(self, other):
        if isinstance(other, AlgElem):
            return other
        if isinstance(other, (int, CycScalar)) or hasattr(other, "numerator"):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AlgElem(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return self.alg.mul(self, other)
        if isinstance(other, (int, CycScalar)) or hasattr(other, "numerator"):
            c = self.alg.field.coerce(other)
            if not c:
                return AlgElem(self.alg, {})
            return AlgElem(self.alg, {k: v * c for k, v in self.coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, CycScalar)) or hasattr(other, "numerator"):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in general")
        out = self.alg.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.coeffs == other.coeffs
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        return sorted(self.coeffs.items())

    def to_json_obj(self) -> list:
        return [[self.alg.monomial_str(i), c.to_json()] for i, c in self.terms()]

    @classmethod
    def from_json_obj(cls, alg: ReducedQuantumSL2, obj) -> "AlgElem":
        out: dict = {}
        for mono, coeff in obj:
            c = alg.field.parse(coeff)
            if c:
                out[alg.parse_monomial(mono)] = c
        return cls(alg, out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in self.terms():
            parts.append(f"({c})*{self.alg.monomial_str(i)}")
        return " + ".join(parts)

    __repr__ = __str__
