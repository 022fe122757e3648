"""Right-invariant forms: braiding, exterior algebra and the bimodule structure.

Letters 0, 1, 2, 3 stand for e_a, e_b, e_c, e_d.  A basis element of
Lambda^k is a strictly increasing tuple of letters; the bases are ordered
lexicographically, which gives {e_ab, e_ac, e_ad, e_bc, e_bd, e_cd} in
degree 2 and {e_abc, e_abd, e_acd, e_bcd} in degree 3.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations

from .algebra import AlgElem, ReducedQuantumSL2
from .cyclotomic import CyclotomicField, CycScalar, field as get_field
from .linalg import LinOp, _axpy

__all__ = [
    "LETTERS",
    "BASES",
    "ExteriorAlgebra",
    "InvForm",
    "LeftAction",
    "basis_label",
    "exterior",
]

LETTERS = "abcd"
BASES = {k: list(combinations(range(4), k)) for k in range(5)}
BASIS_INDEX = {k: {w: i for i, w in enumerate(ws)} for k, ws in BASES.items()}
DIMS = tuple(len(BASES[k]) for k in range(5))


def basis_label(word: tuple) -> str:
    return "1" if not word else "e_" + "".join(LETTERS[i] for i in word)


def parse_label(label: str) -> tuple:
    if label == "1":
        return ()
    if not label.startswith("e_"):
        raise ValueError(f"bad basis label {label!r}")
    return tuple(LETTERS.index(ch) for ch in label[2:])


class InvForm:
    """Element of Lambda^degree as a dict basis-index -> scalar."""

    __slots__ = ("ext", "degree", "coeffs")

    def __init__(self, ext: "ExteriorAlgebra", degree: int, coeffs: dict):
        self.ext = ext
        self.degree = degree
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __add__(self, other: "InvForm") -> "InvForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.coeffs)
        _axpy(out, -1, other.coeffs)
        return InvForm(self.ext, self.degree, out)

    def __neg__(self):
        return InvForm(self.ext, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = self.ext.field.coerce(c)
        return InvForm(self.ext, self.degree, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "InvForm") -> "InvForm":
        return self.ext.wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, InvForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def vector(self) -> list[CycScalar]:
        K = self.ext.field
        return [self.coeffs.get(i, K.zero) for i in range(DIMS[self.degree])]

    def __repr__(self):
        if not self.coeffs:
            return f"0 (deg {self.degree})"
        return " + ".join(
            f"({c}){basis_label(BASES[self.degree][i])}" for i, c in sorted(self.coeffs.items())
        )


class ExteriorAlgebra:
    """The 16-dimensional invariant exterior algebra Lambda over Q(zeta_r)."""

    def __init__(self, r: int):
        self.r = r
        self.field: CyclotomicField = get_field(r)
        K = self.field
        q = K.q_power
        mu = K.mu()
        self.mu = mu
        bi = BASIS_INDEX[2]
        ab, ac, ad, bc, bd, cd = (bi[w] for w in BASES[2])
        one = K.one
        # degree-2 rewriting rules for non-increasing letter pairs
        self._quad: dict[tuple, dict] = {
            (1, 1): {}, (2, 2): {}, (3, 3): {},
            (2, 1): {bc: -one}, (3, 1): {bd: -one}, (3, 2): {cd: -one},
            (0, 0): {bc: mu},
            (3, 0): {ad: -one, bc: -mu},
            (1, 0): {bd: mu * q(-2), ab: -q(-2)},
            (2, 0): {ac: -q(2), cd: -mu},
        }
        self._word_cache: dict[tuple, dict] = {}
        self._wedge_cache: dict[tuple, dict] = {}
        self.theta = self.form(1, {"e_a": 1, "e_d": 1})
        self.e_z = self.form(1, {"e_a": q(1), "e_d": -q(-1)})
        self.top = self.form(4, {"e_abcd": 1})

    def __repr__(self):
        return f"ExteriorAlgebra(r={self.r})"

    # -- construction -----------------------------------------------------

    def form(self, degree: int, terms: dict) -> InvForm:
        """Build a form from ``{label: coefficient}``, e.g. ``{"e_ab": 1}``."""
        coeffs: dict = {}
        for label, c in terms.items():
            word = parse_label(label)
            if len(word) != degree:
                raise ValueError(f"{label} does not have degree {degree}")
            for idx, v in self.reduce_word(word).items():
                coeffs[idx] = coeffs.get(idx, self.field.zero) + v * self.field.coerce(c)
        return InvForm(self, degree, coeffs)

    def basis_form(self, degree: int, i: int) -> InvForm:
        return InvForm(self, degree, {i: self.field.one})

    def generator(self, letter: int) -> InvForm:
        return self.basis_form(1, letter)

    # -- words and wedge --------------------------------------------------

    def reduce_word(self, word: tuple, strategy: str = "left") -> dict:
        """Express a product of letters in the ordered basis of Lambda^len(word).

        ``strategy`` picks which out-of-order adjacent pair is rewritten first
        ("left" or "right"); both must agree if the rewriting is confluent.
        """
        key = (word, strategy)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        n = len(word)
        if n > 4:
            raise ValueError("Lambda vanishes above degree 4")
        positions = [i for i in range(n - 1) if word[i] >= word[i + 1]]
        if not positions:
            result = {BASIS_INDEX[n][word]: self.field.one}
        else:
            i = positions[0] if strategy == "left" else positions[-1]
            result = {}
            for idx2, c in self._quad[(word[i], word[i + 1])].items():
                pair = BASES[2][idx2]
                sub = self.reduce_word(word[:i] + pair + word[i + 2:], strategy)
                _axpy(result, -c, sub)
        self._word_cache[key] = result
        return result

    def wedge_basis(self, di: int, i: int, dj: int, j: int) -> dict:
        key = (di, i, dj, j)
        hit = self._wedge_cache.get(key)
        if hit is None:
            if di + dj > 4:
                hit = {}
            else:
                hit = self.reduce_word(BASES[di][i] + BASES[dj][j])
            self._wedge_cache[key] = hit
        return hit

    def wedge(self, x: InvForm, y: InvForm) -> InvForm:
        deg = x.degree + y.degree
        if deg > 4:
            return InvForm(self, deg, {})
        out: dict = {}
        for i, u in x.coeffs.items():
            for j, v in y.coeffs.items():
                _axpy(out, -(u * v), self.wedge_basis(x.degree, i, y.degree, j))
        return InvForm(self, deg, out)

    def surjection_matrix(self, n: int) -> LinOp:
        """The canonical map (Lambda^1)^{(x)n} -> Lambda^n, words in base-4 order."""
        cols = []
        for w in range(4 ** n):
            word = tuple((w // 4 ** (n - 1 - t)) % 4 for t in range(n))
            cols.append(self.reduce_word(word))
        return LinOp.from_columns(DIMS[n], cols, self.field)

    # -- exterior derivative ---------------------------------------------

    def d_inv(self, x: InvForm) -> InvForm:
        """d = -[theta, . } on invariant forms (graded commutator)."""
        sign = 1 if x.degree % 2 == 0 else -1
        if x.degree >= 4:
            return InvForm(self, x.degree + 1, {})
        left = self.wedge(self.theta, x)
        right = self.wedge(x, self.theta)
        return -(left - right * sign)

    # -- braiding ---------------------------------------------------------

    def braiding(self) -> LinOp:
        """Psi on Lambda^1 (x) Lambda^1; basis e_i (x) e_j has index 4 i + j."""
        K = self.field
        q = K.q_power
        mu = self.mu
        one = K.one
        a, b, c, d = range(4)

        def t(i, j):
            return 4 * i + j

        images = {
            t(a, a): {t(a, a): one, t(b, c): -mu, t(c, b): mu, t(d, a): q(2) * mu * mu, t(d, d): -mu * mu},
            t(b, b): {t(b, b): one},
            t(c, c): {t(c, c): one},
            t(d, d): {t(d, d): one},
            t(a, d): {t(d, a): one},
            t(d, a): {t(a, d): one, t(b, c): mu, t(c, b): -mu, t(d, a): -q(2) * mu * mu, t(d, d): mu * mu},
            t(b, c): {t(c, b): one, t(d, a): q(2) * mu, t(d, d): -mu},
            t(c, b): {t(b, c): one, t(d, a): -q(2) * mu, t(d, d): mu},
            t(a, b): {t(b, a): one, t(d, b): q(2) * mu},
            t(b, a): {t(a, b): q(-2), t(b, a): mu, t(b, d): -mu * q(-2)},
            t(a, c): {t(c, a): one, t(d, c): -mu},
            t(c, a): {t(a, c): q(2), t(c, a): -mu * q(2), t(c, d): mu, t(d, c): K.q_int(2, 2) * mu * mu},
            t(b, d): {t(d, b): q(2)},
            t(d, b): {t(b, d): one, t(d, b): -q(2) * mu},
            t(c, d): {t(d, c): q(-2)},
            t(d, c): {t(c, d): one, t(d, c): mu},
        }
        cols = [{k: v for k, v in images[j].items() if v} for j in range(16)]
        return LinOp.from_columns(16, cols, K)

    def braid_at(self, n: int, i: int) -> LinOp:
        """Psi acting on tensor positions i, i+1 (0-based) of (Lambda^1)^{(x)n}."""
        psi_cols = self.braiding().columns()
        cols = []
        for w in range(4 ** n):
            digits = [(w // 4 ** (n - 1 - t)) % 4 for t in range(n)]
            col: dict = {}
            for out, c in psi_cols[4 * digits[i] + digits[i + 1]].items():
                nd = digits[:i] + [out // 4, out % 4] + digits[i + 2:]
                idx = 0
                for x in nd:
                    idx = 4 * idx + x
                col[idx] = c
            cols.append(col)
        return LinOp.from_columns(4 ** n, cols, self.field)

    def braided_integer(self, n: int) -> LinOp:
        """[n, -Psi] = id - Psi_12 + Psi_12 Psi_23 - ... on (Lambda^1)^{(x)n}."""
        N = 4 ** n
        total = LinOp.identity(N, self.field)
        prod = LinOp.identity(N, self.field)
        for j in range(n - 1):
            prod = prod @ self.braid_at(n, j)
            total = total - prod if j % 2 == 0 else total + prod
        return total

    def braided_factorial(self, n: int) -> LinOp:
        """A_n = (id (x) A_{n-1}) [n, -Psi], with A_1 = id."""
        if n == 1:
            return LinOp.identity(4, self.field)
        inner = self.braided_factorial(n - 1)
        # id (x) A_{n-1}: act on the last n-1 tensor factors
        M = 4 ** (n - 1)
        rows = []
        for first in range(4):
            for row in inner.rows:
                rows.append({first * M + j: v for j, v in row.items()})
        lifted = LinOp(4 ** n, 4 ** n, rows, self.field)
        return lifted @ self.braided_integer(n)

    # -- export -----------------------------------------------------------

    def wedge_table_json(self, di: int, dj: int) -> str:
        entries = []
        for i in range(DIMS[di]):
            for j in range(DIMS[dj]):
                for k, c in sorted(self.wedge_basis(di, i, dj, j).items()):
                    entries.append([i, j, k, c.to_json()])
        return json.dumps({"op": "wedge", "deg": [di, dj], "entries": entries},
                          separators=(",", ":"))


@lru_cache(maxsize=None)
def exterior(r: int) -> ExteriorAlgebra:
    return ExteriorAlgebra(r)


class LeftAction:
    """Moves algebra elements from the left to the right of invariant forms.

    ``push(x, j)`` rewrites x . e_j as sum_l e_l . y_l using the bimodule
    relations for the generators a, b, c, iterated over normal-ordered
    monomials (rightmost generator first).
    """

    def __init__(self, alg: ReducedQuantumSL2):
        self.alg = alg
        K = alg.field
        q = K.q_power
        mu = K.mu()
        A = alg
        z = AlgElem(A, {})
        # generator -> letter -> (y_a, y_b, y_c, y_d) with g e_j = sum_l e_l y_l
        self._gen = {
            "a": (
                (A.a * q(1), z, A.c * mu, A.a * (q(1) * mu * mu)),
                (z, A.a, z, A.c * (q(1) * mu)),
                (z, z, A.a, z),
                (z, z, z, A.a * q(-1)),
            ),
            "b": (
                (A.b * q(1), z, A.d * mu, A.b * (q(1) * mu * mu)),
                (z, A.b, z, A.d * (q(1) * mu)),
                (z, z, A.b, z),
                (z, z, z, A.b * q(-1)),
            ),
            "c": (
                (A.c * q(-1), A.a * mu, z, z),
                (z, A.c, z, z),
                (z, z, A.c, A.a * (q(1) * mu)),
                (z, z, z, A.c * q(1)),
            ),
        }
        self._cache: dict[tuple[int, int], tuple] = {}

    def push_monomial(self, idx: int, letter: int) -> tuple:
        """Right coefficients (y_a, y_b, y_c, y_d) of w . e_letter for a basis monomial w."""
        key = (idx, letter)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        A = self.alg
        m, n, k = A.exponents(idx)
        if k:
            rest, g = A.index(m, n, k - 1), "c"
        elif n:
            rest, g = A.index(m, n - 1, 0), "b"
        elif m:
            rest, g = A.index(m - 1, 0, 0), "a"
        else:
            out = [AlgElem(A, {}) for _ in range(4)]
            out[letter] = A.one
            self._cache[key] = tuple(out)
            return self._cache[key]
        acc = [dict() for _ in range(4)]
        for l, h in enumerate(self._gen[g][letter]):
            if not h:
                continue
            inner = self.push_monomial(rest, l)
            for p in range(4):
                if inner[p]:
                    _axpy(acc[p], -1, A.mul(inner[p], h).coeffs)
        result = tuple(AlgElem(A, a) for a in acc)
        self._cache[key] = result
        return result

    def push(self, x: AlgElem, letter: int) -> tuple:
        """x . e_letter = sum_l e_l . y_l; returns (y_a, y_b, y_c, y_d)."""
        acc = [dict() for _ in range(4)]
        for idx, c in x.coeffs.items():
            for p, y in enumerate(self.push_monomial(idx, letter)):
                if y:
                    _axpy(acc[p], -c, y.coeffs)
        return tuple(AlgElem(self.alg, a) for a in acc)

    def push_word(self, x: AlgElem, word: tuple) -> dict:
        """x . e_{w1} ... e_{wn} as ``{letter word: right coefficient}`` (unreduced)."""
        current = {(): x}
        for letter in word:
            nxt: dict = {}
            for prefix, y in current.items():
                for l, z in enumerate(self.push(y, letter)):
                    if z:
                        key = prefix + (l,)
                        nxt[key] = nxt[key] + z if key in nxt else z
            current = {k: v for k, v in nxt.items() if v}
        return current

    def push_left(self, x: AlgElem, e: InvForm) -> dict:
        """x . e for a degree-1 invariant form: ``{letter: right coefficient}``."""
        if e.degree != 1:
            raise ValueError("push_left expects a 1-form")
        acc = [dict() for _ in range(4)]
        for j, c in e.coeffs.items():
            for p, y in enumerate(self.push(x, j)):
                if y:
                    _axpy(acc[p], -c, y.coeffs)
        return {p: AlgElem(self.alg, a) for p, a in enumerate(acc) if a}
