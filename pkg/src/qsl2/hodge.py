"""Metric, epsilon tensor, Hodge star, codifferential and Laplacian.

The star on degrees 1..3 is the explicit table below, extended to Omega as a
right-module map.  On degrees 0 and 4 we set star(1) = c0 Top and
star(Top) = 1/c0, where c0 is calibrated at r = 3 by requiring the spin-0
Laplacian to have a^2 as an eigenvector with eigenvalue 6(q+1).
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

from .cyclotomic import CyclotomicField, CycScalar, field as get_field
from .derham import DeRhamComplex, Form, complex_for
from .exterior import BASIS_INDEX, exterior, parse_label
from .linalg import LinOp, Subspace, kernel
from .poly import charpoly, field_roots

__all__ = [
    "Metric",
    "build_metric",
    "degenerate_lambda",
    "build_eps",
    "star_table",
    "derived_star_table",
    "reference_eps",
    "compare_eps",
    "compare_star_tables",
    "calibrated_c0",
    "HodgeStructure",
    "hodge_for",
]


# -- metric ----------------------------------------------------------------


class Metric:
    """eta = sum eta[i][j] e_i (x) e_j, indices 0..3 for a, b, c, d."""

    def __init__(self, K: CyclotomicField, lam: CycScalar, eta: list[list[CycScalar]]):
        self.field = K
        self.lam = lam
        self.eta = eta

    def wedge(self) -> dict:
        """Image of eta under the wedge product, as Lambda^2 coordinates."""
        ext = exterior(self.field.r)
        out: dict = {}
        for i in range(4):
            for j in range(4):
                c = self.eta[i][j]
                if c:
                    for k, v in ext.reduce_word((i, j)).items():
                        s = out.get(k, self.field.zero) + c * v
                        if s:
                            out[k] = s
                        else:
                            out.pop(k, None)
        return out

    def determinant(self) -> CycScalar:
        K = self.field
        m = [row[:] for row in self.eta]
        det = K.one
        for col in range(4):
            piv = next((i for i in range(col, 4) if m[i][col]), None)
            if piv is None:
                return K.zero
            if piv != col:
                m[piv], m[col] = m[col], m[piv]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].inverse()
            for i in range(col + 1, 4):
                f = m[i][col] * inv
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[col])]
        return det

    def is_nondegenerate(self) -> bool:
        return bool(self.determinant())

    def to_json_obj(self) -> dict:
        return {"r": self.field.r, "lambda": self.lam.to_json(),
                "eta": [[c.to_json() for c in row] for row in self.eta]}


def special_lambda(K: CyclotomicField) -> CycScalar:
    """lambda = q(1 - q - q^2)/[2]_q, the value making star^2 scalar on Lambda^1."""
    q = K.q_power
    return q(1) * (K.one - q(1) - q(2)) / K.q_int(2)


def degenerate_lambda(r: int) -> CycScalar:
    """The excluded value q(1 - q)/[4]_q at which eta degenerates."""
    K = get_field(r)
    q = K.q_power
    return q(1) * (K.one - q(1)) / K.q_int(4)


def build_metric(r: int, lam: CycScalar | None = None) -> Metric:
    """The one-parameter family of invariant metrics; default lambda is the special one."""
    K = get_field(r)
    q = K.q_power
    if lam is None:
        lam = special_lambda(K)
    br2 = K.q_int(2)
    eta = [[K.zero] * 4 for _ in range(4)]
    eta[1][2] = K.one
    eta[2][1] = q(2)
    # (q e_a - e_d)(x)(q e_a - e_d)/[2]_q + q(q-1) e_a(x)e_a + lam theta(x)theta
    eta[0][0] = q(2) / br2 + q(1) * (q(1) - 1) + lam
    eta[0][3] = -q(1) / br2 + lam
    eta[3][0] = eta[0][3]
    eta[3][3] = K.one / br2 + lam
    return Metric(K, lam, eta)


# -- epsilon ----------------------------------------------------------------


@lru_cache(maxsize=None)
def build_eps(r: int) -> dict[tuple[int, int, int, int], CycScalar]:
    """Nonzero eps_ijkl (indices 1..4) from e_i e_j e_k e_l = eps_ijkl Top."""
    ext = exterior(r)
    out = {}
    for w in itertools.product(range(4), repeat=4):
        v = ext.reduce_word(w).get(0)
        if v:
            out[tuple(i + 1 for i in w)] = v
    return out


# reference nonzero values: index -> (sign, power of q, has factor mu)
_REFERENCE_EPS = {
    "1141": (1, 0, 1), "1114": (-1, 0, 1), "1312": (-1, 0, 1), "1411": (1, 0, 1),
    "1414": (-1, 0, 1), "3121": (1, 0, 1), "4111": (-1, 0, 1), "4141": (1, 0, 1),
    "1213": (-1, -2, 1), "2131": (1, -2, 1),
    "1234": (1, 0, 0), "1243": (-1, 0, 0), "1324": (-1, 0, 0), "1342": (1, 0, 0),
    "1423": (1, 0, 0), "1432": (-1, 0, 0), "2134": (-1, -2, 0), "2143": (1, -2, 0),
    "2314": (1, 0, 0), "2341": (-1, 0, 0), "2413": (-1, -2, 0), "2431": (1, 0, 0),
    "3124": (1, 2, 0), "3142": (-1, 2, 0), "3214": (-1, 0, 0), "3241": (1, 0, 0),
    "3412": (1, 2, 0), "3421": (-1, 0, 0), "4123": (-1, 0, 0), "4132": (1, 0, 0),
    "4213": (1, -2, 0), "4231": (-1, 0, 0), "4312": (-1, 2, 0), "4321": (1, 0, 0),
}


def reference_eps(r: int) -> dict[tuple[int, int, int, int], CycScalar]:
    """The reference list of nonzero eps values, evaluated in Q(q)."""
    K = get_field(r)
    out = {}
    for key, (sign, power, has_mu) in _REFERENCE_EPS.items():
        v = K.q_power(power) * sign
        out[tuple(int(ch) for ch in key)] = v * K.mu() if has_mu else v
    return out


def compare_eps(r: int) -> dict:
    """Compare the computed eps with the reference list."""
    got, ref = build_eps(r), reference_eps(r)
    diff = sorted("".join(map(str, k)) for k in set(got) | set(ref)
                  if got.get(k) != ref.get(k))
    return {"r": r, "support_matches": set(got) == set(ref), "count": len(got),
            "value_mismatches": diff}


def compare_star_tables(r: int) -> dict:
    """Check the explicit star table against the one derived from eps and eta."""
    table, derived = star_table(r), derived_star_table(r)
    bad = [(k, I) for k in (1, 2, 3) for I in set(table[k]) | set(derived[k])
           if table[k].get(I, {}) != derived[k].get(I, {})]
    return {"r": r, "agree": not bad, "mismatches": sorted(bad)}


# -- star tables ------------------------------------------------------------


def _table_from_labels(r: int, spec: dict) -> dict[int, dict[int, dict]]:
    ext = exterior(r)
    out: dict[int, dict[int, dict]] = {}
    for label, image in spec.items():
        k = len(label) - 2
        I = BASIS_INDEX[k][parse_label(label)]
        out.setdefault(k, {})[I] = ext.form(4 - k, image).coeffs
    return out


@lru_cache(maxsize=None)
def star_table(r: int) -> dict[int, dict[int, dict]]:
    """Explicit star on Lambda^1, Lambda^2, Lambda^3: ``{k: {I: {J: coeff}}}``."""
    K = get_field(r)
    q = K.q_power
    mu = K.mu()
    b = K.q_int(2, 2)  # [2]_{q^2}
    spec = {
        "e_a": {"e_abc": -1, "e_bcd": -mu},
        "e_b": {"e_abd": -1},
        "e_c": {"e_acd": q(2)},
        "e_d": {"e_bcd": 1},
        "e_ab": {"e_ab": -1, "e_bd": 2 * mu},
        "e_ac": {"e_ac": 1},
        "e_ad": {"e_bc": 2 / b, "e_ad": -q(2) * mu / b},
        "e_bc": {"e_ad": 2 * q(2) / b, "e_bc": q(2) * mu / b},
        "e_bd": {"e_bd": 1},
        "e_cd": {"e_cd": -1},
        "e_abc": {"e_a": -1, "e_d": -mu},
        "e_abd": {"e_b": -1},
        "e_acd": {"e_c": q(-2)},
        "e_bcd": {"e_d": 1},
    }
    return _table_from_labels(r, spec)


def derived_star_table(r: int) -> dict[int, dict[int, dict]]:
    """Star built from eps and eta with the normalisations d1, d2, d3.

    Needs [3]_q != 0, so it is undefined at r = 3.
    """
    K = get_field(r)
    q = K.q_power
    br3 = K.q_int(3)
    if not br3:
        raise ValueError("derived star needs [3]_q != 0")
    d1 = 2 * q(2) * (K.one - q(1) + q(2)) * br3
    d2 = q(2) * K.q_int(2, 2)
    d3 = q(2)
    eta = build_metric(r).eta
    eps = build_eps(r)
    ext = exterior(r)

    def add(acc, word, c):
        for k, v in ext.reduce_word(word).items():
            s = acc.get(k, K.zero) + v * c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)

    out: dict[int, dict[int, dict]] = {1: {}, 2: {}, 3: {}}
    for (i, j, k, l), e in eps.items():
        i, j, k, l = i - 1, j - 1, k - 1, l - 1
        # star(e_i) = d1^-1 eps_ijkl eta^jm eta^kn eta^lp e_p e_n e_m
        acc = out[1].setdefault(i, {})
        for m, n, p in itertools.product(range(4), repeat=3):
            c = eta[j][m] * eta[k][n] * eta[l][p]
            if c:
                add(acc, (p, n, m), e * c / d1)
        # star(e_i e_j) = d2^-1 eps_ijkl eta^km eta^ln e_n e_m
        if i < j:
            acc = out[2].setdefault(BASIS_INDEX[2][(i, j)], {})
            for m, n in itertools.product(range(4), repeat=2):
                c = eta[k][m] * eta[l][n]
                if c:
                    add(acc, (n, m), e * c / d2)
        # star(e_i e_j e_k) = d3^-1 eps_ijkl eta^lm e_m
        if i < j < k:
            acc = out[3].setdefault(BASIS_INDEX[3][(i, j, k)], {})
            for m in range(4):
                if eta[l][m]:
                    add(acc, (m,), e * eta[l][m] / d3)
    return out


def star_table_json(r: int) -> str:
    """Structure-constant export: ``{"op": "star", "deg": k, "entries": [[in, out, coeff]]}``."""
    tables = star_table(r)
    c0 = calibrated_c0(r)
    blocks = [{"op": "star", "deg": 0, "entries": [[0, 0, c0.to_json()]]}]
    for k in (1, 2, 3):
        entries = [[I, J, c.to_json()] for I in sorted(tables[k]) for J, c in sorted(tables[k][I].items())]
        blocks.append({"op": "star", "deg": k, "entries": entries})
    blocks.append({"op": "star", "deg": 4, "entries": [[0, 0, c0.inverse().to_json()]]})
    return json.dumps({"r": r, "tables": blocks})


# -- calibration -------------------------------------------------------------


@lru_cache(maxsize=None)
def _c0_at_3() -> CycScalar:
    h = HodgeStructure(complex_for(3), c0=get_field(3).one)
    cx = h.cx
    a2 = cx.parse("a^2")
    image = h.laplacian(0).apply(a2.vec)
    K = cx.field
    target = 6 * (K.q + 1)
    idx = next(iter(a2.vec))
    if set(image) != {idx}:
        raise RuntimeError("a^2 is not an eigenvector of the spin-0 Laplacian")
    # the Laplacian on functions scales as 1/c0
    return image[idx] / target


@lru_cache(maxsize=None)
def calibrated_c0(r: int) -> CycScalar:
    """c0 for the given r: the r = 3 calibration, which must be rational to transfer."""
    c = _c0_at_3()
    if not c.is_rational():
        raise RuntimeError(f"calibrated c0 = {c} is not rational; cannot transfer to other r")
    return get_field(r).from_rational(c.coefficients()[0])


# -- the Hodge structure on Omega --------------------------------------------


class HodgeStructure:
    """Star, codifferential, Laplacian and derived subspaces over one complex."""

    def __init__(self, cx: DeRhamComplex, c0: CycScalar | None = None):
        self.cx = cx
        self.r = cx.r
        self.field = cx.field
        self.c0 = calibrated_c0(cx.r) if c0 is None else c0
        self._ops: dict = {}
        self._subs: dict = {}

    def _op(self, key, build):
        hit = self._ops.get(key)
        if hit is None:
            hit = build()
            self._ops[key] = hit
        return hit

    def _sub(self, key, build):
        hit = self._subs.get(key)
        if hit is None:
            hit = build()
            self._subs[key] = hit
        return hit

    # -- star -------------------------------------------------------------

    def star_inv(self, k: int) -> dict[int, dict]:
        """Star on Lambda^k as ``{I: {J: coeff}}``."""
        if k == 0:
            return {0: {0: self.c0}}
        if k == 4:
            return {0: {0: self.c0.inverse()}}
        return star_table(self.r)[k]

    def star(self, k: int) -> LinOp:
        return self._op(("star", k), lambda: self.cx.invariant_operator(k, self.star_inv(k), 4 - k))

    def star_form(self, w: Form) -> Form:
        return Form(self.cx, 4 - w.degree, self.star(w.degree).apply(w.vec))

    def codifferential(self, k: int) -> LinOp:
        """delta = star d star : Omega^k -> Omega^(k-1), for k = 1..4."""
        if not 1 <= k <= 4:
            raise ValueError("codifferential is defined for k = 1..4")
        return self._op(("delta", k),
                        lambda: self.star(5 - k) @ self.cx.d_matrix(4 - k) @ self.star(k))

    def delta(self, w: Form) -> Form:
        if w.degree == 0:
            return Form(self.cx, -1, {})
        return Form(self.cx, w.degree - 1, self.codifferential(w.degree).apply(w.vec))

    def laplacian(self, k: int) -> LinOp:
        """box = delta d + d delta on Omega^k."""
        def build():
            d = self.cx.d_matrix
            box = None
            if k < 4:
                box = self.codifferential(k + 1) @ d(k)
            if k > 0:
                t = d(k - 1) @ self.codifferential(k)
                box = t if box is None else box + t
            return box
        return self._op(("box", k), build)

    def box(self, w: Form) -> Form:
        return Form(self.cx, w.degree, self.laplacian(w.degree).apply(w.vec))

    # -- subspaces --------------------------------------------------------

    def coclosed(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.full(self.cx.dims[0], self.field)
        return self._sub(("coclosed", k), lambda: kernel(self.codifferential(k)))

    def coexact(self, k: int) -> Subspace:
        """delta(Omega^(k+1)), equivalently the forms whose star is exact."""
        if k == 4:
            return Subspace.zero(self.cx.dims[4])
        return self._sub(("coexact", k), lambda: self.cx.exact(4 - k).map(self.star(4 - k)))

    def harmonic_space(self, k: int) -> Subspace:
        """Closed and coclosed k-forms."""
        return self._sub(("harmonic", k), lambda: self.cx.closed(k) & self.coclosed(k))

    def laplacian_kernel(self, k: int) -> Subspace:
        return self._sub(("kerbox", k), lambda: kernel(self.laplacian(k)))

    def is_harmonic(self, w: Form) -> bool:
        return w.d().is_zero() and self.delta(w).is_zero()

    def selfdual_split(self) -> tuple[Subspace, Subspace]:
        """The +1 and -1 eigenspaces of star on Lambda^2 (ambient dim 6)."""
        S = LinOp.from_columns(6, [self.star_inv(2)[I] for I in range(6)], self.field)
        I6 = LinOp.identity(6, self.field)
        return kernel(S - I6), kernel(S + I6)

    def selfdual_forms(self, sign: int) -> Subspace:
        """{w in Omega^2 : star w = sign w}."""
        I = LinOp.identity(self.cx.dims[2], self.field)
        op = self.star(2) - I if sign > 0 else self.star(2) + I
        return self._sub(("sd", sign), lambda: kernel(op))

    # -- reports ----------------------------------------------------------

    def report(self) -> dict:
        base = self.cx.report()
        base["harmonic"] = [self.harmonic_space(k).dim for k in range(5)]
        base["ker_box"] = [self.laplacian_kernel(k).dim for k in range(5)]
        return base

    def star_squared_is_identity(self) -> dict[int, bool]:
        out = {}
        for k in range(5):
            out[k] = self.star(4 - k) @ self.star(k) == LinOp.identity(self.cx.dims[k], self.field)
        return out

    def delta_squared_is_zero(self) -> dict[int, bool]:
        return {k: (self.codifferential(k - 1) @ self.codifferential(k)).is_zero()
                for k in range(2, 5)}

    def harmonic_classes_dim(self, k: int) -> int:
        """Dimension of the part of H^k represented by harmonic forms."""
        return self.harmonic_space(k).relative_dim(self.cx.exact(k))

    # -- spin 0 -----------------------------------------------------------

    def spin0_spectrum_report(self) -> dict:
        """Zero modes, massive modes and a non-diagonalisability witness for box on functions."""
        if self.r != 3:
            raise ValueError("the spin-0 mode lists are specific to r = 3")
        cx, K = self.cx, self.field
        box = self.laplacian(0)
        zero_names = ["1", "a", "b", "c", "d", "a b^2", "a^2 b", "d b^2", "d^2 b",
                      "a c^2", "a^2 c", "d c^2", "d^2 c"]
        massive_names = ["a^2", "b^2", "c^2", "d^2", "a b", "a c", "d b", "d c", "b c - 1"]
        mass = 6 * (K.q + 1)
        zero_forms = [cx.parse(s) for s in zero_names]
        massive_forms = [cx.parse(s) for s in massive_names]
        ker = self.laplacian_kernel(0)
        zero_in_kernel = all(not box.apply(f.vec) for f in zero_forms)
        zero_span = cx.span(zero_forms, 0)
        massive_ok = all(self.box(f) == f * mass for f in massive_forms)
        massive_span = cx.span(massive_forms, 0)

        p = charpoly(box)
        roots = field_roots(p, K)
        I = LinOp.identity(cx.dims[0], K)
        eig = []
        witness = None
        for lam in roots:
            M = box - I.scale(lam)
            k1 = kernel(M).dim
            k2 = kernel(M @ M).dim
            mult = _root_multiplicity(p, lam, K)
            eig.append({"eigenvalue": lam.to_json(), "display": str(lam),
                        "algebraic_multiplicity": mult, "ker": k1, "ker_squared": k2})
            if witness is None and k2 > k1:
                witness = {"eigenvalue": lam.to_json(), "display": str(lam),
                           "ker": k1, "ker_squared": k2}
        checks = {
            "zero_modes_in_kernel": zero_in_kernel,
            "zero_modes_span_kernel": zero_span.dim == 13 and zero_span == ker,
            "massive_modes_eigen": massive_ok and massive_span.dim == 9,
            "not_diagonalisable": witness is not None,
        }
        return {
            "r": self.r,
            "kernel_dim": ker.dim,
            "zero_modes": zero_names,
            "massive_modes": massive_names,
            "massive_eigenvalue": mass.to_json(),
            "charpoly_degree": len(p) - 1,
            "eigenvalues": eig,
            "witness": witness,
            "checks": checks,
            "pass": all(checks.values()),
        }

    # -- harmonic representatives (r = 3) ---------------------------------

    def harmonic_representatives(self) -> dict[str, str]:
        return {
            "h3": "q e_z - q^2 e_b d^2 b + e_c a^2 c",
            "h1+": "e_bd a c^2",
            "h1-": "(e_ab - mu e_bd) a c^2",
            "h2+": "e_ac a^2 b^2",
            "h2-": "e_cd a^2 b^2",
            "h3+": "e_bd d^2 b + e_ac a^2 c - (e_ad + e_bc)",
            "h3-": "q e_cd a^2 c + (e_ab - mu e_bd) d^2 b + (e_ad - q^-2 e_bc)",
            "h3*": "e_abd d^2 b + e_acd a^2 c - (e_abc + e_bcd)",
        }

    def harmonic_certificates(self) -> dict:
        """Coexactness of theta, star Theta not closed, and the harmonic bases."""
        if self.r != 3:
            raise ValueError("the reference harmonic representatives are for r = 3")
        cx = self.cx
        P, N = cx.parse, cx.named
        reps = {k: P(v) for k, v in self.harmonic_representatives().items()}
        theta = N("theta")
        star_theta_exact = cx.is_exact(self.star_form(theta))
        checks: dict[str, bool] = {}
        checks["theta coexact"] = star_theta_exact and self.coexact(1).contains(theta.vec)
        checks["star Theta not closed"] = not cx.is_closed(self.star_form(N("Theta")))
        checks["theta harmonic, coexact and nonzero"] = (
            self.is_harmonic(theta) and checks["theta coexact"] and not theta.is_zero())

        h1 = [N("theta"), N("h1"), N("h2"), reps["h3"]]
        checks["H1 harmonic basis"] = (all(self.is_harmonic(f) for f in h1)
                                       and cx.independent_mod_exact(h1))
        signs = {"h1+": 1, "h1-": -1, "h2+": 1, "h2-": -1, "h3+": 1, "h3-": -1}
        for name, s in signs.items():
            f = reps[name]
            checks[f"{name} harmonic"] = self.is_harmonic(f)
            checks[f"{name} star sign {'+' if s > 0 else '-'}"] = self.star_form(f) == f * s
        h2 = [reps[n] for n in signs]
        checks["H2 harmonic basis"] = cx.independent_mod_exact(h2)
        checks["H1, H2 spanned by harmonic classes"] = (
            self.harmonic_classes_dim(1) == 4 and self.harmonic_classes_dim(2) == 6)

        # harmonic part of H^3 equals the kernel of theta^ on H^3
        Z3, B3, B4 = cx.closed(3), cx.exact(3), cx.exact(4)
        harm3 = self.harmonic_space(3) + B3
        ker_theta = Z3.preimage(cx.theta_matrix(3), B4)
        checks["harmonic H3 = ker theta^"] = harm3 == ker_theta
        checks["harmonic H3 dim 3"] = harm3.dim - B3.dim == 3
        h3s = [N("Theta"), N("h1*"), N("h2*"), reps["h3*"]]
        checks["h3* harmonic"] = self.is_harmonic(reps["h3*"])
        checks["Theta, h1*, h2*, h3* basis of H3"] = cx.independent_mod_exact(h3s)

        T = cx.theta_wedge
        q = self.field.q_power
        eq = cx.equal_mod_exact
        checks["theta^h1 = h1- - q^-2 h1+"] = eq(T(N("h1")), reps["h1-"] - reps["h1+"] * q(-2))
        checks["theta^h2 = h2+ - h2-"] = eq(T(N("h2")), reps["h2+"] - reps["h2-"])
        checks["theta^h3 = h3+ - q^2 h3-"] = eq(T(reps["h3"]), reps["h3+"] - reps["h3-"] * q(2))
        return {"r": self.r, "checks": checks, "pass": all(checks.values())}


def _root_multiplicity(p: list, lam: CycScalar, K: CyclotomicField) -> int:
    from .poly import poly_divmod

    m = 0
    while len(p) > 1:
        quot, rem = poly_divmod(p, [-lam, K.one], K)
        if rem:
            break
        p = quot
        m += 1
    return m


@lru_cache(maxsize=None)
def hodge_for(r: int) -> HodgeStructure:
    return HodgeStructure(complex_for(r))
