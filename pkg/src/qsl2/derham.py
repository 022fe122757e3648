"""Differential forms Omega^k = Lambda^k (x) A and the de Rham complex.

A k-form is stored as sum_I e_I . f_I with the algebra coefficients on the
right.  Coordinates are flattened as ``I * r^3 + monomial``.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .algebra import AlgElem, algebra
from .exterior import BASES, BASIS_INDEX, DIMS, LeftAction, basis_label, exterior, parse_label
from .linalg import LinOp, Subspace, _axpy, image, kernel

__all__ = ["DeRhamComplex", "Form", "complex_for", "named_cocycles"]


def named_cocycles(r: int) -> dict[str, tuple[int, str]]:
    """Hand-picked cohomology representatives, ``name -> (degree, expression)``.

    Exponents are written in terms of r; the q^4 coefficients are kept
    literally and reduced by the field.
    """
    R1, R2 = r - 1, r - 2
    return {
        "one": (0, "1"),
        "theta": (1, "theta"),
        "h1": (1, f"e_b a c^{R1}"),
        "h2": (1, f"e_c a^{R1} b^{R1}"),
        "n": (1, f"e_a + e_c a^{R1} c"),
        "m1": (2, f"e_bd a c^{R1}"),
        "m2": (2, f"e_ab a c^{R1}"),
        "m3": (2, f"e_ac a^{R1} b^{R1}"),
        "m4": (2, f"e_cd a^{R1} b^{R1}"),
        "m5": (2, f"(e_ac - e_cd) a^{R1} c - e_ad"),
        "m6": (2, f"e_bd a b^{R1} c^{R2} + q^4 e_cd a^{R1} b^{R2} c^{R1}"),
        "Theta": (3, f"e_bcd b^{R1} c^{R1}"),
        "h1*": (3, f"e_abd a c^{R1}"),
        "h2*": (3, f"e_acd a^{R1} b^{R1}"),
        "s": (3, f"e_abd a b^{R1} c^{R2} + q^4 e_acd a^{R1} b^{R2} c^{R1}"),
        "top": (4, f"e_abcd b^{R1} c^{R1}"),
    }


class Form:
    """An element of Omega^degree."""

    __slots__ = ("cx", "degree", "vec")

    def __init__(self, cx: "DeRhamComplex", degree: int, vec: dict):
        self.cx = cx
        self.degree = degree
        self.vec = vec

    # -- arithmetic -------------------------------------------------------

    def _same(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.cx is not self.cx:
            raise ValueError("forms over different complexes")
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")

    def __add__(self, other):
        if isinstance(other, (int,)) or hasattr(other, "field"):
            other = self.cx.scalar(other)
        self._same(other)
        out = dict(self.vec)
        _axpy(out, -1, other.vec)
        return Form(self.cx, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.cx, self.degree, {k: -v for k, v in self.vec.items()})

    def __sub__(self, other):
        if isinstance(other, (int,)) or hasattr(other, "field"):
            other = self.cx.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Scalar multiple, right multiplication by an algebra element, or wedge."""
        if isinstance(other, Form):
            return self.cx.wedge(self, other)
        if isinstance(other, AlgElem):
            return self.cx.right_mul(self, other)
        c = self.cx.field.coerce(other)
        if not c:
            return Form(self.cx, self.degree, {})
        return Form(self.cx, self.degree, {k: v * c for k, v in self.vec.items()})

    def __rmul__(self, other):
        if isinstance(other, AlgElem):
            return self.cx.wedge(self.cx.function(other), self)
        return self * other

    __xor__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.degree == other.degree and self.vec == other.vec

    def __hash__(self):
        return hash((self.degree, frozenset(self.vec.items())))

    def is_zero(self) -> bool:
        return not self.vec

    def __bool__(self):
        return bool(self.vec)

    # -- structure --------------------------------------------------------

    def parts(self) -> dict[int, AlgElem]:
        """``{invariant basis index I: right coefficient f_I}``."""
        N = self.cx.N
        groups: dict[int, dict] = {}
        for idx, v in self.vec.items():
            groups.setdefault(idx // N, {})[idx % N] = v
        return {I: AlgElem(self.cx.alg, g) for I, g in sorted(groups.items())}

    def d(self) -> "Form":
        if self.degree >= 4:
            return Form(self.cx, self.degree + 1, {})
        return Form(self.cx, self.degree + 1, self.cx.d_matrix(self.degree).apply(self.vec))

    def to_json_obj(self) -> dict:
        alg = self.cx.alg
        terms = []
        for I, f in self.parts().items():
            for m, c in f.terms():
                terms.append([basis_label(BASES[self.degree][I]), alg.monomial_str(m), c.to_json()])
        return {"r": self.cx.r, "degree": self.degree, "terms": terms}

    def __str__(self):
        if not self.vec:
            return "0"
        out = []
        for I, f in self.parts().items():
            out.append(f"{basis_label(BASES[self.degree][I])}.[{f}]")
        return " + ".join(out)

    __repr__ = __str__


class DeRhamComplex:
    """Omega(A) for the reduced quantum group at a given odd r."""

    def __init__(self, r: int):
        self.r = r
        self.alg = algebra(r)
        self.ext = exterior(r)
        self.action = LeftAction(self.alg)
        self.field = self.alg.field
        self.N = self.alg.dim
        self.dims = tuple(DIMS[k] * self.N for k in range(5))
        self._d: dict[int, LinOp] = {}
        self._push_cache: dict[tuple, dict] = {}
        self._sub_cache: dict[tuple, Subspace] = {}

    def __repr__(self):
        return f"DeRhamComplex(r={self.r})"

    # -- constructors -----------------------------------------------------

    def zero(self, degree: int) -> Form:
        return Form(self, degree, {})

    def scalar(self, c) -> Form:
        c = self.field.coerce(c)
        return Form(self, 0, {0: c} if c else {})

    def function(self, f: AlgElem) -> Form:
        return Form(self, 0, dict(f.coeffs))

    def inv(self, x) -> Form:
        """Invariant form (an InvForm or a label such as "e_ab") times 1."""
        if isinstance(x, str):
            x = self.ext.form(len(x) - 2 if x != "1" else 0, {x: 1})
        return Form(self, x.degree, {I * self.N: c for I, c in x.coeffs.items()})

    def from_parts(self, degree: int, parts: dict) -> Form:
        vec: dict = {}
        for I, f in parts.items():
            for m, c in f.coeffs.items():
                vec[I * self.N + m] = c
        return Form(self, degree, vec)

    def from_vector(self, degree: int, vec: dict) -> Form:
        return Form(self, degree, dict(vec))

    def from_json_obj(self, obj: dict) -> Form:
        """Inverse of :meth:`Form.to_json_obj`."""
        if obj.get("r", self.r) != self.r:
            raise ValueError(f"form is for r = {obj['r']}, not {self.r}")
        k = int(obj["degree"])
        vec: dict = {}
        for label, mono, coeff in obj["terms"]:
            idx = BASIS_INDEX[k][parse_label(label)] * self.N + self.alg.parse_monomial(mono)
            c = vec.get(idx, self.field.zero) + self.field.from_coefficients(coeff)
            if c:
                vec[idx] = c
            else:
                vec.pop(idx, None)
        return Form(self, k, vec)

    def right_mul(self, w: Form, f: AlgElem) -> Form:
        out: dict = {}
        alg, N = self.alg, self.N
        for idx, c in w.vec.items():
            I, m = divmod(idx, N)
            for j, v in f.coeffs.items():
                prod = alg.mono_mul(m, j)
                if prod is None:
                    continue
                s, k = prod
                key = I * N + k
                t = c * v * s
                old = out.get(key)
                t = t if old is None else old + t
                if t:
                    out[key] = t
                else:
                    out.pop(key, None)
        return Form(self, w.degree, out)

    # -- products ---------------------------------------------------------

    def push_basis(self, mono: int, degree: int, J: int) -> dict:
        """m . e_J = sum_K e_K . y_K for a basis monomial m and basis form e_J."""
        key = (mono, degree, J)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        word = BASES[degree][J]
        x = AlgElem(self.alg, {mono: self.field.one})
        acc: dict[int, dict] = {}
        for w, y in self.action.push_word(x, word).items():
            for K, c in self.ext.reduce_word(w).items():
                _axpy(acc.setdefault(K, {}), -c, y.coeffs)
        result = {K: AlgElem(self.alg, v) for K, v in acc.items() if v}
        self._push_cache[key] = result
        return result

    def wedge(self, x: Form, y: Form) -> Form:
        deg = x.degree + y.degree
        if deg > 4:
            return Form(self, deg, {})
        N, alg, ext = self.N, self.alg, self.ext
        out: dict = {}
        yparts = y.parts()
        for idx, c in x.vec.items():
            I, m = divmod(idx, N)
            for J, g in yparts.items():
                for K, h in self.push_basis(m, y.degree, J).items():
                    coeff = alg.mul(h, g)
                    if not coeff:
                        continue
                    for L, s in ext.wedge_basis(x.degree, I, y.degree, K).items():
                        f = c * s
                        base = L * N
                        for k, v in coeff.coeffs.items():
                            key = base + k
                            t = v * f
                            old = out.get(key)
                            t = t if old is None else old + t
                            if t:
                                out[key] = t
                            else:
                                out.pop(key, None)
        return Form(self, deg, out)

    def theta_wedge(self, w: Form) -> Form:
        """theta ^ w; theta is invariant so no coefficients move."""
        return Form(self, w.degree + 1, self.theta_matrix(w.degree).apply(w.vec))

    # -- operators --------------------------------------------------------

    def d_matrix(self, k: int) -> LinOp:
        """d_k : Omega^k -> Omega^(k+1) assembled by the Leibniz rule."""
        hit = self._d.get(k)
        if hit is not None:
            return hit
        if not 0 <= k <= 3:
            raise ValueError("d_k is defined for k = 0..3")
        N, ext, alg = self.N, self.ext, self.alg
        sign = -1 if k % 2 else 1
        cols = []
        for I in range(DIMS[k]):
            dI = ext.d_inv(ext.basis_form(k, I)).coeffs
            wedges = [ext.wedge_basis(k, I, 1, j) for j in range(4)]
            for m in range(N):
                col: dict = {}
                for L, c in dI.items():
                    col[L * N + m] = c
                for j, comp in enumerate(alg.d_monomial(m)):
                    if not comp:
                        continue
                    for L, s in wedges[j].items():
                        f = s if sign == 1 else -s
                        base = L * N
                        for mm, v in comp.items():
                            key = base + mm
                            t = v * f
                            old = col.get(key)
                            t = t if old is None else old + t
                            if t:
                                col[key] = t
                            else:
                                col.pop(key, None)
                cols.append(col)
        op = LinOp.from_columns(self.dims[k + 1], cols, self.field)
        self._d[k] = op
        return op

    def d_matrix_commutator(self, k: int) -> LinOp:
        """d_k computed independently as -(theta w - (-1)^k w theta)."""
        theta = self.inv(self.ext.theta)
        sign = -1 if k % 2 else 1
        cols = []
        for idx in range(self.dims[k]):
            w = Form(self, k, {idx: self.field.one})
            val = self.wedge(theta, w) - self.wedge(w, theta) * sign
            cols.append((-val).vec)
        return LinOp.from_columns(self.dims[k + 1], cols, self.field)

    def theta_matrix(self, k: int) -> LinOp:
        key = ("theta", k)
        hit = self._d.get(key)
        if hit is not None:
            return hit
        N, ext = self.N, self.ext
        cols = []
        for I in range(DIMS[k]):
            img = ext.wedge(ext.theta, ext.basis_form(k, I)).coeffs
            for m in range(N):
                cols.append({L * N + m: c for L, c in img.items()})
        op = LinOp.from_columns(self.dims[k + 1] if k < 4 else 0, cols, self.field)
        self._d[key] = op
        return op

    def invariant_operator(self, k: int, table: dict[int, dict], target_degree: int) -> LinOp:
        """Extend a map Lambda^k -> Lambda^target to Omega as a right-module map."""
        N = self.N
        cols = []
        for I in range(DIMS[k]):
            img = table.get(I, {})
            for m in range(N):
                cols.append({L * N + m: c for L, c in img.items() if c})
        return LinOp.from_columns(self.dims[target_degree], cols, self.field)

    # -- spaces -----------------------------------------------------------

    def _cached(self, key, builder):
        hit = self._sub_cache.get(key)
        if hit is None:
            hit = builder()
            self._sub_cache[key] = hit
        return hit

    def closed(self, k: int) -> Subspace:
        if k == 4:
            return self._cached(("closed", 4), lambda: Subspace.full(self.dims[4], self.field))
        return self._cached(("closed", k), lambda: kernel(self.d_matrix(k)))

    def exact(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.zero(self.dims[0])
        return self._cached(("exact", k), lambda: image(self.d_matrix(k - 1)))

    def cohomology(self, k: int) -> dict:
        """Dimension and canonical echelon-residue representatives of H^k."""
        Z, B = self.closed(k), self.exact(k)
        reps = B.complement_in(Z)
        return {
            "dim": Z.dim - B.dim,
            "canonical_basis": [Form(self, k, v) for v in reps.basis],
        }

    def is_closed(self, w: Form) -> bool:
        return w.d().is_zero()

    def is_exact(self, w: Form) -> bool:
        return self.exact(w.degree).contains(w.vec)

    def independent_mod_exact(self, forms: list[Form]) -> bool:
        """Whether ``forms`` are linearly independent modulo exact forms."""
        if not forms:
            return True
        k = forms[0].degree
        span = Subspace.span(self.dims[k], [f.vec for f in forms])
        return span.dim == len(forms) and span.relative_dim(self.exact(k)) == len(forms)

    def span(self, forms: list[Form], degree: int | None = None) -> Subspace:
        if degree is None:
            degree = forms[0].degree
        return Subspace.span(self.dims[degree], [f.vec for f in forms])

    # -- named representatives -------------------------------------------

    def parse(self, text: str) -> Form:
        from .expr import parse_form

        return parse_form(self, text)

    def named(self, name: str) -> Form:
        catalog = named_cocycles(self.r)
        if name not in catalog:
            raise KeyError(f"unknown named cocycle {name!r}")
        degree, text = catalog[name]
        w = self.parse(text)
        if w.degree != degree:
            w = Form(self, degree, w.vec) if w.is_zero() else w
        assert w.degree == degree, name
        return w

    def verify_named(self, name: str) -> dict:
        """Closedness and non-exactness of one named representative."""
        w = self.named(name)
        return {"name": name, "degree": w.degree, "closed": self.is_closed(w),
                "exact": self.is_exact(w)}

    def verify_named_set(self) -> dict:
        """Certificate for all named representatives, grouped by degree.

        A degree passes when every form is closed and not exact, and the
        whole set is independent modulo exact forms with as many members
        as dim H^k.
        """
        by_degree: dict[int, list[str]] = {}
        for name, (deg, _) in named_cocycles(self.r).items():
            by_degree.setdefault(deg, []).append(name)
        out = {"r": self.r, "degrees": {}}
        ok = True
        for deg, names in sorted(by_degree.items()):
            items = [self.verify_named(n) for n in names]
            forms = [self.named(n) for n in names]
            indep = self.independent_mod_exact(forms)
            spans = indep and len(forms) == self.cohomology_dim(deg)
            passed = spans and all(i["closed"] and not i["exact"] for i in items)
            ok &= passed
            out["degrees"][str(deg)] = {"forms": items, "independent_mod_exact": indep,
                                        "basis_of_cohomology": spans, "pass": passed}
        out["pass"] = ok
        return out

    def cohomology_dim(self, k: int) -> int:
        return self.closed(k).dim - self.exact(k).dim

    def equal_mod_exact(self, x: Form, y: Form) -> bool:
        return self.is_exact(x - y)

    def proportional_mod_exact(self, x: Form, y: Form) -> bool:
        """x = c y modulo exact forms for some nonzero c, with y not exact."""
        E = self.exact(x.degree)
        if E.contains(x.vec) or E.contains(y.vec):
            return False
        return Subspace.span(self.dims[x.degree], [x.vec, y.vec]).relative_dim(E) == 1

    def theta_complex_check(self) -> dict:
        """theta^ on cohomology: well-defined, with 0 -> H^0 -> ... -> H^4 -> 0 exact."""
        maps = []
        for k in range(4):
            T = self.theta_matrix(k)
            Z, B = self.closed(k), self.exact(k)
            Z1, B1 = self.closed(k + 1), self.exact(k + 1)
            closed_ok = all(Z1.contains(T.apply(v)) for v in Z.basis)
            exact_ok = all(B1.contains(T.apply(v)) for v in B.basis)
            rank = Z.map(T).relative_dim(B1)
            maps.append({"k": k, "closed_to_closed": closed_ok, "exact_to_exact": exact_ok,
                         "rank": rank})
        hdims = [self.cohomology_dim(k) for k in range(5)]
        ranks = [m["rank"] for m in maps]
        # exactness at H^k: dim ker theta_k = rank theta_(k-1)
        exact_at = []
        for k in range(5):
            incoming = ranks[k - 1] if k > 0 else 0
            outgoing = ranks[k] if k < 4 else 0
            exact_at.append(hdims[k] - outgoing == incoming)
        ok = all(m["closed_to_closed"] and m["exact_to_exact"] for m in maps) and all(exact_at)
        return {"r": self.r, "cohomology_dims": hdims, "maps": maps, "ranks": ranks,
                "exact_at": exact_at, "pass": ok}

    def theta_images_check(self) -> dict:
        """The theta^ images of the named representatives in terms of each other."""
        N, T = self.named, self.theta_wedge
        checks = {
            "theta^h1 = m2 - m1": self.equal_mod_exact(T(N("h1")), N("m2") - N("m1")),
            "theta^h2 = m3 - m4": self.equal_mod_exact(T(N("h2")), N("m3") - N("m4")),
            "theta^n = m5": self.equal_mod_exact(T(N("n")), N("m5")),
            "theta^(m1+m2) ~ h1*": self.proportional_mod_exact(T(N("m1") + N("m2")), N("h1*")),
            "theta^(m3+m4) ~ h2*": self.proportional_mod_exact(T(N("m3") + N("m4")), N("h2*")),
            "theta^m6 ~ s": self.proportional_mod_exact(T(N("m6")), N("s")),
            "theta^Theta ~ top": self.proportional_mod_exact(T(N("Theta")), N("top")),
        }
        return {"r": self.r, "checks": checks, "pass": all(checks.values())}

    def report(self) -> dict:
        """Table-style counts of all, closed and exact forms in each degree."""
        return {
            "r": self.r,
            "all": list(self.dims),
            "closed": [self.closed(k).dim for k in range(5)],
            "exact": [self.exact(k).dim for k in range(5)],
        }


@lru_cache(maxsize=None)
def complex_for(r: int) -> DeRhamComplex:
    """Cached complex for ``r``; everything downstream shares it."""
    return DeRhamComplex(r)


def report_json(r: int) -> str:
    return json.dumps(complex_for(r).report())
