"""Univariate polynomials over a cyclotomic field, and characteristic polynomials.

Polynomials are lists of scalars, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import cmath
import math

from .cyclotomic import CyclotomicField, CycScalar
from .linalg import LinOp

__all__ = [
    "charpoly",
    "poly_divmod",
    "poly_gcd",
    "poly_derivative",
    "squarefree_factors",
    "field_roots",
    "embed",
]


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p: list, x):
    acc = x.field.zero if isinstance(x, CycScalar) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p: list, q: list, K: CyclotomicField) -> list:
    if not p or not q:
        return []
    out = [K.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _trim(out)


def poly_divmod(p: list, q: list, K: CyclotomicField) -> tuple[list, list]:
    q = _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    lead_inv = q[-1].inverse()
    quot = [K.zero] * max(len(p) - len(q) + 1, 0)
    while len(_trim(rem)) >= len(q):
        shift = len(rem) - len(q)
        c = rem[-1] * lead_inv
        quot[shift] = c
        for j, b in enumerate(q):
            rem[shift + j] = rem[shift + j] - c * b
        rem.pop()
    return _trim(quot), _trim(rem)


def poly_monic(p: list) -> list:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(p: list, q: list, K: CyclotomicField) -> list:
    a, b = _trim(list(p)), _trim(list(q))
    while b:
        _, r = poly_divmod(a, b, K)
        a, b = b, r
    return poly_monic(a) if a else a


def poly_derivative(p: list) -> list:
    return _trim([c * i for i, c in enumerate(p)][1:])


def charpoly(M: LinOp) -> list:
    """Characteristic polynomial det(x I - M), monic, via Hessenberg reduction."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("charpoly needs a square matrix")
    K = M.field
    A = [[M[i, j] for j in range(n)] for i in range(n)]
    A = [[K.coerce(x) if not isinstance(x, CycScalar) else x for x in row] for row in A]
    # reduce to upper Hessenberg form by similarity
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if A[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            A[piv], A[j + 1] = A[j + 1], A[piv]
            for row in A:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = A[j + 1][j].inverse()
        for i in range(j + 2, n):
            if not A[i][j]:
                continue
            f = A[i][j] * inv
            Ai, Aj1 = A[i], A[j + 1]
            for k in range(n):
                if Aj1[k]:
                    Ai[k] = Ai[k] - f * Aj1[k]
            for row in A:
                if row[i]:
                    row[j + 1] = row[j + 1] + f * row[i]
    # recurrence for leading principal minors of x I - H
    polys = [[K.one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        diag = A[m - 1][m - 1]
        p = [K.zero] + prev
        for t, b in enumerate(prev):
            p[t] = p[t] - diag * b
        prod = K.one
        for i in range(m - 1, 0, -1):
            prod = prod * A[i][i - 1]
            if not prod:
                break
            c = A[i - 1][m - 1] * prod
            if c:
                for t, b in enumerate(polys[i - 1]):
                    p[t] = p[t] - c * b
        polys.append(p)
    return _trim(polys[n])


def squarefree_factors(p: list, K: CyclotomicField) -> list[tuple[list, int]]:
    """Yun's algorithm: ``[(f_i, i)]`` with p = prod f_i^i up to a unit."""
    p = poly_monic(_trim(list(p)))
    out = []
    a = poly_gcd(p, poly_derivative(p), K)
    b, _ = poly_divmod(p, a, K)
    c, _ = poly_divmod(poly_derivative(p), a, K)
    d = _trim([x - y for x, y in _zip_pad(c, poly_derivative(b), K)])
    i = 1
    while len(b) > 1:
        a = poly_gcd(b, d, K)
        if len(a) > 1:
            out.append((a, i))
        b, _ = poly_divmod(b, a, K)
        c, _ = poly_divmod(d, a, K)
        d = _trim([x - y for x, y in _zip_pad(c, poly_derivative(b), K)])
        i += 1
    return out


def _zip_pad(p, q, K):
    n = max(len(p), len(q))
    return zip(p + [K.zero] * (n - len(p)), q + [K.zero] * (n - len(q)))


def embed(x: CycScalar) -> complex:
    """Value of ``x`` under q -> exp(2 pi i / r)."""
    z = cmath.exp(2j * math.pi / x.field.r)
    return sum(float(c) * z ** i for i, c in enumerate(x.coefficients()))


def field_roots(p: list, K: CyclotomicField, search_radius: int = 64) -> list[CycScalar]:
    """Roots of ``p`` lying in K, without multiplicity.

    Linear square-free factors are read off directly.  Higher-degree factors
    are searched over x + y q with integer x, y within the Cauchy bound
    (capped at ``search_radius``); this finds every root in Z[q] for r = 3.
    """
    roots: list[CycScalar] = []
    for f, _ in squarefree_factors(p, K):
        if len(f) == 2:
            roots.append(-f[0] * f[1].inverse())
            continue
        f = poly_monic(f)
        bound = 1 + max(abs(embed(c)) for c in f[:-1])
        R = min(int(math.ceil(2 * bound)) + 1, search_radius)
        q = K.q
        rest = f
        for x in range(-R, R + 1):
            for y in range(-R, R + 1):
                cand = K.from_int(x) + q * y
                if abs(embed(cand)) > bound + 1e-9:
                    continue
                if not poly_eval(rest, cand):
                    roots.append(cand)
                    rest, _ = poly_divmod(rest, [-cand, K.one], K)
                    if len(rest) <= 1:
                        break
            if len(rest) <= 1:
                break
    return roots
