"""Randomized property checks with a fixed seed, so reports are reproducible.

Each check returns ``(cases, failures)``; a failure records enough to replay it.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cyclotomic import CyclotomicField, CycScalar, field
from .derham import Form, complex_for
from .linalg import LinOp, image, kernel, rank, solve

__all__ = ["random_scalar", "random_matrix", "random_form", "run_properties"]


def random_scalar(rng: random.Random, K: CyclotomicField, nonzero: bool = False) -> CycScalar:
    while True:
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < 0.7 else 0
                  for _ in range(K.phi)]
        x = K.from_coefficients(coeffs)
        if x or not nonzero:
            return x


def random_matrix(rng: random.Random, K: CyclotomicField, nrows: int, ncols: int,
                  density: float = 0.3, low_rank: bool = False) -> LinOp:
    if low_rank:
        # product of thin factors, so the rank is at most k
        k = rng.randint(0, min(nrows, ncols))
        return random_matrix(rng, K, nrows, k, 0.6) @ random_matrix(rng, K, k, ncols, 0.6)
    rows = []
    for _ in range(nrows):
        rows.append({j: random_scalar(rng, K, True) for j in range(ncols) if rng.random() < density})
    return LinOp(nrows, ncols, rows, K)


def random_form(rng: random.Random, r: int, degree: int, terms: int = 3) -> Form:
    cx = complex_for(r)
    vec: dict = {}
    for _ in range(terms):
        idx = rng.randrange(cx.dims[degree])
        vec[idx] = random_scalar(rng, cx.field, True)
    return Form(cx, degree, vec)


def _field_axioms(rng, cases):
    fails = []
    for i in range(cases):
        K = field(rng.choice((3, 5, 7)))
        x, y, z = (random_scalar(rng, K) for _ in range(3))
        ok = ((x + y) + z == x + (y + z) and (x * y) * z == x * (y * z)
              and x + y == y + x and x * y == y * x and x * (y + z) == x * y + x * z
              and x - x == K.zero and x * K.one == x)
        if x:
            ok = ok and x * x.inverse() == K.one and (y / x) * x == y
        if not ok:
            fails.append({"case": i, "r": K.r, "x": x.to_json(), "y": y.to_json(), "z": z.to_json()})
    return cases, fails


def _rank_nullity(rng, cases):
    fails = []
    for i in range(cases):
        K = field(rng.choice((3, 5)))
        m, n = rng.randint(1, 9), rng.randint(1, 9)
        M = random_matrix(rng, K, m, n, low_rank=rng.random() < 0.5)
        rk, ker = rank(M), kernel(M)
        ok = rk + ker.dim == n and image(M).dim == rk and all(not M.apply(v) for v in ker.basis)
        ok = ok and rank(M.transpose()) == rk
        if not ok:
            fails.append({"case": i, "r": K.r, "matrix": M.to_json_obj()})
    return cases, fails


def _solve_residual(rng, cases):
    fails = []
    for i in range(cases):
        K = field(rng.choice((3, 5)))
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = random_matrix(rng, K, m, n, low_rank=rng.random() < 0.5)
        x = {j: random_scalar(rng, K, True) for j in range(n) if rng.random() < 0.5}
        b = M.apply(x)
        y = solve(M, b)
        ok = y is not None and M.apply(y) == b
        # a right-hand side off the image must be rejected
        im = image(M)
        if im.dim < m:
            off = next(e for e in ({t: K.one} for t in range(m)) if not im.contains(e))
            ok = ok and solve(M, off) is None
        if not ok:
            fails.append({"case": i, "r": K.r, "matrix": M.to_json_obj()})
    return cases, fails


def _leibniz(rng, cases, r=3):
    fails = []
    cx = complex_for(r)
    for i in range(cases):
        k = rng.randint(0, 3)
        l = rng.randint(0, 3 - k)
        x, y = random_form(rng, r, k), random_form(rng, r, l)
        lhs = cx.wedge(x, y).d()
        rhs = cx.wedge(x.d(), y)
        second = cx.wedge(x, y.d())
        rhs = rhs - second if k % 2 else rhs + second
        if lhs != rhs:
            fails.append({"case": i, "x": x.to_json_obj(), "y": y.to_json_obj()})
    return cases, fails


def run_properties(seed: int = 20240601, scale: int = 1) -> dict:
    """Field axioms, rank-nullity, solve residuals and Leibniz on random forms."""
    rng = random.Random(seed)
    plan = [
        ("field axioms", _field_axioms, 600 * scale),
        ("rank-nullity", _rank_nullity, 250 * scale),
        ("solve residual", _solve_residual, 250 * scale),
        ("Leibniz on random forms", _leibniz, 60 * scale),
    ]
    out = {"seed": seed, "properties": {}, "cases": 0}
    for name, fn, n in plan:
        cases, fails = fn(rng, n)
        out["properties"][name] = {"cases": cases, "failures": fails[:5], "pass": not fails}
        out["cases"] += cases
    out["pass"] = all(p["pass"] for p in out["properties"].values())
    return out
