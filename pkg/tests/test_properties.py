"""Randomized checks driven by hypothesis (1000+ cases in total)."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qsl2.cyclotomic import field
from qsl2.derham import Form, complex_for
from qsl2.linalg import LinOp, image, kernel, rank, solve

FIELDS = {r: field(r) for r in (3, 5, 7)}
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw, r=None):
    r = r or draw(st.sampled_from(sorted(FIELDS)))
    K = FIELDS[r]
    return K.from_coefficients(draw(st.lists(rationals, min_size=K.phi, max_size=K.phi)))


@st.composite
def triples(draw):
    r = draw(st.sampled_from(sorted(FIELDS)))
    return tuple(draw(scalars(r)) for _ in range(3))


@settings(max_examples=400, deadline=None)
@given(triples())
def test_field_axioms(xyz):
    x, y, z = xyz
    K = x.field
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x and x + y == y + x
    assert x + K.zero == x and x * K.one == x
    if x:
        assert x * x.inverse() == K.one


@settings(max_examples=200, deadline=None)
@given(scalars())
def test_scalar_json_round_trip(x):
    assert x.field.parse(x.to_json()) == x


@st.composite
def matrices(draw, r=3, max_dim=7):
    K = FIELDS[r]
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    small = st.integers(-3, 3)
    rows = []
    for _ in range(m):
        row = {}
        for j in range(n):
            if draw(st.booleans()):
                c = K.from_coefficients([Fraction(draw(small)), Fraction(draw(small))])
                if c:
                    row[j] = c
        rows.append(row)
    return LinOp(m, n, rows, K)


@settings(max_examples=250, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    ker = kernel(M)
    assert ker.dim + rank(M) == M.ncols
    assert image(M).dim == rank(M) == rank(M.transpose())
    assert all(not M.apply(v) for v in ker.basis)


@settings(max_examples=200, deadline=None)
@given(matrices(), st.data())
def test_solve_residual(M, data):
    K = M.field
    x = {j: K.from_int(data.draw(st.integers(-4, 4))) for j in range(M.ncols)}
    x = {j: c for j, c in x.items() if c}
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


@st.composite
def form_pairs(draw):
    cx = complex_for(3)
    k = draw(st.integers(0, 3))
    l = draw(st.integers(0, 3 - k))

    def form(deg):
        idx = draw(st.lists(st.integers(0, cx.dims[deg] - 1), min_size=1, max_size=3))
        return Form(cx, deg, {i: cx.field.from_int(draw(st.integers(1, 5))) for i in idx})
    return form(k), form(l)


@settings(max_examples=60, deadline=None)
@given(form_pairs())
def test_graded_leibniz(pair):
    x, y = pair
    cx = x.cx
    rhs = cx.wedge(x.d(), y)
    second = cx.wedge(x, y.d())
    rhs = rhs - second if x.degree % 2 else rhs + second
    assert cx.wedge(x, y).d() == rhs
