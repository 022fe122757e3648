import random

import pytest

from qsl2.derham import complex_for, named_cocycles
from qsl2.exterior import DIMS
from qsl2.linalg import rank
from qsl2.properties import random_form


def test_dimensions(cx3):
    assert list(cx3.dims) == [27, 108, 162, 108, 27]
    assert list(complex_for(5).dims) == [125 * n for n in DIMS]


@pytest.mark.parametrize("r", [3, 5])
def test_d_squared_zero(r):
    cx = complex_for(r)
    for k in range(3):
        assert (cx.d_matrix(k + 1) @ cx.d_matrix(k)).is_zero()


@pytest.mark.parametrize("r", [3, 5])
def test_leibniz_matrix_equals_commutator(r):
    cx = complex_for(r)
    for k in range(4):
        assert cx.d_matrix(k) == cx.d_matrix_commutator(k)


def test_ranks_at_r3(cx3):
    assert rank(cx3.d_matrix(0)) == 26
    assert cx3.closed(0).dim == 1
    assert cx3.dims[4] - rank(cx3.d_matrix(3)) == 1


def test_table_rows(cx3, cx5):
    assert cx3.report() == {"r": 3, "all": [27, 108, 162, 108, 27],
                            "closed": [1, 30, 84, 82, 27], "exact": [0, 26, 78, 78, 26]}
    rep = cx5.report()
    assert rep["closed"] == [1, 128, 378, 376, 125]
    assert rep["exact"] == [0, 124, 372, 372, 124]


@pytest.mark.parametrize("r", [3, 5])
def test_cohomology_and_euler_characteristic(r):
    cx = complex_for(r)
    h = [cx.cohomology(k)["dim"] for k in range(5)]
    assert h == [1, 4, 6, 4, 1]
    assert sum((-1) ** k * x for k, x in enumerate(h)) == 0
    assert sum((-1) ** k * x for k, x in enumerate(cx.dims)) == 0


def test_cohomology_representatives(cx3):
    h0 = cx3.cohomology(0)
    assert h0["dim"] == 1 and h0["canonical_basis"] == [cx3.parse("1")]
    for k in range(1, 5):
        reps = cx3.cohomology(k)["canonical_basis"]
        assert all(cx3.is_closed(w) for w in reps)
        assert cx3.independent_mod_exact(reps)


def test_theta_closed_not_exact(cx3):
    v = cx3.verify_named("theta")
    assert v["closed"] and not v["exact"]


@pytest.mark.parametrize("r", [3, 5])
def test_named_cocycles(r):
    cert = complex_for(r).verify_named_set()
    assert cert["pass"], cert


def test_named_h1_basis(cx3):
    forms = [cx3.named(n) for n in ("theta", "h1", "h2", "n")]
    assert cx3.independent_mod_exact(forms)
    assert cx3.span(forms, 1).dim == 4


def test_named_catalog_keeps_literal_q4():
    assert "q^4" in named_cocycles(3)["m6"][1]


@pytest.mark.parametrize("r", [3, 5])
def test_theta_sequence(r):
    cert = complex_for(r).theta_complex_check()
    assert cert["pass"]
    assert cert["ranks"] == [1, 3, 3, 1]


def test_theta_images(cx3):
    cert = cx3.theta_images_check()
    assert cert["pass"], cert["checks"]


def test_graded_leibniz_random_pairs(cx3):
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(0, 3)
        l = rng.randint(0, 3 - k)
        x, y = random_form(rng, 3, k), random_form(rng, 3, l)
        rhs = cx3.wedge(x.d(), y)
        second = cx3.wedge(x, y.d())
        rhs = rhs - second if k % 2 else rhs + second
        assert cx3.wedge(x, y).d() == rhs


def test_form_algebra(cx3):
    P = cx3.parse
    w = P("e_b a + q e_c d")
    assert w * cx3.alg.b == P("e_b a b + q e_c d b")
    assert (w - w).is_zero()
    assert (w ^ P("theta")) == cx3.wedge(w, P("theta"))
    assert cx3.from_json_obj(w.to_json_obj()) == w


def test_report_json():
    import json
    from qsl2.derham import report_json
    assert json.loads(report_json(3))["closed"] == [1, 30, 84, 82, 27]
