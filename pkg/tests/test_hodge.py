import json

import pytest

from qsl2.cyclotomic import field
from qsl2.hodge import (build_eps, build_metric, calibrated_c0, compare_eps, compare_star_tables,
                        degenerate_lambda, derived_star_table, hodge_for, reference_eps,
                        star_table_json)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_metric(r):
    m = build_metric(r)
    K = field(r)
    assert m.eta[1][2] == K.one and m.eta[2][1] == K.q_power(2)
    assert m.wedge() == {}
    assert m.is_nondegenerate()


def test_special_lambda_at_3():
    K = field(3)
    lam = build_metric(3).lam
    assert lam == 2 * K.q / (1 + K.q)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_degenerate_lambda_is_singular(r):
    assert not build_metric(r, degenerate_lambda(r)).is_nondegenerate()


@pytest.mark.parametrize("r", [3, 5, 7])
def test_eps_values(r):
    eps, K = build_eps(r), field(r)
    assert eps[(1, 2, 3, 4)] == K.one
    assert eps.get((2, 2, 2, 2), K.zero) == K.zero
    assert eps[(4, 3, 2, 1)] == K.one
    assert len(eps) == 34


@pytest.mark.parametrize("r", [3, 5, 7])
def test_eps_against_reference_list(r):
    """Same support; two entries carry the opposite sign to the reference list."""
    cmp = compare_eps(r)
    assert cmp["support_matches"]
    assert cmp["value_mismatches"] == ["1114", "1141"]
    mu = field(r).mu()
    assert build_eps(r)[(1, 1, 4, 1)] == -mu
    assert reference_eps(r)[(1, 1, 4, 1)] == mu


@pytest.mark.parametrize("r", [5, 7])
def test_star_table_equals_derived_star(r):
    assert compare_star_tables(r)["agree"]


def test_derived_star_needs_nonzero_q3():
    with pytest.raises(ValueError):
        derived_star_table(3)


def test_calibration_is_one():
    assert calibrated_c0(3) == field(3).one
    assert calibrated_c0(5) == field(5).one


def test_star_examples(h3):
    cx = h3.cx
    P = cx.parse
    assert h3.star_form(P("e_b")) == P("-e_abd")
    b = cx.field.q_int(2, 2)
    expected = P("2 e_ad + mu e_bc") * (cx.field.q_power(2) / b)
    assert h3.star_form(P("e_bc")) == expected
    assert h3.star_form(P("e_bd")) == P("e_bd")
    assert h3.star_form(P("e_cd")) == P("-e_cd")
    assert h3.star_form(P("1")) == P("Top")


@pytest.mark.parametrize("r", [3, 5])
def test_star_squared_and_delta_squared(r):
    h = hodge_for(r)
    assert all(h.star_squared_is_identity().values())
    assert all(h.delta_squared_is_zero().values())


def test_selfdual_split(h3):
    plus, minus = h3.selfdual_split()
    assert plus.dim == 3 and minus.dim == 3
    assert (plus + minus).dim == 6
    ext = h3.cx.ext
    assert plus.contains(ext.form(2, {"e_bd": 1}).coeffs)
    assert minus.contains(ext.form(2, {"e_cd": 1}).coeffs)


def test_box_on_functions(h3):
    P = h3.cx.parse
    assert h3.box(P("a")).is_zero()
    assert h3.box(P("a^2")) == P("6 (q + 1) a^2")
    assert h3.box(P("b c - 1")) == P("6 (q + 1) (b c - 1)")
    assert h3.box(P("d b^2")).is_zero()


def test_theta_coexact_and_harmonic(h3):
    theta = h3.cx.named("theta")
    assert h3.coexact(1).contains(theta.vec)
    assert h3.is_harmonic(theta)


def test_report_r3(h3):
    rep = h3.report()
    assert rep["harmonic"] == [1, 16, 30, 16, 1]
    assert rep["ker_box"] == [13, 33, 40, 33, 13]


def test_report_r5(h5):
    assert h5.report()["harmonic"] == [1, 36, 70, 36, 1]


def test_harmonic_certificates(h3):
    cert = h3.harmonic_certificates()
    assert cert["pass"], [k for k, v in cert["checks"].items() if not v]


def test_spin0_spectrum(h3):
    rep = h3.spin0_spectrum_report()
    assert rep["pass"]
    assert rep["kernel_dim"] == 13
    assert rep["charpoly_degree"] == 27
    assert rep["witness"] is not None
    assert rep["witness"]["ker"] < rep["witness"]["ker_squared"]
    K = field(3)
    found = {tuple(e["eigenvalue"]): e["algebraic_multiplicity"] for e in rep["eigenvalues"]}
    assert found == {tuple(K.zero.to_json()): 18, tuple((6 * (K.q + 1)).to_json()): 9}


def test_star_table_export():
    obj = json.loads(star_table_json(3))
    degs = [b["deg"] for b in obj["tables"]]
    assert degs == [0, 1, 2, 3, 4]
    assert all(b["op"] == "star" for b in obj["tables"])
