"""Verification suites: each bundles the certificates behind one reproducibility target.

A suite runs at a fixed set of r values.  ``run_suite`` returns a JSON-ready
dict whose ``pass`` field is the conjunction of all its checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .derham import complex_for
from .exterior import DIMS, exterior
from .hodge import compare_star_tables, hodge_for
from .linalg import kernel
from .maxwell import maxwell_for
from .properties import run_properties

__all__ = ["Suite", "SUITES", "EXPECTED", "run_suite", "suites_for"]

# reference counts, indexed by r
EXPECTED = {
    "all": {3: [27, 108, 162, 108, 27], 5: [125, 500, 750, 500, 125]},
    "closed": {3: [1, 30, 84, 82, 27], 5: [1, 128, 378, 376, 125]},
    "exact": {3: [0, 26, 78, 78, 26], 5: [0, 124, 372, 372, 124]},
    "harmonic": {3: [1, 16, 30, 16, 1], 5: [1, 36, 70, 36, 1]},
    "ker_box": {3: [13, 33, 40, 33, 13]},
    "r7": {"closed": [346, 1032, 1030], "exact": [342, 1026, 1026]},
    "maxwell": {
        3: {"mod_exact": [28, 20, 20, 7, 16, 4, 8, 8, 13],
            "raw": [54, 32, 32, 19, 42, 30, 20, 20, 13], "sources": [54, 40, 5]},
        5: {"mod_exact": [68, 52, 52, 19, 36, 4, 20, 20, 33],
            "raw": [192, 84, 84, 51, 160, 128, 52, 52, 33], "sources": [308, 216, 17]},
    },
}


def _result(checks: dict, **details) -> dict:
    return {"checks": checks, **details, "pass": all(checks.values())}


def exterior_dims(r: int) -> dict:
    ext = exterior(r)
    dims = [1, 4] + [4 ** n - kernel(ext.braided_factorial(n)).dim for n in (2, 3, 4)]
    return _result({"dims 1,4,6,4,1 via ker A_n": dims == [1, 4, 6, 4, 1]
                    and list(DIMS) == dims}, dims=dims)


def table_forms(r: int) -> dict:
    rep = complex_for(r).report()
    hrep = hodge_for(r).report()
    checks = {}
    for key in ("all", "closed", "exact", "harmonic", "ker_box"):
        want = EXPECTED[key].get(r)
        if want is None:
            continue
        got = rep.get(key, hrep.get(key))
        checks[f"{key} = {want}"] = got == want
    return _result(checks, report={**rep, "harmonic": hrep["harmonic"], "ker_box": hrep["ker_box"]})


def r7_spot(r: int) -> dict:
    cx = complex_for(r)
    closed = [cx.closed(k).dim for k in (1, 2, 3)]
    exact = [cx.exact(k).dim for k in (1, 2, 3)]
    want = EXPECTED["r7"]
    return _result({"ker d_1..d_3 = 346, 1032, 1030": closed == want["closed"],
                    "im d_0..d_2 = 342, 1026, 1026": exact == want["exact"]},
                   closed=closed, exact=exact)


def cohomology(r: int) -> dict:
    cx = complex_for(r)
    h = [cx.cohomology_dim(k) for k in range(5)]
    named = cx.verify_named_set()
    return _result({"dim H^k = dim Lambda^k": h == list(DIMS),
                    "named representatives": named["pass"]}, cohomology=h, named=named)


def theta_sequence(r: int) -> dict:
    cx = complex_for(r)
    seq = cx.theta_complex_check()
    checks = {"theta^ exact on cohomology": seq["pass"]}
    out = {"ranks": seq["ranks"]}
    if r == 3:
        img = cx.theta_images_check()
        checks.update(img["checks"])
    return _result(checks, **out)


def structure(r: int) -> dict:
    cx, h, ext = complex_for(r), hodge_for(r), exterior(r)
    checks = {}
    for k in range(3):
        checks[f"d_{k + 1} d_{k} = 0"] = (cx.d_matrix(k + 1) @ cx.d_matrix(k)).is_zero()
    checks["Leibniz d = commutator d"] = all(cx.d_matrix(k) == cx.d_matrix_commutator(k)
                                              for k in range(4))
    for k, ok in h.star_squared_is_identity().items():
        checks[f"star^2 = id on degree {k}"] = ok
    for k, ok in h.delta_squared_is_zero().items():
        checks[f"delta^2 = 0 from degree {k}"] = ok
    p12, p23 = ext.braid_at(3, 0), ext.braid_at(3, 1)
    checks["braid relation"] = p12 @ p23 @ p12 == p23 @ p12 @ p23
    for n in (2, 3, 4):
        checks[f"ker A_{n} = ker of wedge surjection"] = (
            kernel(ext.braided_factorial(n)) == kernel(ext.surjection_matrix(n)))
    if r > 3:
        checks["explicit star = star from eps and eta"] = compare_star_tables(r)["agree"]
    return _result(checks)


def harmonic(r: int) -> dict:
    return hodge_for(r).harmonic_certificates()


def spin0(r: int) -> dict:
    return hodge_for(r).spin0_spectrum_report()


def table_maxwell(r: int) -> dict:
    rep = maxwell_for(r).report()
    want = EXPECTED["maxwell"][r]
    rows = rep["zero_modes"]
    checks = {
        "zero modes mod exact": [x["dim"] for x in rows] == want["mod_exact"],
        "zero modes raw": [x["raw"] for x in rows] == want["raw"],
        "sources": list(rep["sources"].values()) == want["sources"],
    }
    return _result(checks, report=rep)


def sources(r: int) -> dict:
    M = maxwell_for(r)
    sol = M.sourced_solution_certificates()
    em = M.em_field_directions()
    return _result({**sol["checks"], **em["checks"]})


def patching(r: int) -> dict:
    M = maxwell_for(r)
    pc = M.patching_certificates()
    checks = {k: v["pass"] for k, v in pc.items() if isinstance(v, dict) and "pass" in v}
    return _result(checks, details=pc)


def properties(r: int) -> dict:
    rep = run_properties()
    checks = {k: v["pass"] for k, v in rep["properties"].items()}
    checks["at least 1000 cases"] = rep["cases"] >= 1000
    return _result(checks, cases=rep["cases"], properties=rep["properties"])


def named_modes(r: int) -> dict:
    """Reference zero-mode lists, checked literally; the corrected lists are reported alongside."""
    M = maxwell_for(r)
    reference, fixed = M.named_mode_certificates(), M.named_mode_certificates(corrected=True)
    checks = {f"reference {k}": all(v.values()) for k, v in reference["modes"].items()}
    checks.update({f"reference basis: {k}": v for k, v in reference["bases"].items()})
    return _result(checks, corrected_pass=fixed["pass"], corrected_failing=fixed["failing_modes"])


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int | None
    rs: tuple
    run: Callable[[int], dict]
    slow_rs: tuple = ()
    description: str = ""


SUITES = {s.name: s for s in [
    Suite("exterior-dims", 1, (3, 5), exterior_dims, (7,), "dim Lambda^k from ker A_n"),
    Suite("table-r3", 2, (3,), table_forms, (), "all/closed/exact/harmonic/ker box at r = 3"),
    Suite("table-r5", 3, (5,), table_forms, (), "closed/exact/harmonic at r = 5"),
    Suite("r7-spot", 4, (), r7_spot, (7,), "kernel and image dims of d at r = 7"),
    Suite("cohomology", 5, (3, 5), cohomology, (), "H^k dims and named representatives"),
    Suite("theta-sequence", 6, (3, 5), theta_sequence, (), "theta^ on cohomology"),
    Suite("structure", 7, (3, 5), structure, (), "d^2, star^2, delta^2, braid relation"),
    Suite("harmonic", 8, (3,), harmonic, (), "harmonic representatives and coexact theta"),
    Suite("spin0", 9, (3,), spin0, (), "spectrum of box on functions"),
    Suite("maxwell-table", 10, (3, 5), table_maxwell, (), "zero modes and sources"),
    Suite("sources", 11, (3,), sources, (), "explicit sourced solutions"),
    Suite("patching", 12, (3,), patching, (), "gauge and duality patching identities"),
    Suite("properties", 13, (0,), properties, (), "randomized property checks"),
    Suite("named-modes", None, (3,), named_modes, (), "reference zero-mode lists, literal"),
]}


def suites_for(name: str) -> list[Suite]:
    """``all`` means every suite tied to a reproducibility target."""
    if name == "all":
        return [s for s in SUITES.values() if s.criterion is not None]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name]]


def run_suite(suite: Suite, r: int | None = None, slow: bool = False) -> dict:
    """Run at ``r`` (or every applicable r when None).  Empty results mean not applicable."""
    rs = suite.rs + (suite.slow_rs if slow else ())
    if r is not None:
        rs = tuple(x for x in rs if x in (r, 0))
    results = {}
    for x in rs:
        results["any" if x == 0 else str(x)] = suite.run(x)
    return {"suite": suite.name, "criterion": suite.criterion, "results": results,
            "pass": bool(results) and all(v["pass"] for v in results.values())}
