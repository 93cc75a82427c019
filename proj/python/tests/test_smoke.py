import pytest

import kdvsym

OPERATOR = (
    "C0*d/dt + C1*d/dx + mu*C2*exp(-mu*v/(3*lbd))*u*d/du"
    " + (-3*lbd*C2*exp(-mu*v/(3*lbd)) + C3)*d/dv"
)


def test_simplify_is_canonical():
    assert kdvsym.simplify("u_x*u*2") == "2*u*u_x"
    assert kdvsym.simplify("(u^2-1)/(u-1)") == "u+1"
    assert kdvsym.simplify("lbd*u_xx", ["lbd"], latex=True) == "\\lambda u_{xx}"


def test_simplify_reports_positions():
    with pytest.raises(kdvsym.ParseError):
        kdvsym.simplify("u + foo")


def test_derive_potential_matches():
    report = kdvsym.derive("potential")
    assert report["exit_code"] == 0
    assert report["match"]["full_match"] is True
    assert report["config"]["seed"] == 1


def test_derive_scalar_is_a_localized_discrepancy():
    report = kdvsym.derive("scalar")
    assert report["exit_code"] == 1
    bad = [e for e in report["match"]["entries"] if e["status"] != "matched"]
    assert len(bad) == 1
    assert bad[0]["status"] == "extra-in-generated"


def test_check_kdv_and_worked_example():
    assert kdvsym.check("d/dx", "kdv")["symmetry"] == "yes"
    galilean = kdvsym.check("-3*t*d/dx + d/du", "kdv")
    assert galilean["exit_code"] == 1
    assert galilean["report"][0]["monomial"] == "u_x"
    example = kdvsym.check(OPERATOR, "paper-example", lbd=9, mu=3)
    assert example["symmetry"] == "yes"
    assert example["classification"]["kind"] == "PurePotential"


def test_compare_and_errors():
    assert kdvsym.compare(1)["all_zero"] is True
    assert kdvsym.compare(3)["inequivalence_witness"] is True
    with pytest.raises(kdvsym.KdvsymError) as info:
        kdvsym.check("d/dx", "no-such-system")
    assert info.value.code == 2


def test_reports_are_reproducible():
    assert kdvsym.run(["derive", "augmented"]) == kdvsym.run(["derive", "augmented"])
