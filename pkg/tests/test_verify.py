from fractions import Fraction

import pytest

from orbichi.complex import build_complex
from orbichi.errors import EvenDimension, HasBoundary, UnclassifiableSingularity
from orbichi.orbifold import LocalGroupLabel, build_orbifold, euler_char, orbifold_boundary
from orbichi.verify import (
    check_main_theorem,
    check_satake,
    prove_by_decomposition,
    report_lines,
    two_orbifold_data,
    two_orbifold_formula,
)

from oracles import D3_T24_CORNERS, TEARDROP, TURNOVER


@pytest.mark.parametrize("name,chi", [("interval", Fraction(1)), ("m1", Fraction(1, 2)),
                                      ("d3_t24", Fraction(1, 24))])
def test_main_theorem(entry, name, chi):
    rep = check_main_theorem(entry(name).orbifold)
    assert rep.passed
    (check,) = rep.checks
    assert check.actual == chi == check.expected


def test_main_theorem_even(entry):
    with pytest.raises(EvenDimension):
        check_main_theorem(entry("teardrop3").orbifold)


def test_main_theorem_detects_failure():
    # a cone point at a corner of the ball is not the quotient of any action,
    # so the identity has no reason to hold and the check must report it
    O = build_orbifold([[0, 1, 2, 3]], labels=[([0], LocalGroupLabel(2, "cyclic"))],
                       boundary_faces=[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    rep = check_main_theorem(O)
    assert not rep.passed


@pytest.mark.parametrize("name", ["s1", "m2", "double_d3_t12"])
def test_satake(entry, name):
    rep = check_satake(entry(name).orbifold)
    assert rep.passed and rep.checks[0].actual == 0


def test_satake_has_boundary(entry):
    with pytest.raises(HasBoundary):
        check_satake(entry("interval").orbifold)


def test_turnover_235(entry):
    O = entry("turnover2_3_5").orbifold
    assert two_orbifold_formula(O) == TURNOVER[(2, 3, 5)] == euler_char(O)


def test_spindle_22(entry):
    assert two_orbifold_formula(entry("spindle2_2").orbifold) == 1


def test_teardrop_formula(entry):
    assert two_orbifold_formula(entry("teardrop7").orbifold) == TEARDROP[7]


def test_corner_reflectors_on_t24_boundary(entry):
    B = orbifold_boundary(entry("d3_t24").orbifold)
    data = two_orbifold_data(B)
    assert data.corners == D3_T24_CORNERS and data.cones == []
    assert two_orbifold_formula(B) == euler_char(B)


def test_named_kind_unclassifiable():
    O = build_orbifold([["a", "b", "c"], ["a", "c", "d"], ["a", "b", "d"], ["b", "c", "d"]],
                       labels=[(["a"], LocalGroupLabel(12, "named:G12"))])
    with pytest.raises(UnclassifiableSingularity):
        two_orbifold_formula(O)


def test_cone_on_mirror_unclassifiable():
    K = build_complex([["a", "b", "c"]])
    from orbichi.orbifold import mirror

    O = mirror(K)
    O.labels[("a",)] = LocalGroupLabel(2, "cyclic")
    O.__dict__.pop("violations", None)
    with pytest.raises(UnclassifiableSingularity):
        two_orbifold_formula(O)


def test_formula_needs_dimension_two(entry):
    with pytest.raises(ValueError):
        two_orbifold_formula(entry("m1").orbifold)


def test_decomposition_manifold(proof):
    rep = proof("ball3")
    assert rep.passed and rep.ledger == []


def test_decomposition_even(entry):
    with pytest.raises(EvenDimension):
        prove_by_decomposition(entry("teardrop3").orbifold)


def test_decomposition_t12(proof):
    rep = proof("d3_t12")
    assert rep.passed and len(rep.ledger) >= 1
    assert "order 12" in rep.ledger[0].stratum
    first = rep.ledger[0].chi
    assert first["O"] == Fraction(1, 12) and first["dO"] == Fraction(1, 6)


def test_report_lines(proof):
    lines = report_lines(proof("m2"))
    assert lines[0].startswith("subject:") and lines[-1] == "result: pass"
