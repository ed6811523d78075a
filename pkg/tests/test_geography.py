"""Exact lattice arithmetic tests."""

from fractions import Fraction

import pytest

from fourcurv.geography import (
    CSV_HEADER,
    GeoPoint,
    report,
    scan_csv,
    scan_rows,
    self_dual_lattice_obstruction,
)


def test_ball_quotient_line():
    rep = report(GeoPoint(3, 1))
    assert rep.bmy and rep.bmy_equality
    assert rep.c1sq == 9
    assert rep.gromov_luck


def test_fifteen_eighths_boundary_is_excluded():
    rep = report(GeoPoint(15, 8))
    assert not rep.einstein_nonpos_strict  # 8*15 == 15*8: strict bound fails
    assert rep.gromov_luck
    assert report(GeoPoint(16, 8)).einstein_nonpos_strict


def test_cp2_blowup_twice():
    rep = report(GeoPoint(5, -1))
    assert rep.c1sq == 7
    assert not rep.both_orientations_complex_possible


def test_negative_tau_symmetry():
    for chi in range(0, 12):
        for tau in range(-chi, chi + 1):
            a = report(GeoPoint(chi, tau))
            b = report(GeoPoint(chi, -tau))
            assert a.gromov_luck == b.gromov_luck
            assert a.einstein_nonpos_strict == b.einstein_nonpos_strict
            assert a.both_orientations_complex_possible == b.both_orientations_complex_possible
            # Todd relation: c1sq(flip) - c1sq = -6 tau
            assert b.c1sq - a.c1sq == -6 * tau
            assert a.both_orientations_complex_possible == (tau % 2 == 0)


def test_strict_bound_implies_gromov_luck():
    for chi in range(0, 40):
        for tau in range(-chi, chi + 1):
            rep = report(GeoPoint(chi, tau))
            if rep.einstein_nonpos_strict:
                assert rep.gromov_luck
            if rep.bmy_equality:
                assert rep.bmy


def test_lattice_obstruction():
    out = self_dual_lattice_obstruction(True)
    assert out.applicable
    assert out.tau == Fraction(16, 7)
    assert out.chi == Fraction(30, 7)
    assert out.integral is False
    # consistency: tau = 16/7 sits on both lines
    assert out.chi == 2 + out.tau
    assert out.chi == Fraction(15, 8) * out.tau


def test_lattice_obstruction_not_applicable():
    out = self_dual_lattice_obstruction(False)
    assert not out.applicable
    assert out.to_dict()["applicable"] is False


def test_scan_zero():
    rows = list(scan_rows(0))
    assert len(rows) == 1
    p, rep = rows[0]
    assert (p.chi, p.tau) == (0, 0)
    assert rep.gromov_luck


def test_scan_examples():
    table = {(p.chi, p.tau): rep for p, rep in scan_rows(4)}
    assert table[(4, 2)].einstein_nonpos_strict  # 32 > 30
    assert table[(3, 3)].gromov_luck
    assert not table[(3, 3)].bmy  # 3 < 9


def test_scan_rejects_negative():
    with pytest.raises(ValueError):
        list(scan_rows(-1))


def test_scan_csv_deterministic():
    a = scan_csv(6)
    b = scan_csv(6)
    assert a == b
    lines = a.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert lines[1] == "0,0,true,false,true,true,0,true"
    # row count: sum over chi of (2 chi + 1)
    assert len(lines) - 1 == sum(2 * chi + 1 for chi in range(7))


def test_geopoint_integrality():
    with pytest.raises(TypeError):
        GeoPoint(1.5, 0)
