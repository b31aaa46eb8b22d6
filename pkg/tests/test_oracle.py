from fractions import Fraction

import pytest

import fmcoh.oracle as oracle
from fmcoh.chern import DomainError, WitIndex, WitResult, phi_a, psi_a
from fmcoh.oracle import (
    SUITES,
    GridSpec,
    VerificationReport,
    exhaustive_walls,
    geometric_matrices,
    run_suite,
)
from fmcoh.systems import SystemType

SMALL = GridSpec(r_max=6, d_max=6, k_max=4, a_max=3, entry_max=3)


def test_grid_parse():
    assert GridSpec.parse("8,9,3,2,4") == GridSpec(8, 9, 3, 2, 4)
    with pytest.raises(ValueError):
        GridSpec.parse("1,2,3")
    with pytest.raises(DomainError):
        GridSpec.parse("0,2,3,4,5")


def test_geometric_matrices():
    mats = list(geometric_matrices(10))
    assert len(mats) == 485
    assert len(set(m.entries() for m in mats)) == 485
    assert all(m.beta > 0 and m.alpha * m.delta - m.beta * m.gamma == 1 for m in mats)
    assert phi_a(3) in mats


def test_geometric_matrices_small_by_hand():
    # beta = 1 forces gamma = alpha delta - 1, so alpha delta is 0 or 1
    got = sorted(m.entries() for m in geometric_matrices(1))
    assert got == [
        (-1, 1, -1, 0), (-1, 1, 0, -1), (0, 1, -1, -1), (0, 1, -1, 0),
        (0, 1, -1, 1), (1, 1, -1, 0), (1, 1, 0, 1),
    ]


def test_quasi_inverse_one_by_hand():
    p, q = psi_a(1), phi_a(1)
    assert (p @ q).entries() == (-1, 0, 0, -1)
    assert run_suite("quasi_inverse", GridSpec(a_max=5)).checked == 10


def test_g0_pair_by_hand():
    # (r,d,k,a) = (2,3,1,1): transform rank 5, subtype (5,3,1) pulls back to (2,3,1)
    r, d, k, a, r_hat, kp = 2, 3, 1, 1, 5, 1
    d_hat = d * r_hat // (r + a * d)
    rp = r_hat - a * d_hat
    assert (d_hat, rp) == (3, 2)
    assert k * r_hat - kp * (r + a * d) == 0 and k * rp - kp * r == 0


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_on_small_grid(name):
    rep = run_suite(name, SMALL)
    assert rep.passed, rep.failures[:5]
    assert rep.checked > 0


def test_report_record_and_summary():
    rep = VerificationReport("demo", checked=3)
    rep.fail(1, 2, 3)
    rep.fail(0, 1, 2)
    rec = rep.to_record()
    assert rec["passed"] is False
    assert rec["failures"] == [["0", "1", "2"], ["1", "2", "3"]]
    assert rep.summary().startswith("FAIL demo: 3 checked, 2 failures")


def test_exhaustive_walls_2_3_1():
    walls = exhaustive_walls(SystemType(2, 3, 1), Fraction(3))
    assert {w: sorted(v) for w, v in walls.items()} == {Fraction(1): [(1, 1, 1), (1, 2, 0)]}


def test_trichotomy_detects_a_broken_classifier(monkeypatch):
    real = oracle.wit_index

    def broken(m, ch):
        res = real(m, ch)
        if res.index is WitIndex.WIT1_TORSION:
            return WitResult(WitIndex.IT0, res.transformed)
        return res

    monkeypatch.setattr(oracle, "wit_index", broken)
    rep = oracle.verify_trichotomy(SMALL)
    assert not rep.passed
    assert all(f[3] == "IT0" for f in rep.failures)


def test_dualpath_detects_dropped_witness(monkeypatch):
    real = oracle.wall_candidates

    def lossy(s, upper="auto"):
        ws = real(s, upper)
        if not ws.walls:
            return ws
        w = ws.walls[0]
        witnesses = dict(ws.witnesses)
        witnesses[w] = witnesses[w][1:]
        return type(ws)(ws.system, ws.upper, ws.walls, witnesses)

    monkeypatch.setattr(oracle, "wall_candidates", lossy)
    assert not oracle.verify_walls_dualpath(GridSpec(r_max=4, d_max=4, k_max=3)).passed
