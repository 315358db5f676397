import os
from pathlib import Path

import pytest

import adlv

DATA = Path(os.environ.get("ADLV_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))
X = {"w": [1], "mu": [1]}  # s1 s0 s1 in SL2


@pytest.fixture(scope="module")
def sl2():
    return adlv.Datum.load(DATA / "sl2.json")


def test_group_law(sl2):
    s1, s0 = sl2.simple_reflection(1), sl2.simple_reflection(0)
    assert sl2.multiply(sl2.multiply(s1, s0), s1) == X
    assert sl2.length(X) == 3
    assert sl2.multiply(X, sl2.inverse(X)) == {"w": [], "mu": [0]}


def test_class_polynomials(sl2):
    polys = sorted(p["polynomial"] for p in sl2.class_polynomials(X))
    assert polys == ["q", "q - 1"]
    assert sl2.class_polynomials(X, seed=9) == sl2.class_polynomials(X)


def test_lp_and_newton(sl2):
    assert sl2.lp(X) == [[]]
    assert sl2.newton(X) == ["0"]


def test_classify_and_report(sl2):
    c = sl2.classify(X)
    assert c["positive_coxeter"] and c["characterization"]
    report = sl2.report(X)
    assert report["interval_matches"] and report["tree_matches"]
    assert sorted((r["type_I"], r["type_II"]) for r in report["classes"]) == [(0, 1), (1, 0)]


def test_not_positive_coxeter_raises():
    sl3 = adlv.Datum.load(DATA / "sl3.json")
    w0 = {"w": [1, 2, 1], "mu": [0, 0]}
    assert not sl3.classify(w0)["positive_coxeter"]
    with pytest.raises(adlv.ComputationError):
        sl3.report(w0)


def test_from_spec_and_bad_input():
    gl3 = adlv.Datum.from_spec({"type": "A2", "lattice_basis": "gl"})
    assert gl3.rank == 2 and gl3.weyl_order == 6
    assert len([t for t in gl3.omega_elements(1)]) == 7
    with pytest.raises(ValueError):
        gl3.length({"w": [1], "mu": [0]})


def test_scan_is_consistent():
    sp4 = adlv.Datum.load(DATA / "sp4.json")
    for x in sp4.elements(3):
        assert sp4.analyze(x)["consistent"], x


def test_selftest_single_criterion():
    [(cid, ok, line)] = adlv.selftest(7, str(DATA))
    assert cid == 7 and ok and "PASS" in line
