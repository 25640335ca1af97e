import os
from fractions import Fraction
from pathlib import Path

import pytest

import pdakit

FIXTURES = Path(os.environ.get("PDAKIT_FIXTURE_DIR", Path(__file__).resolve().parent.parent / "fixtures"))


def test_construct_and_params():
    arr = pdakit.construct("special", 3, 2, 2)
    assert (arr.rows, arr.cols) == (18, 9)
    p = pdakit.params(arr)
    assert (p["K"], p["F"], p["Z"], p["S"]) == (9, 18, 12, 9)
    assert p["memory_ratio"] == Fraction(2, 3)
    assert p["rate"] == Fraction(1, 2)
    assert pdakit.verify(arr)["valid"]


def test_fixture_round_trip():
    text = (FIXTURES / "mn_4_2.pda").read_text()
    arr = pdakit.parse(text)
    assert pdakit.parse(pdakit.emit(arr)) == arr
    assert arr == pdakit.construct_mn(4, 2)
    assert pdakit.equivalent(arr, pdakit.canonicalize(arr))


def test_verify_reports_violations():
    bad = pdakit.PdaArray([[0, 1], [1, 1]])
    report = pdakit.verify(bad)
    assert not report["valid"]
    assert "C3a" in {v["condition"] for v in report["violations"]}


def test_theorem_params_are_python_ints():
    p = pdakit.theorem_params("special", 3, 2, 134)
    assert p["K"] == 405
    assert p["F"] == 2 * 3**134


def test_simulate_trace():
    arr = pdakit.construct_mn(4, 2)
    out = pdakit.simulate(arr, [1, 2, 3, 4], files=6)
    assert out["success"]
    assert out["transmissions"] == 4
    assert out["bytes_sent"] == 4 * 64
    assert "terms=(1,4);(2,2);(3,1)" in out["trace"][0]


def test_compare_and_enumerate():
    r = pdakit.compare("yctc", 20, 11, 0.5)
    assert r["rate_ratio_bound"] == pytest.approx(0.5, rel=1e-12)
    assert r["subpacket_ratio_bound"] == Fraction(1, 10)
    rows = pdakit.enumerate_schemes(405, "2/3")
    assert rows == pdakit.enumerate_schemes(405, Fraction(2, 3))
    assert any(r["family"] == "special" and r["q"] == 3 and r["m"] == 134 for r in rows)
    lo, hi = pdakit.estimate_m_range(48.0, 2, 2)
    assert lo < 4 < hi


def test_errors():
    with pytest.raises(pdakit.DomainError):
        pdakit.construct("general", 3, 2, 2, t=2)
    with pytest.raises(pdakit.CapacityError):
        pdakit.construct("special", 3, 2, 134)
    with pytest.raises(pdakit.ParseError):
        pdakit.parse("4 6 3 4\n* * 1\n")
    with pytest.raises(ValueError):
        pdakit.construct("nope", 3, 2, 2)
