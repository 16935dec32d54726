import json

import pytest

from dimershuffle.serialize import dumps
from dimershuffle.series import TruncatedSeries, formula_Z
from dimershuffle.solid import YoungDiagram
from dimershuffle.verify import (
    CHECK_IDS,
    CheckReport,
    check_block_count,
    check_cauchy,
    check_eq_general_n,
    check_involution,
    check_lemma4,
    check_macmahon,
    check_one_leg,
    check_phi,
    check_shuffle_recursion,
    check_theorem1,
    check_zx,
    compare,
    default_reports,
)


def test_length_one_check_small():
    rep = check_theorem1(5)
    assert rep.equal and rep.first_discrepancy is None
    assert rep.lhs.coeff(1, 1) == 2


@pytest.mark.parametrize(
    "rep",
    [
        lambda: check_eq_general_n(2, 4),
        lambda: check_shuffle_recursion(1, 2, 4),
        lambda: check_zx(2, 4),
        lambda: check_macmahon(5),
        lambda: check_one_leg(YoungDiagram((2, 1)), 6),
        lambda: check_cauchy(1, 6),
    ],
)
def test_series_checks_pass(rep):
    r = rep()
    assert r.equal, r.summary()


@pytest.mark.parametrize(
    "rep",
    [
        lambda: check_involution(2, 4),
        lambda: check_block_count(2, 4),
        lambda: check_lemma4(1, 4, 2),
        lambda: check_phi(3),
    ],
)
def test_property_checks_pass(rep):
    r = rep()
    assert r.equal and r.violations == 0 and r.checked > 0


def test_block_product_check_counts_cases():
    assert check_lemma4(1, 10, 4).checked == 5 * 19 * 19


def test_mutated_rhs_is_located():
    lhs = formula_Z(1, 4)
    bumped = lhs + TruncatedSeries({(2, 1): 1}, 4)
    rep = compare("mutant", {"degree": 4}, lhs, bumped)
    assert not rep.equal
    assert rep.first_discrepancy == ((2, 1), 4, 5)
    assert rep.summary().startswith("FAIL mutant degree=4 (first discrepancy at q0^2 q1^1: 4 vs 5)")


def test_discrepancy_in_json():
    lhs = formula_Z(1, 3)
    rep = compare("mutant", {}, lhs, lhs + TruncatedSeries({(0, 0): 1}, 3))
    doc = rep.to_json()
    assert doc["first_discrepancy"] == {"monomial": [0, 0], "lhs": "1", "rhs": "2"}


def test_json_omits_elapsed_unless_asked():
    rep = check_macmahon(3)
    assert "elapsed" not in rep.to_json()
    assert rep.to_json(include_elapsed=True)["elapsed"] >= 0


def test_property_report_json():
    rep = CheckReport("p", {"n": 1}, False, checked=3, violations=1, examples=[("bad", 1)])
    doc = rep.to_json()
    assert doc["violations"] == 1 and doc["examples"] == ["('bad', 1)"]
    assert "(1 violations in 3 cases)" in rep.summary()


def test_reports_do_not_depend_on_threads():
    a = [r.to_json() for r in default_reports("general-n", 4, 2, threads=1)]
    b = [r.to_json() for r in default_reports("general-n", 4, 2, threads=3)]
    assert dumps(a) == dumps(b)
    assert json.loads(dumps(a))[0]["parameters"] == {"n": 2, "degree": 4}


def test_registry_runs_every_named_check():
    for cid in CHECK_IDS:
        if cid in ("all", "theorem1", "general-n", "shuffle-recursion", "one-leg", "cauchy", "lemma4"):
            continue
        reps = default_reports(cid, degree=3)
        assert reps and all(r.equal for r in reps), cid


def test_unknown_check():
    with pytest.raises(KeyError):
        default_reports("nope")
