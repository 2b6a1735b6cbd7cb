from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quadfactor.families import (CATALOG, FAIL, PASS, PASS_WD, case_ids, family_member, family_members,
                                 find_case, get_case, isolated_solutions, members, reduce_member,
                                 verify_paper)
from quadfactor.solver import Pattern, eliminate, is_valid_member, pattern_sweep

PARAMETRIC = [c.id for c in CATALOG.values() if c.kind == "parametric"]
params = st.fractions(min_value=-40, max_value=40, max_denominator=30)


def test_catalog_covers_every_pattern_and_exponent():
    assert len(CATALOG) == 36
    seen = {(c.pattern, c.exponents) for c in CATALOG.values()}
    assert len(seen) == 36
    assert find_case(Pattern.AA1, (4, 3, 1)).id == "T2.4.2"


def test_member_t2_4_2():
    m = family_member("T2.4.2", 2)
    assert str(m.f) == "x^4 + x^3 + x + 1"
    assert (m.factor.p, m.factor.q) == (2, 1)
    assert str(m.cofactor) == "x^2 - x + 1"


def test_excluded_parameter_names_the_exclusions():
    with pytest.raises(ValueError, match="excluded"):
        family_member("T2.4.2", 0)
    with pytest.raises(ValueError, match="excluded"):
        family_members("T2.4.2", 0)
    # excluded on one branch only: the other branches still answer
    assert [m.branch for m in family_members("T3.4.4", 1)] == ["a", "c"]


def test_branch_selection():
    with pytest.raises(ValueError, match="branches"):
        family_member("T3.4.4", 2)
    assert family_member("T3.4.4b", 3).branch == "b"
    assert family_member("T3.4.4", 3, branch="a").branch == "a"
    with pytest.raises(KeyError):
        get_case("T9.9.9")


@given(st.sampled_from(PARAMETRIC), params)
def test_every_family_member_divides(case_id, t):
    case = CATALOG[case_id]
    for b in case.branches:
        if t in b.excluded:
            continue
        m = family_member(case_id, t, b.label)
        assert m.cofactor * m.factor.to_upoly() == m.f.to_upoly()
        assert is_valid_member(case.pattern, *case.exponents, *m.triple())


@given(st.sampled_from(PARAMETRIC), params)
def test_family_points_lie_on_the_eliminant(case_id, t):
    case = CATALOG[case_id]
    E = eliminate(case.pattern, *case.exponents)
    if all(t in b.excluded for b in case.branches):
        return
    for m in family_members(case_id, t):
        assert E.eval_at(m.factor.p, m.factor.q) == 0


@given(params)
def test_reductions_send_members_to_members(t):
    for case in CATALOG.values():
        if case.kind != "reduction" or CATALOG[case.source].kind not in ("parametric", "curve"):
            continue
        src = CATALOG[case.source]
        if src.kind == "parametric" and all(t in b.excluded for b in src.branches):
            continue
        for m in family_members(case.source, t):
            r = reduce_member(m, case)
            assert is_valid_member(case.pattern, *case.exponents, *r.triple())


def test_isolated_solutions():
    sols = {m.triple() for m in isolated_solutions("T3.4.2")}
    assert sols == {(F(-1, 2), F(5, 18), F(125, 1296))}
    assert isolated_solutions("T3.4.5")  # reduction of an isolated case
    with pytest.raises(ValueError):
        isolated_solutions("T2.4.2")


@pytest.mark.parametrize("case_id", case_ids())
def test_members_match_sweep_at_small_height(case_id):
    case = CATALOG[case_id]
    H = 5
    assert pattern_sweep(case.pattern, *case.exponents, H).as_triples() == members(case_id, H, H)


def test_printed_conditions_agree_with_eliminants():
    cases = [c for c in CATALOG.values() if c.condition is not None]
    assert len(cases) == 27
    for c in cases:
        assert eliminate(c.pattern, *c.exponents).is_multiple_of(c.condition), c.id


EXPECTED_DISCREPANCIES = {
    ("T2.3.1", "identity"),
    ("T3.1.2", "label"), ("T3.1.6", "label"), ("T3.3.2", "label"),
    ("T3.4.1a", "label"), ("T3.4.1b", "label"), ("T3.4.2", "label"),
    ("T3.1.4", "statement"), ("T3.4.2", "statement"), ("T3.4.3", "statement"), ("T3.4.4a", "statement"),
    ("T3.2.3c", "missing-branch"), ("T3.2.4b", "missing-branch"), ("T3.3.3b", "missing-branch"),
    ("T3.4.4c", "missing-branch"),
    ("T3.4.1a", "derivation"),
    ("C3.1.3", "curve-point"), ("C3.1.6", "curve-point"),
    ("C3.2.4", "curve-map"), ("C3.4.2", "curve-map"),
}


@pytest.fixture(scope="module")
def report():
    return verify_paper()


def test_report_has_no_failures(report):
    assert report.failures == 0
    assert all(e.status in (PASS, PASS_WD) for e in report.entries)


def test_report_discrepancy_set(report):
    assert {(d.id, d.kind) for d in report.discrepancies} == EXPECTED_DISCREPANCIES
    assert len(report.discrepancies) == len(EXPECTED_DISCREPANCIES)


def test_report_details(report):
    by = {(d.id, d.kind): d for d in report.discrepancies}
    assert "4/3 x" in by[("T2.3.1", "identity")].printed
    assert "2/3 x" in by[("T2.3.1", "identity")].computed
    assert by[("C3.1.3", "curve-point")].computed == "(1/6, 161/216)"
    assert by[("T3.4.3", "statement")].computed.endswith("a = -p^3")
    assert by[("T3.4.2", "statement")].computed.endswith("125/1296)")


def test_report_notes(report):
    text = "\n".join(report.notes)
    for needle in ("T2.5.2: stated exclusion p = 0", "T2.6.2: stated exclusion p = 1",
                   "T3.2.3: stated exclusion q = -1", "divides the quadrinomial for every a"):
        assert needle in text


def test_report_thread_invariant(report):
    assert verify_paper(threads=8).to_json() == report.to_json()


def test_entry_status_reflects_discrepancies(report):
    for e in report.entries:
        assert (e.status == PASS_WD) == bool(e.discrepancy)
        assert e.status != FAIL
