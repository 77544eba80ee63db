"""Acceptance criteria, one PASS/FAIL line each (run with ``pytest -s`` to see them)."""
import pytest

from extcube.cli import SUITES, RunConfig, run_suite
from extcube.pieri import pieri_crosscheck, sundaram_decomposition, pieri_closed_form
from extcube.series import lhs_series, rhs_series

CFG = RunConfig()


def report(k, ok, detail=""):
    print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
    return ok


def suite_ok(name, cfg=CFG, only=None):
    res = run_suite(name, cfg)
    rows = [r for r in res.rows if only is None or only(r.label)]
    bad = next((r for r in rows if not r.ok), None)
    return bool(rows) and bad is None, "" if bad is None else bad.line(), res


def test_criterion_1_inert_determinant():
    ok, detail, _ = suite_ok("extcube-determinant", only=lambda s: s.startswith("inert"))
    assert report(1, ok, detail)


def test_criterion_2_split_determinant():
    ok, detail, _ = suite_ok("extcube-determinant", only=lambda s: s.startswith("split"))
    assert report(2, ok, detail)


def test_criterion_3_main_identity():
    D = 10
    points = sum(1 for n1 in range(D + 1) for n2 in range(D + 1) for n3 in range(D + 1)
                 if n1 + 2 * n2 + 4 * n3 <= D)
    ok = lhs_series(D) == rhs_series(D) and points >= 30
    assert report(3, ok, f"D={D}, {points} lattice points")


def test_criterion_4_pieri():
    rep = pieri_crosscheck(6, 6)
    ok = rep.ok and len(rep.rows) == 49
    ok = ok and all(sundaram_decomposition(n, k) == pieri_closed_form(n, k) for n in range(0, 7, 2) for k in range(7))
    assert report(4, ok)


def test_criterion_5_sym_powers():
    ok, detail, _ = suite_ok("sympowers", RunConfig(sym_max=8, telescope_max=12))
    assert report(5, ok, detail)


def test_criterion_6_lst_spin():
    ok, detail, _ = suite_ok("lst-spin")
    assert report(6, ok, detail)


def test_criterion_7_structure():
    ok, detail, res = suite_ok("extcube", RunConfig(ext_n=[1, 2, 3, 4, 5], samples=20))
    assert sum(r.label.startswith("n=3: A(") for r in res.rows) == 12
    assert report(7, ok, detail)


@pytest.mark.xfail(strict=True, reason="the literal square fails for n=1,2,3; recorded finding")
def test_criterion_8_diagram():
    ok, detail, res = suite_ok("diagram", RunConfig(diagram_n=[1, 2, 3]),
                               only=lambda s: "diagram commutes" in s)
    report(8, ok, detail)
    for f in res.findings:
        print("  finding:", f)
    assert ok


def test_criterion_9_composite():
    ok, detail, _ = suite_ok("composite")
    assert report(9, ok, detail)


def test_criterion_10_asai():
    ok, detail, res = suite_ok("asai", RunConfig(asai_n=[1, 2, 3], asai_m=[0, 1]))
    assert len(res.rows) >= 3 * 2 * 3
    assert report(10, ok, detail)


def test_criterion_11_negative_controls():
    cfg = RunConfig(degree=6, n_max=3, k_max=3, sym_max=4, telescope_max=6, cz3_bound=2,
                    ext_n=[1, 2, 3], samples=3, asai_n=[1, 2], negative_control=True)
    failing = {name: not run_suite(name, cfg).ok for name in SUITES}
    ok = all(failing.values())
    assert report(11, ok, ", ".join(n for n, f in failing.items() if not f))
