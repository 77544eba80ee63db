import pytest
from hypothesis import given, strategies as st

from extcube.asai import (ExtensionSatake, Pattern, asai_factor, asai_inert_closed_form, asai_matrix,
                          closed_form_checks, induced_frobenius, induction_satake, kron, lemma_table,
                          lhs_frobenius, power_traces, rankin_selberg, rankin_selberg_closed_form, same_factor,
                          split_twist_trivial, summary_table, symbols, verify_lemma62)
from extcube.laurent import ONE, var
from extcube.linalg import SparseMatrix, char_poly
from extcube.localfactor import LocalFactor


def diag(xs):
    return SparseMatrix.diag(list(xs))


def test_asai_n1():
    b = var("b")
    assert asai_factor(diag([b])) == LocalFactor.from_roots([(b, 1)])


@pytest.mark.parametrize("eta", [1, -1])
def test_asai_n2(eta):
    b1, b2 = var("b1"), var("b2")
    want = LocalFactor.from_roots([(b1 * eta, 1), (b2 * eta, 1), (b1 * b2, 2)])
    assert asai_factor(diag([b1, b2]), eta=eta) == want


def test_rankin_selberg_split():
    b, c = symbols("b", 2), symbols("c", 3)
    assert rankin_selberg(diag(b), diag(c)) == rankin_selberg_closed_form(b, c)


def test_size_mismatch():
    with pytest.raises(ValueError):
        asai_matrix(SparseMatrix.identity(2), SparseMatrix.identity(3))
    with pytest.raises(ValueError):
        asai_factor(SparseMatrix.identity(2), eta=2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closed_forms(n):
    assert all(ok for _, ok in closed_form_checks(n))


def test_induction_satake():
    d = ExtensionSatake.generic(Pattern.TOTALLY_SPLIT, 2)
    assert induction_satake(d)["v_E"] == d.places["v1"] + d.places["v2"]
    d = ExtensionSatake.generic(Pattern.SPLIT_IN_E_NOT_K, 2)
    s = d.places["V"]
    assert induction_satake(d)["v_E"] == (s[0], s[1], -s[0], -s[1])
    assert [x * x for x in induction_satake(d, -1)["v_E"]] == [x * x for x in s] * 2
    d = ExtensionSatake.generic(Pattern.INERT_IN_E_SPLIT_IN_E_PLUS, 2)
    assert induction_satake(d)["nu"] == d.places["V"] + d.places["W"]


def test_induced_frobenius_eigenvalues():
    s = symbols("s", 2)
    c = diag([x * x for x in s])
    roots = [(x, 1) for x in s] + [(-x, 1) for x in s]
    assert char_poly(induced_frobenius(c)) == LocalFactor.from_roots(roots)


@pytest.mark.parametrize("pattern", list(Pattern))
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [0, 1])
def test_lemma(pattern, n, m):
    for sign in (1, -1):
        c = verify_lemma62(pattern, n, m, sign)
        assert c.ok, c.line()


def test_totally_split_example():
    d = ExtensionSatake.generic(Pattern.TOTALLY_SPLIT, 2)
    p = {k: diag(v) for k, v in d.places.items()}
    four = (rankin_selberg(p["v1"], p["w1"]) * rankin_selberg(p["v1"], p["w2"])
            * rankin_selberg(p["v2"], p["w1"]) * rankin_selberg(p["v2"], p["w2"]))
    assert char_poly(lhs_frobenius(d, 0)) == four


def test_split_in_e_example():
    d = ExtensionSatake.generic(Pattern.SPLIT_IN_E_NOT_K, 1)
    pairing = rankin_selberg(diag(d.satake("V")), diag(d.satake("W")), degree=2)
    assert char_poly(lhs_frobenius(d, 1)) == pairing ** 2


def test_inert_example():
    d = ExtensionSatake.generic(Pattern.INERT_IN_E_SPLIT_IN_E_PLUS, 2)
    cv, cw = d.satake("V"), d.satake("W")
    want = (asai_inert_closed_form(cv, -1) * asai_inert_closed_form(cw, -1)
            * rankin_selberg_closed_form(cv, cw, degree=2))
    assert char_poly(lhs_frobenius(d, 1)) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_twist_trivial_at_split_places(n):
    assert split_twist_trivial(Pattern.TOTALLY_SPLIT, n)
    assert split_twist_trivial(Pattern.SPLIT_IN_E_NOT_K, n)


def test_mirror_symmetry():
    for n in (1, 2, 3):
        for m in (0, 1):
            assert verify_lemma62(Pattern.INERT_IN_E_SPLIT_IN_L, n, m).ok


@pytest.mark.parametrize("pattern", list(Pattern))
def test_negative_controls(pattern):
    for n in (1, 2, 3):
        for m in (0, 1):
            assert not verify_lemma62(pattern, n, m, mutate_rhs=True).ok
    if pattern in (Pattern.INERT_IN_E_SPLIT_IN_E_PLUS, Pattern.INERT_IN_E_SPLIT_IN_L):
        assert not verify_lemma62(pattern, 2, 1, perturb=True).ok


def test_summary_table():
    lines = summary_table(lemma_table(ns=(1, 2), patterns=tuple(Pattern)[:3]))
    assert len(lines) == 4
    assert all(line.split()[-2:] == ["pass", "pass"] for line in lines[1:])


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.sampled_from([1, -1]))
def test_asai_matrix_against_closed_form(exps, eta):
    b = [var(f"b{k}") ** e if e else var(f"b{k}") for k, e in enumerate(exps)]
    assert asai_factor(diag(b), eta=eta) == asai_inert_closed_form(b, eta)


@given(st.integers(1, 3))
def test_power_traces_decide_char_poly(n):
    b = symbols("b", n)
    m = asai_matrix(diag(b), SparseMatrix.identity(n))
    assert same_factor(m, m) is None
    assert same_factor(m, m.scale(-1)) is not None
    assert len(power_traces(m)) == n * n
