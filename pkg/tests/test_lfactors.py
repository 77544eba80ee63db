import itertools

import pytest
from hypothesis import given, strategies as st

from extcube.laurent import ONE, var
from extcube.lfactors import (HalfTwist, SatakeParam, determinant_oracle, extcube_factor, extcube_factor_inert,
                              extcube_factor_split, extcube_in_t, factor_roots, normalization_factors,
                              normalization_in_t, spin_character_roots, spin_factor, std_character_roots,
                              std_factor, verify_lst_spin)
from extcube.localfactor import LocalFactor


def ones(k, p=1):
    return [(ONE, p)] * k


def test_inert_trivial_specialization():
    p = SatakeParam("inert", (1, 1, 1), 1)
    assert extcube_factor_inert(p) == LocalFactor.from_roots(ones(8) + ones(6, 2))


def test_split_trivial_specialization():
    assert extcube_factor_split(SatakeParam("split", (1,) * 6, 1)) == LocalFactor.from_roots(ones(20))


def test_inert_determinant_identity():
    p = SatakeParam.generic("inert")
    f = extcube_factor_inert(p)
    assert f.degree() == 20
    assert f == determinant_oracle(p)


def test_split_determinant_identity():
    p = SatakeParam.generic("split")
    assert extcube_factor_split(p) == determinant_oracle(p)


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_inert_symmetry(perm):
    p = SatakeParam.generic("inert")
    q = SatakeParam("inert", tuple(p.a[i] for i in perm), p.a0)
    assert extcube_factor(q) == extcube_factor(p)


def test_split_symmetry():
    p = SatakeParam.generic("split")
    q = SatakeParam("split", p.a[::-1], p.a0)
    assert extcube_factor(q) == extcube_factor(p)


def test_similitude_homogeneity():
    p = SatakeParam.generic("inert")
    c = var("c")
    scaled = extcube_factor(SatakeParam("inert", p.a, p.a0 * c))
    t = var("T")
    assert scaled.invpoly == extcube_factor(p).invpoly.subs({"T": t * c})


def test_bad_parameters():
    with pytest.raises(ValueError):
        SatakeParam("inert", (1, 1), 1)
    with pytest.raises(ValueError):
        SatakeParam("ramified", (1, 1, 1), 1)
    with pytest.raises(ValueError):
        SatakeParam("inert", (1, var("x") + 1, 1), 1)


def test_spin_std_trivial():
    h = HalfTwist(u=(ONE, ONE, ONE))
    assert spin_factor(h) == LocalFactor.from_roots(ones(8), "t")
    assert std_factor(h) == LocalFactor.from_roots(ones(7, 2), "t")


def test_roots_match_characters():
    h = HalfTwist()
    # chi'_0 prod_S a_i runs over the spin weights u^(+-1, +-1, +-1)
    assert {r: m for (r, p), m in factor_roots(spin_factor(h)).items()} == spin_character_roots(h)
    assert {r: m for (r, p), m in factor_roots(std_factor(h)).items()} == std_character_roots(h)


@pytest.mark.parametrize("sign", [1, -1])
def test_lst_spin_identity(sign):
    chk = verify_lst_spin(HalfTwist(sign=sign))
    assert chk.ok, chk.message()


def test_lst_spin_trivial_specialization():
    chk = verify_lst_spin(HalfTwist(u=(ONE, ONE, ONE)))
    assert chk.ok
    assert chk.lhs.degree() == 22


def test_lst_spin_mutated_std_fails():
    h = HalfTwist()
    roots = list(std_factor(h).factors)
    roots[2] = (roots[2][0] * var("u1"), 2)
    chk = verify_lst_spin(h, LocalFactor.from_roots(roots, "t"))
    assert not chk.ok
    assert "mismatch at t^" in chk.message()


def test_extcube_in_t_degree():
    assert extcube_in_t(HalfTwist()).degree() == 20


def test_normalization():
    q = var("q")
    f1, f2 = normalization_factors(ONE, q)
    assert f1 == LocalFactor.from_roots([(q ** -2, 1)])
    assert f2 == LocalFactor.from_roots([(q ** -2, 2)])
    g1, g2 = normalization_in_t(var("w"), q)
    assert g1 == LocalFactor.from_roots([(q.inverse(), 2)], "t")
    assert g2 == LocalFactor.from_roots([(ONE, 4)], "t")


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_constant_term_one(exps):
    a = tuple(var(f"a{i}") ** e for i, e in enumerate(exps[:3], start=1))
    f = extcube_factor(SatakeParam("inert", a, var("a0") ** exps[3]))
    assert f.coefficient(0) == ONE
    assert f.degree() == 20
