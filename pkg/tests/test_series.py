import json

import pytest
from hypothesis import given, strategies as st

from extcube.characters import IrrDecomposition, ch, decompose, multiply
from extcube.series import (MAX_DEGREE, a_k, b_m, chain_series, cz3_powers_enumerated, cz3_powers_solved,
                            cz3_target, dimension_shadow, lhs_series, pieri_sum, product_decomposition,
                            rhs_series, telescoped, verify_chain, verify_cz3_coefficients, verify_main_identity,
                            verify_sym_decompositions, verify_telescoping)


def test_low_coefficients():
    lhs = lhs_series(3)
    assert lhs[0] == IrrDecomposition.of((0, 0, 0))
    assert lhs[1] == IrrDecomposition.of((0, 0, 1))
    # brute-force enumeration of (n1, n2, n3, i) with n1 + 2i + 2n2 + 4n3 = 2
    assert lhs[2] == IrrDecomposition.of((0, 0, 2), (1, 0, 0))
    rhs = rhs_series(3)
    assert rhs[0] == IrrDecomposition.of((0, 0, 0))
    assert rhs[1] == IrrDecomposition.of((0, 0, 1))
    assert rhs[3] == decompose(ch(0, 0, 3) + multiply(ch(0, 0, 1), ch(1, 0, 0)))


def test_dimension_shadow_frozen():
    dims = [1, 8, 42, 168, 566, 1672, 4466, 10984, 25236, 54712, 112854]
    assert [l for _, l, _ in dimension_shadow(10)] == dims
    assert all(l == r for _, l, r in dimension_shadow(10))


@pytest.mark.parametrize("D", [4, 10])
def test_main_identity(D):
    rep = verify_main_identity(D)
    assert rep.ok, rep.first_failure()
    assert "through t^" in rep.lines()[-1]


def test_main_identity_lattice_points():
    points = {(n1, n2, n3) for n1 in range(11) for n2 in range(6) for n3 in range(3) if n1 + 2 * n2 + 4 * n3 <= 10}
    assert len(points) >= 30


def test_negative_control_fails_early():
    rep = verify_main_identity(6, lambda D: lhs_series(D, 3))
    bad = rep.first_failure()
    assert not rep.ok and bad.deg == 3
    assert bad.mismatch.startswith("ch(0,1,0)")


def test_degree_cap():
    with pytest.raises(ValueError):
        lhs_series(MAX_DEGREE + 1)
    with pytest.raises(ValueError):
        rhs_series(-1)


def test_a_b_small():
    assert a_k(0) == IrrDecomposition.of((0, 0, 0))
    assert a_k(1) == IrrDecomposition.of((1, 0, 0))
    assert a_k(2) == IrrDecomposition.of((2, 0, 0), (0, 0, 0))
    assert b_m(2) == IrrDecomposition.of((0, 0, 2), (0, 0, 0))


def test_sym_decompositions():
    assert verify_sym_decompositions(8, 8).ok


def test_telescoping():
    assert telescoped(0) == IrrDecomposition.of((0, 0, 0))
    assert telescoped(1) == IrrDecomposition.of((0, 0, 1))
    assert telescoped(6) == pieri_sum(6)
    assert verify_telescoping(12).ok


def test_chain():
    assert verify_chain(10).ok
    assert chain_series(4) == lhs_series(4)


def test_cz3_examples():
    assert cz3_powers_enumerated((0, 0, 0)) == [0]
    assert cz3_powers_enumerated((0, 0, 1)) == [1, 3]
    assert cz3_powers_enumerated((1, 1, 2)) == [8, 10, 12]
    assert verify_cz3_coefficients(4).ok


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_cz3_routes_agree(n2, n3, n1):
    t = (n2, n3, n1)
    assert cz3_powers_solved(t) == cz3_target(t)


@given(st.integers(0, 6), st.integers(0, 4))
def test_product_terms_multiplicity_free(m, k):
    assert product_decomposition(m, k).is_multiplicity_free()


def test_report_json():
    data = json.loads(verify_main_identity(2).to_json())
    assert data["ok"] and len(data["rows"]) == 3
