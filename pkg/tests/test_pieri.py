from hypothesis import given, strategies as st

from extcube.characters import IrrDecomposition, ch, decompose, multiply
from extcube.pieri import (Partition3, brute_force_pieri, is_horizontal_strip, pieri_closed_form,
                           pieri_crosscheck, sundaram_multiplicity)
from extcube.weights import dw, weyl_dim


def test_trivial_tensor_cases():
    for m in range(4):
        assert pieri_closed_form(2 * m, 0) == IrrDecomposition.of((0, 0, 2 * m))
    for k in range(5):
        assert pieri_closed_form(0, k) == IrrDecomposition.of((k, 0, 0))


def test_frozen_examples():
    assert pieri_closed_form(2, 1) == IrrDecomposition.of((1, 0, 2), (0, 0, 2), (0, 1, 0))
    assert pieri_closed_form(4, 3) == IrrDecomposition.of(
        (3, 0, 4), (2, 0, 4), (2, 1, 2), (1, 0, 4), (1, 1, 2), (1, 2, 0), (0, 0, 4), (0, 1, 2))


def test_sundaram_counts():
    for k in range(4):
        assert sundaram_multiplicity(dw(0, 0, 0), dw(k, 0, 0), k) == 1
    assert sundaram_multiplicity(dw(0, 0, 2), dw(0, 0, 2), 0) == 1
    assert sundaram_multiplicity(dw(0, 0, 2), dw(0, 0, 4), 0) == 0
    coeff = decompose(multiply(ch(0, 0, 4), ch(3, 0, 0))).parts.get(dw(1, 1, 2), 0)
    assert sundaram_multiplicity(dw(0, 0, 4), dw(1, 1, 2), 3) == coeff == 1


def test_horizontal_strips():
    assert is_horizontal_strip(Partition3((3, 1, 0)), Partition3((1, 0, 0)))
    assert is_horizontal_strip(Partition3((2, 2, 0)), Partition3((2, 0, 0)))
    assert not is_horizontal_strip(Partition3((2, 2, 0)), Partition3((1, 0, 0)))


def test_crosscheck_grid():
    assert pieri_crosscheck(0, 5).ok
    assert pieri_crosscheck(6, 6).ok


def test_perturbed_closed_form_is_caught():
    def broken(n, k):
        return pieri_closed_form(n, k - 1) if (n, k) == (2, 2) else pieri_closed_form(n, k)
    rep = pieri_crosscheck(3, 3, broken)
    assert not rep.ok
    assert (rep.first_failure().n, rep.first_failure().k) == (2, 2)


@given(st.integers(0, 8), st.integers(0, 8))
def test_multiplicity_free_dimension_parity(n, k):
    dec = brute_force_pieri(n, k)
    assert dec.is_multiplicity_free()
    assert dec.dimension() == weyl_dim(dw(0, 0, n)) * weyl_dim(dw(k, 0, 0))
    assert all(d.k[2] % 2 == n % 2 for d in dec.parts)
