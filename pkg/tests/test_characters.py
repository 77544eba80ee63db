import pytest
from hypothesis import given, strategies as st

from extcube.characters import (FormalCharacter, IrrDecomposition, adams, ch, character_from_poly, decompose,
                                evaluate, from_decomposition, irreducible_character, multiply,
                                sym_generating_coefficients, sym_power, trivial, weyl_quotient_character)
from extcube.laurent import ONE, var
from extcube.weights import dw, weyl_dim

small = st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 2))


def test_small_characters():
    assert ch(0, 0, 0) == trivial()
    st_ = ch(1, 0, 0)
    assert st_ == FormalCharacter({(2, 0, 0): 1, (-2, 0, 0): 1, (0, 2, 0): 1, (0, -2, 0): 1,
                                   (0, 0, 2): 1, (0, 0, -2): 1, (0, 0, 0): 1})
    assert ch(0, 0, 1) == FormalCharacter({(a, b, c): 1 for a in (1, -1) for b in (1, -1) for c in (1, -1)})


def test_products():
    assert multiply(ch(1, 0, 0), trivial()) == ch(1, 0, 0)
    assert multiply(ch(1, 0, 0), ch(1, 0, 0)).dimension() == 49
    # frozen from the highest-weight peeling oracle
    assert decompose(multiply(ch(0, 0, 1), ch(0, 0, 1))) == IrrDecomposition.of(
        (0, 0, 2), (0, 1, 0), (1, 0, 0), (0, 0, 0))
    assert decompose(multiply(ch(0, 0, 2), ch(1, 0, 0))) == IrrDecomposition.of((1, 0, 2), (0, 0, 2), (0, 1, 0))


def test_adams_and_sym():
    assert adams(ch(1, 0, 0), 1) == ch(1, 0, 0)
    assert adams(trivial(), 3) == trivial()
    assert adams(ch(1, 0, 0), 2)[(4, 0, 0)] == 1
    assert sym_power(ch(0, 0, 1), 0) == trivial()
    assert sym_power(ch(0, 0, 1), 1) == ch(0, 0, 1)
    assert decompose(sym_power(ch(1, 0, 0), 2)) == IrrDecomposition.of((2, 0, 0), (0, 0, 0))


def test_spin_evaluation():
    u = [var(f"u{k}") for k in (1, 2, 3)]
    want = sum((u[0] ** a * u[1] ** b * u[2] ** c for a in (1, -1) for b in (1, -1) for c in (1, -1)),
               start=0 * ONE)
    assert evaluate(ch(0, 0, 1)) == want
    assert evaluate(trivial()) == ONE


@pytest.mark.parametrize("k", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 0, 3), (0, 2, 2), (3, 1, 0)])
def test_freudenthal_against_weyl_quotient(k):
    assert character_from_poly(weyl_quotient_character(dw(*k))) == irreducible_character(dw(*k))


@pytest.mark.parametrize("c", [ch(1, 0, 0), ch(0, 0, 1)])
def test_sym_generating_identity(c):
    coeffs = sym_generating_coefficients(c, 6)
    for k in range(7):
        assert coeffs[k] == evaluate(sym_power(c, k))


@given(small)
def test_irreducibles_are_weyl_invariant(k):
    c = ch(*k)
    assert c.is_weyl_invariant()
    assert decompose(c) == IrrDecomposition.of(k)


@given(st.dictionaries(small, st.integers(1, 3), max_size=3))
def test_decompose_round_trip(parts):
    dec = IrrDecomposition({dw(*k): m for k, m in parts.items()})
    assert decompose(from_decomposition(dec)) == dec


@given(small, small, small)
def test_multiply_commutative_associative(a, b, c):
    x, y, z = ch(*a), ch(*b), ch(*c)
    assert multiply(x, y) == multiply(y, x)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert evaluate(multiply(x, y)) == evaluate(x) * evaluate(y)


@given(small, small)
def test_product_dimensions(a, b):
    dec = decompose(multiply(ch(*a), ch(*b)))
    assert dec.is_genuine()
    assert dec.dimension() == weyl_dim(dw(*a)) * weyl_dim(dw(*b))


def test_serialization_round_trip():
    c = ch(1, 0, 1)
    assert FormalCharacter.from_lines(c.to_lines()) == c
