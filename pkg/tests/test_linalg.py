import random

from hypothesis import given, strategies as st

from extcube.exterior import random_monomial_matrix
from extcube.laurent import ONE, var
from extcube.linalg import SparseMatrix, bareiss_det, char_poly, components, det
from extcube.localfactor import LocalFactor


def test_char_poly_identity():
    assert char_poly(SparseMatrix.identity(5)) == LocalFactor.from_roots([(ONE, 1)] * 5)


def test_char_poly_of_companion_block():
    x, y = var("x"), var("y")
    m = SparseMatrix.from_rows([[0, x], [y, 0]])
    assert char_poly(m) == LocalFactor.from_roots([(x * y, 2)])


def test_components_split():
    m = SparseMatrix.block_diag(SparseMatrix.identity(2), SparseMatrix.from_rows([[0, 1], [1, 0]]))
    assert components(m) == [[0], [1], [2, 3]]


def test_bareiss_matches_expansion():
    x, y, z = var("x"), var("y"), var("z")
    rows = [[x, y, ONE], [ONE, z, x], [y, ONE, z]]
    expansion = x * (z * z - x) - y * (z - x * y) + (ONE - z * y)
    assert bareiss_det(rows) == expansion


@given(st.integers(0, 10 ** 6))
def test_char_poly_similarity_invariant(seed):
    rng = random.Random(seed)
    m = random_monomial_matrix(4, rng)
    p = random_monomial_matrix(4, rng, prefix="p")
    assert char_poly(p @ m @ p.inverse()) == char_poly(m)
    assert det(m @ p) == det(m) * det(p)
    assert m @ m.inverse() == SparseMatrix.identity(4)
