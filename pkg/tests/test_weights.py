import pytest
from hypothesis import given, strategies as st

from extcube.characters import irreducible_character
from extcube.weights import (IDENTITY, WEYL_GROUP, DominantWeight, WeightVector, dominant_to_epsilon,
                             dw, epsilon_to_dominant, weyl_dim, weyl_orbit)

dominants = st.builds(lambda a, b, c: dw(a, b, c), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
weights = st.builds(lambda p, a, b, c: WeightVector((2 * a + p, 2 * b + p, 2 * c + p)),
                    st.integers(0, 1), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
weyl = st.sampled_from(WEYL_GROUP)


@pytest.mark.parametrize("k, eps", [((0, 0, 0), (0, 0, 0)), ((1, 0, 0), (2, 0, 0)), ((0, 0, 1), (1, 1, 1)),
                                    ((0, 1, 0), (2, 2, 0)), ((1, 2, 3), (9, 7, 3))])
def test_dominant_to_epsilon(k, eps):
    assert dominant_to_epsilon(dw(*k)).c == eps
    assert epsilon_to_dominant(WeightVector(eps)) == dw(*k)


def test_orbits():
    assert weyl_orbit(WeightVector((0, 0, 0))) == {WeightVector((0, 0, 0))}
    assert len(weyl_orbit(WeightVector((2, 0, 0)))) == 6
    assert weyl_orbit(WeightVector((1, 1, 1))) == {WeightVector((a, b, c)) for a in (1, -1) for b in (1, -1)
                                                     for c in (1, -1)}
    assert len(WEYL_GROUP) == 48


@pytest.mark.parametrize("k, dim", [((0, 0, 0), 1), ((1, 0, 0), 7), ((0, 0, 1), 8), ((0, 1, 0), 21),
                                    ((0, 0, 2), 35), ((2, 0, 0), 27), ((1, 0, 1), 48)])
def test_weyl_dim(k, dim):
    assert weyl_dim(dw(*k)) == dim


def test_mixed_parity_rejected():
    with pytest.raises(ValueError):
        WeightVector((1, 0, 0))
    with pytest.raises(ValueError):
        DominantWeight((0, -1, 0))


@given(dominants)
def test_epsilon_image_is_the_dominant_orbit_element(d):
    e = dominant_to_epsilon(d)
    assert e.is_dominant()
    assert [w for w in weyl_orbit(e) if w.is_dominant()] == [e]


@given(dominants)
def test_dimension_matches_character(d):
    assert weyl_dim(d) == irreducible_character(d).dimension()


@given(weyl, weyl, weights)
def test_weyl_action_composes(g, h, w):
    assert g.compose(h).act(w) == g.act(h.act(w))
    assert g.inverse().act(g.act(w)) == w
    assert g.compose(g.inverse()) == IDENTITY


@given(weights)
def test_dominant_representative(w):
    assert w.dominant() in weyl_orbit(w)
    assert w.dominant().is_dominant()
