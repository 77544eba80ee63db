import pytest

from extcube.exterior import PLAIN
from extcube.laurent import ONE, var
from extcube.linalg import SparseMatrix
from extcube.lmaps import (E, EP, ID, KLEIN, L, W_ONE, WPart, all_maps, check_cocycle, check_group_law,
                           check_homomorphism, check_projection, decompose_extcube_composite, diagram_images,
                           diagram_up_to_conjugacy, generators, gu_circ, induced_form, klein_mul, map_b_ef,
                           map_b_ef_xi, map_i_ep_f, map_i_ep_f_xi, sample_elements, sign_flipped,
                           verify_diagram, verify_lfunction_factorization, xi_cocycle)

NS = (1, 2, 3)


def test_klein_group():
    for a in KLEIN:
        assert klein_mul(a, ID) == a
        assert klein_mul(a, a) == ID
    assert klein_mul(EP, E) == L


@pytest.mark.parametrize("n", NS)
def test_cocycle(n):
    assert check_cocycle(n)
    assert xi_cocycle(EP, EP, n) == (-1) ** n


@pytest.mark.parametrize("n", NS)
@pytest.mark.parametrize("degenerate", [False, True])
def test_group_laws(n, degenerate):
    for phi in all_maps(n, degenerate):
        for g in (phi.source, phi.target):
            assert check_group_law(g).ok, g.name


@pytest.mark.parametrize("n", NS)
@pytest.mark.parametrize("degenerate", [False, True])
def test_identity_maps_to_identity(n, degenerate):
    for phi in all_maps(n, degenerate):
        assert phi(phi.source.element()) == phi.target.element()


def test_induction_on_torus():
    phi = map_i_ep_f_xi(3)
    x = sample_elements(phi.source)["torus"]
    g, h, a = x.comps
    assert phi(x) == phi.target.element((SparseMatrix.block_diag(g, h), a))


@pytest.mark.parametrize("n", NS)
@pytest.mark.parametrize("degenerate", [False, True])
def test_base_change_maps_respect_relations(n, degenerate):
    assert check_homomorphism(map_b_ef_xi(n, degenerate)).ok
    assert check_homomorphism(map_b_ef(2 * n, n, degenerate)).ok
    for phi in all_maps(n, degenerate):
        assert check_projection(phi).ok


@pytest.mark.parametrize("n", NS)
def test_sign_flip_is_detected(n):
    assert not check_homomorphism(sign_flipped(map_b_ef_xi(n))).ok


def test_target_form_gives_an_involution():
    from extcube.exterior import galois_matrix, j_prime
    for n in NS:
        f = induced_form(n)
        assert f == SparseMatrix.block_diag(j_prime(n).scale((-1) ** n), j_prime(n))
        a = galois_matrix(f)
        assert a @ a == SparseMatrix.identity(a.nrows)


# frozen findings for the literal generator tables

INDUCTION_RELATION_FAILURES = {
    # n odd: theta_E+ squares to xi-value (-1)^n in the source but to 1 in the target
    "i_E+/F,xi": {"theta_E+*theta_E+", "theta_E+*theta_L", "theta_L*theta_E+", "theta_L*theta_L"},
    "i_E+/F": {"theta_E*theta_E", "theta_E*theta_E+", "theta_E*theta_L", "theta_L*theta_E",
               "theta_L*theta_E+", "theta_L*theta_L"},
}

DIAGRAM_FAILURES = {
    (1, False): ["theta_E+", "theta_E", "theta_L"],
    (1, True): ["theta_E+"],
    (2, False): ["theta_E", "theta_L"],
    (2, True): [],
    (3, False): ["theta_E+", "theta_E", "theta_L"],
    (3, True): ["theta_E+"],
}


@pytest.mark.parametrize("n", [1, 3])
def test_odd_induction_relation_findings(n):
    for phi in (map_i_ep_f_xi(n), map_i_ep_f(n)):
        got = {f.where for f in check_homomorphism(phi).findings}
        assert got == INDUCTION_RELATION_FAILURES[phi.name]
    got = {f.where for f in check_homomorphism(map_i_ep_f_xi(n, True)).findings}
    assert got == {"theta_E+*theta_E+"}


def test_even_induction_respects_relations():
    for degenerate in (False, True):
        for phi in all_maps(2, degenerate):
            assert check_homomorphism(phi).ok


@pytest.mark.parametrize("key", sorted(DIAGRAM_FAILURES))
def test_diagram_findings(key):
    n, degenerate = key
    rep = verify_diagram(n, degenerate)
    assert [f.where for f in rep.findings] == DIAGRAM_FAILURES[key]
    assert rep.checked == len(sample_elements(map_b_ef_xi(n, degenerate).source))


def test_diagram_agrees_on_torus_and_wk():
    for n in NS:
        for name in ("torus", "monomial", "w"):
            top, bottom = diagram_images(n, name)
            assert top == bottom


def test_even_case_commutes_up_to_conjugacy():
    c = diagram_up_to_conjugacy(2)
    d = SparseMatrix.diag([1, 1, -1, -1])
    assert c is not None and c[0] == d and c[1] == d
    assert diagram_up_to_conjugacy(2, True)[0] == SparseMatrix.identity(4)
    for n in (1, 3):
        assert diagram_up_to_conjugacy(n) is None


def test_literal_theta_e_breaks_projection():
    for n in NS:
        got = [f.where for f in check_projection(map_i_ep_f(n, literal_theta_e=True)).findings]
        assert got == ["theta_E", "theta_L"]


# the exterior cube of the induction, n = 3

@pytest.mark.parametrize("degenerate", [False, True])
def test_composite_decomposition(degenerate):
    rep = decompose_extcube_composite(degenerate)
    assert rep.ok, rep.failures
    assert any("W-perp char poly matches" in line for line in rep.lines_)


def test_composite_findings():
    rep = decompose_extcube_composite(False)
    assert sum("a^2" in f for f in rep.findings) == 2
    assert any("same characteristic polynomial" in f for f in rep.findings)


def test_plain_twist_breaks_the_w_block():
    rep = decompose_extcube_composite(False, PLAIN)
    assert not rep.ok
    assert any(f.startswith("theta_E+") for f in rep.failures)


def test_w_block_values():
    src = gu_circ(3)
    x = sample_elements(src)["torus"]
    g, h, a = x.comps
    from extcube.linalg import det
    from extcube.lmaps import extcube_image, w_positions
    idx = list(w_positions())
    block = extcube_image(x).submatrix(idx, idx)
    assert block == SparseMatrix.diag([a * det(g), a * det(h)])
    theta = extcube_image(src.element(None, WPart(ONE, EP))).submatrix(idx, idx)
    assert theta == SparseMatrix.from_rows([[0, 1], [1, 0]])


@pytest.mark.parametrize("degenerate", [False, True])
def test_factorization(degenerate):
    checks = verify_lfunction_factorization(degenerate)
    assert all(c.ok for c in checks)
    for c in checks:
        assert c.w_factor.degree() <= 2 and c.full.degree() <= 20
    trivial = next(c for c in checks if c.name == "trivial")
    from extcube.localfactor import LocalFactor
    assert trivial.full == LocalFactor.from_roots([(ONE, 1)] * 20)
