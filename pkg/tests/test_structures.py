import numpy as np
import pytest
from hypothesis import given

from conftest import seeds
from curvlab.errors import ConventionMismatchError
from curvlab.structures import (
    decode_2form,
    decode_3form,
    decode_4form,
    diamond,
    g2_decode_3form,
    g2_project_2form,
    g2_subspaces,
    p_map,
    standard_g2,
    star_omega_from,
    su3_from_g2,
    su3_invariants,
    su3_project_2form,
    su3_subspaces,
    sym2_split,
    verify_g2_identities,
    verify_su3_identities,
)
from curvlab.operators import spectrum, two_form_basis
from curvlab.tensors import form_inner, hodge_star, interior, wedge


@pytest.fixture(scope="module")
def g2():
    return standard_g2()


@pytest.fixture(scope="module")
def su3(g2):
    return su3_from_g2(g2)


def test_g2_identities_exact(g2):
    res = verify_g2_identities(g2)
    assert set(res) == {"phi_phi", "phi_psi_1", "phi_psi_2", "psi_psi_2", "psi_psi_3"}
    assert all(v == 0.0 for v in res.values())


def test_g2_basic_norms(g2):
    assert form_inner(g2.phi, g2.phi) == 7.0
    np.testing.assert_array_equal(g2.psi, hodge_star(g2.phi, 7, g2.orientation))


def test_flipped_sign_breaks_identities():
    res = verify_g2_identities(standard_g2(flip=(0, 1, 2)))
    assert max(res.values()) > 0
    with pytest.raises(ConventionMismatchError):
        su3_from_g2(standard_g2(flip=(0, 1, 2)))


def test_su3_identities_exact(su3):
    res = verify_su3_identities(su3)
    assert len(res) == 17
    assert all(v == 0.0 for v in res.values())
    assert all(v == 0.0 for v in su3_invariants(su3).values())


def test_star_omega_is_half_square(su3):
    np.testing.assert_array_equal(su3.star_omega, 0.5 * wedge(su3.omega, su3.omega))
    np.testing.assert_array_equal(star_omega_from(su3.omega), su3.star_omega)


def test_almost_complex_structure(su3):
    J = np.array([su3.J(e) for e in np.eye(6)])
    np.testing.assert_array_equal(J @ J, -np.eye(6))


@pytest.mark.parametrize("label,dim", [("Omega2_1", 1), ("Omega2_6", 6), ("Omega2_8", 8), ("S2_0", 20), ("S2_plus0", 8), ("S2_minus", 12)])
def test_su3_subspace_dimensions(su3, label, dim):
    assert su3_subspaces(su3.omega)[label].count == dim


def test_g2_subspace_dimensions(g2):
    subs = g2_subspaces(g2)
    assert subs["Omega2_7"].count == 7 and subs["Omega2_14"].count == 14


def test_p_map_eigenvalues(su3):
    B = two_form_basis(6)
    P = B.coords(p_map(B.elements, su3.star_omega)).T
    pairs = spectrum(0.5 * (P + P.T)).pairs()
    assert [m for _, m in pairs] == [8, 6, 1]
    np.testing.assert_allclose([v for v, _ in pairs], [-1, 1, 2], atol=1e-12)


@given(seeds)
def test_g2_projection(seed):
    m = standard_g2()
    beta = np.random.default_rng(seed).standard_normal((7, 7))
    beta = beta - beta.T
    b7, b14 = g2_project_2form(beta, m)
    np.testing.assert_allclose(b7 + b14, beta, atol=1e-12)
    # the 14-part is killed by contraction with phi
    np.testing.assert_allclose(np.einsum("ij,ijk->k", b14, m.phi), 0, atol=1e-12)
    assert abs(form_inner(b7, b14)) < 1e-10


@given(seeds)
def test_su3_projection(seed):
    m = su3_from_g2()
    beta = np.random.default_rng(seed).standard_normal((6, 6))
    beta = beta - beta.T
    lam, X, b8 = su3_project_2form(beta, m)
    np.testing.assert_allclose(lam * m.omega + interior(X, m.psi_plus) + b8, beta, atol=1e-12)
    np.testing.assert_allclose(p_map(b8, m.star_omega), -b8, atol=1e-12)


@given(seeds)
def test_sym2_split(seed):
    m = su3_from_g2()
    h = np.random.default_rng(seed).standard_normal((6, 6))
    h = h + h.T
    sp = sym2_split(h, m)
    np.testing.assert_allclose(sp.trace_part + sp.plus0 + sp.minus, h, atol=1e-12)
    w = m.omega
    np.testing.assert_allclose(sp.plus0 @ w, w @ sp.plus0, atol=1e-12)
    np.testing.assert_allclose(sp.minus @ w, -w @ sp.minus, atol=1e-12)
    assert abs(np.trace(sp.plus0)) < 1e-12


@given(seeds)
def test_decode_roundtrips(seed):
    rng = np.random.default_rng(seed)
    m = su3_from_g2()
    subs = su3_subspaces(m.omega)

    def pick(label):
        s = subs[label]
        return s.ambient.tensor(rng.standard_normal(s.count) @ s.vectors)

    X = rng.standard_normal(6)
    a, b = rng.standard_normal(2)
    h2 = a * np.eye(6) + interior(X, m.psi_plus) + pick("S2_plus0")
    np.testing.assert_allclose(decode_2form(diamond(h2, m.omega), m).h, h2, atol=1e-12)
    h3 = a * np.eye(6) + b * m.omega + interior(X, m.psi_plus) + pick("S2_minus")
    d3 = decode_3form(diamond(h3, m.psi_plus), m)
    np.testing.assert_allclose(d3.h, h3, atol=1e-12)
    assert abs(d3.lam - b) < 1e-12
    h4 = a * np.eye(6) + interior(X, m.psi_plus) + pick("S2_plus0")
    np.testing.assert_allclose(decode_4form(diamond(h4, m.star_omega), m).h, h4, atol=1e-12)
    g2 = standard_g2()
    S = rng.standard_normal((7, 7))
    A = S + S.T + interior(rng.standard_normal(7), g2.phi)
    np.testing.assert_allclose(g2_decode_3form(diamond(A, g2.phi), g2).A, A, atol=1e-12)


def test_diamond_of_metric_scales_degree(su3):
    # g acting as a derivation multiplies a k-form by k
    np.testing.assert_allclose(diamond(np.eye(6), su3.omega), 2 * su3.omega)
    np.testing.assert_allclose(diamond(np.eye(6), su3.psi_plus), 3 * su3.psi_plus)
