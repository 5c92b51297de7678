from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import forms, seeds
from curvlab.errors import (
    CurvatureValidationError,
    DegeneratePlaneError,
    RankMismatchError,
    UnsupportedRankError,
)
from curvlab.tensors import (
    CurvatureTensor,
    antisymmetry_residual,
    basis_form,
    check_tensor,
    curvature_residual,
    form_inner,
    hodge_star,
    kulkarni_nomizu,
    permutation_sign,
    random_curvature_tensor,
    ricci,
    riemann_decompose,
    sectional,
    wedge,
)

dims = st.integers(2, 7)


@st.composite
def form_triple(draw):
    n = draw(st.integers(3, 7))
    k = draw(st.integers(0, 2))
    l = draw(st.integers(0, 2))
    m = draw(st.integers(0, n - k - l)) if n - k - l >= 0 else 0
    m = min(m, 2)
    return n, draw(forms(n, k, True)), draw(forms(n, l, True)), draw(forms(n, m, True))


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1
    assert permutation_sign([0, 0, 1]) == 0


def test_wedge_of_basis_covectors():
    e = [basis_form(4, (i,)) for i in range(4)]
    w = wedge(e[0], e[1])
    assert w[0, 1] == 1 and w[1, 0] == -1
    assert np.array_equal(wedge(wedge(e[0], e[1]), wedge(e[2], e[3])), basis_form(4, (0, 1, 2, 3)))


@given(form_triple())
def test_wedge_associative(data):
    n, a, b, c = data
    if a.ndim + b.ndim + c.ndim > n:
        return
    assert np.array_equal(wedge(wedge(a, b), c), wedge(a, wedge(b, c)))


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 3), st.integers(0, 3))), st.data())
def test_wedge_graded_commutative(nkl, data):
    n, k, l = nkl
    if k + l > n:
        return
    a = data.draw(forms(n, k, True))
    b = data.draw(forms(n, l, True))
    assert np.array_equal(wedge(a, b), (-1) ** (k * l) * wedge(b, a))


def test_wedge_rank_overflow():
    with pytest.raises(UnsupportedRankError):
        wedge(basis_form(3, (0, 1)), basis_form(3, (1, 2)))


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.data())
def test_hodge_involution(nk, data):
    n, k = nk
    a = data.draw(forms(n, k))
    for o in (1, -1):
        np.testing.assert_allclose(hodge_star(hodge_star(a, n, o), n, o), (-1) ** (k * (n - k)) * a, atol=1e-12)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.data())
def test_hodge_pairing_gives_volume(nk, data):
    n, k = nk
    a = data.draw(forms(n, k))
    b = data.draw(forms(n, k))
    lhs = wedge(a, hodge_star(b, n))
    vol = basis_form(n, tuple(range(n)))
    np.testing.assert_allclose(lhs, form_inner(a, b) * vol, atol=1e-10)


def test_hodge_of_one_and_basis():
    assert np.array_equal(hodge_star(np.array(1.0), 3), basis_form(3, (0, 1, 2)))
    assert np.array_equal(hodge_star(basis_form(3, (0,)), 3), basis_form(3, (1, 2)))
    assert np.array_equal(hodge_star(np.array(1.0), 3, orientation=-1), -basis_form(3, (0, 1, 2)))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(0, min(n, 3) + 1)])
def test_basis_forms_orthonormal(n, k):
    basis = [basis_form(n, c) for c in combinations(range(n), k)]
    G = np.array([[form_inner(a, b) for b in basis] for a in basis])
    assert G.shape == (comb(n, k), comb(n, k))
    np.testing.assert_array_equal(G, np.eye(len(basis)))


def test_check_tensor_rejects():
    with pytest.raises(UnsupportedRankError):
        check_tensor(np.zeros((2, 3)))
    with pytest.raises(UnsupportedRankError):
        check_tensor(np.zeros((9, 9)))
    with pytest.raises(ValueError):
        check_tensor(np.full((2, 2), np.nan))
    with pytest.raises(RankMismatchError):
        check_tensor(np.zeros((3, 3)), rank=3)


def test_antisymmetry_residual():
    assert antisymmetry_residual(basis_form(4, (0, 2))) == 0
    assert antisymmetry_residual(np.eye(3)) > 0


@given(dims.filter(lambda n: n >= 2), seeds)
def test_kulkarni_nomizu_is_curvature(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    b = rng.standard_normal((n, n))
    s, t = a + a.T, b + b.T
    kn = kulkarni_nomizu(s, t)
    assert curvature_residual(kn.components) < 1e-12
    np.testing.assert_allclose(kn.components, kulkarni_nomizu(t, s).components, atol=1e-12)


def test_kulkarni_nomizu_gg():
    for n in range(2, 8):
        R = kulkarni_nomizu(np.eye(n), np.eye(n))
        assert sectional(R, np.eye(n)[0], np.eye(n)[1]) == 2.0
        np.testing.assert_array_equal(ricci(R), 2 * (n - 1) * np.eye(n))


def test_curvature_tensor_validation():
    A = np.zeros((3, 3, 3, 3))
    A[0, 1, 0, 1] = 1
    with pytest.raises(CurvatureValidationError):
        CurvatureTensor.from_array(A)


@given(st.integers(3, 7), seeds)
def test_decomposition_reassembles(n, seed):
    R = random_curvature_tensor(n, np.random.default_rng(seed))
    d = riemann_decompose(R)
    np.testing.assert_allclose(d.S.components + d.E.components + d.W.components, R.components, atol=1e-12)
    assert np.abs(ricci(d.W)).max() < 1e-12
    np.testing.assert_allclose(np.trace(ricci(d.S)), d.scalar, atol=1e-10)
    assert abs(np.trace(ricci(d.E))) < 1e-10
    # the three parts are mutually orthogonal
    for X, Y in ((d.S, d.E), (d.S, d.W), (d.E, d.W)):
        assert abs(np.sum(X.components * Y.components)) < 1e-10


def test_decomposition_needs_three_dims(rng):
    with pytest.raises(UnsupportedRankError):
        riemann_decompose(random_curvature_tensor(2, rng))


@given(st.integers(2, 7), seeds)
def test_random_integer_tensor_exact(n, seed):
    R = random_curvature_tensor(n, np.random.default_rng(seed), integer=True)
    assert R.symmetry_residual == 0.0
    assert np.all(R.components == np.round(R.components))


@given(st.integers(2, 6), seeds, st.floats(-3, 3), st.floats(0.1, 3))
def test_sectional_plane_invariance(n, seed, shear, scale):
    rng = np.random.default_rng(seed)
    R = random_curvature_tensor(n, rng)
    X, Y = rng.standard_normal((2, n))
    base = sectional(R, X, Y)
    np.testing.assert_allclose(sectional(R, scale * X, Y + shear * X), base, rtol=1e-7, atol=1e-9)


def test_sectional_degenerate():
    R = kulkarni_nomizu(np.eye(3), np.eye(3))
    with pytest.raises(DegeneratePlaneError):
        sectional(R, np.array([1.0, 0, 0]), np.array([2.0, 0, 0]))


def test_curvature_arithmetic(rng):
    R = random_curvature_tensor(4, rng)
    np.testing.assert_allclose((R + R - R * 2).components, 0, atol=1e-14)
    assert R.dim == 4
