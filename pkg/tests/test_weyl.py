import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds
from curvlab.analysis import analyze
from curvlab.bounds import EinsteinData
from curvlab.errors import EinsteinFitError, PreconditionError
from curvlab.operators import restrict, spectrum
from curvlab.structures import g2_subspaces, standard_g2, su3_from_g2, su3_subspaces
from curvlab.tensors import curvature_residual, random_curvature_tensor, ricci
from curvlab.weyl import (
    nk_omega_curvature_identity,
    random_s2_minus,
    random_s2_plus0,
    synthetic_weyl,
    weyl_operators,
    weyl_space_basis,
    weyl_term_identity_g2,
    weyl_term_identity_nk2,
    weyl_term_identity_nk3,
)


@pytest.fixture(scope="module")
def bases():
    g2, su3 = standard_g2(), su3_from_g2()
    s8 = su3_subspaces(su3.omega)["Omega2_8"]
    s14 = g2_subspaces(g2)["Omega2_14"]
    return {"g2": g2, "su3": su3, "s8": s8, "s14": s14, "b8": weyl_space_basis(s8), "b14": weyl_space_basis(s14)}


def test_weyl_space_dimensions(bases):
    assert len(bases["b8"]) == 27
    assert len(bases["b14"]) == 77


@settings(max_examples=15)
@given(seeds)
def test_synthetic_weyl_is_weyl(bases, seed):
    W = synthetic_weyl(bases["s14"], np.random.default_rng(seed), basis=bases["b14"])
    assert curvature_residual(W.components) < 1e-10
    assert np.abs(ricci(W)).max() < 1e-10


@settings(max_examples=15)
@given(seeds)
def test_g2_identity_on_random_weyl(bases, seed):
    rng = np.random.default_rng(seed)
    W = synthetic_weyl(bases["s14"], rng, basis=bases["b14"])
    h = rng.standard_normal((7, 7))
    assert max(weyl_term_identity_g2(W, h + h.T, bases["g2"])) < 1e-9


@settings(max_examples=15)
@given(seeds)
def test_nk3_identity_on_random_weyl(bases, seed):
    rng = np.random.default_rng(seed)
    W = synthetic_weyl(bases["s8"], rng, basis=bases["b8"])
    assert weyl_term_identity_nk3(W, random_s2_minus(bases["su3"], rng), bases["su3"]) < 1e-9


@settings(max_examples=15)
@given(seeds)
def test_nk2_identity_on_s3xs3(seed):
    a = analyze("s3xs3")
    w = a.space.invariant_omega
    h = random_s2_plus0(w, np.random.default_rng(seed))
    assert weyl_term_identity_nk2(a.decomposition.W, h, w) < 1e-9


def test_nk2_precondition(bases):
    a = analyze("s3xs3")
    w = a.space.invariant_omega
    with pytest.raises(PreconditionError):
        weyl_term_identity_nk2(a.decomposition.W, np.eye(6), w)


def test_g2_identity_needs_weyl(bases):
    R = random_curvature_tensor(7, np.random.default_rng(0))
    with pytest.raises(PreconditionError):
        weyl_term_identity_g2(R, np.eye(7), bases["g2"])


def test_nk_omega_identity_on_s3xs3():
    a = analyze("s3xs3")
    assert nk_omega_curvature_identity(a.field.R, a.space.invariant_omega) < 1e-12


@pytest.mark.parametrize("sid,label", [("aw-su3xsu2", "Omega2_14"), ("s3xs3", "Omega2_8")])
def test_shift_formulas_match_decomposition(sid, label):
    a = analyze(sid)
    ops = weyl_operators(a.field.R, a.einstein)
    sub = a.subspace(label)
    via_shift = spectrum(restrict(ops.what, sub)).pairs()
    via_w = a.spectrum("what", label).pairs()
    np.testing.assert_allclose(via_shift, via_w, atol=1e-9)
    ring_shift = spectrum(ops.wring)
    ring_w = a.spectrum("wring", "S2_0")
    np.testing.assert_allclose(ring_shift.pairs(), ring_w.pairs(), atol=1e-9)


def test_weyl_operators_need_einstein():
    R = random_curvature_tensor(6, np.random.default_rng(3))
    with pytest.raises(EinsteinFitError):
        weyl_operators(R, EinsteinData(6, 1.0))
