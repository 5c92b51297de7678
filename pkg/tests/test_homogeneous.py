import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import seeds
from curvlab.analysis import analyze
from curvlab.errors import StructureIdentificationError
from curvlab.homogeneous import (
    AW,
    S3S3,
    build_space,
    invariance_residual,
    jacobi_residual,
    load_space,
    riemann_components,
    sample_sectional,
    sectional_extremes,
    space_from_dict,
    space_from_structure,
    space_to_dict,
)
from curvlab.tensors import curvature_residual, ricci, sectional


def _eps():
    c = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k], c[j, i, k] = 1, -1
    return c


def test_bi_invariant_su2_is_quarter_sphere():
    s = space_from_structure("su2", _eps(), np.eye(3), [])
    cf = riemann_components(s)
    assert cf.einstein_k == pytest.approx(0.5, abs=1e-14)
    rng = np.random.default_rng(0)
    for _ in range(20):
        X, Y = rng.standard_normal((2, 3))
        assert sectional(cf.R, X, Y) == pytest.approx(0.25, abs=1e-12)


def test_round_two_sphere_as_quotient():
    s = space_from_structure("s2", _eps(), np.eye(3), [2])
    cf = riemann_components(s)
    assert s.m_dim == 2
    assert sectional(cf.R, np.array([1.0, 0]), np.array([0, 1.0])) == pytest.approx(1.0, abs=1e-14)


def test_broken_jacobi_rejected():
    c = _eps()
    c[0, 1, 0], c[1, 0, 0] = 1, -1
    with pytest.raises(StructureIdentificationError):
        space_from_structure("bad", c, np.eye(3), [])


def test_non_invariant_metric_rejected():
    with pytest.raises(StructureIdentificationError):
        space_from_structure("bad", _eps(), np.diag([1.0, 2.0, 3.0]), [])


@pytest.mark.parametrize("sid,dim,mdim,k,scal", [(AW, 11, 7, 54 / 5, 378 / 5), (S3S3, 9, 6, 5.0, 30.0)])
def test_builtin_spaces(sid, dim, mdim, k, scal):
    a = analyze(sid)
    assert a.space.dim == dim and a.space.m_dim == mdim
    assert jacobi_residual(a.space) < 1e-12
    assert invariance_residual(a.space) < 1e-12
    R = a.field.R.components
    assert curvature_residual(R) < 1e-12
    np.testing.assert_allclose(ricci(R), k * np.eye(mdim), atol=1e-10)
    assert a.field.scalar == pytest.approx(scal, abs=1e-10)


def test_witness_planes():
    aw = sectional_extremes(analyze(AW).space, analyze(AW).field, 0, 0)
    assert aw.witness_values["g2(z)^g2(w)"] == pytest.approx(37 / 5, abs=1e-9)
    assert aw.witness_values["f2(a)^g2(w)"] == pytest.approx(1 / 5, abs=1e-9)
    s3 = sectional_extremes(analyze(S3S3).space, analyze(S3S3).field, 0, 0)
    assert s3.witness_values == pytest.approx({"e1^e2": 9 / 4, "e1^e4": 0.0}, abs=1e-12)


@settings(max_examples=5)
@given(seeds)
def test_random_planes_respect_range(seed):
    for sid, lo, hi in ((AW, 1 / 5, 37 / 5), (S3S3, 0.0, 9 / 4)):
        a = analyze(sid)
        ext = sectional_extremes(a.space, a.field, 3000, seed)
        assert lo - 1e-9 <= ext.min_found <= ext.max_found <= hi + 1e-9


def test_sectional_extremes_deterministic():
    a = analyze(S3S3)
    e1 = sectional_extremes(a.space, a.field, 4000, 7, partitions=3)
    e2 = sectional_extremes(a.space, a.field, 4000, 7, partitions=3)
    assert (e1.min_found, e1.max_found) == (e2.min_found, e2.max_found)


def test_sample_sectional_shapes():
    R = analyze(S3S3).field.R.components
    vals, X, Y = sample_sectional(R, np.random.default_rng(1), 12000)
    assert vals.shape == (12000,) and X.shape == (12000, 6)


def test_json_roundtrip(tmp_path):
    for sid in (S3S3, AW):
        s = build_space(sid)
        d = space_to_dict(s)
        path = tmp_path / f"{sid}.json"
        path.write_text(json.dumps(d))
        s2 = load_space(path)
        np.testing.assert_allclose(riemann_components(s2).R.components, riemann_components(s).R.components, atol=1e-10)
        assert space_from_dict(json.loads(path.read_text())).m_dim == s.m_dim


def test_build_space_unknown():
    with pytest.raises((ValueError, OSError)):
        build_space("no-such-space")


@pytest.mark.parametrize(
    "sid,label,dim",
    [(AW, "Omega2_7", 7), (AW, "Omega2_14", 14), (S3S3, "Omega2_8", 8), (S3S3, "S2_plus0", 8), (S3S3, "S2_minus", 12)],
)
def test_distinguished_subspaces(sid, label, dim):
    assert analyze(sid).subspace(label).count == dim


@given(st.integers(0, 10_000), st.integers(1, 9))
def test_partition_sizes(samples, parts):
    from curvlab.homogeneous import partition_sizes

    sizes = partition_sizes(samples, parts)
    assert sum(sizes) == samples and len(sizes) == parts
    assert max(sizes) - min(sizes) <= 1


def test_partitions_merge_like_one_pass():
    from curvlab.homogeneous import partition_rng, partition_sizes

    a = analyze(S3S3)
    R = a.field.R.components
    sizes = partition_sizes(5000, 4)
    lows = [sample_sectional(R, partition_rng(3, 4, i), n)[0].min() for i, n in enumerate(sizes)]
    # merge order does not matter
    assert min(lows) == min(reversed(lows))
    ext = sectional_extremes(a.space, a.field, 5000, 3, partitions=4)
    assert ext.min_found <= min(lows)
