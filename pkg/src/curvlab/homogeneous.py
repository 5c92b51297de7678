"""Normal homogeneous spaces described by structure constants.

A :class:`SpaceModel` stores a Lie algebra ``g = h + m`` through its
structure constants ``[e_i, e_j] = c[i, j, k] e_k``, a bi-invariant inner
product and an orthonormal frame of ``m``.  The Riemann tensor of the
normal metric is computed from brackets and ``h``-projections only.

Two built-in spaces come with an explicit matrix realization:

``aw-su3xsu2``
    ``SU(3) x SU(2) / U(1) x SU(2)`` with ``B = -(6 tr(uv) + 4 tr(wz))/24``.
``s3xs3``
    ``SU(2)^3 / SU(2)`` (the diagonal) with ``B = 1/3 sum tr(a^* u)``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import EinsteinFitError, PreconditionError, StructureIdentificationError
from .operators import (
    SubspaceBasis,
    complement,
    full_subspace,
    hat_matrix,
    subspace_from_projector,
    sym2_basis,
    traceless_subspace,
    two_form_basis,
)
from .structures import su3_subspaces
from .tensors import CurvatureTensor, ricci, sectional

AW = "aw-su3xsu2"
S3S3 = "s3xs3"
BUILTINS = (AW, S3S3)

Element = tuple  # tuple of complex matrices, one per simple factor

# su(2) with the identification R^3 -> su(2), v -> sum v_k E_k
I2 = np.array([[1j, 0], [0, -1j]])
J2 = np.array([[0, -1], [1, 0]], dtype=complex)
K2 = np.array([[0, 1j], [1j, 0]])
SU2_BASIS = tuple(M / np.sqrt(2) for M in (I2, J2, K2))


def su2(v: Sequence[float]) -> np.ndarray:
    """The su(2) matrix with coordinates ``v`` in the basis (I, J, K)/sqrt(2)."""
    return sum(c * E for c, E in zip(v, SU2_BASIS))


@dataclass(frozen=True, eq=False)
class Realization:
    """Matrix model of a Lie algebra used to build and probe a built-in space."""

    basis: tuple[Element, ...]
    metric: Callable[[Element, Element], float]
    bracket: Callable[[Element, Element], Element]

    def gram(self) -> np.ndarray:
        return np.array([[self.metric(a, b) for b in self.basis] for a in self.basis])

    def coords(self, x: Element) -> np.ndarray:
        rhs = np.array([self.metric(b, x) for b in self.basis])
        return np.linalg.solve(self.gram(), rhs)

    def element(self, c: Sequence[float]) -> Element:
        parts = [np.zeros_like(p) for p in self.basis[0]]
        for ci, b in zip(c, self.basis):
            parts = [p + ci * q for p, q in zip(parts, b)]
        return tuple(parts)


@dataclass(frozen=True)
class LieAlgebraElement:
    space_id: str
    coordinates: np.ndarray = field(compare=False)


@dataclass(frozen=True, eq=False)
class SpaceModel:
    space_id: str
    structure: np.ndarray  # c[i, j, k]
    metric: np.ndarray
    h_projector: np.ndarray
    m_projector: np.ndarray
    m_frame: np.ndarray  # rows: orthonormal frame of m in algebra coordinates
    h_indices: tuple[int, ...] = ()
    invariant_omega: np.ndarray | None = None
    realization: Realization | None = None

    @property
    def dim(self) -> int:
        return self.metric.shape[0]

    @property
    def m_dim(self) -> int:
        return self.m_frame.shape[0]

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("...i,...j,ijk->...k", x, y, self.structure)

    def inner(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("...i,ij,...j->...", x, self.metric, y)

    def element(self, coords: Sequence[float]) -> LieAlgebraElement:
        return LieAlgebraElement(self.space_id, np.asarray(coords, dtype=float))

    def from_matrices(self, x: Element) -> np.ndarray:
        """Algebra coordinates of a matrix element (built-in spaces only)."""
        if self.realization is None:
            raise PreconditionError(f"{self.space_id} has no matrix realization")
        return self.realization.coords(x)

    def frame_coords(self, x: np.ndarray) -> np.ndarray:
        """Components of an m-vector in the orthonormal frame."""
        return self.m_frame @ self.metric @ np.asarray(x, dtype=float)


def _coordinates(x: LieAlgebraElement | np.ndarray) -> np.ndarray:
    return x.coordinates if isinstance(x, LieAlgebraElement) else np.asarray(x, dtype=float)


def _h_projector(G: np.ndarray, H: np.ndarray) -> np.ndarray:
    """Metric-orthogonal projector onto the column span of ``H``."""
    if H.shape[1] == 0:
        return np.zeros_like(G)
    return H @ np.linalg.solve(H.T @ G @ H, H.T @ G)


def _orthonormal_range(G: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Rows forming a G-orthonormal basis of the range of the G-orthogonal projector P."""
    L = np.linalg.cholesky(G)
    Q = L.T @ P @ np.linalg.inv(L.T)  # orthogonal projector in Euclidean coordinates
    vals, vecs = np.linalg.eigh(0.5 * (Q + Q.T))
    Y = vecs[:, vals > 0.5]
    return np.linalg.solve(L.T, Y).T


def space_from_structure(
    space_id: str,
    structure: np.ndarray,
    metric: np.ndarray,
    h_indices: Sequence[int],
    m_frame: np.ndarray | None = None,
    invariant_omega: np.ndarray | None = None,
    realization: Realization | None = None,
    tol: float = 1e-10,
) -> SpaceModel:
    """Assemble and validate a :class:`SpaceModel` from raw Lie data."""
    c = np.asarray(structure, dtype=float)
    G = np.asarray(metric, dtype=float)
    n = G.shape[0]
    if c.shape != (n, n, n):
        raise ValueError(f"structure constants must have shape {(n, n, n)}")
    if np.max(np.abs(G - G.T)) > tol or np.min(np.linalg.eigvalsh(G)) <= 0:
        raise ValueError("metric must be symmetric positive definite")
    H = np.eye(n)[:, list(h_indices)]
    Ph = _h_projector(G, H)
    Pm = np.eye(n) - Ph
    frame = _orthonormal_range(G, Pm) if m_frame is None else np.asarray(m_frame, dtype=float)
    s = SpaceModel(space_id, c, G, Ph, Pm, frame, tuple(int(i) for i in h_indices), invariant_omega, realization)
    _validate_space(s, tol)
    return s


def _validate_space(s: SpaceModel, tol: float) -> None:
    F = s.m_frame
    gram = F @ s.metric @ F.T
    if np.max(np.abs(gram - np.eye(len(F))), initial=0.0) > tol:
        raise StructureIdentificationError("m-frame is not orthonormal")
    if np.max(np.abs(s.m_projector @ F.T - F.T), initial=0.0) > tol:
        raise StructureIdentificationError("m-frame does not lie in m")
    if len(F) != round(np.trace(s.m_projector)):
        raise StructureIdentificationError("m-frame does not span m")
    if np.max(np.abs(s.structure + s.structure.transpose(1, 0, 2))) > tol:
        raise StructureIdentificationError("bracket is not antisymmetric")
    if jacobi_residual(s) > tol:
        raise StructureIdentificationError("bracket violates the Jacobi identity")
    if invariance_residual(s) > tol:
        raise StructureIdentificationError("metric is not ad-invariant")
    Hb = s.h_projector  # columns span h
    hh = np.einsum("ip,jq,ijk->pqk", Hb, Hb, s.structure)
    if np.max(np.abs(np.einsum("kl,pql->pqk", s.m_projector, hh))) > tol:
        raise StructureIdentificationError("[h, h] is not contained in h")


def jacobi_residual(s: SpaceModel) -> float:
    """Max violation of the Jacobi identity over all basis triples."""
    c = s.structure
    cc = np.einsum("jkm,iml->ijkl", c, c)  # [e_i, [e_j, e_k]]
    total = cc + np.einsum("ijkl->jkil", cc) + np.einsum("ijkl->kijl", cc)
    return float(np.max(np.abs(total)))


def invariance_residual(s: SpaceModel) -> float:
    """Max of ``|<[x, y], z> + <y, [x, z]>|`` over basis triples."""
    cG = np.einsum("ijk,kl->ijl", s.structure, s.metric)  # <[e_i, e_j], e_l>
    return float(np.max(np.abs(cG + np.einsum("ijl->ilj", cG))))


def project_hm(x: LieAlgebraElement | np.ndarray, s: SpaceModel) -> tuple[np.ndarray, np.ndarray]:
    """Split ``x`` into its ``h`` and ``m`` components."""
    v = _coordinates(x)
    return s.h_projector @ v, s.m_projector @ v


def _curvature_from_brackets(s: SpaceModel, Bxw, Byz, Bxz, Byw, Bzw, Bxy):
    G, Ph = s.metric, s.h_projector

    def ip(u, v):
        return np.einsum("...i,ij,...j->...", u, G, v)

    def iph(u, v):
        return ip(u @ Ph.T, v @ Ph.T)

    return (
        0.25 * (ip(Bxw, Byz) - ip(Bxz, Byw))
        + 0.25 * (iph(Bxw, Byz) - iph(Bxz, Byw))
        - 0.5 * iph(Bzw, Bxy)
    )


def normal_curvature(s: SpaceModel, X, Y, Z, W) -> float:
    """``R(X, Y, Z, W)`` for the normal metric, with ``X .. W`` in ``m``."""
    vs = [_coordinates(v) for v in (X, Y, Z, W)]
    for v in vs:
        if np.max(np.abs(s.m_projector @ v - v)) > 1e-12:
            raise PreconditionError("curvature arguments must lie in m")
    X, Y, Z, W = vs
    b = s.bracket
    return float(_curvature_from_brackets(s, b(X, W), b(Y, Z), b(X, Z), b(Y, W), b(Z, W), b(X, Y)))


@dataclass(frozen=True, eq=False)
class CurvatureField:
    R: CurvatureTensor
    einstein_k: float
    fit_residual: float

    @property
    def scalar(self) -> float:
        return float(np.trace(ricci(self.R)))


def riemann_components(s: SpaceModel, require_einstein: bool = True, tol: float = 1e-10) -> CurvatureField:
    """Tabulate the curvature tensor in the m-frame and fit ``Ric = k g``."""
    F = s.m_frame
    B = s.bracket(F[:, None, :], F[None, :, :])  # B[i, j] = [F_i, F_j]
    G, Ph = s.metric, s.h_projector
    M = np.einsum("ijp,pq,klq->ijkl", B, G, B)
    Bh = B @ Ph.T
    Mh = np.einsum("ijp,pq,klq->ijkl", Bh, G, Bh)
    # R_ijkl with X=i, Y=j, Z=k, W=l
    R = (
        0.25 * (np.einsum("iljk->ijkl", M) - np.einsum("ikjl->ijkl", M))
        + 0.25 * (np.einsum("iljk->ijkl", Mh) - np.einsum("ikjl->ijkl", Mh))
        - 0.5 * np.einsum("klij->ijkl", Mh)
    )
    Rt = CurvatureTensor.from_array(R, tol=1e-12)
    ric = ricci(Rt)
    n = len(F)
    k = float(np.trace(ric)) / n
    resid = float(np.max(np.abs(ric - k * np.eye(n))))
    if require_einstein and resid >= tol:
        raise EinsteinFitError(f"{s.space_id}: Ric - kg residual {resid:.3e}")
    return CurvatureField(Rt, k, resid)


def distinguished_subspaces(s: SpaceModel, cf: CurvatureField) -> dict[str, SubspaceBasis]:
    """Subspaces of 2-forms and symmetric tensors relevant to the space's structure.

    Every space gets ``Omega2_full``, ``S2_full`` and ``S2_0``.  A 6-dimensional
    space with an invariant 2-form also gets the SU(3) pieces.  A 7-dimensional
    Einstein space gets ``Omega2_7`` as the eigenspace of ``R^`` at ``-k/3`` and
    ``Omega2_14`` as its complement; the eigenspace must be exactly 7-dimensional.
    """
    n = s.m_dim
    out = {
        "Omega2_full": full_subspace(two_form_basis(n)),
        "S2_full": full_subspace(sym2_basis(n)),
        "S2_0": traceless_subspace(n),
    }
    if s.invariant_omega is not None and n == 6:
        out.update(su3_subspaces(s.invariant_omega))
    elif n == 7:
        target = -cf.einstein_k / 3
        M = hat_matrix(cf.R).entries
        vals, vecs = np.linalg.eigh(M)
        sel = np.abs(vals - target) < 1e-6
        if sel.sum() != 7:
            raise StructureIdentificationError(
                f"eigenspace at {target:.6g} has dimension {int(sel.sum())}, expected 7"
            )
        P7 = vecs[:, sel] @ vecs[:, sel].T
        o7 = subspace_from_projector("Omega2_7", two_form_basis(7), P7)
        out["Omega2_7"] = o7
        out["Omega2_14"] = complement(o7, "Omega2_14")
    return out


# ---------------------------------------------------------------------------
# sectional curvature search


@dataclass(frozen=True, eq=False)
class SectionalExtremes:
    min_found: float
    max_found: float
    min_plane: tuple[str, np.ndarray, np.ndarray]
    max_plane: tuple[str, np.ndarray, np.ndarray]
    samples: int
    seed: int
    witness_values: dict[str, float]


def witness_planes(s: SpaceModel) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Explicit 2-planes (in frame coordinates) singled out for each built-in space."""
    if s.realization is None:
        return {}
    conv = lambda x: s.frame_coords(s.from_matrices(x))  # noqa: E731
    if s.space_id == AW:
        r2 = np.sqrt(2)
        return {
            "g2(z)^g2(w)": (conv(aw_g2(r2 * np.array([1, 0]))), conv(aw_g2(r2 * np.array([1j, 0])))),
            "f2(a)^g2(w)": (
                conv(aw_f2(-np.sqrt(5) / 5 * I2)),
                conv(aw_g2(r2 * np.array([0, 1j]))),
            ),
        }
    if s.space_id == S3S3:
        e = np.eye(6)
        return {"e1^e2": (e[0], e[1]), "e1^e4": (e[0], e[3])}
    return {}


def _random_planes(rng: np.random.Generator, count: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    X = rng.standard_normal((count, n))
    Y = rng.standard_normal((count, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y -= np.sum(X * Y, axis=1, keepdims=True) * X
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return X, Y


def sample_sectional(R: np.ndarray, rng: np.random.Generator, count: int, chunk: int = 5000):
    """Sectional curvatures of ``count`` Haar-random orthonormal 2-frames."""
    n = R.shape[0]
    vals, Xs, Ys = [], [], []
    done = 0
    while done < count:
        m = min(chunk, count - done)
        X, Y = _random_planes(rng, m, n)
        RX = np.einsum("ijkl,ni,nl->njk", R, X, X, optimize=True)
        vals.append(np.einsum("njk,nj,nk->n", RX, Y, Y))
        Xs.append(X)
        Ys.append(Y)
        done += m
    if not vals:
        return np.zeros(0), np.zeros((0, n)), np.zeros((0, n))
    return np.concatenate(vals), np.concatenate(Xs), np.concatenate(Ys)


def partition_sizes(samples: int, partitions: int) -> list[int]:
    """Split ``samples`` into ``partitions`` near-equal chunks (earlier ones larger)."""
    parts = max(partitions, 1)
    return [samples // parts + (i < samples % parts) for i in range(parts)]


def partition_rng(seed: int, partitions: int, index: int) -> np.random.Generator:
    """Generator for one sampling partition, derived only from ``(seed, index)``."""
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(partitions)[index])


def sectional_extremes(
    s: SpaceModel,
    cf: CurvatureField,
    samples: int,
    seed: int,
    partitions: int = 1,
) -> SectionalExtremes:
    """Smallest and largest sectional curvature over random planes plus witnesses.

    Each partition draws from its own stream spawned from ``seed``, so the
    result depends only on ``(samples, seed, partitions)``.  The minimum is a
    best-found value, not a certified global minimum.
    """
    if samples < 0:
        raise ValueError("samples must be non-negative")
    R = cf.R.components
    best_lo = (np.inf, "", None, None)
    best_hi = (-np.inf, "", None, None)
    witness_values = {}
    for label, (X, Y) in witness_planes(s).items():
        v = sectional(R, X, Y)
        witness_values[label] = v
        if v < best_lo[0]:
            best_lo = (v, label, X, Y)
        if v > best_hi[0]:
            best_hi = (v, label, X, Y)
    sizes = partition_sizes(samples, partitions)
    for p, size in enumerate(sizes):
        vals, X, Y = sample_sectional(R, partition_rng(seed, len(sizes), p), size)
        if len(vals) == 0:
            continue
        i, j = int(np.argmin(vals)), int(np.argmax(vals))
        if vals[i] < best_lo[0]:
            best_lo = (float(vals[i]), f"sample[{p}:{i}]", X[i], Y[i])
        if vals[j] > best_hi[0]:
            best_hi = (float(vals[j]), f"sample[{p}:{j}]", X[j], Y[j])
    if best_lo[2] is None:
        raise PreconditionError("no planes evaluated: give samples > 0 or a space with witnesses")
    return SectionalExtremes(
        float(best_lo[0]),
        float(best_hi[0]),
        best_lo[1:],
        best_hi[1:],
        samples,
        seed,
        witness_values,
    )


# ---------------------------------------------------------------------------
# built-in spaces


def _pair_bracket(x: Element, y: Element) -> Element:
    return tuple(a @ b - b @ a for a, b in zip(x, y))


def _blk(a: np.ndarray) -> np.ndarray:
    M = np.zeros((3, 3), dtype=complex)
    M[:2, :2] = a
    return M


def aw_metric(x: Element, y: Element) -> float:
    return float((-(6 * np.trace(x[0] @ y[0]) + 4 * np.trace(x[1] @ y[1])) / 24).real)


def aw_f1(a: np.ndarray) -> Element:
    return (_blk(a), np.asarray(a, dtype=complex))


def aw_f2(a: np.ndarray) -> Element:
    return (_blk(2 * a), -3 * np.asarray(a, dtype=complex))


def aw_g1(r: float) -> Element:
    return (r * np.diag([1j, 1j, -2j]), np.zeros((2, 2), dtype=complex))


def aw_g2(z: Sequence[complex]) -> Element:
    z = np.asarray(z, dtype=complex)
    M = np.zeros((3, 3), dtype=complex)
    M[:2, 2] = z
    M[2, :2] = -np.conj(z)
    return (M, np.zeros((2, 2), dtype=complex))


def _aw_space() -> SpaceModel:
    h = [aw_g1(np.sqrt(2 / 3))] + [aw_f1(np.sqrt(12 / 5) * E) for E in SU2_BASIS]
    r2 = np.sqrt(2)
    m = [aw_f2(np.sqrt(2 / 5) * E) for E in SU2_BASIS] + [
        aw_g2(r2 * np.array(v)) for v in ((1, 0), (1j, 0), (0, 1), (0, 1j))
    ]
    return _space_from_realization(AW, Realization(tuple(h + m), aw_metric, _pair_bracket), len(h))


def s3_metric(x: Element, y: Element) -> float:
    return float(sum(np.trace(a.conj().T @ b) for a, b in zip(x, y)).real / 3)


def s3_f(a: np.ndarray) -> Element:
    return (a, a, a)


def s3_g(b: np.ndarray, c: np.ndarray) -> Element:
    return (b, c, -(b + c))


def s3_J(x: Element) -> Element:
    """The almost complex structure ``J(a, b, c) = 2/sqrt3 (b, c, a) + 1/sqrt3 (a, b, c)``."""
    a, b, c = x
    r = 1 / np.sqrt(3)
    return (2 * r * b + r * a, 2 * r * c + r * b, 2 * r * a + r * c)


def _s3_space() -> SpaceModel:
    h = [s3_f(E) for E in SU2_BASIS]
    zero = np.zeros((2, 2), dtype=complex)
    q = np.sqrt(3) / 2
    m = [s3_g(q * M, zero) for M in (I2, J2, K2)] + [s3_g(M / 2, -M) for M in (I2, J2, K2)]
    real = Realization(tuple(h + m), s3_metric, _pair_bracket)
    omega = np.array([[s3_metric(s3_J(x), y) for y in m] for x in m])
    return _space_from_realization(S3S3, real, len(h), invariant_omega=omega)


def _space_from_realization(space_id, real: Realization, n_h: int, invariant_omega=None) -> SpaceModel:
    G = real.gram()
    n = len(real.basis)
    c = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            br = real.bracket(real.basis[i], real.basis[j])
            coeff = real.coords(br)
            back = real.element(coeff)
            if max(np.max(np.abs(p - q)) for p, q in zip(back, br)) > 1e-12:
                raise StructureIdentificationError("basis does not span the algebra")
            c[i, j] = coeff
    frame = np.eye(n)[n_h:]
    frame = np.linalg.solve(np.linalg.cholesky(G[n_h:, n_h:]).T, np.eye(n - n_h)).T @ frame
    return space_from_structure(space_id, c, G, range(n_h), frame, invariant_omega, real)


_BUILDERS = {AW: _aw_space, S3S3: _s3_space}


def build_space(space_id: str) -> SpaceModel:
    """Construct a built-in space by id, or load a JSON description from a path."""
    if space_id in _BUILDERS:
        return _BUILDERS[space_id]()
    if os.path.exists(space_id):
        return load_space(space_id)
    raise ValueError(f"unknown space {space_id!r}; built-ins are {', '.join(BUILTINS)}")


# ---------------------------------------------------------------------------
# JSON interchange


def space_to_dict(s: SpaceModel) -> dict:
    c = s.structure
    triples = [
        [int(i), int(j), int(k), float(c[i, j, k])]
        for i, j, k in zip(*np.nonzero(np.abs(c) > 1e-15))
        if i < j
    ]
    out = {
        "id": s.space_id,
        "dim": s.dim,
        "bracket": triples,
        "metric": s.metric.tolist(),
        "h_indices": list(s.h_indices),
        "m_frame": s.m_frame.tolist(),
    }
    if s.invariant_omega is not None:
        out["invariant_omega"] = s.invariant_omega.tolist()
    return out


def space_from_dict(d: dict) -> SpaceModel:
    n = int(d["dim"])
    c = np.zeros((n, n, n))
    for i, j, k, v in d["bracket"]:
        c[i, j, k] = v
        c[j, i, k] = -v
    frame = np.array(d["m_frame"]) if "m_frame" in d else None
    omega = np.array(d["invariant_omega"]) if "invariant_omega" in d else None
    return space_from_structure(d.get("id", "custom"), c, np.array(d["metric"], dtype=float), d["h_indices"], frame, omega)


def load_space(path: str | Path) -> SpaceModel:
    with open(path) as fh:
        return space_from_dict(json.load(fh))
