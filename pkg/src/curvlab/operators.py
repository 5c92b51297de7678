"""Matrices of curvature operators on 2-forms and symmetric 2-tensors.

Both bases are orthonormal: ``e_i ^ e_j`` (i < j) for 2-forms and
``{e_i (x) e_i, (e_i (x) e_j + e_j (x) e_i)/sqrt(2)}`` for ``S^2``.  The
orthonormal symmetric basis keeps the ring operator's matrix symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import CurvlabError, StructureIdentificationError, SubspaceLeakError
from .tensors import CurvatureTensor, as_array

TWO_FORMS = "two_forms"
SYM2 = "sym2"

LEAK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class FormBasis:
    """Orthonormal basis of 2-forms or symmetric 2-tensors on R^n."""

    kind: str
    dim: int
    elements: np.ndarray  # shape (count, dim, dim)

    @property
    def count(self) -> int:
        return self.elements.shape[0]

    @property
    def _weight(self) -> float:
        return 0.5 if self.kind == TWO_FORMS else 1.0

    def coords(self, t: np.ndarray) -> np.ndarray:
        """Coefficients of ``t`` (or of a stack of tensors) in this basis."""
        return self._weight * np.einsum("aij,...ij->...a", self.elements, np.asarray(t, dtype=float))

    def tensor(self, c: np.ndarray) -> np.ndarray:
        """Tensor with coefficient vector ``c`` (or a stack of them)."""
        return np.einsum("...a,aij->...ij", np.asarray(c, dtype=float), self.elements)

    def same_as(self, other: "FormBasis") -> bool:
        return self.kind == other.kind and self.dim == other.dim


@lru_cache(maxsize=None)
def two_form_basis(n: int) -> FormBasis:
    els = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n))
            e[i, j], e[j, i] = 1.0, -1.0
            els.append(e)
    arr = np.array(els).reshape(-1, n, n)
    arr.setflags(write=False)
    return FormBasis(TWO_FORMS, n, arr)


@lru_cache(maxsize=None)
def sym2_basis(n: int) -> FormBasis:
    els = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            if i == j:
                e[i, i] = 1.0
            else:
                e[i, j] = e[j, i] = 1 / np.sqrt(2)
            els.append(e)
    arr = np.array(els)
    arr.setflags(write=False)
    return FormBasis(SYM2, n, arr)


def _theoretical_dim(label: str, ambient: FormBasis) -> int:
    fixed = {
        "Omega2_7": 7,
        "Omega2_14": 14,
        "Omega2_1": 1,
        "Omega2_6": 6,
        "Omega2_8": 8,
        "S2_plus0": 8,
        "S2_minus": 12,
    }
    if label in fixed:
        return fixed[label]
    if label in ("S2_full", "Omega2_full"):
        return ambient.count
    if label == "S2_0":
        return ambient.count - 1
    raise ValueError(f"unknown subspace label {label!r}")


SUBSPACE_LABELS = (
    "Omega2_full",
    "Omega2_7",
    "Omega2_14",
    "Omega2_1",
    "Omega2_6",
    "Omega2_8",
    "S2_full",
    "S2_0",
    "S2_plus0",
    "S2_minus",
)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal coefficient vectors (rows) spanning a labelled subspace."""

    label: str
    ambient: FormBasis
    vectors: np.ndarray

    def __post_init__(self):
        V = self.vectors
        if V.ndim != 2 or V.shape[1] != self.ambient.count:
            raise ValueError("subspace vectors do not match the ambient basis")
        want = _theoretical_dim(self.label, self.ambient)
        if V.shape[0] != want:
            raise StructureIdentificationError(f"{self.label} has dimension {V.shape[0]}, expected {want}")
        err = np.max(np.abs(V @ V.T - np.eye(V.shape[0])), initial=0.0)
        if err > 1e-12:
            raise ValueError(f"subspace vectors not orthonormal (error {err:.2e})")

    @property
    def projector(self) -> np.ndarray:
        return self.vectors.T @ self.vectors

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    def tensors(self) -> np.ndarray:
        """The subspace basis as a stack of ambient tensors."""
        return self.ambient.tensor(self.vectors)


def subspace_from_projector(label: str, ambient: FormBasis, P: np.ndarray) -> SubspaceBasis:
    """Orthonormal basis for the range of a symmetric projector."""
    P = 0.5 * (P + P.T)
    vals, vecs = np.linalg.eigh(P)
    V = vecs[:, vals > 0.5].T
    # re-orthonormalise to machine precision
    q, _ = np.linalg.qr(V.T)
    return SubspaceBasis(label, ambient, np.ascontiguousarray(q.T))


def full_subspace(ambient: FormBasis) -> SubspaceBasis:
    label = "Omega2_full" if ambient.kind == TWO_FORMS else "S2_full"
    return SubspaceBasis(label, ambient, np.eye(ambient.count))


def traceless_subspace(n: int) -> SubspaceBasis:
    """``S^2_0``: symmetric tensors orthogonal to the metric."""
    amb = sym2_basis(n)
    u = amb.coords(np.eye(n)) / np.sqrt(n)
    return subspace_from_projector("S2_0", amb, np.eye(amb.count) - np.outer(u, u))


def complement(sub: SubspaceBasis, label: str) -> SubspaceBasis:
    return subspace_from_projector(label, sub.ambient, np.eye(sub.ambient.count) - sub.projector)


Basis = Union[FormBasis, SubspaceBasis]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    basis: Basis
    entries: np.ndarray

    def __post_init__(self):
        M = self.entries
        if M.shape != (self.basis.count, self.basis.count):
            raise ValueError(f"matrix shape {M.shape} does not match basis size {self.basis.count}")
        asym = np.max(np.abs(M - M.T), initial=0.0)
        if asym > 1e-10:
            raise ValueError(f"operator matrix not symmetric (error {asym:.2e})")

    def shifted(self, c: float) -> "OperatorMatrix":
        """``self + c * Id``."""
        return OperatorMatrix(self.basis, self.entries + c * np.eye(self.basis.count))


def apply_hat(R: CurvatureTensor | np.ndarray, beta: np.ndarray) -> np.ndarray:
    """``(R^ beta)_ij = R_ijkl beta_kl``."""
    return np.einsum("ijkl,...kl->...ij", as_array(R), beta)


def apply_ring(R: CurvatureTensor | np.ndarray, h: np.ndarray) -> np.ndarray:
    """``(R° h)_ij = R_kilj h_kl``."""
    return np.einsum("kilj,...kl->...ij", as_array(R), h)


def hat_matrix(R: CurvatureTensor | np.ndarray) -> OperatorMatrix:
    A = as_array(R)
    basis = two_form_basis(A.shape[0])
    E = basis.elements
    return OperatorMatrix(basis, basis.coords(apply_hat(A, E)).T)


def ring_matrix(R: CurvatureTensor | np.ndarray) -> OperatorMatrix:
    A = as_array(R)
    basis = sym2_basis(A.shape[0])
    F = basis.elements
    return OperatorMatrix(basis, basis.coords(apply_ring(A, F)).T)


def restrict(op: OperatorMatrix, sub: SubspaceBasis, leak_tol: float = LEAK_TOL) -> OperatorMatrix:
    """Matrix of ``op`` on an invariant subspace."""
    if not isinstance(op.basis, FormBasis) or not op.basis.same_as(sub.ambient):
        raise ValueError("subspace ambient does not match the operator basis")
    V = sub.vectors
    P = sub.projector
    A = op.entries
    leak = np.linalg.norm((np.eye(len(P)) - P) @ A @ P, 2)
    if leak > leak_tol:
        raise SubspaceLeakError(f"operator leaks out of {sub.label} by {leak:.3e}")
    M = V @ A @ V.T
    return OperatorMatrix(sub, 0.5 * (M + M.T))


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    cluster_tol: float

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    @property
    def minimum(self) -> float:
        return self.eigenvalues[0]

    @property
    def maximum(self) -> float:
        return self.eigenvalues[-1]

    def pairs(self) -> list[tuple[float, int]]:
        return list(zip(self.eigenvalues, self.multiplicities))


def spectrum(op: OperatorMatrix | np.ndarray, cluster_tol: float = 1e-6) -> SpectrumReport:
    """Sorted eigenvalues grouped into clusters of nearly equal values."""
    A = op.entries if isinstance(op, OperatorMatrix) else np.asarray(op, dtype=float)
    vals, Q = np.linalg.eigh(A)
    resid = np.max(np.abs(A - (Q * vals) @ Q.T), initial=0.0)
    if resid > 1e-9:
        raise CurvlabError(f"eigendecomposition residual {resid:.2e} too large")
    reps: list[float] = []
    mults: list[int] = []
    group: list[float] = []
    for v in vals:
        if group and v - group[-1] > cluster_tol:
            reps.append(float(np.mean(group)))
            mults.append(len(group))
            group = []
        group.append(float(v))
    if group:
        reps.append(float(np.mean(group)))
        mults.append(len(group))
    return SpectrumReport(tuple(reps), tuple(mults), cluster_tol)
