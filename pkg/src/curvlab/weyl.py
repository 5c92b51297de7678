"""Weyl operators of Einstein metrics and algebraic Weyl-term identities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bounds import EinsteinData
from .errors import EinsteinFitError, PreconditionError
from .operators import (
    OperatorMatrix,
    SubspaceBasis,
    hat_matrix,
    restrict,
    ring_matrix,
    traceless_subspace,
)
from .structures import G2Model, SU3Model, su3_subspaces
from .tensors import CurvatureTensor, as_array, curvature_residual, diamond, ricci

PRE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class WeylOperators:
    what: OperatorMatrix  # on all 2-forms
    wring: OperatorMatrix  # on traceless symmetric tensors


def weyl_operators(R: CurvatureTensor, e: EinsteinData) -> WeylOperators:
    """Weyl operators of an Einstein curvature tensor via the Einstein shifts.

    ``W^ = R^ + 2k/(n-1) Id`` on 2-forms and ``W° = R° - k/(n-1) Id`` on ``S2_0``.
    """
    A = as_array(R)
    n = A.shape[0]
    if n != e.n:
        raise ValueError("Einstein data dimension does not match the tensor")
    fit = np.max(np.abs(ricci(A) - e.k * np.eye(n)))
    if fit > 1e-8:
        raise EinsteinFitError(f"Ric - kg residual {fit:.3e}")
    what = hat_matrix(A).shifted(2 * e.k / (n - 1))
    wring = restrict(ring_matrix(A), traceless_subspace(n)).shifted(-e.k / (n - 1))
    return WeylOperators(what, wring)


def apply_weyl_hat(W: np.ndarray, beta: np.ndarray) -> np.ndarray:
    return np.einsum("ijkl,kl->ij", W, beta)


def apply_weyl_ring(W: np.ndarray, h: np.ndarray) -> np.ndarray:
    return np.einsum("kilj,kl->ij", W, h)


def _omega(m: SU3Model | np.ndarray) -> np.ndarray:
    return m.omega if isinstance(m, SU3Model) else np.asarray(m, dtype=float)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _max(a: np.ndarray) -> float:
    return float(np.max(np.abs(a), initial=0.0))


def weyl_term_identity_nk2(W: CurvatureTensor | np.ndarray, h: np.ndarray, m: SU3Model | np.ndarray) -> float:
    """Residual of ``W^(h . w) = 2 (W° h) . w`` for ``h`` in ``S2_plus0``."""
    Wa = as_array(W)
    w = _omega(m)
    h = np.asarray(h, dtype=float)
    six = su3_subspaces(w)["Omega2_6"].tensors()
    _require(_max(apply_weyl_hat(Wa, w)) < 1e-9, "W^ does not annihilate omega")
    _require(_max(np.einsum("ijkl,akl->aij", Wa, six)) < 1e-9, "W^ does not annihilate Omega2_6")
    _require(
        _max(h - h.T) < PRE_TOL and abs(np.trace(h)) < PRE_TOL and _max(w @ h - h @ w) < PRE_TOL,
        "h is not in S2_plus0",
    )
    lhs = apply_weyl_hat(Wa, diamond(h, w))
    rhs = 2 * diamond(apply_weyl_ring(Wa, h), w)
    return _max(lhs - rhs)


def _check_su3_weyl(Wa: np.ndarray, m: SU3Model) -> None:
    _require(curvature_residual(Wa) < 1e-9, "W is not a curvature tensor")
    _require(_max(ricci(Wa)) < 1e-9, "W is not Ricci-free")
    _require(_max(np.einsum("abij,ij->ab", Wa, m.omega)) < 1e-9, "W^ does not annihilate omega")
    _require(_max(np.einsum("abij,ijc->abc", Wa, m.psi_plus)) < 1e-9, "W^ does not annihilate Omega2_6")


def _three_term(Wa: np.ndarray, h: np.ndarray, form: np.ndarray) -> np.ndarray:
    """``h_ps (W_abpu F_suc + W_acpu F_sbu + W_bcpu F_asu)``."""
    return (
        np.einsum("ps,abpu,suc->abc", h, Wa, form)
        + np.einsum("ps,acpu,sbu->abc", h, Wa, form)
        + np.einsum("ps,bcpu,asu->abc", h, Wa, form)
    )


def weyl_term_identity_nk3(W: CurvatureTensor | np.ndarray, h: np.ndarray, m: SU3Model) -> float:
    """Residual of ``gamma = (W° h) . psi+`` for ``h`` in ``S2_minus``."""
    Wa = as_array(W)
    h = np.asarray(h, dtype=float)
    _check_su3_weyl(Wa, m)
    w = m.omega
    _require(_max(h - h.T) < PRE_TOL and _max(w @ h + h @ w) < PRE_TOL, "h is not in S2_minus")
    gamma = _three_term(Wa, h, m.psi_plus)
    return _max(gamma - diamond(apply_weyl_ring(Wa, h), m.psi_plus))


class G2WeylResidual(NamedTuple):
    gamma: float  # gamma - 2 (W° h) . phi
    gamma_hat: float  # gamma^ - 8 W° h
    trace: float  # |tr gamma^|


def weyl_term_identity_g2(W: CurvatureTensor | np.ndarray, h: np.ndarray, m: G2Model) -> G2WeylResidual:
    """Residuals of the G2 Weyl-term identity for a symmetric ``h``."""
    Wa = as_array(W)
    h = np.asarray(h, dtype=float)
    _require(curvature_residual(Wa) < 1e-9, "W is not a curvature tensor")
    _require(_max(ricci(Wa)) < 1e-9, "W is not Ricci-free")
    _require(_max(np.einsum("abij,ijc->abc", Wa, m.phi)) < 1e-9, "W^ does not annihilate Omega2_7")
    _require(_max(h - h.T) < PRE_TOL, "h is not symmetric")
    gamma = 2 * _three_term(Wa, h, m.phi)
    wh = apply_weyl_ring(Wa, h)
    gh = np.einsum("ijk,ajk->ia", gamma, m.phi)
    return G2WeylResidual(
        _max(gamma - 2 * diamond(wh, m.phi)),
        _max(gh - 8 * wh),
        abs(float(np.trace(gh))),
    )


def nk_omega_curvature_identity(R: CurvatureTensor | np.ndarray, omega: np.ndarray) -> float:
    """Residual of ``R_pqju w_ju = -2 w_pq``."""
    w = np.asarray(omega, dtype=float)
    return _max(np.einsum("pqju,ju->pq", as_array(R), w) + 2 * w)


def nk_psi_curvature_identities(R: CurvatureTensor | np.ndarray, psi_plus: np.ndarray, psi_minus: np.ndarray) -> dict:
    """Residuals of ``R_pqiu psi±_liu = -2 psi±_pql`` for externally supplied ``psi±``."""
    A = as_array(R)
    return {
        "psi_plus": _max(np.einsum("pqiu,liu->pql", A, psi_plus) + 2 * psi_plus),
        "psi_minus": _max(np.einsum("pqiu,viu->pqv", A, psi_minus) + 2 * psi_minus),
    }


# ---------------------------------------------------------------------------
# synthetic Weyl-like tensors


def _pair_tensors(forms: np.ndarray) -> list[np.ndarray]:
    out = []
    m = len(forms)
    for a in range(m):
        for b in range(a, m):
            t = np.einsum("ij,kl->ijkl", forms[a], forms[b])
            out.append(t if a == b else t + np.einsum("ijkl->klij", t))
    return out


def _constraints(T: np.ndarray) -> np.ndarray:
    bianchi = T + np.einsum("ijkl->kijl", T) + np.einsum("ijkl->jkil", T)
    return np.concatenate([bianchi.ravel(), ricci(T).ravel()])


def weyl_space_basis(sub: SubspaceBasis) -> np.ndarray:
    """Basis of Ricci-free curvature tensors in ``S^2`` of a 2-form subspace.

    Returned as an array of shape ``(d, n, n, n, n)``.
    """
    pairs = np.array(_pair_tensors(sub.tensors()))
    C = np.array([_constraints(t) for t in pairs]).T
    _, s, vt = np.linalg.svd(C, full_matrices=True)
    rank = int(np.sum(s > 1e-10 * max(s[0], 1.0)))
    null = vt[rank:]
    return np.einsum("dp,pijkl->dijkl", null, pairs)


def synthetic_weyl(
    sub: SubspaceBasis, rng: np.random.Generator, basis: np.ndarray | None = None
) -> CurvatureTensor:
    """A random Ricci-free curvature tensor whose 2-form action lives on ``sub``.

    A random element of ``S^2(sub)`` is projected onto the solution space of
    the first Bianchi identity and the vanishing-Ricci condition.  Pass a
    precomputed ``basis`` from :func:`weyl_space_basis` to draw many samples.
    """
    basis = weyl_space_basis(sub) if basis is None else basis
    coeffs = rng.standard_normal(len(basis))
    return CurvatureTensor.from_array(np.einsum("d,dijkl->ijkl", coeffs, basis), tol=1e-10)


def su3_weyl_subspace(m: SU3Model | np.ndarray) -> SubspaceBasis:
    return su3_subspaces(_omega(m))["Omega2_8"]


def random_s2_minus(m: SU3Model | np.ndarray, rng: np.random.Generator) -> np.ndarray:
    sub = su3_subspaces(_omega(m))["S2_minus"]
    return sub.ambient.tensor(rng.standard_normal(sub.count) @ sub.vectors)


def random_s2_plus0(m: SU3Model | np.ndarray, rng: np.random.Generator) -> np.ndarray:
    sub = su3_subspaces(_omega(m))["S2_plus0"]
    return sub.ambient.tensor(rng.standard_normal(sub.count) @ sub.vectors)

