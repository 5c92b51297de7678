"""G2 and SU(3) structure tensors on flat model spaces.

The G2 3-form is fixed by the component convention in :func:`standard_g2`.
Its companion 4-form ``psi = *phi`` is taken with the orientation for which
the standard contraction identities hold; with this ``phi`` that is the
orientation opposite to ``e^{1...7}``.  The SU(3) data are read off from
the G2 data on ``R^7 = R e_0 + R^6`` (cone direction first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConventionMismatchError
from .operators import (
    FormBasis,
    SubspaceBasis,
    subspace_from_projector,
    sym2_basis,
    traceless_subspace,
    two_form_basis,
)
from .tensors import diamond, form_from_terms, hodge_star, interior

G2_ORIENTATION = -1

_PHI_TERMS = {
    (0, 1, 2): 1.0,
    (0, 3, 4): 1.0,
    (0, 5, 6): 1.0,
    (1, 3, 5): 1.0,
    (1, 4, 6): -1.0,
    (2, 3, 6): -1.0,
    (2, 4, 5): -1.0,
}


@dataclass(frozen=True, eq=False)
class G2Model:
    phi: np.ndarray
    psi: np.ndarray
    orientation: int = G2_ORIENTATION


@dataclass(frozen=True, eq=False)
class SU3Model:
    omega: np.ndarray
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    star_omega: np.ndarray
    orientation: int = G2_ORIENTATION

    def J(self, X: np.ndarray) -> np.ndarray:
        """``J(X)_p = X_a omega_ap``."""
        return np.asarray(X, dtype=float) @ self.omega


def standard_g2(flip: tuple[int, int, int] | None = None) -> G2Model:
    """The flat G2 model.

    ``flip`` negates one term of ``phi`` (given by its index triple) and is
    only meant for negative-control tests.
    """
    terms = dict(_PHI_TERMS)
    if flip is not None:
        terms[flip] = -terms[flip]
    phi = form_from_terms(7, terms)
    psi = hodge_star(phi, orientation=G2_ORIENTATION)
    return G2Model(phi, psi)


def _delta2(n: int) -> np.ndarray:
    d = np.eye(n)
    return np.einsum("ia,jb->ijab", d, d) - np.einsum("ib,ja->ijab", d, d)


def verify_g2_identities(m: G2Model) -> dict[str, float]:
    """Max-abs residual of each of the five G2 contraction identities."""
    phi, psi = m.phi, m.psi
    d = np.eye(7)

    lhs2 = np.einsum("ijk,abck->ijabc", phi, psi)
    rhs2 = (
        np.einsum("ia,jbc->ijabc", d, phi)
        + np.einsum("ib,ajc->ijabc", d, phi)
        + np.einsum("ic,abj->ijabc", d, phi)
        - np.einsum("aj,ibc->ijabc", d, phi)
        - np.einsum("bj,aic->ijabc", d, phi)
        - np.einsum("cj,abi->ijabc", d, phi)
    )
    res = {
        "phi_phi": np.einsum("ijk,abk->ijab", phi, phi) - (_delta2(7) - psi),
        "phi_psi_1": lhs2 - rhs2,
        "phi_psi_2": np.einsum("ijk,abjk->iab", phi, psi) + 4 * phi,
        "psi_psi_2": np.einsum("ijkl,abkl->ijab", psi, psi) - (4 * _delta2(7) - 2 * psi),
        "psi_psi_3": np.einsum("ijkl,ajkl->ia", psi, psi) - 24 * d,
    }
    return {k: float(np.max(np.abs(v))) for k, v in res.items()}


def star_omega_from(omega: np.ndarray) -> np.ndarray:
    """``(*w)_ijkl = w_ij w_kl + w_jk w_il + w_lj w_ik``."""
    w = omega
    return np.einsum("ij,kl->ijkl", w, w) + np.einsum("jk,il->ijkl", w, w) + np.einsum("lj,ik->ijkl", w, w)


def su3_from_g2(m: G2Model | None = None, check: bool = True) -> SU3Model:
    """SU(3) structure on ``R^6`` from the cone relations (frame index 0 is radial)."""
    m = standard_g2() if m is None else m
    s = slice(1, None)
    model = SU3Model(
        omega=-m.phi[0, s, s],
        psi_plus=m.phi[s, s, s].copy(),
        psi_minus=-m.psi[0, s, s, s],
        star_omega=-m.psi[s, s, s, s],
        orientation=m.orientation,
    )
    if check:
        bad = {k: v for k, v in su3_invariants(model).items() if v > 1e-12}
        bad.update({k: v for k, v in verify_su3_identities(model).items() if v > 1e-12})
        if bad:
            raise ConventionMismatchError(f"SU(3) data fail: {sorted(bad)}")
    return model


def su3_invariants(m: SU3Model) -> dict[str, float]:
    """Residuals of the basic algebraic relations between the SU(3) forms."""
    w, pp, pm, so = m.omega, m.psi_plus, m.psi_minus, m.star_omega
    o = m.orientation
    out = {
        "omega_orthogonal": np.einsum("ik,il->kl", w, w) - np.eye(6),
        "star_psi_plus": hodge_star(pp, orientation=o) - pm,
        "star_psi_minus": hodge_star(pm, orientation=o) + pp,
        "star_omega": hodge_star(w, orientation=o) - so,
        "star_omega_coords": star_omega_from(w) - so,
        "pinew_plus": np.einsum("ijk,jk->i", pp, w),
        "pinew_minus": np.einsum("ijk,jk->i", pm, w),
    }
    return {k: float(np.max(np.abs(v))) for k, v in out.items()}


def verify_su3_identities(m: SU3Model) -> dict[str, float]:
    """Residuals of the seventeen SU(3) contraction identities ``pi1 .. pi17``."""
    w, pp, pm, so = m.omega, m.psi_plus, m.psi_minus, m.star_omega
    d = np.eye(6)
    ww = np.einsum("ia,jb->ijab", w, w) - np.einsum("ib,ja->ijab", w, w)
    e = np.einsum

    pi11_rhs = (
        -e("ia,jbc->ijabc", d, pp)
        - e("ib,ajc->ijabc", d, pp)
        - e("ic,abj->ijabc", d, pp)
        + e("aj,ibc->ijabc", d, pp)
        + e("bj,aic->ijabc", d, pp)
        + e("cj,abi->ijabc", d, pp)
        - e("ij,abc->ijabc", w, pm)
    )
    pi12_rhs = -e("ija,bc->ijabc", pm, w) - e("ijb,ca->ijabc", pm, w) - e("ijc,ab->ijabc", pm, w)
    pi14_rhs = e("ija,bc->ijabc", pp, w) + e("ijb,ca->ijabc", pp, w) + e("ijc,ab->ijabc", pp, w)
    pp_so = e("ijk,abck->ijabc", pp, so)

    res = {
        "pi1": e("ijk,ak->ija", pp, w) + pm,
        "pi2": e("ijk,ak->ija", pm, w) - pp,
        "pi3": e("ijk,abk->ijab", pp, pp) - (_delta2(6) - ww),
        "pi4": e("ijk,ajk->ia", pp, pp) - 4 * d,
        "pi5": e("ijk,abk->ijab", pp, pm)
        - (e("ia,jb->ijab", d, w) + e("jb,ia->ijab", d, w) - e("ib,ja->ijab", d, w) - e("ja,ib->ijab", d, w)),
        "pi6": e("ijk,ajk->ia", pp, pm) - 4 * w,
        "pi7": e("ijk,abk->ijab", pm, pm) - (_delta2(6) - ww),
        "pi8": e("ijk,ajk->ia", pm, pm) - 4 * d,
        "pi9": e("ik,abck->iabc", w, so)
        - (e("ia,bc->iabc", d, w) + e("ib,ca->iabc", d, w) + e("ic,ab->iabc", d, w)),
        "pi10": e("ik,abik->ab", w, so) - 4 * w,
        "pi11": pp_so - pi11_rhs,
        "pi12": pp_so - pi12_rhs,
        "pi13": e("ijk,abjk->iab", pp, so) - 2 * pp,
        "pi14": e("ijk,abck->ijabc", pm, so) - pi14_rhs,
        "pi15": e("ijk,abjk->iab", pm, so) - 2 * pm,
        "pi16": e("ijkl,abkl->ijab", so, so) - (2 * _delta2(6) + 2 * e("ij,ab->ijab", w, w)),
        "pi17": e("ijkl,ajkl->ia", so, so) - 12 * d,
    }
    return {k: float(np.max(np.abs(v))) for k, v in res.items()}


# ---------------------------------------------------------------------------
# projections


def g2_project_2form(beta: np.ndarray, m: G2Model) -> tuple[np.ndarray, np.ndarray]:
    """Split a 2-form on R^7 into its 7- and 14-dimensional components."""
    X = np.einsum("ij,ijk->k", beta, m.phi) / 6
    beta7 = interior(X, m.phi)
    return beta7, beta - beta7


def p_map(beta: np.ndarray, star_omega: np.ndarray) -> np.ndarray:
    """``P(beta)_ab = 1/2 beta_ij (*w)_ijab``; eigenvalues 2, 1, -1."""
    return 0.5 * np.einsum("...ij,ijab->...ab", beta, star_omega)


def su3_project_2form(beta: np.ndarray, m: SU3Model) -> tuple[float, np.ndarray, np.ndarray]:
    """Return ``(lambda, X, beta8)`` with ``beta = lambda w + X _| psi+ + beta8``."""
    lam = float(np.einsum("ij,ij->", beta, m.omega)) / 6
    X = np.einsum("ij,kij->k", beta, m.psi_plus) / 4
    beta8 = beta - lam * m.omega - interior(X, m.psi_plus)
    return lam, X, beta8


@dataclass(frozen=True, eq=False)
class Sym2Split:
    trace_part: np.ndarray
    plus0: np.ndarray
    minus: np.ndarray


def sym2_split(h: np.ndarray, m: SU3Model | np.ndarray) -> Sym2Split:
    """Split ``h`` into its trace, w-commuting traceless and w-anticommuting parts."""
    w = m.omega if isinstance(m, SU3Model) else np.asarray(m)
    h = np.asarray(h, dtype=float)
    n = h.shape[0]
    whw = w @ h @ w
    trace_part = np.trace(h) / n * np.eye(n)
    plus = 0.5 * (h - whw)
    return Sym2Split(trace_part, plus - trace_part, 0.5 * (h + whw))


# ---------------------------------------------------------------------------
# subspace bases


def _linear_map_matrix(basis: FormBasis, fn) -> np.ndarray:
    return basis.coords(fn(basis.elements)).T


def g2_subspaces(m: G2Model) -> dict[str, SubspaceBasis]:
    amb = two_form_basis(7)
    P7 = _linear_map_matrix(amb, lambda E: np.einsum("aij,ijk,kpq->apq", E, m.phi, m.phi) / 6)
    return {
        "Omega2_7": subspace_from_projector("Omega2_7", amb, P7),
        "Omega2_14": subspace_from_projector("Omega2_14", amb, np.eye(amb.count) - P7),
    }


def su3_subspaces(omega: np.ndarray) -> dict[str, SubspaceBasis]:
    """Distinguished subspaces of 2-forms and symmetric tensors determined by ``omega``.

    The 2-form pieces come from polynomial projectors in the P-map (whose
    eigenvalues are 2, 1, -1), the symmetric ones from commutation with ``omega``.
    """
    w = np.asarray(omega, dtype=float)
    so = star_omega_from(w)
    amb = two_form_basis(6)
    P = _linear_map_matrix(amb, lambda E: p_map(E, so))
    Id = np.eye(amb.count)
    pi1 = (P + Id) @ (P - Id) / 3
    pi6 = -(P - 2 * Id) @ (P + Id) / 2
    pi8 = (P - 2 * Id) @ (P - Id) / 6

    sym = sym2_basis(6)
    T = _linear_map_matrix(sym, lambda F: -np.einsum("ij,ajk,kl->ail", w, F, w))
    u = sym.coords(np.eye(6)) / np.sqrt(6)
    plus0 = 0.5 * (np.eye(sym.count) + T) - np.outer(u, u)
    minus = 0.5 * (np.eye(sym.count) - T)
    return {
        "Omega2_1": subspace_from_projector("Omega2_1", amb, pi1),
        "Omega2_6": subspace_from_projector("Omega2_6", amb, pi6),
        "Omega2_8": subspace_from_projector("Omega2_8", amb, pi8),
        "S2_0": traceless_subspace(6),
        "S2_plus0": subspace_from_projector("S2_plus0", sym, plus0),
        "S2_minus": subspace_from_projector("S2_minus", sym, minus),
    }


# ---------------------------------------------------------------------------
# diamond decodes


@dataclass(frozen=True, eq=False)
class Decode2:
    h: np.ndarray
    trace: float
    X: np.ndarray
    h_plus0: np.ndarray


@dataclass(frozen=True, eq=False)
class Decode3:
    h: np.ndarray
    trace: float
    lam: float
    X: np.ndarray
    h_minus: np.ndarray


@dataclass(frozen=True, eq=False)
class Decode4:
    h: np.ndarray
    trace: float
    h6: np.ndarray
    h_plus0: np.ndarray


@dataclass(frozen=True, eq=False)
class G2Decode3:
    A: np.ndarray
    trace: float
    A0: np.ndarray
    A7: np.ndarray


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def decode_2form(beta: np.ndarray, m: SU3Model) -> Decode2:
    """Recover ``h`` from ``beta = h . w`` (``h`` in ``Rg + Omega2_6 + S2_plus0``)."""
    bh = np.einsum("ik,ak->ia", beta, m.omega)
    tr = float(np.trace(bh))
    X = np.einsum("ia,kia->k", bh, m.psi_plus) / 8
    h_plus0 = 0.5 * _sym(bh) - tr / 12 * np.eye(6)
    return Decode2(0.5 * bh, 0.5 * tr, X, h_plus0)


def decode_3form(beta: np.ndarray, m: SU3Model) -> Decode3:
    """Recover ``h`` from ``beta = h . psi+`` (``h`` in ``Rg + Rw + Omega2_6 + S2_minus``)."""
    bh = np.einsum("ijk,ajk->ia", beta, m.psi_plus)
    tr_b = float(np.trace(bh))
    lam = float(np.einsum("ia,ia->", bh, m.omega)) / 72
    X = np.einsum("ia,kia->k", bh, m.psi_plus) / 16
    h_minus = 0.25 * _sym(bh) - tr_b / 24 * np.eye(6)
    tr = tr_b / 12
    h = tr / 6 * np.eye(6) + lam * m.omega + interior(X, m.psi_plus) + h_minus
    return Decode3(h, tr, lam, X, h_minus)


def decode_4form(beta: np.ndarray, m: SU3Model) -> Decode4:
    """Recover ``h`` from ``beta = h . (*w)`` (``h`` in ``Rg + Omega2_6 + S2_plus0``)."""
    bh = np.einsum("ijkl,ajkl->ia", beta, m.star_omega)
    tr_b = float(np.trace(bh))
    tr = tr_b / 48
    h6 = (bh - bh.T) / 24
    h_plus0 = _sym(bh) / 12 - tr_b / 72 * np.eye(6)
    return Decode4(tr / 6 * np.eye(6) + h6 + h_plus0, tr, h6, h_plus0)


def g2_decode_3form(gamma: np.ndarray, m: G2Model) -> G2Decode3:
    """Recover ``A`` (symmetric plus 7-dimensional skew part) from ``gamma = A . phi``."""
    gh = np.einsum("ijk,ajk->ia", gamma, m.phi)
    tr_g = float(np.trace(gh))
    tr = tr_g / 18
    A0 = (gh + gh.T) / 8 - tr_g / 28 * np.eye(7)
    A7 = (gh - gh.T) / 24
    return G2Decode3(tr / 7 * np.eye(7) + A0 + A7, tr, A0, A7)


def encode(h: np.ndarray, form: np.ndarray) -> np.ndarray:
    """Alias of :func:`diamond` used for readability in round trips."""
    return diamond(h, form)
