"""Dense exterior and symmetric tensor algebra in a fixed orthonormal frame.

Tensors are plain ``numpy`` arrays of shape ``(n,) * rank``.  Forms are
stored with all their (antisymmetric) components, so ``e^1 ^ e^2`` has
component ``+1`` at ``(0, 1)`` and ``-1`` at ``(1, 0)``.

Conventions:

* the wedge product carries no factorial constants, so for 1-forms
  ``a ^ b = a (x) b - b (x) a``;
* the inner product of k-forms is the full contraction divided by ``k!``;
* the Hodge star satisfies ``*1 = orientation * e^{1...n}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    CurvatureValidationError,
    DegeneratePlaneError,
    RankMismatchError,
    UnsupportedRankError,
)

MAX_DIM = 8
SYMMETRY_TOL = 1e-10


def check_tensor(t: np.ndarray, rank: int | None = None) -> np.ndarray:
    """Return ``t`` as a float array after checking shape and finiteness."""
    arr = np.asarray(t, dtype=float)
    if arr.ndim and len(set(arr.shape)) != 1:
        raise UnsupportedRankError(f"tensor must be square in every slot, got shape {arr.shape}")
    if arr.ndim and not 1 <= arr.shape[0] <= MAX_DIM:
        raise UnsupportedRankError(f"frame dimension must lie in 1..{MAX_DIM}, got {arr.shape[0]}")
    if rank is not None and arr.ndim != rank:
        raise RankMismatchError(f"expected rank {rank}, got rank {arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor has non-finite entries")
    return arr


@lru_cache(maxsize=None)
def _signed_permutations(r: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for p in itertools.permutations(range(r)):
        inversions = sum(1 for a, b in itertools.combinations(p, 2) if a > b)
        out.append((p, -1 if inversions % 2 else 1))
    return tuple(out)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def _fill_antisymmetric(out: np.ndarray, idx: Sequence[int], value: float) -> None:
    for perm, sign in _signed_permutations(len(idx)):
        out[tuple(idx[q] for q in perm)] = sign * value


def basis_form(n: int, idx: Sequence[int]) -> np.ndarray:
    """The decomposable form ``e^{i_1} ^ ... ^ e^{i_k}`` (0-based indices)."""
    out = np.zeros((n,) * len(idx))
    if len(set(idx)) == len(idx):
        _fill_antisymmetric(out, list(idx), 1.0)
    return out


def form_from_terms(n: int, terms: dict[tuple[int, ...], float]) -> np.ndarray:
    """Sum of ``coeff * e^{idx}`` over a mapping ``idx -> coeff``."""
    rank = len(next(iter(terms)))
    out = np.zeros((n,) * rank)
    for idx, c in terms.items():
        out += c * basis_form(n, idx)
    return out


def antisymmetry_residual(t: np.ndarray) -> float:
    """Largest violation of total antisymmetry."""
    t = np.asarray(t)
    worst = 0.0
    for a in range(t.ndim - 1):
        worst = max(worst, float(np.max(np.abs(t + np.swapaxes(t, a, a + 1)), initial=0.0)))
    return worst


def wedge(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Exterior product without factorial constants.

    For sorted indices ``I`` the component is the sum over shuffles of ``I``
    into a k-part and an l-part of ``sign * alpha_J * beta_K``.
    """
    alpha = check_tensor(alpha)
    beta = check_tensor(beta)
    k, l = alpha.ndim, beta.ndim
    if k == 0 or l == 0:
        return alpha * beta
    n = alpha.shape[0]
    if beta.shape[0] != n:
        raise RankMismatchError("wedge factors live in different dimensions")
    if k + l > n:
        raise UnsupportedRankError(f"wedge of ranks {k} and {l} exceeds dimension {n}")
    out = np.zeros((n,) * (k + l))
    splits = []
    for pos in itertools.combinations(range(k + l), k):
        rest = tuple(p for p in range(k + l) if p not in pos)
        splits.append((pos, rest, permutation_sign(pos + rest)))
    for idx in itertools.combinations(range(n), k + l):
        val = 0.0
        for pos, rest, sign in splits:
            val += sign * alpha[tuple(idx[p] for p in pos)] * beta[tuple(idx[p] for p in rest)]
        if val:
            _fill_antisymmetric(out, idx, val)
    return out


def form_inner(alpha: np.ndarray, beta: np.ndarray) -> float:
    """``<alpha, beta> = (1/k!) alpha_I beta_I``."""
    alpha = check_tensor(alpha)
    beta = check_tensor(beta)
    if alpha.shape != beta.shape:
        raise RankMismatchError(f"shapes differ: {alpha.shape} vs {beta.shape}")
    return float(np.sum(alpha * beta) / math.factorial(alpha.ndim))


def hodge_star(alpha: np.ndarray, n: int | None = None, orientation: int = 1) -> np.ndarray:
    """Hodge star of a k-form in an oriented orthonormal frame.

    ``n`` is only needed for 0-forms (scalars).  ``orientation`` is +1 when
    the volume form is ``e^{1...n}`` and -1 for the opposite orientation.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    alpha = np.asarray(alpha, dtype=float)
    if alpha.ndim == 0:
        if n is None:
            raise UnsupportedRankError("dimension required for the star of a scalar")
        return orientation * float(alpha) * basis_form(n, range(n))
    alpha = check_tensor(alpha)
    dim = alpha.shape[0]
    if n is not None and n != dim:
        raise RankMismatchError("n does not match the form's dimension")
    k = alpha.ndim
    if k > dim:
        raise UnsupportedRankError("form rank exceeds dimension")
    if k == dim:
        return orientation * alpha[tuple(range(dim))]
    out = np.zeros((dim,) * (dim - k))
    for idx in itertools.combinations(range(dim), k):
        comp = tuple(i for i in range(dim) if i not in idx)
        val = alpha[idx]
        if val:
            _fill_antisymmetric(out, comp, orientation * permutation_sign(idx + comp) * val)
    return out


def interior(X: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Interior product ``(X _| sigma)_{i...} = X_a sigma_{a i...}``."""
    return np.tensordot(np.asarray(X, dtype=float), np.asarray(sigma, dtype=float), axes=(0, 0))


def diamond(h: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Derivation action of a rank-2 tensor on a k-form.

    ``(h . sigma)_{i_1..i_k} = sum_r h_{i_r p} sigma_{i_1 .. p .. i_k}`` with
    ``p`` in slot ``r``.
    """
    h = check_tensor(h, rank=2)
    sigma = check_tensor(sigma)
    if sigma.ndim < 1:
        raise UnsupportedRankError("diamond needs a form of degree at least 1")
    out = np.zeros_like(sigma)
    for r in range(sigma.ndim):
        out += np.moveaxis(np.tensordot(h, sigma, axes=(1, r)), 0, r)
    return out


# ---------------------------------------------------------------------------
# curvature tensors


def curvature_residual(A: np.ndarray) -> float:
    """Max violation of the pair symmetries and the first Bianchi identity."""
    A = np.asarray(A, dtype=float)
    checks = (
        A + np.einsum("ijkl->jikl", A),
        A + np.einsum("ijkl->ijlk", A),
        A - np.einsum("ijkl->klij", A),
        A + np.einsum("ijkl->kijl", A) + np.einsum("ijkl->jkil", A),
    )
    return max(float(np.max(np.abs(c))) for c in checks)


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """A rank-4 array validated as an algebraic curvature tensor."""

    components: np.ndarray
    symmetry_residual: float

    @classmethod
    def from_array(cls, A: np.ndarray, tol: float = SYMMETRY_TOL) -> "CurvatureTensor":
        arr = check_tensor(A, rank=4).copy()
        res = curvature_residual(arr)
        if res > tol:
            raise CurvatureValidationError(f"curvature symmetries violated by {res:.3e} (tol {tol:g})")
        arr.setflags(write=False)
        return cls(arr, res)

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        return CurvatureTensor.from_array(self.components + as_array(other))

    def __sub__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        return CurvatureTensor.from_array(self.components - as_array(other))

    def __mul__(self, c: float) -> "CurvatureTensor":
        return CurvatureTensor.from_array(c * self.components)

    __rmul__ = __mul__


def as_array(R: CurvatureTensor | np.ndarray) -> np.ndarray:
    return R.components if isinstance(R, CurvatureTensor) else np.asarray(R, dtype=float)


def kulkarni_nomizu(s: np.ndarray, t: np.ndarray) -> CurvatureTensor:
    """``(s * t)_{ijkl} = s_il t_jk + s_jk t_il - s_ik t_jl - s_jl t_ik``."""
    s = check_tensor(s, rank=2)
    t = check_tensor(t, rank=2)
    for name, m in (("s", s), ("t", t)):
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
            raise CurvatureValidationError(f"{name} is not symmetric")
    A = (
        np.einsum("il,jk->ijkl", s, t)
        + np.einsum("jk,il->ijkl", s, t)
        - np.einsum("ik,jl->ijkl", s, t)
        - np.einsum("jl,ik->ijkl", s, t)
    )
    return CurvatureTensor.from_array(A)


def ricci(R: CurvatureTensor | np.ndarray) -> np.ndarray:
    """``Ric_ij = R_kijk``; positive for the round sphere."""
    return np.einsum("kijk->ij", as_array(R))


@dataclass(frozen=True, eq=False)
class Decomposition:
    S: CurvatureTensor
    E: CurvatureTensor
    W: CurvatureTensor
    ricci: np.ndarray
    scalar: float


def riemann_decompose(R: CurvatureTensor, n: int | None = None) -> Decomposition:
    """Split ``R`` into scalar, traceless-Ricci and Weyl parts."""
    A = as_array(R)
    n = A.shape[0] if n is None else n
    if n < 3:
        raise UnsupportedRankError("the decomposition needs n >= 3")
    if n != A.shape[0]:
        raise RankMismatchError("n does not match the tensor dimension")
    g = np.eye(n)
    ric = ricci(A)
    scal = float(np.trace(ric))
    gg = kulkarni_nomizu(g, g).components
    S = scal / (2 * n * (n - 1)) * gg
    ric0 = ric - scal / n * g
    ric0 = 0.5 * (ric0 + ric0.T)
    E = kulkarni_nomizu(ric0, g).components / (n - 2)
    W = A - S - E
    return Decomposition(
        CurvatureTensor.from_array(S),
        CurvatureTensor.from_array(E),
        CurvatureTensor.from_array(W),
        ric,
        scal,
    )


def sectional(R: CurvatureTensor | np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """``R(X, Y, Y, X) / |X ^ Y|^2``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    area = float(X @ X * (Y @ Y) - (X @ Y) ** 2)
    if area <= 1e-12:
        raise DegeneratePlaneError(f"|X^Y|^2 = {area:.3e} is too small")
    return float(np.einsum("ijkl,i,j,k,l->", as_array(R), X, Y, Y, X)) / area


def random_curvature_tensor(n: int, rng: np.random.Generator, integer: bool = False) -> CurvatureTensor:
    """A random algebraic curvature tensor.

    A random symmetric form on 2-forms is drawn and its totally antisymmetric
    (Bianchi) part removed.  With ``integer=True`` the entries are integers
    (scaled by 3 so the projection stays integral).
    """
    if integer:
        raw = rng.integers(-3, 4, size=(n, n, n, n)).astype(float)
    else:
        raw = rng.standard_normal((n, n, n, n))
    A = raw - np.einsum("ijkl->jikl", raw)
    A = A - np.einsum("ijkl->ijlk", A)
    A = A + np.einsum("ijkl->klij", A)
    b = A + np.einsum("ijkl->kijl", A) + np.einsum("ijkl->jkil", A)
    # b is three times the totally antisymmetric part of A
    return CurvatureTensor.from_array(3 * A - b if integer else A - b / 3)
