"""Per-space curvature analysis shared by the CLI and the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .betti import NEARLY_G2, NEARLY_KAHLER
from .bounds import EinsteinData
from .homogeneous import CurvatureField, SpaceModel, build_space, distinguished_subspaces, riemann_components
from .operators import OperatorMatrix, SpectrumReport, SubspaceBasis, hat_matrix, restrict, ring_matrix, spectrum
from .tensors import Decomposition, riemann_decompose

OPERATORS = ("rhat", "rring", "what", "wring")


@dataclass(frozen=True, eq=False)
class SpaceAnalysis:
    space: SpaceModel
    field: CurvatureField

    @property
    def n(self) -> int:
        return self.space.m_dim

    @cached_property
    def einstein(self) -> EinsteinData:
        return EinsteinData(self.n, self.field.einstein_k)

    @cached_property
    def decomposition(self) -> Decomposition:
        return riemann_decompose(self.field.R)

    @cached_property
    def subspaces(self) -> dict[str, SubspaceBasis]:
        return distinguished_subspaces(self.space, self.field)

    @property
    def manifold_type(self) -> str | None:
        if self.n == 7 and "Omega2_14" in self.subspaces:
            return NEARLY_G2
        if self.n == 6 and "Omega2_8" in self.subspaces:
            return NEARLY_KAHLER
        return None

    def operator(self, name: str) -> OperatorMatrix:
        """Full matrix of ``rhat``, ``rring``, ``what`` or ``wring``."""
        R = self.field.R
        W = self.decomposition.W
        table = {"rhat": (hat_matrix, R), "rring": (ring_matrix, R), "what": (hat_matrix, W), "wring": (ring_matrix, W)}
        if name not in table:
            raise KeyError(f"unknown operator {name!r}")
        fn, T = table[name]
        return fn(T)

    def subspace(self, label: str) -> SubspaceBasis:
        key = _canonical_label(label)
        if key not in self.subspaces:
            raise KeyError(f"subspace {label!r} is not available for {self.space.space_id}")
        return self.subspaces[key]

    def restricted(self, name: str, label: str) -> OperatorMatrix:
        op = self.operator(name)
        sub = self.subspace(label)
        if sub.ambient.kind != op.basis.kind:
            raise KeyError(f"subspace {label!r} does not match operator {name!r}")
        return restrict(op, sub)

    def spectrum(self, name: str, label: str, cluster_tol: float = 1e-6) -> SpectrumReport:
        return spectrum(self.restricted(name, label), cluster_tol)

    def spectral_minima(self) -> dict[str, float]:
        """Smallest Weyl eigenvalues on the subspaces used by the Betti conditions."""
        if self.manifold_type == NEARLY_G2:
            return {
                "what_omega2_14": self.spectrum("what", "Omega2_14").minimum,
                "wring_s2_0": self.spectrum("wring", "S2_0").minimum,
            }
        if self.manifold_type == NEARLY_KAHLER:
            return {
                "what_omega2_8": self.spectrum("what", "Omega2_8").minimum,
                "wring_s2_plus0": self.spectrum("wring", "S2_plus0").minimum,
                "wring_s2_minus": self.spectrum("wring", "S2_minus").minimum,
            }
        raise KeyError(f"{self.space.space_id} carries no recognised structure")


_LABELS = {
    "omega2_full": "Omega2_full",
    "omega2_7": "Omega2_7",
    "omega2_14": "Omega2_14",
    "omega2_1": "Omega2_1",
    "omega2_6": "Omega2_6",
    "omega2_8": "Omega2_8",
    "s2_full": "S2_full",
    "s2_0": "S2_0",
    "s2_plus0": "S2_plus0",
    "s2_minus": "S2_minus",
}
CLI_LABELS = tuple(_LABELS)


def _canonical_label(label: str) -> str:
    return _LABELS.get(label.lower(), label)


def analyze_space(space: SpaceModel) -> SpaceAnalysis:
    return SpaceAnalysis(space, riemann_components(space))


@lru_cache(maxsize=None)
def analyze(space_id: str) -> SpaceAnalysis:
    """Cached analysis of a built-in space (or a JSON file path)."""
    return analyze_space(build_space(space_id))
