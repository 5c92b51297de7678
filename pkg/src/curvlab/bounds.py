"""Interval bounds on curvature-operator eigenvalues from sectional pinching.

All functions take sectional curvature bounds ``delta <= sec <= Delta`` and
return closed intervals.  The notation ``[a +- b]`` stands for ``[a-b, a+b]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentBoundsError

CONTAINMENT_TOL = 1e-9


@dataclass(frozen=True)
class IntervalBound:
    lo: float
    hi: float
    label: str

    def __post_init__(self):
        if self.lo > self.hi and self.lo - self.hi <= 1e-12 * max(1.0, abs(self.lo), abs(self.hi)):
            # a degenerate interval that rounding turned inside out
            mid = (self.lo + self.hi) / 2
            object.__setattr__(self, "lo", mid)
            object.__setattr__(self, "hi", mid)
        if self.lo > self.hi:
            raise InconsistentBoundsError(f"{self.label}: empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def centered(cls, center: float, radius: float, label: str) -> "IntervalBound":
        return cls(center - radius, center + radius, label)

    def contains(self, x: float, tol: float = CONTAINMENT_TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def contains_interval(self, other: "IntervalBound", tol: float = CONTAINMENT_TOL) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol

    def intersect(self, other: "IntervalBound", label: str | None = None) -> "IntervalBound":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        name = label or f"{self.label}&{other.label}"
        try:
            return IntervalBound(lo, hi, name)
        except InconsistentBoundsError:
            raise InconsistentBoundsError(f"{name}: intersection is empty") from None


@dataclass(frozen=True)
class EinsteinData:
    """Dimension and Einstein constant (``Ric = k g``), plus ``tau0`` for nearly G2."""

    n: int
    k: float
    tau0: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        if self.tau0 is not None and abs(self.k - 3 * self.tau0**2 / 8) >= 1e-10:
            raise ValueError(f"k = {self.k} is not 3 tau0^2 / 8 for tau0 = {self.tau0}")

    @classmethod
    def nearly_g2(cls, tau0: float) -> "EinsteinData":
        return cls(7, 3 * tau0**2 / 8, tau0)

    @property
    def scalar(self) -> float:
        return self.n * self.k

    @property
    def tau0_squared(self) -> float:
        """``tau0^2``, derived from ``k`` if not given."""
        return self.tau0**2 if self.tau0 is not None else 8 * self.k / 3


def _check(delta: float, Delta: float) -> None:
    if delta > Delta:
        raise InconsistentBoundsError(f"delta = {delta} exceeds Delta = {Delta}")


def bound_hat_general(delta: float, Delta: float, n: int) -> IntervalBound:
    _check(delta, Delta)
    c = (4 * (n // 2) - 1) / 3
    return IntervalBound.centered(-(Delta + delta), c * (Delta - delta), "hat-general")


def bound_hat_special(delta: float, Delta: float) -> IntervalBound:
    """Sharper bound on the 14-dimensional (G2) or 8-dimensional (SU(3)) 2-forms."""
    _check(delta, Delta)
    return IntervalBound.centered(-(Delta + delta), 7 / 3 * (Delta - delta), "hat-special")


def bound_ring_general(delta: float, Delta: float, n: int) -> tuple[IntervalBound, IntervalBound]:
    """Bounds for all but one eigenvalue of the ring operator, and for the remaining one."""
    _check(delta, Delta)
    main = IntervalBound.centered((Delta + delta) / 2, (n - 1) * (Delta - delta) / 2, "ring-general")
    other = IntervalBound(-(n - 1) * Delta, -(n - 1) * delta, "ring-general-g")
    return main, other


def bound_ring_einstein(delta: float, Delta: float, n: int, k: float) -> IntervalBound:
    _check(delta, Delta)
    mean = k / (n - 1)
    if not delta - 1e-12 <= mean <= Delta + 1e-12:
        raise InconsistentBoundsError(f"need delta <= k/(n-1) = {mean} <= Delta")
    a = IntervalBound(-k + n * delta, k - (n - 2) * delta, "ring-einstein-a")
    b = IntervalBound(k - (n - 2) * Delta, -k + n * Delta, "ring-einstein-b")
    return a.intersect(b, "ring-einstein")


def bound_ring_nk_plus(delta: float, Delta: float) -> IntervalBound:
    _check(delta, Delta)
    return IntervalBound(2 * delta - Delta, 2 * Delta - delta, "ring-nk-plus")


def bound_intersections_nk(delta: float, Delta: float) -> tuple[IntervalBound, IntervalBound]:
    """Intersected bounds on the 8-dimensional 2-forms and on ``S2_plus0`` (n = 6, k = 5)."""
    _check(delta, Delta)
    s, d = Delta + delta, Delta - delta
    hat8 = IntervalBound.centered(-4 + s, 3 * d, "nk-hat8-a").intersect(
        IntervalBound.centered(-s, 7 / 3 * d, "nk-hat8-b"), "nk-hat8"
    )
    ring = IntervalBound.centered(s / 2, 3 * d / 2, "nk-ring-plus0-a").intersect(
        IntervalBound.centered(2 - s / 2, 7 / 6 * d, "nk-ring-plus0-b"), "nk-ring-plus0"
    )
    return hat8, ring


def weitzenboeck_constants(e: EinsteinData) -> tuple[float, float]:
    """Curvature constants in the Weitzenboeck formulas for 2- and 3-forms."""
    if e.n < 4:
        raise ValueError("needs n >= 4")
    n, k = e.n, e.k
    return 2 * k * (n - 2) / (n - 1), 3 * k * (n - 3) / (n - 1)

