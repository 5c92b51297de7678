"""Sufficient conditions for the vanishing of the second and third Betti numbers.

Each condition is a one-sided inequality.  When none of the conditions for
a Betti number holds, the verdict is ``no_conclusion``: these criteria never
prove that a Betti number is nonzero.

Nearly Kaehler thresholds are stated for Einstein constant 5 and are scaled
linearly in ``k`` otherwise; nearly G2 thresholds are expressed in ``tau0^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import EinsteinData
from .errors import MissingInputError

NEARLY_G2 = "nearly_g2"
NEARLY_KAHLER = "nearly_kahler6"
MANIFOLD_TYPES = (NEARLY_G2, NEARLY_KAHLER)

ZERO = "zero"
NO_CONCLUSION = "no_conclusion"

SPECTRAL_KEYS = {
    NEARLY_G2: ("what_omega2_14", "wring_s2_0"),
    NEARLY_KAHLER: ("what_omega2_8", "wring_s2_plus0", "wring_s2_minus"),
}


@dataclass(frozen=True)
class BettiCondition:
    id: str
    betti: str  # "b2" or "b3"
    quantity: str
    relation: str  # ">=" or "<="
    threshold: float
    observed: float
    holds: bool


@dataclass(frozen=True)
class BettiReport:
    manifold_type: str
    mode: str
    conditions: tuple[BettiCondition, ...]
    verdicts: dict[str, str] = field(default_factory=dict)


def _cond(cid: str, betti: str, quantity: str, observed: float, relation: str, threshold: float, tol: float):
    if relation == ">=":
        holds = observed >= threshold - tol
    else:
        holds = observed <= threshold + tol
    return BettiCondition(cid, betti, quantity, relation, float(threshold), float(observed), bool(holds))


def _g2_conditions(e: EinsteinData, spectral, sectional, tol):
    t2 = e.tau0_squared
    out = []
    if spectral is not None:
        what, wring = spectral["what_omega2_14"], spectral["wring_s2_0"]
        out += [
            _cond("g2_b2_what", "b2", "min W^ on Omega2_14", what, ">=", -5 * t2 / 8, tol),
            _cond("g2_b3_wring", "b3", "min W° on S2_0", wring, ">=", -3 * t2 / 8, tol),
            _cond("g2_b3_what", "b3", "min W^ on Omega2_14", what, ">=", -t2 / 4, tol),
        ]
    if sectional is not None:
        d, D = sectional
        out += [
            _cond("g2_sec_b2", "b2", "-(D+d) - 7/3 (D-d)", -(D + d) - 7 / 3 * (D - d), ">=", -3 * t2 / 4, tol),
            _cond("g2_sec_b3_upper", "b3", "Delta", D, "<=", 11 * t2 / 80, tol),
            _cond("g2_sec_b3_lower", "b3", "delta", d, ">=", t2 / 112, tol),
        ]
    return out


def _nk_conditions(e: EinsteinData, spectral, sectional, tol):
    c = e.k / 5
    out = []
    if spectral is not None:
        what = spectral["what_omega2_8"]
        plus0 = spectral["wring_s2_plus0"]
        minus = spectral["wring_s2_minus"]
        out += [
            _cond("nk_b2_what", "b2", "min W^ on Omega2_8", what, ">=", -8 * c, tol),
            _cond("nk_b2_wring", "b2", "min W° on S2_plus0", plus0, ">=", -4 * c, tol),
            _cond("nk_b3_wring", "b3", "min W° on S2_minus", minus, ">=", -4.5 * c, tol),
            _cond("nk_b3_what", "b3", "min W^ on Omega2_8", what, ">=", -3 * c, tol),
        ]
    if sectional is not None:
        d, D = sectional
        out += [
            _cond("nk_sec_b2_a", "b2", "-(D+d) - 7/3 (D-d)", -(D + d) - 7 / 3 * (D - d), ">=", -10 * c, tol),
            _cond("nk_sec_b2_b", "b2", "(D+d) - 3 (D-d)", (D + d) - 3 * (D - d), ">=", -6 * c, tol),
            _cond("nk_sec_b3_lower", "b3", "delta", d, ">=", c / 4, tol),
            _cond("nk_sec_b3_upper", "b3", "Delta", D, "<=", 17 * c / 8, tol),
        ]
    return out


def betti_conditions(
    manifold_type: str,
    e: EinsteinData,
    spectral: dict[str, float] | None = None,
    sectional: tuple[float, float] | None = None,
    tol: float = 1e-9,
) -> BettiReport:
    """Evaluate every applicable vanishing condition.

    ``spectral`` maps the keys in :data:`SPECTRAL_KEYS` to smallest eigenvalues;
    ``sectional`` is ``(delta, Delta)``.  At least one must be given.
    """
    if manifold_type not in MANIFOLD_TYPES:
        raise ValueError(f"unknown manifold type {manifold_type!r}")
    if spectral is None and sectional is None:
        raise MissingInputError("give spectral minima or sectional bounds")
    if spectral is not None:
        missing = [k for k in SPECTRAL_KEYS[manifold_type] if k not in spectral]
        if missing:
            raise MissingInputError(f"missing spectral inputs: {', '.join(missing)}")
    if sectional is not None:
        if len(sectional) != 2 or sectional[0] > sectional[1]:
            raise MissingInputError("sectional bounds must be (delta, Delta) with delta <= Delta")
    build = _g2_conditions if manifold_type == NEARLY_G2 else _nk_conditions
    conds = tuple(build(e, spectral, sectional, tol))
    verdicts = {
        b: ZERO if any(c.holds for c in conds if c.betti == b) else NO_CONCLUSION for b in ("b2", "b3")
    }
    mode = "+".join(m for m, v in (("spectral", spectral), ("sectional", sectional)) if v is not None)
    return BettiReport(manifold_type, mode, conds, verdicts)
