"""Depth transform for the induced torus ``R_{L/K} G_m``.

A character of depth ``r`` is sent to a Langlands parameter of depth
``phi_{L/K}(e r)``.  Characters and parameters are represented only by their
depths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeDepth, NonpositiveEpsilon, ZeroDepth
from .filtration import RamificationFiltration, Ramification
from .herbrand import phi_from_filtration


class Depth(Fraction):
    """A nonnegative exact rational."""

    def __new__(cls, value=0, denominator=None):
        self = super().__new__(cls, value, denominator)
        if self < 0:
            raise NegativeDepth(f"depth {self} is negative")
        return self

    def __repr__(self) -> str:
        return f"Depth({self.numerator}/{self.denominator})" if self.denominator != 1 else f"Depth({self.numerator})"


@dataclass(frozen=True)
class DepthReport:
    chi_depth: Depth
    lambda_depth: Depth
    ratio: Fraction | None
    gap: Fraction
    invariant_a: Fraction
    classification: Ramification


def parameter_depth(F: RamificationFiltration, chi_depth) -> Depth:
    r = Depth(chi_depth)
    return Depth(phi_from_filtration(F).evaluate(F.ramification_index * r))


def invariant_a(F: RamificationFiltration) -> Fraction:
    """``phi(b) - b/e`` at the largest lower break ``b``.

    Zero exactly when ``F`` is not wildly ramified; unramified and trivial
    filtrations (``b <= 0`` or no break) return 0 by convention.
    """
    if F.ramification_index == 1:
        return Fraction(0)
    b = F.largest_break()
    return phi_from_filtration(F).evaluate(b) - Fraction(b, F.ramification_index)


def depth_ratio(F: RamificationFiltration, chi_depth) -> Fraction:
    r = Depth(chi_depth)
    if r == 0:
        raise ZeroDepth("ratio is undefined at depth 0")
    return parameter_depth(F, r) / r


def depth_gap(F: RamificationFiltration, chi_depth) -> Fraction:
    r = Depth(chi_depth)
    return parameter_depth(F, r) - r


def is_depth_preserving(F: RamificationFiltration) -> bool:
    return F.classify() is not Ramification.WILD


def tail_start(F: RamificationFiltration) -> Fraction:
    """Smallest depth ``r >= 0`` with ``e r >= b``; from there on the gap equals ``invariant_a``."""
    if F.ramification_index == 1:
        return Fraction(0)
    return max(Fraction(0), Fraction(F.largest_break(), F.ramification_index))


def min_depth_for_ratio(F: RamificationFiltration, epsilon) -> Depth:
    """Smallest ``r`` with ``phi(e r)/r - 1 <= epsilon``.

    Since ``phi`` is concave with ``phi(0) = 0`` the ratio is nonincreasing
    in ``r``: constant (equal to ``|G_1|``) while ``e r <= x_1`` and strictly
    decreasing afterwards.  The segments are scanned in order and the
    crossing is solved exactly on the first one that reaches ``1 + epsilon``.
    Returns 0 when the bound already holds for every ``r > 0`` (always the
    case for tame and unramified ``F``).
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise NonpositiveEpsilon(f"epsilon {eps} is not positive")
    target = 1 + eps
    e = F.ramification_index
    phi = phi_from_filtration(F)
    pts = phi.breakpoints
    slopes = phi.slopes
    for j, s in enumerate(slopes):
        x0, y0 = pts[j]
        intercept = y0 - s * x0
        # ratio on this segment: e*s + intercept / r, for r in [x0/e, x1/e]
        if e * s + (intercept / (pts[j + 1][0] / e) if j + 1 < len(pts) else 0) <= target:
            if intercept == 0:
                return Depth(0)
            r = intercept / (target - e * s)
            return Depth(max(r, x0 / e))
    raise AssertionError("unreachable: final slope is 1/e so the ratio tends to 1")


def moy_prasad_threshold(F: RamificationFiltration, r) -> int:
    """Valuation cutoff ``ceil(e r)`` of the filtration subgroup ``T(K)_r``."""
    return math.ceil(F.ramification_index * Depth(r))


def depth_report(F: RamificationFiltration, chi_depth) -> DepthReport:
    r = Depth(chi_depth)
    lam = parameter_depth(F, r)
    return DepthReport(
        chi_depth=r,
        lambda_depth=lam,
        ratio=lam / r if r else None,
        gap=lam - r,
        invariant_a=invariant_a(F),
        classification=F.classify(),
    )
