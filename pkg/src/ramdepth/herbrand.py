"""Exact piecewise-linear functions and the Hasse-Herbrand function.

Everything here is exact rational arithmetic on :class:`fractions.Fraction`.
"""
from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NegativeArgument, NotInvertible, PiecewiseLinearError, TrivialExtension, Unramified
from .filtration import RamificationFiltration

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on ``[0, oo)`` with ``f(0) = 0``.

    ``breakpoints`` lists the vertices ``(x, y)`` starting at the origin;
    past the last vertex the function continues with ``final_slope``.
    Instances are kept in canonical form (collinear vertices removed), so
    ``==`` is equality of functions.
    """

    breakpoints: tuple[Point, ...]
    final_slope: Fraction

    def __post_init__(self) -> None:
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.breakpoints)
        if not pts or pts[0] != (0, 0):
            raise PiecewiseLinearError("first breakpoint must be the origin (0, 0)")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x1 <= x0:
                raise PiecewiseLinearError("breakpoint abscissae must be strictly increasing")
        final = Fraction(self.final_slope)
        object.__setattr__(self, "breakpoints", _canonical(pts, final))
        object.__setattr__(self, "final_slope", final)

    @classmethod
    def from_slopes(cls, xs: Iterable, slopes: Iterable, final_slope) -> "PiecewiseLinear":
        """Build from vertex abscissae ``0 = x_0 < x_1 < ...`` and the slope on each ``[x_j, x_{j+1}]``."""
        xs = [Fraction(x) for x in xs]
        pts = [(xs[0], Fraction(0))]
        for (x0, x1), s in zip(zip(xs, xs[1:]), slopes):
            pts.append((x1, pts[-1][1] + Fraction(s) * (x1 - x0)))
        return cls(tuple(pts), Fraction(final_slope))

    @classmethod
    def linear(cls, slope) -> "PiecewiseLinear":
        return cls(((Fraction(0), Fraction(0)),), Fraction(slope))

    @classmethod
    def identity(cls) -> "PiecewiseLinear":
        return cls.linear(1)

    # -- inspection ---------------------------------------------------------

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        """Slope of every segment, the unbounded last one included."""
        pts = self.breakpoints
        inner = tuple((y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:]))
        return inner + (self.final_slope,)

    def is_increasing(self) -> bool:
        return all(s > 0 for s in self.slopes)

    def is_concave(self) -> bool:
        s = self.slopes
        return all(a >= b for a, b in zip(s, s[1:]))

    def is_convex(self) -> bool:
        s = self.slopes
        return all(a <= b for a, b in zip(s, s[1:]))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, u) -> Fraction:
        return self.evaluate(u)

    def evaluate(self, u) -> Fraction:
        u = Fraction(u)
        if u < 0:
            raise NegativeArgument(f"argument {u} is negative")
        pts = self.breakpoints
        j = bisect.bisect_right(pts, u, key=lambda pt: pt[0]) - 1
        x0, y0 = pts[j]
        if j + 1 < len(pts):
            x1, y1 = pts[j + 1]
            return y0 + (y1 - y0) * (u - x0) / (x1 - x0)
        return y0 + self.final_slope * (u - x0)

    # -- algebra ------------------------------------------------------------

    def inverse(self) -> "PiecewiseLinear":
        if not self.is_increasing():
            raise NotInvertible("function has a non-positive slope")
        return PiecewiseLinear(tuple((y, x) for x, y in self.breakpoints), 1 / self.final_slope)

    def compose(self, inner: "PiecewiseLinear") -> "PiecewiseLinear":
        """``self ∘ inner``; ``inner`` must be strictly increasing."""
        if not inner.is_increasing():
            raise NotInvertible("inner function must be strictly increasing")
        back = inner.inverse()
        xs = {x for x, _ in inner.breakpoints}
        xs.update(back.evaluate(y) for y, _ in self.breakpoints)
        pts = tuple((x, self.evaluate(inner.evaluate(x))) for x in sorted(xs))
        return PiecewiseLinear(pts, self.final_slope * inner.final_slope)


def _canonical(pts: tuple[Point, ...], final_slope: Fraction) -> tuple[Point, ...]:
    out = [pts[0]]
    for j in range(1, len(pts)):
        x0, y0 = out[-1]
        x1, y1 = pts[j]
        nxt = (pts[j + 1][1] - y1) / (pts[j + 1][0] - x1) if j + 1 < len(pts) else final_slope
        if (y1 - y0) / (x1 - x0) != nxt:
            out.append(pts[j])
    return tuple(out)


def compose(outer: PiecewiseLinear, inner: PiecewiseLinear) -> PiecewiseLinear:
    return outer.compose(inner)


def inverse(f: PiecewiseLinear) -> PiecewiseLinear:
    return f.inverse()


def evaluate(f: PiecewiseLinear, u) -> Fraction:
    return f.evaluate(u)


@functools.lru_cache(maxsize=4096)
def phi_from_filtration(F: RamificationFiltration) -> PiecewiseLinear:
    """Hasse-Herbrand function ``u -> ∫_0^u dt / (G_0 : G_t)``.

    On ``(i-1, i]`` the integrand is ``|G_i| / |G_0|``, so the vertices sit
    at the lower breaks ``i >= 1`` and the final slope is ``1 / e``.
    """
    e = F.ramification_index
    xs = [0] + [i for i, _ in F.break_sequence() if i >= 1] if not F.is_trivial else [0]
    slopes = [Fraction(F.order(x + 1), e) for x in xs[:-1]]
    return PiecewiseLinear.from_slopes(xs, slopes, Fraction(1, e))


def psi_from_filtration(F: RamificationFiltration) -> PiecewiseLinear:
    return phi_from_filtration(F).inverse()


def upper_breaks(F: RamificationFiltration) -> list[Fraction]:
    """Upper-numbering breaks ``phi(b_j)`` of the lower breaks ``b_j >= 0``."""
    if F.is_trivial:
        raise TrivialExtension("the trivial group has no ramification break")
    if F.ramification_index == 1:
        raise Unramified("an unramified extension has no break at index >= 0")
    phi = phi_from_filtration(F)
    return [phi.evaluate(b) for b, _ in F.break_sequence()]


def phi_integer_oracle(F: RamificationFiltration, u: int) -> Fraction:
    """``phi(u)`` at an integer ``u >= 0`` by summing ``|G_i| / |G_0|`` over ``i = 1..u``.

    Reads the raw order tuple directly and is independent of
    :class:`PiecewiseLinear`.
    """
    if u < 0:
        raise NegativeArgument(f"argument {u} is negative")
    orders = F.orders
    g0 = orders[1] if len(orders) > 1 else 1
    total = 0
    for i in range(1, u + 1):
        total += orders[i + 1] if i + 1 < len(orders) else 1
    return Fraction(total, g0)
