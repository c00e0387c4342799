"""Classical majorization, Lorenz curves, convex-sum checks, and the Gini index.

The Lorenz curve here follows the concentration convention: components are
ranked in decreasing order, so the polyline runs from (0,0) to (1,1) at or
above the diagonal, and a higher curve means a more concentrated array.
Classical majorization (equal totals, ranked prefix sums dominated) is
exactly "the curve lies below"; the Gini index is the normalized area
between the curve and the diagonal, which makes it an order morphism for
that relation.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import (
    Array,
    MajorizeError,
    ToleranceLike,
    as_tolerance,
    _require_same_length,
)


class ZeroTotal(MajorizeError):
    """The Lorenz curve of an all-zero array is undefined."""


@dataclass(frozen=True)
class LorenzCurve:
    """Polyline of cumulative-share points in the unit square.

    Abscissas step uniformly from 0 to 1; ordinates are the cumulative shares
    of the decreasingly ranked components, so they are non-decreasing with
    non-increasing increments (a concave polyline ending exactly at (1,1)).
    """

    points: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def ordinates(self) -> tuple[float, ...]:
        return tuple(p[1] for p in self.points)

    def to_dict(self) -> dict:
        return {"points": [[a, o] for a, o in self.points]}

    def to_csv(self) -> str:
        lines = ["abscissa,ordinate"]
        lines += [f"{a!r},{o!r}" for a, o in self.points]
        return "\n".join(lines) + "\n"


def lorenz_points(x: Array) -> LorenzCurve:
    """Cumulative-share polyline of the decreasingly ranked components.

    Raises ZeroTotal when the array sums to zero.
    """
    ranked = sorted(x.values, reverse=True)
    total = sum(ranked)  # summed in ranked order so the last share is exactly 1.0
    if total <= 0.0:
        raise ZeroTotal("all components are zero; the curve is undefined")
    n = len(ranked)
    pts = [(0.0, 0.0)]
    run = 0.0
    for k, v in enumerate(ranked, start=1):
        run += v
        pts.append((k / n, run / total))
    return LorenzCurve(tuple(pts))


def classical_majorizes(x: Array, y: Array, tol: ToleranceLike = None) -> bool:
    """True iff the ranked prefix sums of x never exceed y's and totals match.

    Equivalently, the Lorenz curve of y lies (weakly) above that of x.
    """
    _require_same_length(x, y)
    eps = as_tolerance(tol).eps
    rx = sorted(x.values, reverse=True)
    ry = sorted(y.values, reverse=True)
    sx = sy = 0.0
    for k in range(len(rx) - 1):
        sx += rx[k]
        sy += ry[k]
        if sx > sy + eps:
            return False
    sx += rx[-1]
    sy += ry[-1]
    return abs(sx - sy) <= eps


def default_convex_family(x: Array, y: Array) -> tuple[Callable[[float], float], ...]:
    """The fixed convex test family used when none is supplied.

    v -> v**2; the hinges v -> max(v - t, 0) with t at the deciles of the
    combined components; and v -> exp(v / m) with m the combined maximum
    (omitted when m = 0).
    """
    combined = list(x.values) + list(y.values)
    family: list[Callable[[float], float]] = [lambda v: v * v]

    def hinge(t: float) -> Callable[[float], float]:
        return lambda v: v - t if v > t else 0.0

    for t in statistics.quantiles(combined, n=10, method="inclusive"):
        family.append(hinge(t))
    m = max(combined)
    if m > 0.0:
        family.append(lambda v: math.exp(v / m))
    return tuple(family)


def convex_inequality_holds(
    x: Array,
    y: Array,
    family: Optional[Iterable[Callable[[float], float]]] = None,
    tol: ToleranceLike = None,
) -> bool:
    """True iff sum(phi(x_i)) <= sum(phi(y_i)) + eps for every phi in the family.

    This is the testable direction of the convex-sum characterization of
    classical majorization; a finite family cannot certify the converse.
    """
    _require_same_length(x, y)
    eps = as_tolerance(tol).eps
    if family is None:
        family = default_convex_family(x, y)
    for phi in family:
        if sum(phi(v) for v in x.values) > sum(phi(v) for v in y.values) + eps:
            return False
    return True


def gini(x: Array) -> float:
    """Gini concentration index in [0, 1).

    Computed geometrically as twice the area between the Lorenz polyline and
    the diagonal (exact trapezoid sum), so it inherits the curve's ordering:
    classically majorized arrays never have a larger index, with equality
    only when the curves coincide.

    Raises ZeroTotal for all-zero arrays.
    """
    pts = lorenz_points(x).points
    area = 0.0
    for (a0, o0), (a1, o1) in zip(pts, pts[1:]):
        area += (o0 + o1) * (a1 - a0)
    return area - 1.0  # area already carries the factor 2 from the trapezoid rule
