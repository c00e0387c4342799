"""Arrays of non-negative scalars, the prefix-sum dominance order, and elementary impact steps.

The dominance order compared here is defined on raw (unsorted) arrays: X is
below Y when every prefix sum of X is no larger than the corresponding prefix
sum of Y.  Neither sorting nor equal totals is required, so arrays can encode
timelines where position 1 is the most recent period.

All comparisons go through an explicit absolute tolerance.  With ``eps = 0``
and integer-valued inputs every check is exact (doubles represent integers up
to 2**53 exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import accumulate
from typing import Iterable, Union


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class MajorizeError(ValueError):
    """Base class for every domain error raised by this package."""


class EmptyArray(MajorizeError):
    """An array must hold at least one component."""


class NegativeComponent(MajorizeError):
    """A component was negative (or not a finite number)."""

    def __init__(self, index: int, value: float):
        super().__init__(
            f"component {index} must be a finite non-negative number, got {value!r}"
        )
        self.index = index  # 1-based, matching external representations
        self.value = value


class LengthMismatch(MajorizeError):
    """Two arrays that must have equal length do not."""

    def __init__(self, left_len: int, right_len: int):
        super().__init__(f"arrays have different lengths: {left_len} vs {right_len}")
        self.left_len = left_len
        self.right_len = right_len


class IndexOutOfBounds(MajorizeError):
    """A step index lies outside the array (indices are 1-based)."""


class NonPositiveAmount(MajorizeError):
    """Step amounts must be strictly positive."""


class TransferExceedsSource(MajorizeError):
    """A transfer asked for more than the source position holds."""

    def __init__(self, j: int, available: float, requested: float):
        super().__init__(
            f"cannot move {requested!r} out of position {j}, which holds {available!r}"
        )
        self.j = j
        self.available = available
        self.requested = requested


class SortStepNotEii(MajorizeError):
    """A sort step was passed where an elementary impact step is required."""


# ---------------------------------------------------------------------------
# Tolerance
# ---------------------------------------------------------------------------

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Absolute comparison slack.

    ``a <= b`` holds iff ``a <= b + eps``; ``a == b`` holds iff
    ``|a - b| <= eps``.  With ``eps = 0`` the order is a genuine partial
    order (reflexive, antisymmetric, transitive).
    """

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        eps = float(self.eps)
        if not (eps >= 0.0) or math.isinf(eps):
            raise MajorizeError(f"eps must be finite and >= 0, got {self.eps!r}")
        object.__setattr__(self, "eps", eps)

    def leq(self, a: float, b: float) -> bool:
        return a <= b + self.eps

    def lt(self, a: float, b: float) -> bool:
        return a < b - self.eps

    def eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.eps


DEFAULT_TOLERANCE = Tolerance()
EXACT = Tolerance(0.0)

ToleranceLike = Union[Tolerance, float, None]


def as_tolerance(tol: ToleranceLike) -> Tolerance:
    """Coerce ``None`` (default), a float eps, or a Tolerance to a Tolerance."""
    if tol is None:
        return DEFAULT_TOLERANCE
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


# ---------------------------------------------------------------------------
# Arrays and prefix sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Array:
    """Immutable finite sequence of non-negative scalars, length >= 1."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise EmptyArray("an array needs at least one component")
        for idx, v in enumerate(vals, start=1):
            if not (v >= 0.0) or math.isinf(v):  # NaN fails the comparison
                raise NegativeComponent(idx, v)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    @property
    def total(self) -> float:
        return sum(self.values)

    def is_non_increasing(self) -> bool:
        v = self.values
        return all(v[k] >= v[k + 1] for k in range(len(v) - 1))


def make_array(values: Iterable[float]) -> Array:
    """Validating constructor: every component must be >= 0, length >= 1."""
    return Array(tuple(values))


@dataclass(frozen=True)
class PrefixSums:
    """Running sums of an array; ``sums[k-1]`` is the sum of the first k components."""

    sums: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.sums)

    def __getitem__(self, k):
        return self.sums[k]

    @property
    def total(self) -> float:
        return self.sums[-1]


def prefix_sums(x: Array) -> PrefixSums:
    return PrefixSums(tuple(accumulate(x.values)))


# ---------------------------------------------------------------------------
# Steps
# ---------------------------------------------------------------------------

def _check_index(i, name: str = "i") -> int:
    ii = int(i)
    if ii != i:
        raise IndexOutOfBounds(f"{name} must be an integer, got {i!r}")
    if ii < 1:
        raise IndexOutOfBounds(f"{name} must be >= 1 (indices are 1-based), got {i!r}")
    return ii


@dataclass(frozen=True)
class Transfer:
    """Move amount ``a`` from position ``j`` to the earlier position ``i`` (1-based, i < j).

    The total is preserved and every prefix sum between i and j-1 grows by
    ``a``, so the result strictly dominates the input.
    """

    i: int
    j: int
    a: float

    def __post_init__(self):
        object.__setattr__(self, "i", _check_index(self.i, "i"))
        object.__setattr__(self, "j", _check_index(self.j, "j"))
        if self.j <= self.i:
            raise IndexOutOfBounds(
                f"transfer source index j must exceed destination i, got i={self.i}, j={self.j}"
            )
        a = float(self.a)
        if not (a > 0.0) or math.isinf(a):
            raise NonPositiveAmount(f"transfer amount must be > 0, got {self.a!r}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class Increase:
    """Add amount ``a`` at position ``i`` (1-based); nothing is removed anywhere."""

    i: int
    a: float

    def __post_init__(self):
        object.__setattr__(self, "i", _check_index(self.i, "i"))
        a = float(self.a)
        if not (a > 0.0) or math.isinf(a):
            raise NonPositiveAmount(f"increase amount must be > 0, got {self.a!r}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class SortDesc:
    """Rearrange the array into non-increasing order (stable for ties)."""


Step = Union[Transfer, Increase, SortDesc]


# ---------------------------------------------------------------------------
# The dominance order
# ---------------------------------------------------------------------------

class DominanceOutcome(Enum):
    EQUAL = "Equal"
    LEFT_STRICTLY_BELOW = "LeftStrictlyBelow"
    RIGHT_STRICTLY_BELOW = "RightStrictlyBelow"
    INCOMPARABLE = "Incomparable"


def _require_same_length(x: Array, y: Array) -> None:
    if len(x) != len(y):
        raise LengthMismatch(len(x), len(y))


def generalized_compare(x: Array, y: Array, tol: ToleranceLike = None) -> DominanceOutcome:
    """Four-way comparison under prefix-sum dominance.

    X is below Y when every prefix sum of X is <= the corresponding prefix
    sum of Y (within tolerance); with slack in both directions at every index
    the arrays count as equal.  Antisymmetry and transitivity are exact when
    ``eps = 0``.
    """
    _require_same_length(x, y)
    eps = as_tolerance(tol).eps
    sx = sy = 0.0
    left = right = True
    for xv, yv in zip(x.values, y.values):
        sx += xv
        sy += yv
        if sx > sy + eps:
            left = False
        if sy > sx + eps:
            right = False
        if not (left or right):
            return DominanceOutcome.INCOMPARABLE
    if left and right:
        return DominanceOutcome.EQUAL
    if left:
        return DominanceOutcome.LEFT_STRICTLY_BELOW
    return DominanceOutcome.RIGHT_STRICTLY_BELOW


def dominates_or_equal(outcome: DominanceOutcome) -> bool:
    """True when the left array is below or equal to the right one."""
    return outcome in (DominanceOutcome.EQUAL, DominanceOutcome.LEFT_STRICTLY_BELOW)


def componentwise_leq(x: Array, y: Array, tol: ToleranceLike = None) -> bool:
    """True iff x_i <= y_i (within tolerance) at every position."""
    _require_same_length(x, y)
    eps = as_tolerance(tol).eps
    return all(xv <= yv + eps for xv, yv in zip(x.values, y.values))


# ---------------------------------------------------------------------------
# Applying steps
# ---------------------------------------------------------------------------

def apply_eii(x: Array, step: Step, tol: ToleranceLike = None) -> Array:
    """Apply one elementary impact step (transfer or increase) to an array.

    The result strictly dominates the input in the generalized order: a
    transfer raises the prefix sums between its two positions, an increase
    raises every prefix sum from its position on.

    Raises:
        SortStepNotEii: a SortDesc step was passed; use ``sort_desc`` instead.
        IndexOutOfBounds: a step index exceeds the array length.
        TransferExceedsSource: the source position holds less than the amount
            (beyond tolerance; shortfalls within eps are clamped to zero).
    """
    if isinstance(step, SortDesc):
        raise SortStepNotEii("SortDesc is not an elementary impact step; apply sort_desc")
    n = len(x)
    if isinstance(step, Transfer):
        if step.j > n:
            raise IndexOutOfBounds(f"transfer touches position {step.j} of a length-{n} array")
        src = x.values[step.j - 1]
        if step.a > src + as_tolerance(tol).eps:
            raise TransferExceedsSource(step.j, src, step.a)
        vals = list(x.values)
        vals[step.i - 1] += step.a
        rest = src - step.a
        vals[step.j - 1] = rest if rest > 0.0 else 0.0
        return Array(tuple(vals))
    if isinstance(step, Increase):
        if step.i > n:
            raise IndexOutOfBounds(f"increase touches position {step.i} of a length-{n} array")
        vals = list(x.values)
        vals[step.i - 1] += step.a
        return Array(tuple(vals))
    raise TypeError(f"not a step: {step!r}")


# ---------------------------------------------------------------------------
# Sorting maps
# ---------------------------------------------------------------------------

def sort_desc(x: Array) -> Array:
    """The non-increasing rearrangement; ties keep their original relative order."""
    return Array(tuple(sorted(x.values, reverse=True)))


def sort_asc(x: Array) -> Array:
    """The non-decreasing rearrangement."""
    return Array(tuple(sorted(x.values)))
