"""Constructive certificates for the prefix-sum dominance order.

Whenever X is dominated by Y, Y can be reached from X by finitely many
elementary impact steps (transfers toward earlier positions, plus plain
increases).  The functions here produce such a chain as an explicit,
replayable certificate, verify certificates independently of how they were
produced, and generate random dominated pairs for property testing.

Decomposition strategy (one step per iteration, re-derived from the current
state):

* If some position of the current array exceeds the target, take the first
  such position ``j`` and transfer its surplus toward the first earlier
  position that is still short of the target (capped by that deficit).
* Otherwise every position is at most its target; raise the first strict
  shortfall to its target value with a plain increase.

Each step strictly raises at least one prefix sum while staying inside the
dominance cone of the target, so the total prefix gap to the target shrinks
at every step and the chain terminates.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .core import (
    Array,
    DominanceOutcome,
    Increase,
    MajorizeError,
    SortDesc,
    Step,
    ToleranceLike,
    Transfer,
    apply_eii,
    as_tolerance,
    generalized_compare,
    make_array,
    sort_desc,
    _require_same_length,
)


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class NotDominated(MajorizeError):
    """The left array is not below the right one in the dominance order.

    ``witness_index`` is the first (1-based) prefix length at which the left
    prefix sum exceeds the right one.
    """

    def __init__(self, witness_index: int, message: str | None = None):
        super().__init__(
            message
            or f"left array is not dominated: prefix sum {witness_index} exceeds the right one"
        )
        self.witness_index = witness_index


class TargetNotDecreasing(MajorizeError):
    """Decreasing-mode decomposition requires a non-increasing target."""


class SumsNotEqual(MajorizeError):
    """Transfers-only decomposition requires equal totals."""

    def __init__(self, left_total: float, right_total: float):
        super().__init__(f"totals differ: {left_total!r} vs {right_total!r}")
        self.left_total = left_total
        self.right_total = right_total


class MalformedCertificate(MajorizeError):
    """A serialized certificate could not be decoded."""


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class CertificateMode(Enum):
    GENERAL = "general"
    DECREASING = "decreasing"
    TRANSFERS = "transfers"


@dataclass(frozen=True)
class Certificate:
    """An ordered list of steps transforming ``source`` into ``target``.

    ``intermediates[t]`` records the state after step ``t``; the chain of
    recorded states is what verification checks, independently of the
    producing algorithm.
    """

    source: Array
    target: Array
    steps: tuple[Step, ...]
    intermediates: tuple[Array, ...]
    mode: CertificateMode

    def __post_init__(self):
        if len(self.steps) != len(self.intermediates):
            raise MajorizeError(
                f"{len(self.steps)} steps but {len(self.intermediates)} intermediates"
            )
        n = len(self.source)
        if len(self.target) != n or any(len(z) != n for z in self.intermediates):
            raise MajorizeError("certificate arrays must all have the same length")

    @property
    def final(self) -> Array:
        return self.intermediates[-1] if self.intermediates else self.source

    @property
    def eii_count(self) -> int:
        return sum(1 for s in self.steps if not isinstance(s, SortDesc))

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "source": [_plain_number(v) for v in self.source],
            "target": [_plain_number(v) for v in self.target],
            "steps": [_step_to_dict(s) for s in self.steps],
            "intermediates": [[_plain_number(v) for v in z] for z in self.intermediates],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        try:
            mode = CertificateMode(data["mode"])
            source = make_array(data["source"])
            target = make_array(data["target"])
            steps = tuple(_step_from_dict(s) for s in data["steps"])
            intermediates = tuple(make_array(z) for z in data["intermediates"])
            return cls(source, target, steps, intermediates, mode)
        except MalformedCertificate:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"bad certificate data: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise MalformedCertificate("certificate JSON must be an object")
        return cls.from_dict(data)


def _plain_number(v: float):
    # integral values serialize without a decimal point, so integer
    # certificates round-trip byte-identically
    return int(v) if float(v).is_integer() else float(v)


def _step_to_dict(step: Step) -> dict:
    if isinstance(step, Transfer):
        return {"type": "transfer", "i": step.i, "j": step.j, "a": _plain_number(step.a)}
    if isinstance(step, Increase):
        return {"type": "increase", "i": step.i, "a": _plain_number(step.a)}
    if isinstance(step, SortDesc):
        return {"type": "sort_desc"}
    raise TypeError(f"not a step: {step!r}")


def _step_from_dict(data: dict) -> Step:
    if not isinstance(data, dict):
        raise MalformedCertificate(f"step must be an object, got {data!r}")
    kind = data.get("type")
    try:
        if kind == "transfer":
            return Transfer(data["i"], data["j"], data["a"])
        if kind == "increase":
            return Increase(data["i"], data["a"])
        if kind == "sort_desc":
            return SortDesc()
    except (KeyError, TypeError, MajorizeError) as exc:
        raise MalformedCertificate(f"bad step {data!r}: {exc}") from exc
    raise MalformedCertificate(f"unknown step type {kind!r}")


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

class FailureReason(Enum):
    CHAIN_NOT_STRICT = "ChainNotStrict"
    NOT_SANDWICHED_BY_TARGET = "NotSandwichedByTarget"
    REPLAY_MISMATCH = "ReplayMismatch"
    MODE_VIOLATION = "ModeViolation"
    SORTED_INTERMEDIATE_NOT_BELOW_TARGET = "SortedIntermediateNotBelowTarget"


@dataclass(frozen=True)
class CheckFailure:
    step_index: Optional[int]  # 0-based step, None for certificate-level failures
    reason: FailureReason
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked_steps: int
    failure: Optional[CheckFailure] = None

    def to_dict(self) -> dict:
        d: dict = {"ok": self.ok, "checked_steps": self.checked_steps}
        if self.failure is not None:
            d["failure"] = {
                "step_index": self.failure.step_index,
                "reason": self.failure.reason.value,
                "detail": self.failure.detail,
            }
        return d


def _close(a: Sequence[float], b: Sequence[float], slack: float) -> bool:
    return all(abs(p - q) <= slack for p, q in zip(a, b))


def verify_certificate(cert: Certificate, tol: ToleranceLike = None) -> VerificationReport:
    """Check a certificate without trusting its producer.

    Every mode requires: replaying each step reproduces the recorded
    intermediate, every intermediate strictly dominates its predecessor and
    stays below-or-equal the target, and the last recorded state is the
    target.  Decreasing mode additionally requires a non-increasing target,
    sorts only right after impact steps, and the descending rearrangement of
    every impact-step intermediate to stay below the target.  Transfers mode
    additionally requires every step to be a transfer and the total to be
    conserved at each step.

    Failures are reported, never raised.
    """
    tolerance = as_tolerance(tol)
    eps = tolerance.eps
    n = len(cert.source)
    replay_slack = n * eps  # exact when eps = 0

    def failed(step_index: Optional[int], checked: int, reason: FailureReason, detail: str):
        return VerificationReport(False, checked, CheckFailure(step_index, reason, detail))

    # structural mode checks
    if cert.mode is CertificateMode.TRANSFERS:
        for t, step in enumerate(cert.steps):
            if not isinstance(step, Transfer):
                return failed(t, 0, FailureReason.MODE_VIOLATION,
                              f"step {t} is not a transfer in transfers-only mode")
    if cert.mode is CertificateMode.DECREASING:
        if not cert.target.is_non_increasing():
            return failed(None, 0, FailureReason.MODE_VIOLATION,
                          "decreasing-mode target is not non-increasing")
        for t, step in enumerate(cert.steps):
            if isinstance(step, SortDesc):
                if t == 0 or isinstance(cert.steps[t - 1], SortDesc):
                    return failed(t, 0, FailureReason.MODE_VIOLATION,
                                  f"sort step {t} does not immediately follow an impact step")

    prev = cert.source
    computed = cert.source
    for t, (step, recorded) in enumerate(zip(cert.steps, cert.intermediates)):
        try:
            if isinstance(step, SortDesc):
                computed = sort_desc(computed)
            else:
                computed = apply_eii(computed, step, tolerance)
        except MajorizeError as exc:
            return failed(t, t, FailureReason.REPLAY_MISMATCH,
                          f"step {t} is not applicable: {exc}")
        if not _close(computed.values, recorded.values, replay_slack):
            return failed(t, t, FailureReason.REPLAY_MISMATCH,
                          f"replaying step {t} does not reproduce the recorded intermediate")
        if generalized_compare(prev, recorded, tolerance) is not DominanceOutcome.LEFT_STRICTLY_BELOW:
            return failed(t, t, FailureReason.CHAIN_NOT_STRICT,
                          f"intermediate {t} does not strictly dominate its predecessor")
        sandwich = generalized_compare(recorded, cert.target, tolerance)
        if sandwich not in (DominanceOutcome.EQUAL, DominanceOutcome.LEFT_STRICTLY_BELOW):
            return failed(t, t, FailureReason.NOT_SANDWICHED_BY_TARGET,
                          f"intermediate {t} is not dominated by the target")
        if cert.mode is CertificateMode.DECREASING and not isinstance(step, SortDesc):
            ranked = sort_desc(recorded)
            out = generalized_compare(ranked, cert.target, tolerance)
            if out not in (DominanceOutcome.EQUAL, DominanceOutcome.LEFT_STRICTLY_BELOW):
                return failed(t, t, FailureReason.SORTED_INTERMEDIATE_NOT_BELOW_TARGET,
                              f"descending rearrangement of intermediate {t} is not below the target")
        if cert.mode is CertificateMode.TRANSFERS:
            if abs(recorded.total - prev.total) > max(eps, replay_slack):
                return failed(t, t, FailureReason.MODE_VIOLATION,
                              f"total not conserved at step {t}")
        prev = recorded

    if not _close(prev.values, cert.target.values, replay_slack):
        return failed(None, len(cert.steps), FailureReason.REPLAY_MISMATCH,
                      "final state does not match the target")
    return VerificationReport(True, len(cert.steps))


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------

def replay(source: Array, steps: Sequence[Step], tol: ToleranceLike = None) -> Array:
    """Left-fold the steps over the source array.

    Errors raised while applying a step carry the 0-based offending position
    in ``exc.step_index``.
    """
    cur = source
    for t, step in enumerate(steps):
        try:
            cur = sort_desc(cur) if isinstance(step, SortDesc) else apply_eii(cur, step, tol)
        except MajorizeError as exc:
            exc.step_index = t
            raise
    return cur


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def _dominance_witness(xvals: Sequence[float], yvals: Sequence[float], eps: float) -> Optional[int]:
    """First 1-based prefix length where X's prefix sum exceeds Y's, if any."""
    sx = sy = 0.0
    for k, (xv, yv) in enumerate(zip(xvals, yvals), start=1):
        sx += xv
        sy += yv
        if sx > sy + eps:
            return k
    return None


def _require_dominated(x: Array, y: Array, eps: float) -> None:
    witness = _dominance_witness(x.values, y.values, eps)
    if witness is not None:
        raise NotDominated(witness)


def _next_step(cur: list[float], target: tuple[float, ...], eps: float):
    """Choose the next impact step toward the target, or None when settled.

    A position counts as exceeding the target only beyond ``n * eps`` (a
    shortfall counts beyond ``eps``); this keeps the loop making progress of
    at least eps per step on noisy float inputs and is exact when eps = 0.
    """
    n = len(cur)
    surplus_eps = n * eps
    for j in range(n):
        c = cur[j] - target[j]
        if c > surplus_eps:
            for i in range(j):
                d = target[i] - cur[i]
                if d > eps:
                    return Transfer(i + 1, j + 1, d if d < c else c)
            # unreachable when cur is dominated by target
            raise NotDominated(
                j + 1,
                f"position {j + 1} exceeds the target with no earlier shortfall to absorb it",
            )
    for i in range(n):
        d = target[i] - cur[i]
        if d > eps:
            return Increase(i + 1, d)
    return None


def _apply_inplace(vals: list[float], step: Step) -> None:
    # mirrors apply_eii exactly so replay reproduces the same floats
    if isinstance(step, Transfer):
        vals[step.i - 1] += step.a
        rest = vals[step.j - 1] - step.a
        vals[step.j - 1] = rest if rest > 0.0 else 0.0
    else:
        vals[step.i - 1] += step.a


def _step_cap(n: int) -> int:
    # generous tripwire; the chooser settles at least one position per step
    return 8 * n * n + 64


def decompose_general(x: Array, y: Array, tol: ToleranceLike = None) -> Certificate:
    """Produce a chain of impact steps from ``x`` to ``y`` (general mode).

    Requires ``x`` to be dominated by ``y``.  Every intermediate strictly
    dominates its predecessor and stays below the target; the chain ends at
    the target (exactly for integer inputs).  At most one step is emitted per
    position, so the chain length never exceeds the array length.

    Raises:
        LengthMismatch: the arrays differ in length.
        NotDominated: some prefix sum of ``x`` exceeds that of ``y``,
            reported with the offending prefix length.
    """
    tolerance = as_tolerance(tol)
    _require_same_length(x, y)
    _require_dominated(x, y, tolerance.eps)
    steps, inters = _general_chain(x, y, tolerance.eps)
    return Certificate(x, y, tuple(steps), tuple(inters), CertificateMode.GENERAL)


def _general_chain(x: Array, y: Array, eps: float):
    cur = list(x.values)
    yv = y.values
    steps: list[Step] = []
    inters: list[Array] = []
    cap = _step_cap(len(cur))
    while True:
        step = _next_step(cur, yv, eps)
        if step is None:
            return steps, inters
        _apply_inplace(cur, step)
        steps.append(step)
        inters.append(Array(tuple(cur)))
        if len(steps) > cap:  # only reachable for adversarial sub-eps inputs
            raise RuntimeError("decomposition did not converge; inputs are at tolerance scale")


def decompose_decreasing(x: Array, y: Array, tol: ToleranceLike = None) -> Certificate:
    """Chain of impact steps with re-sorting, for a non-increasing target.

    After every impact step whose result is out of order, a descending sort
    step is emitted, so the working array is kept non-increasing.  The
    descending rearrangement of every intermediate then also stays below the
    target, provided the source itself is non-increasing.

    For sources that are NOT non-increasing such a chain may not exist at
    all: re-sorting an intermediate can push an early prefix sum above the
    target's (e.g. source (0,5,0,9) under target (6,4,2,2), where any single
    impact step leaves a zero in place and the three largest components then
    sum past the target's third prefix).  In that case NotDominated is raised
    on the sorted intermediate, with a message saying so; ``decompose_general``
    handles every dominated pair regardless of order.

    Raises:
        LengthMismatch, NotDominated: as in ``decompose_general``.
        TargetNotDecreasing: ``y`` is not non-increasing.
    """
    tolerance = as_tolerance(tol)
    eps = tolerance.eps
    _require_same_length(x, y)
    yv = y.values
    if any(yv[k + 1] - yv[k] > eps for k in range(len(yv) - 1)):
        raise TargetNotDecreasing("target must be non-increasing for decreasing mode")
    _require_dominated(x, y, eps)

    cur = list(x.values)
    steps: list[Step] = []
    inters: list[Array] = []
    cap = _step_cap(len(cur))
    while True:
        step = _next_step(cur, yv, eps)
        if step is None:
            break
        _apply_inplace(cur, step)
        steps.append(step)
        inters.append(Array(tuple(cur)))
        if any(cur[k] < cur[k + 1] for k in range(len(cur) - 1)):
            ranked = sorted(cur, reverse=True)
            witness = _dominance_witness(ranked, yv, eps)
            if witness is not None:
                raise NotDominated(
                    witness,
                    "re-sorting the intermediate leaves the dominance cone; no "
                    "decreasing-mode chain exists for this source (sort the source "
                    "first or use general mode)",
                )
            cur = ranked
            steps.append(SortDesc())
            inters.append(Array(tuple(cur)))
        if len(steps) > cap:
            raise RuntimeError("decomposition did not converge; inputs are at tolerance scale")
    return Certificate(x, y, tuple(steps), tuple(inters), CertificateMode.DECREASING)


def decompose_transfers(x: Array, y: Array, tol: ToleranceLike = None) -> Certificate:
    """Chain of transfers only, for equal-total inputs.

    With equal totals a plain increase can never occur (it would push the
    running total past the target's), so the general chain consists of
    transfers; this is asserted after the fact.

    Raises:
        LengthMismatch, NotDominated: as in ``decompose_general``.
        SumsNotEqual: the totals differ beyond tolerance.
    """
    tolerance = as_tolerance(tol)
    _require_same_length(x, y)
    if abs(x.total - y.total) > tolerance.eps:
        raise SumsNotEqual(x.total, y.total)
    _require_dominated(x, y, tolerance.eps)
    steps, inters = _general_chain(x, y, tolerance.eps)
    assert all(isinstance(s, Transfer) for s in steps), "equal totals admit transfers only"
    return Certificate(x, y, tuple(steps), tuple(inters), CertificateMode.TRANSFERS)


# ---------------------------------------------------------------------------
# Random dominated pairs
# ---------------------------------------------------------------------------

def random_dominated_pair(
    seed: int,
    n: int,
    k: int,
    integer_mode: bool = True,
    transfers_only: bool = False,
) -> tuple[Array, Array]:
    """Deterministically sample a pair (X, Y) with X dominated by Y.

    Y is sampled first; X is obtained by applying ``k`` random inverse moves
    to it: shifting mass from an earlier position to a later one, or (unless
    ``transfers_only``) deleting mass at a position.  Each inverse move keeps
    the result dominated by its predecessor, so X is dominated by Y by
    transitivity.  With ``transfers_only`` the totals stay equal.

    Integer mode draws entries in 0..100 and integral amounts, so every
    downstream check can run exactly at eps = 0.
    """
    if n < 1:
        raise MajorizeError(f"n must be >= 1, got {n}")
    if k < 0:
        raise MajorizeError(f"k must be >= 0, got {k}")
    rng = random.Random(seed)
    if integer_mode:
        y = [float(rng.randint(0, 100)) for _ in range(n)]
    else:
        y = [rng.uniform(0.0, 100.0) for _ in range(n)]
    x = list(y)
    for _ in range(k):
        shift_mass = transfers_only or (n > 1 and rng.random() < 0.7)
        if shift_mass and n > 1:
            i = rng.randint(1, n - 1)
            j = rng.randint(i + 1, n)
            a = _draw_amount(rng, x[i - 1], integer_mode)
            x[i - 1] -= a
            x[j - 1] += a
        elif not transfers_only:
            i = rng.randint(1, n)
            a = _draw_amount(rng, x[i - 1], integer_mode)
            x[i - 1] -= a
    return make_array(x), make_array(y)


def _draw_amount(rng: random.Random, available: float, integer_mode: bool) -> float:
    if integer_mode:
        return float(rng.randint(0, int(available)))
    return rng.uniform(0.0, available)
