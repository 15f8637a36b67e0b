"""Extremal analysis of the Model B boy probability at fixed r1.

The map ``(r_2, ..., r_K) -> p(r)`` is strictly Schur-concave: spreading the
non-disclosed popularities more evenly raises the probability that the other
child is a boy, because each term r/(1-r) in the denominator of
``p = 2/(3 + sum r_k/(1-r_k))`` is strictly convex.  Every tail with total
mass 1-r1 sits between the uniform tail and the fully concentrated tail in
the majorization order, which turns into sharp bounds for p:

    2*r1/(2*r1 + 1)  <  p(r)  <=  2*(K-2+r1) / (4*(K-2+r1) + 1 - K*r1)

for K > 2 (the upper bound is attained by the uniform tail, the lower one
only in the limit of a tail concentrated on one name).  For K = 2 the tail
is forced and p collapses to the single value 2*r1/(2*r1+1).

This module exposes the majorization test itself, those bounds, their
K -> infinity limit 2/(4 - r1), the set of r1 values for which both genders
can be made equally likely, and the explicit K = 3 solutions achieving
p = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import Interval, PopularityVector, prob_other_boy_model_b, uniform_tail
from .errors import OrderError, RangeError, ShapeError, SumError

#: Tolerance on prefix sums when comparing vectors under majorization.
#: Within tolerance counts as (non-strict) domination, so decimal inputs do
#: not produce spurious incomparability.
MAJORIZATION_TOL = 1e-12


def _prefix_sums_desc(v: Sequence[float]) -> list[float]:
    out: list[float] = []
    acc = 0.0
    for x in sorted(v, reverse=True):
        acc += x
        out.append(acc)
    return out


def majorizes(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` majorizes ``b``: equal totals and every sorted-descending
    prefix sum of ``a`` is at least the matching prefix sum of ``b`` (within
    ``MAJORIZATION_TOL``).  Reflexive; permutations majorize each other.

    Raises ``ShapeError`` on length mismatch and ``SumError`` when the totals
    differ by more than the tolerance.
    """
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")
    sum_a, sum_b = math.fsum(a), math.fsum(b)
    if abs(sum_a - sum_b) > MAJORIZATION_TOL:
        raise SumError(f"totals differ: {sum_a!r} vs {sum_b!r}")
    pa = _prefix_sums_desc(a)
    pb = _prefix_sums_desc(b)
    return all(x >= y - MAJORIZATION_TOL for x, y in zip(pa, pb))


@dataclass(frozen=True)
class BoundsResult:
    """Range of the boy probability over all tails with a given r1.

    ``interval`` is the attainable set (half-open for K > 2, a singleton for
    K = 2).  ``argmax_config`` is the uniform-tail vector attaining the upper
    endpoint.  The lower endpoint is approached, never attained, by tails
    collapsing onto a single name; ``liminf_config_description`` spells out
    that limiting configuration instead of materializing a vector with exact
    zeros.
    """

    interval: Interval
    argmax_config: PopularityVector
    liminf_config_description: str


def _require_r1_open(r1: float) -> float:
    r1 = float(r1)
    if not math.isfinite(r1) or not 0.0 < r1 < 1.0:
        raise RangeError(f"r1 must be in (0, 1), got {r1!r}")
    return r1


def lower_bound(r1: float) -> float:
    """K-independent infimum 2*r1/(2*r1+1) of the boy probability at fixed r1."""
    r1 = _require_r1_open(r1)
    return 2.0 * r1 / (2.0 * r1 + 1.0)


def upper_bound(k: int, r1: float) -> float:
    """Maximum boy probability with k names at fixed r1 (uniform tail)."""
    if k < 2:
        raise RangeError(f"k must be >= 2, got {k}")
    r1 = _require_r1_open(r1)
    if k == 2:
        return lower_bound(r1)
    a = k - 2.0 + r1
    return 2.0 * a / (4.0 * a + 1.0 - k * r1)


def p_bounds(k: int, r1: float) -> BoundsResult:
    """Attainable boy probabilities over every valid tail with k names.

    For k = 2 the interval is the singleton {2*r1/(2*r1+1)}; for k > 2 it is
    (2*r1/(2*r1+1), 2*(k-2+r1)/(4*(k-2+r1)+1-k*r1)], attained on the right by
    the uniform tail.
    """
    if k < 2:
        raise RangeError(f"k must be >= 2, got {k}")
    r1 = _require_r1_open(r1)
    lo = lower_bound(r1)
    config = uniform_tail(r1, k)
    if k == 2:
        return BoundsResult(
            Interval.singleton(lo),
            config,
            f"attained at the forced configuration ({r1:.12g}, {1.0 - r1:.12g})",
        )
    hi = upper_bound(k, r1)
    return BoundsResult(
        Interval(lo, hi, lo_closed=False, hi_closed=True),
        config,
        f"approached as r -> ({r1:.12g}, {1.0 - r1:.12g}, 0, ..., 0); not attained",
    )


def limit_upper(r1: float) -> float:
    """Limit of the fixed-r1 upper bound as the number of names grows,
    2/(4 - r1).  Coincides with the shared-attribute variant formula."""
    r1 = _require_r1_open(r1)
    return 2.0 / (4.0 - r1)


def feasible_set_s(k: int) -> Interval:
    """Set of r1 values for which some configuration of the other k-1
    popularities makes both genders equally likely for the other child.

    {1/2} for k = 2, and [1/k, 1/2) for k > 2.
    """
    if k < 2:
        raise RangeError(f"k must be >= 2, got {k}")
    if k == 2:
        return Interval.singleton(0.5)
    return Interval(1.0 / k, 0.5, lo_closed=True, hi_closed=False)


def solve_k3_manifold(r1: float) -> tuple[float, float]:
    """With three names, the tail popularities making both genders equally
    likely for the other child, given r1.

    Solutions exist exactly for r1 in [1/3, 1/2) and are

        r2, r3 = (1-r1)/2 +- sqrt((3*r1+1)**2 - 4) / 6.

    Guarantees r2 >= r3 > 0, r1 + r2 + r3 = 1, and r3 <= r1 <= r2, so the
    disclosed name always sits between the two solution popularities.  When
    the discriminant evaluates to exactly zero (r1 at the representable
    left endpoint, where the exact solution is the uniform triple) the pair
    (r1, r1) is returned so the uniform triple comes out exact.
    """
    r1 = float(r1)
    if not math.isfinite(r1) or not (1.0 / 3.0 <= r1 < 0.5):
        raise RangeError(
            f"no equal-genders configuration with 3 names for r1 = {r1!r}: "
            "the feasible r1 set is [1/3, 1/2)"
        )
    disc = (3.0 * r1 + 1.0) ** 2 - 4.0
    s = math.sqrt(disc) if disc > 0.0 else 0.0
    if s == 0.0:
        # disc = 0 holds only at r1 = 1/3 exactly, where r2 = r3 = r1.
        return (r1, r1)
    half = (1.0 - r1) / 2.0
    return (half + s / 6.0, half - s / 6.0)


def _is_permutation(a: Sequence[float], b: Sequence[float]) -> bool:
    return all(
        abs(x - y) <= MAJORIZATION_TOL for x, y in zip(sorted(a), sorted(b))
    )


def check_schur_concave(
    r1: float, tail_a: Sequence[float], tail_b: Sequence[float]
) -> bool:
    """Executable Schur-concavity check: with ``tail_a`` majorized by
    ``tail_b`` (both summing to 1 - r1, strictly positive, length >= 2),
    verify that the more evenly spread tail gives at least as large a boy
    probability, strictly larger unless the tails are permutations.

    Raises ``OrderError`` when the tails are incomparable under majorization,
    or when they are comparable only in the reversed direction (swap the
    arguments in that case).  Schur-concavity says nothing about incomparable
    pairs, so they are rejected rather than guessed at.
    """
    r1 = _require_r1_open(r1)
    if len(tail_a) != len(tail_b):
        raise ShapeError(f"length mismatch: {len(tail_a)} vs {len(tail_b)}")
    if len(tail_a) < 2:
        raise ShapeError("tails must have at least 2 entries")
    want = 1.0 - r1
    for name, tail in (("tail_a", tail_a), ("tail_b", tail_b)):
        if any(not math.isfinite(x) or x <= 0.0 for x in tail):
            raise RangeError(f"{name} entries must be strictly positive")
        total = math.fsum(tail)
        if abs(total - want) > MAJORIZATION_TOL:
            raise SumError(f"{name} sums to {total!r}, expected 1 - r1 = {want!r}")
    b_over_a = majorizes(tail_b, tail_a)
    if not b_over_a:
        if majorizes(tail_a, tail_b):
            raise OrderError(
                "tail_a majorizes tail_b: swap the arguments (tail_a must be "
                "the more evenly spread tail)"
            )
        raise OrderError("tails are incomparable under majorization")
    p_a = prob_other_boy_model_b(PopularityVector((r1, *sorted(tail_a, reverse=True))))
    p_b = prob_other_boy_model_b(PopularityVector((r1, *sorted(tail_b, reverse=True))))
    if _is_permutation(tail_a, tail_b):
        return p_a >= p_b
    return p_a > p_b
