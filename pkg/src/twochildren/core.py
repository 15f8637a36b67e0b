"""Exact probabilities for the two-children name puzzle.

A two-children family is known to contain a girl named n1.  How likely is it
that the other child is a boy?  The answer depends on how girl names are
assigned, and this module implements the two standard completions of the
shared joint table below.

Both models assume fair, independent genders, that two sisters never share a
name, and that an elder girl's name is independent of her sibling's gender.
Those assumptions pin down the joint probabilities of the coarse elder/younger
categories {boy (b), girl named n1 (g1), girl with another name (g*)} up to
four entries:

                Yb          Yg1         Yg*         row margin
    Eb          1/4         r1/4        (1-r1)/4    1/2
    Eg1         r1/4        0           r1/4        r1/2
    Eg*         (1-r1)/4    p32         p33         (1-r1)/2
    col margin  1/2         p.2         p.3         1

where r1 is the probability that a first-born girl is named n1.

Model A ("equal marginals") additionally forces P[Yg1] = P[Eg1] = r1/2, which
yields p32 = r1/4 and p33 = (1-2*r1)/4 and requires r1 <= 1/2.  The
conditional probability of a boy is then exactly 1/2, whatever r1 is.

Model B ("popularity draw") instead specifies the naming mechanism: the first
girl born in a family receives name n_k with popularity r_k; a second girl
draws from the same popularities with her sister's name removed and the rest
rescaled by 1/(1 - r_k).  Then

    p32 = (r1/4) * sum_{k>=2} r_k / (1 - r_k)
    p.2 = (r1/4) * (1 + sum_{k>=2} r_k / (1 - r_k))

and the conditional probability of a boy becomes

    p(r) = 2 / (3 + sum_{k>=2} r_k / (1 - r_k)),

which spans the whole interval (0, 2/3) as r varies.

All arithmetic is double precision; exact sums use ``math.fsum`` so results do
not depend on summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import RangeError, SizeError, SumError

#: Absolute tolerance for "sums to one" checks.  Loose enough to accept short
#: decimal inputs such as ten copies of 0.1, tight enough to catch typos.
SUM_TOL = 1e-12

ELDER_LABELS = ("Eb", "Eg1", "Eg*")
YOUNGER_LABELS = ("Yb", "Yg1", "Yg*")


def _require_finite(name: str, x: float) -> float:
    if not math.isfinite(x):
        raise RangeError(f"{name} must be finite, got {x!r}")
    return float(x)


@dataclass(frozen=True)
class PopularityVector:
    """Name popularities ``(r1, ..., rK)`` with a non-increasing tail.

    ``values[0]`` is the popularity of the disclosed name n1 and is not
    constrained relative to the rest; ``values[1:]`` must be sorted
    non-increasing (names other than n1 are interchangeable, so they are kept
    in canonical order).  Entries live in [0, 1) and sum to one within
    ``SUM_TOL``.  Use :func:`make_popularity` to build one from raw numbers;
    it sorts the tail for you and, by default, rejects zero popularities.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise SizeError(f"need at least 2 names, got {len(self.values)}")
        for v in self.values:
            _require_finite("popularity", v)
            if v < 0.0 or v >= 1.0:
                raise RangeError(f"popularity {v!r} outside [0, 1)")
        total = math.fsum(self.values)
        if abs(total - 1.0) > SUM_TOL:
            raise SumError(f"popularities sum to {total!r}, not 1 within {SUM_TOL}")
        tail = self.values[1:]
        if any(tail[i] < tail[i + 1] for i in range(len(tail) - 1)):
            raise RangeError("tail popularities must be non-increasing")

    @property
    def k(self) -> int:
        """Number of available names."""
        return len(self.values)

    @property
    def r1(self) -> float:
        """Popularity of the disclosed name n1."""
        return self.values[0]

    @property
    def tail(self) -> tuple[float, ...]:
        """Popularities of the other names, non-increasing."""
        return self.values[1:]


def make_popularity(values: Iterable[float], allow_zero: bool = False) -> PopularityVector:
    """Validate raw popularities and canonicalize them into a vector.

    The first entry stays in place; the rest are sorted non-increasing (ties
    keep their input order).  Zero popularities are rejected unless
    ``allow_zero`` is set; they are only useful for probing limit
    configurations such as ``(r1, 1-r1, 0, ..., 0)``.

    Raises ``SizeError`` for fewer than two entries, ``RangeError`` for
    entries outside [0, 1) (or zero entries without ``allow_zero``), and
    ``SumError`` when the total misses 1 by more than ``SUM_TOL``.
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise SizeError(f"need at least 2 names, got {len(vals)}")
    for v in vals:
        _require_finite("popularity", v)
        if v < 0.0 or v >= 1.0:
            raise RangeError(f"popularity {v!r} outside [0, 1)")
        if v == 0.0 and not allow_zero:
            raise RangeError("zero popularity requires allow_zero=True")
    total = math.fsum(vals)
    if abs(total - 1.0) > SUM_TOL:
        raise SumError(f"popularities sum to {total!r}, not 1 within {SUM_TOL}")
    return PopularityVector((vals[0], *sorted(vals[1:], reverse=True)))


def uniform_popularity(k: int) -> PopularityVector:
    """The uniform vector ``(1/k, ..., 1/k)``."""
    if k < 2:
        raise SizeError(f"need at least 2 names, got k={k}")
    return PopularityVector((1.0 / k,) * k)


def uniform_tail(r1: float, k: int) -> PopularityVector:
    """The vector ``(r1, (1-r1)/(k-1), ..., (1-r1)/(k-1))``.

    This is the configuration that spreads the remaining mass evenly over the
    other k-1 names; it maximizes the Model B boy probability at fixed r1.
    """
    if k < 2:
        raise SizeError(f"need at least 2 names, got k={k}")
    r1 = _require_finite("r1", r1)
    if not 0.0 < r1 < 1.0:
        raise RangeError(f"r1 must be in (0, 1), got {r1!r}")
    return PopularityVector((r1, *(((1.0 - r1) / (k - 1),) * (k - 1))))


@dataclass(frozen=True)
class Interval:
    """A real interval with independently open or closed endpoints."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise RangeError(f"interval endpoints out of order: {self.lo!r} > {self.hi!r}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise RangeError("a singleton interval must be closed at both ends")

    @classmethod
    def singleton(cls, x: float) -> "Interval":
        return cls(x, x, True, True)

    def contains(self, x: float) -> bool:
        if self.lo < x < self.hi:
            return True
        if x == self.lo and self.lo_closed:
            return True
        return x == self.hi and self.hi_closed

    def __contains__(self, x: float) -> bool:
        return self.contains(x)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return f"{{{self.lo:.12g}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.12g}, {self.hi:.12g}{right}"


@dataclass(frozen=True)
class JointTable:
    """The 3x3 joint table over elder rows (Eb, Eg1, Eg*) and younger columns
    (Yb, Yg1, Yg*), together with the r1 it was built from and a model tag.

    Construction checks the margins: rows sum to 1/2, r1/2, (1-r1)/2, the Yb
    column sums to 1/2, the total is 1 (all within ``SUM_TOL``), every cell is
    non-negative, and the (Eg1, Yg1) cell is exactly zero because sisters
    never share a name.
    """

    cells: tuple[tuple[float, float, float], ...]
    r1: float
    model_tag: str

    def __post_init__(self) -> None:
        if self.model_tag not in ("A", "B"):
            raise RangeError(f"model_tag must be 'A' or 'B', got {self.model_tag!r}")
        flat = [c for row in self.cells for c in row]
        if len(self.cells) != 3 or any(len(row) != 3 for row in self.cells):
            raise RangeError("joint table must be 3x3")
        if any(c < 0.0 for c in flat):
            raise RangeError(f"negative cell in joint table: {min(flat)!r}")
        if abs(math.fsum(flat) - 1.0) > SUM_TOL:
            raise SumError(f"joint table sums to {math.fsum(flat)!r}, not 1")
        if self.cells[1][1] != 0.0:
            raise RangeError("cell (Eg1, Yg1) must be exactly zero")
        expected_rows = (0.5, self.r1 / 2.0, (1.0 - self.r1) / 2.0)
        for row, want in zip(self.cells, expected_rows):
            if abs(math.fsum(row) - want) > SUM_TOL:
                raise SumError(f"row sum {math.fsum(row)!r} differs from margin {want!r}")
        col_b = math.fsum(row[0] for row in self.cells)
        if abs(col_b - 0.5) > SUM_TOL:
            raise SumError(f"Yb column sums to {col_b!r}, not 1/2")

    @property
    def p32(self) -> float:
        """Cell (Eg*, Yg1): elder girl with another name, younger girl named n1."""
        return self.cells[2][1]

    @property
    def p33(self) -> float:
        """Cell (Eg*, Yg*): both girls, neither named n1."""
        return self.cells[2][2]

    @property
    def p_col2(self) -> float:
        """Column margin of Yg1, i.e. P[younger child is a girl named n1]."""
        return math.fsum(row[1] for row in self.cells)

    @property
    def p_col3(self) -> float:
        """Column margin of Yg*."""
        return math.fsum(row[2] for row in self.cells)

    def row_sums(self) -> tuple[float, float, float]:
        return tuple(math.fsum(row) for row in self.cells)  # type: ignore[return-value]

    def col_sums(self) -> tuple[float, float, float]:
        return tuple(math.fsum(row[j] for row in self.cells) for j in range(3))  # type: ignore[return-value]


def _require_r1_model_a(r1: float) -> float:
    r1 = _require_finite("r1", r1)
    if r1 <= 0.0 or r1 > 0.5:
        raise RangeError(
            f"Model A needs 0 < r1 <= 1/2 (P[Yg1] = P[Eg1] is infeasible beyond 1/2), got {r1!r}"
        )
    return r1


def _tail_ratio_sum(r: PopularityVector) -> float:
    """sum_{k>=2} r_k / (1 - r_k), order-independent via fsum."""
    return math.fsum(v / (1.0 - v) for v in r.tail)


def joint_table_model_a(r1: float) -> JointTable:
    """Joint table under Model A: p32 = r1/4, p33 = (1-2*r1)/4.

    Accepts 0 < r1 <= 1/2; at r1 = 1/2 the p33 cell degenerates to zero.
    """
    r1 = _require_r1_model_a(r1)
    q = r1 / 4.0
    p33 = max((1.0 - 2.0 * r1) / 4.0, 0.0)
    cells = (
        (0.25, q, (1.0 - r1) / 4.0),
        (q, 0.0, q),
        ((1.0 - r1) / 4.0, q, p33),
    )
    return JointTable(cells, r1, "A")


def joint_table_model_b(r: PopularityVector) -> JointTable:
    """Joint table under Model B for popularities ``r``.

    p32 = (r1/4) * sum_{k>=2} r_k/(1-r_k), p33 = (1-r1)/4 - p32.  A p33 that
    is negative by a float sliver (at most ``SUM_TOL``) is clamped to zero;
    that happens when the tail is a single dominant name.
    """
    r1 = r.r1
    s = _tail_ratio_sum(r)
    p32 = (r1 / 4.0) * s
    p33 = (1.0 - r1) / 4.0 - p32
    if p33 < 0.0:
        if p33 < -SUM_TOL:
            raise RangeError(f"inconsistent table: p33 = {p33!r} < 0")
        p33 = 0.0
    q = r1 / 4.0
    cells = (
        (0.25, q, (1.0 - r1) / 4.0),
        (q, 0.0, q),
        ((1.0 - r1) / 4.0, p32, p33),
    )
    return JointTable(cells, r1, "B")


def prob_other_boy_model_a(r1: float) -> float:
    """P[family has a boy | family has a girl named n1] under Model A.

    Always exactly 1/2: the conditioning event has probability r1/2 + r1/2
    and the boy part contributes r1/4 + r1/4.
    """
    _require_r1_model_a(r1)
    return 0.5


def prob_other_boy_model_b(r: PopularityVector) -> float:
    """P[family has a boy | family has a girl named n1] under Model B.

    Closed form 2 / (3 + sum_{k>=2} r_k/(1-r_k)); always in (0, 2/3).
    """
    return 2.0 / (3.0 + _tail_ratio_sum(r))


def attribute_variant_prob(attr_prob: float) -> float:
    """Boy probability when the disclosed girl has an attribute of probability
    ``attr_prob`` that siblings may share (e.g. a weekday of birth).

    Equals 2 / (4 - attr_prob): 1/2 at 0, rising to 2/3 at 1 (the classic
    at-least-one-girl answer, since an always-present attribute adds nothing).
    """
    attr_prob = _require_finite("attr_prob", attr_prob)
    if not 0.0 <= attr_prob <= 1.0:
        raise RangeError(f"attribute probability must be in [0, 1], got {attr_prob!r}")
    return 2.0 / (4.0 - attr_prob)
