"""Family simulation and an exhaustive enumeration oracle.

Families are generated child by child: elder gender by a fair coin, a name
for an elder girl drawn from the popularities, younger gender by an
independent fair coin, and a younger girl's name drawn either fresh (elder is
a boy) or from the popularities with her sister's name removed and the rest
rescaled (Model B).  Model A is sampled at the level of its 3x3 table and the
"girl with another name" categories are refined uniformly over names 2..K,
which is harmless because every Model A quantity of interest only depends on
the coarse categories.

Reproducibility contract: all randomness comes from counter-based Philox
streams keyed by ``(seed, stream_index)``.  ``estimate_conditional`` consumes
one stream per fixed-size chunk of families and reduces chunks in index
order, so results are bit-identical for a given seed no matter how the chunks
might be scheduled.

The enumeration side (:func:`enumerate_exact`, :func:`exact_conditional`)
computes the same conditional probabilities exactly by summing product
weights over the finite space of (elder, younger) child descriptors; it is
the reference the closed forms and the sampler are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    SUM_TOL,
    JointTable,
    PopularityVector,
    joint_table_model_a,
    make_popularity,
)
from .errors import (
    ModelError,
    NonterminationGuard,
    RangeError,
    SumError,
    ZeroConditionError,
)

#: Child code for a boy; a girl named n_k carries her 1-based name index k.
BOY = 0

#: Hard ceiling on raw families drawn while waiting for conditioned samples.
RAW_DRAW_LIMIT = 1_000_000_000

_CHUNK = 1 << 16
_MASK64 = (1 << 64) - 1


def substream(seed: int, index: int = 0) -> np.random.Generator:
    """Deterministic Philox stream keyed by ``(seed, index)``.

    Distinct keys give statistically independent streams, so substreams can
    be handed to parallel workers without coordination.
    """
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _as_generator(rng: np.random.Generator | int) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return substream(int(rng))


def _norm_model(model: str) -> str:
    tag = str(model).strip().upper()
    if tag not in ("A", "B"):
        raise RangeError(f"model must be 'A' or 'B', got {model!r}")
    return tag


@dataclass(frozen=True)
class FamilyOutcome:
    """One sampled family.  ``elder`` and ``younger`` are child codes:
    ``BOY`` (0) or the 1-based name index of a girl.  Two girls never share
    a name."""

    elder: int
    younger: int

    def __post_init__(self) -> None:
        if self.elder < 0 or self.younger < 0:
            raise RangeError("child codes must be BOY (0) or a positive name index")
        if self.elder != BOY and self.elder == self.younger:
            raise RangeError(f"sisters cannot share name n{self.elder}")

    @property
    def has_boy(self) -> bool:
        return self.elder == BOY or self.younger == BOY

    @property
    def two_girls(self) -> bool:
        return self.elder != BOY and self.younger != BOY

    def mentions_name(self, name: int) -> bool:
        return self.elder == name or self.younger == name


def child_label(code: int) -> str:
    """Compact display form: ``b`` for a boy, ``g3`` for a girl named n3."""
    return "b" if code == BOY else f"g{code}"


# Event predicates for exact_conditional.
def has_boy(outcome: FamilyOutcome) -> bool:
    return outcome.has_boy


def has_girl_named(name: int) -> Callable[[FamilyOutcome], bool]:
    """Predicate factory: family contains a girl named ``n_<name>``."""
    return lambda outcome: outcome.mentions_name(name)


def elder_is_girl(outcome: FamilyOutcome) -> bool:
    return outcome.elder != BOY


def younger_is_boy(outcome: FamilyOutcome) -> bool:
    return outcome.younger == BOY


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo estimate of a conditional probability.

    ``std_err`` is the binomial standard error using the conditioned count.
    The estimate is reproducible from ``seed`` alone (plus the call
    arguments).
    """

    p_hat: float
    n_total: int
    n_conditioned: int
    std_err: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_hat <= 1.0:
            raise RangeError(f"p_hat must be in [0, 1], got {self.p_hat!r}")
        if self.n_conditioned > self.n_total:
            raise RangeError("conditioned count exceeds total families")
        if self.std_err < 0.0:
            raise RangeError("standard error cannot be negative")


@dataclass(frozen=True)
class ExactDistribution:
    """Exact weights for every possible (elder, younger) outcome."""

    outcomes: tuple[tuple[FamilyOutcome, float], ...]
    model_tag: str

    def __post_init__(self) -> None:
        if self.model_tag not in ("A", "B"):
            raise RangeError(f"model_tag must be 'A' or 'B', got {self.model_tag!r}")
        if any(w < 0.0 for _, w in self.outcomes):
            raise RangeError("negative outcome weight")
        total = math.fsum(w for _, w in self.outcomes)
        if abs(total - 1.0) > SUM_TOL:
            raise SumError(f"outcome weights sum to {total!r}, not 1")


# ---------------------------------------------------------------------------
# Vectorized family sampling
# ---------------------------------------------------------------------------


def _categorical(cumsum: np.ndarray, u: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(cumsum, u, side="right")
    return np.minimum(idx, len(cumsum) - 1)


def _without_name(
    values: np.ndarray,
    cumsum: np.ndarray,
    prefix: np.ndarray,
    banned: np.ndarray,
    u: np.ndarray,
) -> np.ndarray:
    """Inverse-CDF draw from ``values`` with index ``banned`` removed and the
    remaining mass rescaled by 1/(1 - values[banned]).  Never returns the
    banned index."""
    k = len(values)
    vb = values[banned]
    t = u * (1.0 - vb)
    # Skipping the banned name shifts the CDF by its mass past its prefix.
    shift = np.where(t >= prefix[banned], vb, 0.0)
    idx = np.minimum(np.searchsorted(cumsum, t + shift, side="right"), k - 1)
    collide = idx == banned
    if np.any(collide):
        # One-ulp boundary slivers; push to the neighbouring name.
        bump = np.where(banned < k - 1, banned + 1, banned - 1)
        idx = np.where(collide, bump, idx)
    return idx


def _model_b_arrays(r: PopularityVector) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    values = np.asarray(r.values, dtype=np.float64)
    cumsum = np.cumsum(values)
    prefix = np.concatenate(([0.0], cumsum[:-1]))
    return values, cumsum, prefix


def _family_arrays_b(
    values: np.ndarray,
    cumsum: np.ndarray,
    prefix: np.ndarray,
    m: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Sample ``m`` Model B families; names are 0-based and only meaningful
    where the corresponding child is a girl."""
    u = rng.random((4, m))
    elder_boy = u[0] < 0.5
    elder_name = _categorical(cumsum, u[1])
    younger_boy = u[2] < 0.5
    younger_name = _categorical(cumsum, u[3])
    both_girls = ~elder_boy & ~younger_boy
    if both_girls.any():
        bg = np.nonzero(both_girls)[0]
        younger_name[bg] = _without_name(
            values, cumsum, prefix, elder_name[bg], u[3][bg]
        )
    return elder_boy, elder_name, younger_boy, younger_name


def _require_model_a_samplable(r: PopularityVector) -> None:
    if not 0.0 < r.r1 <= 0.5:
        raise ModelError(
            f"Model A requires 0 < r1 <= 1/2 to generate families, got r1 = {r.r1!r}"
        )
    if r.k == 2 and r.r1 < 0.5:
        # The (Eg*, Yg*) cell has probability (1-2*r1)/4 > 0 but with only one
        # non-disclosed name there is no way to give two girls distinct names.
        raise ModelError(
            "Model A with 2 names and r1 < 1/2 cannot realize distinct sister "
            "names; use k >= 3 or r1 = 1/2"
        )


def _family_arrays_a(
    table: JointTable, k: int, m: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Sample ``m`` Model A families: draw a coarse table cell, then refine
    girl-with-another-name categories uniformly over names 2..K."""
    flat = np.array([c for row in table.cells for c in row], dtype=np.float64)
    cell_cum = np.cumsum(flat)
    last_live = int(np.nonzero(flat > 0.0)[0][-1])  # float slivers must not hit a zero cell
    u = rng.random((3, m))
    cell = np.minimum(np.searchsorted(cell_cum, u[0], side="right"), last_live)
    row, col = cell // 3, cell % 3
    elder_boy = row == 0
    younger_boy = col == 0

    other = 1 + np.minimum((u[1] * (k - 1)).astype(np.int64), k - 2)
    elder_name = np.where(row == 1, 0, np.where(row == 2, other, -1))

    base = 1 + np.minimum((u[2] * (k - 1)).astype(np.int64), k - 2)
    younger_name = np.where(col == 1, 0, np.where(col == 2, base, -1))
    two_other_girls = (row == 2) & (col == 2)
    if two_other_girls.any():
        idx = np.nonzero(two_other_girls)[0]
        j = 1 + np.minimum((u[2][idx] * (k - 2)).astype(np.int64), k - 3)
        younger_name[idx] = np.where(j >= elder_name[idx], j + 1, j)
    return elder_boy, elder_name, younger_boy, younger_name


def _event_masks(
    elder_boy: np.ndarray,
    elder_name: np.ndarray,
    younger_boy: np.ndarray,
    younger_name: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    conditioned = (~elder_boy & (elder_name == 0)) | (~younger_boy & (younger_name == 0))
    return conditioned, elder_boy | younger_boy


def _chunk_sampler(
    model: str, r: PopularityVector
) -> Callable[[int, np.random.Generator], tuple[np.ndarray, np.ndarray]]:
    if model == "A":
        _require_model_a_samplable(r)
        table = joint_table_model_a(r.r1)
        k = r.k

        def run(m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
            return _event_masks(*_family_arrays_a(table, k, m, rng))

    else:
        values, cumsum, prefix = _model_b_arrays(r)

        def run(m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
            return _event_masks(*_family_arrays_b(values, cumsum, prefix, m, rng))

    return run


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def sample_family(
    model: str, r: PopularityVector, rng: np.random.Generator | int
) -> FamilyOutcome:
    """Sample one family.  ``rng`` is a numpy ``Generator`` or an integer seed
    (the same seed always reproduces the same family)."""
    tag = _norm_model(model)
    gen = _as_generator(rng)
    if tag == "A":
        _require_model_a_samplable(r)
        eb, en, yb, yn = _family_arrays_a(joint_table_model_a(r.r1), r.k, 1, gen)
    else:
        eb, en, yb, yn = _family_arrays_b(*_model_b_arrays(r), 1, gen)
    elder = BOY if eb[0] else int(en[0]) + 1
    younger = BOY if yb[0] else int(yn[0]) + 1
    return FamilyOutcome(elder, younger)


def estimate_conditional(
    model: str,
    r: PopularityVector,
    n: int,
    seed: int,
    *,
    raw_families: bool = False,
) -> MCEstimate:
    """Estimate P[family has a boy | family has a girl named n1] by
    simulation.

    By default ``n`` counts conditioned samples: families without a girl
    named n1 are discarded and sampling continues until ``n`` hits are
    collected, which keeps the standard error comparable across parameter
    values.  With ``raw_families=True``, ``n`` counts raw families instead
    and the conditioned count becomes random.

    Raises ``NonterminationGuard`` if ``RAW_DRAW_LIMIT`` raw families pass
    without collecting ``n`` conditioned samples, and ``ZeroConditionError``
    if a raw-families run conditions on an event it never saw.
    """
    tag = _norm_model(model)
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    sampler = _chunk_sampler(tag, r)

    if raw_families:
        remaining = n
        chunk = 0
        conditioned = 0
        boys = 0
        while remaining > 0:
            m = min(_CHUNK, remaining)
            cond, boy = sampler(m, substream(seed, chunk))
            conditioned += int(cond.sum())
            boys += int((cond & boy).sum())
            remaining -= m
            chunk += 1
        if conditioned == 0:
            raise ZeroConditionError(
                f"no family with a girl named n1 among {n} raw families"
            )
        p_hat = boys / conditioned
        std_err = math.sqrt(p_hat * (1.0 - p_hat) / conditioned)
        return MCEstimate(p_hat, n, conditioned, std_err, seed)

    accepted = 0
    boys = 0
    raw = 0
    chunk = 0
    n_total = 0
    while accepted < n:
        if raw >= RAW_DRAW_LIMIT:
            raise NonterminationGuard(
                f"{raw} raw families drawn but only {accepted}/{n} conditioned "
                "samples collected; the conditioning event is too rare"
            )
        cond, boy = sampler(_CHUNK, substream(seed, chunk))
        hits = np.nonzero(cond)[0]
        if accepted + hits.size >= n:
            need = n - accepted
            take = hits[:need]
            boys += int(boy[take].sum())
            accepted = n
            n_total = raw + int(take[-1]) + 1
        else:
            boys += int(boy[hits].sum())
            accepted += hits.size
            raw += _CHUNK
        chunk += 1
    p_hat = boys / n
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / n)
    return MCEstimate(p_hat, n_total, n, std_err, seed)


def _children(k: int) -> list[int]:
    return [BOY] + [name + 1 for name in range(k)]


def enumerate_exact(model: str, r: PopularityVector) -> ExactDistribution:
    """Exact weight of every (elder, younger) outcome under the generative
    scheme.  Same-name girl pairs are omitted (they have probability zero),
    leaving (1+K)^2 - K entries."""
    tag = _norm_model(model)
    if tag == "A":
        return _enumerate_a(r)
    return _enumerate_b(r)


def _enumerate_b(r: PopularityVector) -> ExactDistribution:
    v = r.values
    out: list[tuple[FamilyOutcome, float]] = []
    for e in _children(r.k):
        for y in _children(r.k):
            if e != BOY and e == y:
                continue
            if e == BOY and y == BOY:
                w = 0.25
            elif e == BOY:
                w = 0.25 * v[y - 1]
            elif y == BOY:
                w = 0.25 * v[e - 1]
            else:
                w = 0.25 * v[e - 1] * v[y - 1] / (1.0 - v[e - 1])
            out.append((FamilyOutcome(e, y), w))
    return ExactDistribution(tuple(out), "B")


def _enumerate_a(r: PopularityVector) -> ExactDistribution:
    _require_model_a_samplable(r)
    table = joint_table_model_a(r.r1)
    kk = r.k - 1  # names other than n1

    def category(code: int) -> int:
        if code == BOY:
            return 0
        return 1 if code == 1 else 2

    out: list[tuple[FamilyOutcome, float]] = []
    for e in _children(r.k):
        for y in _children(r.k):
            if e != BOY and e == y:
                continue
            row, col = category(e), category(y)
            cell = table.cells[row][col]
            if cell == 0.0:
                w = 0.0
            elif row == 2 and col == 2:
                w = cell / (kk * (kk - 1))
            elif row == 2 or col == 2:
                w = cell / kk
            else:
                w = cell
            out.append((FamilyOutcome(e, y), w))
    return ExactDistribution(tuple(out), "A")


def exact_conditional(
    dist: ExactDistribution,
    condition: Callable[[FamilyOutcome], bool],
    target: Callable[[FamilyOutcome], bool],
) -> float:
    """Exact P[target | condition] from an enumerated distribution."""
    den = math.fsum(w for o, w in dist.outcomes if condition(o))
    if den == 0.0:
        raise ZeroConditionError("conditioning event has zero probability")
    num = math.fsum(w for o, w in dist.outcomes if condition(o) and target(o))
    return num / den


def aggregate_table(dist: ExactDistribution) -> tuple[tuple[float, float, float], ...]:
    """Coarsen an enumerated distribution back to the 3x3 category table
    (rows Eb, Eg1, Eg*; columns Yb, Yg1, Yg*)."""

    def category(code: int) -> int:
        if code == BOY:
            return 0
        return 1 if code == 1 else 2

    buckets: list[list[list[float]]] = [[[] for _ in range(3)] for _ in range(3)]
    for o, w in dist.outcomes:
        buckets[category(o.elder)][category(o.younger)].append(w)
    return tuple(tuple(math.fsum(b) for b in row) for row in buckets)


def random_popularity(rng: np.random.Generator, k: int) -> PopularityVector:
    """Draw a random valid popularity vector, uniform on the simplex."""
    from .core import make_popularity

    while True:
        vals = rng.dirichlet(np.ones(k))
        if np.all(vals > 0.0) and np.all(vals < 1.0):
            try:
                return make_popularity(vals.tolist())
            except SumError:
                continue
