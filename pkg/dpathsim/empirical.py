"""Empirical delay distributions.

Build, evaluate, invert, sample and compare step ECDFs of per-packet
delays. Delays are microseconds, rounded to 3 decimals (nanosecond
resolution) on ingestion so that binning into distinct values is exact.

The relative frequency of a delay value is its occurrence count over the
total sample count; cumulating those over the sorted distinct values gives
the ECDF.
"""

import math
import numbers
from bisect import bisect_left, bisect_right
from typing import Dict, Iterable, Sequence, Union

import numpy as np
from loguru import logger

from dpathsim.exceptions import (
    EmptyTraceError,
    InvalidProbabilityError,
    InvalidQueryError,
    InvalidSampleError,
)
from dpathsim.models.empirical_distribution import DistributionSummary, EmpiricalDistribution

DELAY_DECIMALS = 3
ROUNDING_LIMIT = 1e15

# A delay sample is a plain float in microseconds.
DelaySample = float


def as_delays(samples: Union[Iterable[DelaySample], np.ndarray]) -> np.ndarray:
    """Validate delay samples and round them to nanosecond resolution.

    Args:
        samples: The raw samples in microseconds.

    Returns:
        np.ndarray: A 1-D float array of rounded delays, in input order.

    Raises:
        EmptyTraceError: If there are no samples.
        InvalidSampleError: If a sample is not a finite non-negative real number.
    """
    if isinstance(samples, np.ndarray) and samples.dtype.kind in "iuf":
        values = samples.astype(float).ravel()
    else:
        samples = list(samples)
        for index, sample in enumerate(samples):
            if isinstance(sample, bool) or not isinstance(sample, numbers.Real):
                raise InvalidSampleError(index, sample)
        values = np.asarray(samples, dtype=float)

    if values.size == 0:
        raise EmptyTraceError("no delay samples supplied")

    bad = np.flatnonzero(~np.isfinite(values) | (values < 0))
    if bad.size:
        index = int(bad[0])
        raise InvalidSampleError(index, values[index].item())

    # Beyond ROUNDING_LIMIT every double is already a multiple of 0.125.
    # + 0.0 folds -0.0 into 0.0
    return np.where(values < ROUNDING_LIMIT, np.round(np.minimum(values, ROUNDING_LIMIT), DELAY_DECIMALS), values) + 0.0


def relative_frequencies(samples: Sequence[DelaySample]) -> Dict[float, float]:
    """Map each distinct delay value to its occurrence count over the sample count.

    Args:
        samples: The delay samples in microseconds.

    Returns:
        Dict[float, float]: Relative frequency per distinct value, keys ascending.
    """
    values = as_delays(samples)
    distinct, counts = np.unique(values, return_counts=True)
    total = values.size
    return {value: count / total for value, count in zip(distinct.tolist(), counts.tolist())}


def build_ecdf(samples: Sequence[DelaySample]) -> EmpiricalDistribution:
    """Build the step ECDF of a set of delay samples.

    The result does not depend on the order of ``samples``.

    Args:
        samples: The delay samples in microseconds.

    Returns:
        EmpiricalDistribution: The ECDF.
    """
    values = as_delays(samples)
    distinct, counts = np.unique(values, return_counts=True)
    dist = from_cumulative_counts(distinct.tolist(), np.cumsum(counts).tolist(), values.size)
    logger.debug(f"[ECDF] Built distribution from {values.size} samples ({distinct.size} distinct values)")
    return dist


def from_cumulative_counts(support: Sequence[float], cumulative_counts: Sequence[int], n_samples: int) -> EmpiricalDistribution:
    """Build a distribution from cumulative sample counts.

    Each cumulative probability is computed as a single division, so it is
    exactly the fraction of samples at or below its support value and the
    last one is exactly 1.

    Args:
        support: Distinct delay values, strictly increasing.
        cumulative_counts: Number of samples at or below each support value.
        n_samples: Total sample count; must equal the last cumulative count.

    Returns:
        EmpiricalDistribution: The distribution.
    """
    if cumulative_counts and cumulative_counts[-1] != n_samples:
        raise ValueError(f"last cumulative count {cumulative_counts[-1]} does not match n_samples {n_samples}")
    return EmpiricalDistribution(
        support=tuple(support),
        cum_prob=tuple(count / n_samples for count in cumulative_counts),
        n_samples=n_samples,
    )


def ecdf_eval(dist: EmpiricalDistribution, x: float) -> float:
    """Evaluate the ECDF: the fraction of samples at or below ``x``.

    Args:
        dist: The distribution.
        x: The query delay in microseconds.

    Returns:
        float: F(x), 0 below the support and 1 at or above its maximum.

    Raises:
        InvalidQueryError: If ``x`` is NaN or not a number.
    """
    if isinstance(x, bool) or not isinstance(x, numbers.Real) or math.isnan(x):
        raise InvalidQueryError(f"cannot evaluate an ECDF at {x!r}")
    position = bisect_right(dist.support, x)
    return dist.cum_prob[position - 1] if position else 0.0


def quantile(dist: EmpiricalDistribution, p: float) -> float:
    """Generalized inverse: the smallest support value v with F(v) >= p.

    Args:
        dist: The distribution.
        p: Probability level in (0, 1].

    Returns:
        float: The quantile in microseconds.

    Raises:
        InvalidProbabilityError: If ``p`` is outside (0, 1].
    """
    if isinstance(p, bool) or not isinstance(p, numbers.Real) or not 0.0 < p <= 1.0:
        raise InvalidProbabilityError(p)
    return dist.support[bisect_left(dist.cum_prob, p)]


def sample(dist: EmpiricalDistribution, rng: np.random.Generator) -> float:
    """Draw one delay by inverse-transform sampling.

    Always returns a member of the support; the same seed gives the same draws.

    Args:
        dist: The distribution.
        rng: The random stream to draw from.

    Returns:
        float: The sampled delay in microseconds.
    """
    # random() is in [0, 1); 1 - u is in (0, 1]
    u = 1.0 - rng.random()
    return dist.support[bisect_left(dist.cum_prob, u)]


def sample_many(dist: EmpiricalDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw ``size`` delays by inverse-transform sampling.

    Args:
        dist: The distribution.
        rng: The random stream to draw from.
        size: The number of draws.

    Returns:
        np.ndarray: The sampled delays.
    """
    u = 1.0 - rng.random(size)
    positions = np.searchsorted(np.asarray(dist.cum_prob), u, side="left")
    return np.asarray(dist.support)[positions]


def evaluate_many(dist: EmpiricalDistribution, xs: np.ndarray) -> np.ndarray:
    """Evaluate the ECDF at many points at once.

    Args:
        dist: The distribution.
        xs: Query delays in microseconds.

    Returns:
        np.ndarray: F at each query point.
    """
    steps = np.concatenate(([0.0], np.asarray(dist.cum_prob)))
    return steps[np.searchsorted(np.asarray(dist.support), xs, side="right")]


def ks_distance(a: EmpiricalDistribution, b: EmpiricalDistribution) -> float:
    """Kolmogorov-Smirnov distance between two step ECDFs.

    Both functions are constant between points of the union of their
    supports, so the supremum is attained on that union.

    Args:
        a: The first distribution.
        b: The second distribution.

    Returns:
        float: sup |F_a - F_b|, in [0, 1].
    """
    grid = np.union1d(np.asarray(a.support), np.asarray(b.support))
    return float(np.max(np.abs(evaluate_many(a, grid) - evaluate_many(b, grid))))


def summarize(dist: EmpiricalDistribution) -> DistributionSummary:
    """Scalar summary of a distribution.

    Args:
        dist: The distribution.

    Returns:
        DistributionSummary: min, max, mean, median, p95, p99, variance and n.
    """
    support = np.asarray(dist.support)
    masses = np.diff(np.asarray(dist.cum_prob), prepend=0.0)
    mean = float(np.dot(support, masses))
    mean = min(max(mean, dist.minimum), dist.maximum)
    variance = max(float(np.dot(masses, (support - mean) ** 2)), 0.0)
    return DistributionSummary(
        min=dist.minimum,
        max=dist.maximum,
        mean=mean,
        median=quantile(dist, 0.5),
        p95=quantile(dist, 0.95),
        p99=quantile(dist, 0.99),
        variance=variance,
        n=dist.n_samples,
    )
