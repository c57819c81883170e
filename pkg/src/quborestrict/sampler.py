"""Parametric stand-in for a noisy annealer.

Samples assignments from the exact Boltzmann distribution of a penalty model
at temperature T: the T -> 0 limit recovers an ideal annealer that only ever
returns ground states, while finite T smears probability onto excited states
as a monotone-decreasing function of the energy gap.  Sampling is exact
categorical (the full partition function is enumerated once), so convergence
is never a confound.

This module is the only floating-point corner of the package; everything it
consumes is exact and everything it emits is an empirical or exact
probability.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import oracle
from .core import (
    DataQualityError,
    ParameterError,
    QuboModel,
    RationalLike,
    as_fraction,
    expand_squared_affine,
)


class StrayMassWarning(UserWarning):
    """More than 1% of the measured mass sits outside the transfer pair."""


@dataclass(frozen=True)
class SamplerConfig:
    """Boltzmann temperature (in the model's energy units), reads, and seed."""

    temperature: float
    n_reads: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.temperature > 0:
            raise ParameterError(f"temperature must be positive, got {self.temperature}")
        if self.n_reads < 1:
            raise ParameterError(f"n_reads must be at least 1, got {self.n_reads}")


@dataclass(frozen=True)
class TransferCurve:
    """Per-target distributions of the problem-bit sum along a target sweep.

    ``distributions[k][s]`` is the probability of measuring sum s at target
    ``r_grid[k]``.  Sampled curves sum to 1 exactly (counts over reads);
    ``step_distance`` is the mean absolute deviation of the normalized
    transfer from the ideal zero-temperature step.
    """

    n_vars: int
    r_grid: tuple[Fraction, ...]
    distributions: tuple[tuple[float, ...], ...]
    step_distance: float


def fractional_restriction_model(
    n_vars: int, r: RationalLike, lam: RationalLike = 1
) -> QuboModel:
    """``lam * (sum(x) - R)**2`` with an arbitrary, possibly fractional, target R."""
    return expand_squared_affine(
        [(i, 1) for i in range(n_vars)], -as_fraction(r), lam, n_total=n_vars)


def boltzmann_probabilities(
    model: QuboModel, temperature: float, max_bits: int = oracle.DEFAULT_MAX_BITS
) -> np.ndarray:
    """Exact Boltzmann distribution P(x) ~ exp(-E(x)/T) over all assignments.

    Returned in the oracle's counting order (assignment ``b`` sets bit ``i``
    to ``(b >> i) & 1``).
    """
    if not temperature > 0:
        raise ParameterError(f"temperature must be positive, got {temperature}")
    energies, scale = oracle.assignment_energies(model, max_bits)
    e = energies.astype(np.float64) / scale
    weights = np.exp(-(e - e.min()) / temperature)
    return weights / weights.sum()


def boltzmann_sample(
    model: QuboModel, config: SamplerConfig, max_bits: int = oracle.DEFAULT_MAX_BITS
) -> dict[int, float]:
    """Empirical frequencies of ``config.n_reads`` draws from the Boltzmann law.

    Keys are assignment integers (bit ``i`` of the key is variable ``i``);
    only assignments that were actually drawn appear.  Frequencies sum to 1
    exactly.
    """
    probabilities = boltzmann_probabilities(model, config.temperature, max_bits)
    rng = np.random.default_rng(config.seed)
    counts = rng.multinomial(config.n_reads, probabilities)
    hit = np.nonzero(counts)[0]
    return {int(b): counts[b] / config.n_reads for b in hit}


def sum_frequencies(frequencies: Mapping[int, float], n_problem: int) -> dict[int, float]:
    """Aggregate an assignment-frequency map by problem-bit sum."""
    mask = (1 << n_problem) - 1
    out: dict[int, float] = {}
    for key, f in frequencies.items():
        s = (key & mask).bit_count()
        out[s] = out.get(s, 0.0) + f
    return out


def exact_sum_distribution(
    model: QuboModel, temperature: float, max_bits: int = oracle.DEFAULT_MAX_BITS
) -> np.ndarray:
    """Exact Boltzmann probability of each problem-bit sum 0..n_problem."""
    probabilities = boltzmann_probabilities(model, temperature, max_bits)
    sums = oracle.problem_bit_sums(model.n_total, model.n_problem)
    return np.bincount(sums, weights=probabilities, minlength=model.n_problem + 1)


def _target_grid(r_from: Fraction, r_to: Fraction, steps: int) -> tuple[Fraction, ...]:
    span = r_to - r_from
    return tuple(r_from + span * i / (steps - 1) for i in range(steps))


def _validate_sweep(n_vars: int, r_from: Fraction, r_to: Fraction, steps: int) -> None:
    if steps < 2:
        raise ParameterError(f"a sweep needs at least 2 grid points, got {steps}")
    if not r_from < r_to:
        raise ParameterError(f"sweep range must be increasing, got [{r_from}, {r_to}]")
    if r_from < 0 or r_to > n_vars:
        raise ParameterError(
            f"sweep range [{r_from}, {r_to}] must lie within [0, {n_vars}]")


def sweep_fractional_r(
    n_vars: int,
    r_from: RationalLike,
    r_to: RationalLike,
    steps: int,
    lam: RationalLike = 1,
    config: SamplerConfig = SamplerConfig(temperature=0.05),
) -> TransferCurve:
    """Sample the transfer of measured sums as the fractional target sweeps.

    For each target on the grid a single-term penalty with that (fractional)
    target is built and sampled ``config.n_reads`` times.  Each grid point
    draws from its own RNG stream spawned from the master seed, so the curve
    is identical regardless of evaluation order.
    """
    r_from, r_to = as_fraction(r_from), as_fraction(r_to)
    _validate_sweep(n_vars, r_from, r_to, steps)
    grid = _target_grid(r_from, r_to, steps)
    children = np.random.SeedSequence(config.seed).spawn(steps)
    sums = oracle.problem_bit_sums(n_vars, n_vars)
    distributions: list[tuple[float, ...]] = []
    for r, child in zip(grid, children):
        probabilities = boltzmann_probabilities(
            fractional_restriction_model(n_vars, r, lam), config.temperature)
        counts = np.random.default_rng(child).multinomial(config.n_reads, probabilities)
        dist = np.bincount(sums, weights=counts, minlength=n_vars + 1) / config.n_reads
        distributions.append(tuple(float(p) for p in dist))
    return _assemble_curve(n_vars, grid, distributions, r_from, r_to)


def exact_transfer_curve(
    n_vars: int,
    r_from: RationalLike,
    r_to: RationalLike,
    steps: int,
    lam: RationalLike = 1,
    temperature: float = 0.05,
) -> TransferCurve:
    """Infinite-read limit of :func:`sweep_fractional_r`: exact Boltzmann curves."""
    r_from, r_to = as_fraction(r_from), as_fraction(r_to)
    _validate_sweep(n_vars, r_from, r_to, steps)
    grid = _target_grid(r_from, r_to, steps)
    distributions = []
    for r in grid:
        dist = exact_sum_distribution(
            fractional_restriction_model(n_vars, r, lam), temperature)
        distributions.append(tuple(float(p) for p in dist))
    return _assemble_curve(n_vars, grid, distributions, r_from, r_to)


def _assemble_curve(
    n_vars: int,
    grid: tuple[Fraction, ...],
    distributions: list[tuple[float, ...]],
    r_from: Fraction,
    r_to: Fraction,
) -> TransferCurve:
    lower, upper = math.floor(r_from), math.ceil(r_to)
    distance = _step_distance(grid, distributions, lower, upper)
    return TransferCurve(
        n_vars=n_vars,
        r_grid=grid,
        distributions=tuple(distributions),
        step_distance=distance,
    )


def step_distance(curve: TransferCurve, lower_s: int, upper_s: int) -> float:
    """Mean absolute deviation of the normalized transfer from an ideal step.

    The transfer is ``p(R) = P(upper_s) / (P(lower_s) + P(upper_s))``; the
    ideal step is 0 below the midpoint of the two sums, 1 above it, and 0.5
    exactly at it.  Mass on other sums is discarded by the normalization;
    if it exceeds 1% anywhere a :class:`StrayMassWarning` is emitted.
    """
    return _step_distance(curve.r_grid, curve.distributions, lower_s, upper_s)


def _step_distance(
    r_grid: Sequence[Fraction],
    distributions: Sequence[Sequence[float]],
    lower_s: int,
    upper_s: int,
) -> float:
    n_sums = len(distributions[0])
    if not (0 <= lower_s < n_sums and 0 <= upper_s < n_sums and lower_s != upper_s):
        raise ParameterError(
            f"transfer sums ({lower_s}, {upper_s}) must be distinct values in [0, {n_sums - 1}]")
    midpoint = Fraction(lower_s + upper_s, 2)
    deviations = []
    worst_stray = 0.0
    worst_r: Optional[Fraction] = None
    for r, dist in zip(r_grid, distributions):
        pair_mass = dist[lower_s] + dist[upper_s]
        if pair_mass == 0:
            raise DataQualityError(
                f"no mass on sums {lower_s} or {upper_s} at R={r}; "
                f"the transfer ratio is undefined")
        stray = 1.0 - pair_mass
        if stray > worst_stray:
            worst_stray, worst_r = stray, r
        transfer = dist[upper_s] / pair_mass
        if r == midpoint:
            ideal = 0.5
        else:
            ideal = 0.0 if r < midpoint else 1.0
        deviations.append(abs(transfer - ideal))
    if worst_stray > 0.01:
        warnings.warn(
            StrayMassWarning(
                f"{worst_stray:.3g} of the mass lies outside sums "
                f"({lower_s}, {upper_s}) at R={worst_r}"),
            stacklevel=2,
        )
    return sum(deviations) / len(deviations)
