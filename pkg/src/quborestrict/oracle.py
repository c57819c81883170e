"""Brute-force ground-truth engine for encoded restrictions.

Enumerates every assignment of a model, computes the exact energy spectrum
grouped by the problem-bit sum, and certifies (or refutes) that the
minimum-energy assignments realize exactly the allowed sums at the declared
residual energy.

Exactness is preserved by clearing denominators once per model and doing the
sweep in integer arithmetic; energies convert back to Fractions at the end.
The sweep itself is pure: chunking is an internal detail and results do not
depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import (
    DimensionError,
    EncodedRestriction,
    ParameterError,
    QuboModel,
    RationalLike,
    RestrictionSpec,
    SizeLimitError,
    as_fraction,
)

DEFAULT_MAX_BITS = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class SpectrumReport:
    """Exact spectrum of an encoded restriction, projected on the problem-bit sum.

    ``by_sum`` maps each sum s to the minimum energy over assignments whose
    problem bits add to s (dummies minimized over) and the count of
    assignments attaining it.  ``passed`` is True when the global minima
    realize exactly the allowed sums at the declared residual energy.
    """

    by_sum: dict[int, tuple[Fraction, int]]
    ground_energy: Fraction
    ground_sums: frozenset[int]
    ground_degeneracy: int
    second_energy: Optional[Fraction]
    passed: bool


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    diagnosis: str
    report: SpectrumReport


def _integer_coefficients(model: QuboModel) -> tuple[np.ndarray, int, int, bool]:
    """Clear denominators: returns (Q matrix, offset, scale, fits_int64).

    All entries of Q and the offset are the model's coefficients times
    ``scale``.  When the worst-case absolute energy would overflow int64 the
    matrix is returned with object dtype (exact big integers, slower).
    """
    n = model.n_total
    scale = math.lcm(
        model.offset.denominator, *(q.denominator for q in model.coeffs.values()))
    entries = {key: int(q * scale) for key, q in model.coeffs.items()}
    offset = int(model.offset * scale)
    bound = sum(abs(v) for v in entries.values()) + abs(offset)
    fits = bound < 2**62
    q_matrix = np.zeros((n, n), dtype=np.int64 if fits else object)
    for (i, j), v in entries.items():
        q_matrix[i, j] = v
    return q_matrix, offset, scale, fits


def assignment_energies(
    model: QuboModel, max_bits: int = DEFAULT_MAX_BITS
) -> tuple[np.ndarray, int]:
    """Energies of all ``2**n_total`` assignments, times an integer ``scale``.

    Assignments are visited in plain counting order: assignment ``b`` sets
    bit ``i`` to ``(b >> i) & 1``.  Returns ``(scaled_energies, scale)``;
    exact energies are ``Fraction(int(e), scale)``.
    """
    n = model.n_total
    if n > max_bits:
        raise SizeLimitError(
            f"model has {n} variables; enumeration is capped at {max_bits} bits "
            f"(pass a larger max_bits to override)")
    q_matrix, offset, scale, fits = _integer_coefficients(model)
    total = 1 << n
    energies = np.empty(total, dtype=np.int64 if fits else object)
    if n == 0:
        energies[0] = offset
        return energies, scale
    shifts = np.arange(n, dtype=np.int64)
    chunk = 1 << _CHUNK_BITS
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(q_matrix.dtype)
        energies[start:stop] = np.einsum("bi,ij,bj->b", bits, q_matrix, bits) + offset
    return energies, scale


def problem_bit_sums(n_total: int, n_problem: int) -> np.ndarray:
    """Problem-bit sum of every assignment, in counting order."""
    idx = np.arange(1 << n_total, dtype=np.uint64)
    mask = np.uint64((1 << n_problem) - 1)
    return np.bitwise_count(idx & mask).astype(np.int64)


def sum_spectrum(
    model: QuboModel, max_bits: int = DEFAULT_MAX_BITS
) -> dict[int, tuple[Fraction, int]]:
    """Minimum energy and its degeneracy for each problem-bit sum.

    Dummy bits are minimized over: the value reported for sum s is the best
    energy any assignment with s active problem bits can reach.
    """
    energies, scale = assignment_energies(model, max_bits)
    sums = problem_bit_sums(model.n_total, model.n_problem)
    out: dict[int, tuple[Fraction, int]] = {}
    for s in range(model.n_problem + 1):
        at_s = energies[sums == s]
        e_min = at_s.min()
        count = int((at_s == e_min).sum())
        out[s] = (Fraction(int(e_min), scale), count)
    return out


def enumerate_spectrum(
    encoded: EncodedRestriction,
    spec: RestrictionSpec,
    max_bits: int = DEFAULT_MAX_BITS,
) -> SpectrumReport:
    """Exhaustive spectrum of an encoding, with the pass/fail verdict filled in."""
    model = encoded.model
    if model.n_problem != spec.n_vars:
        raise DimensionError(
            f"model has {model.n_problem} problem bits, spec has {spec.n_vars}")
    energies, scale = assignment_energies(model, max_bits)
    sums = problem_bit_sums(model.n_total, model.n_problem)

    by_sum: dict[int, tuple[Fraction, int]] = {}
    for s in range(model.n_problem + 1):
        at_s = energies[sums == s]
        e_min = at_s.min()
        by_sum[s] = (Fraction(int(e_min), scale), int((at_s == e_min).sum()))

    ground_scaled = energies.min()
    ground_energy = Fraction(int(ground_scaled), scale)
    at_ground = energies == ground_scaled
    ground_degeneracy = int(at_ground.sum())
    ground_sums = frozenset(int(s) for s in np.unique(sums[at_ground]))
    above = energies[~at_ground]
    second_energy = Fraction(int(above.min()), scale) if above.size else None

    passed = (
        ground_sums == frozenset(spec.allowed)
        and ground_energy == encoded.residual_energy
    )
    return SpectrumReport(
        by_sum=by_sum,
        ground_energy=ground_energy,
        ground_sums=ground_sums,
        ground_degeneracy=ground_degeneracy,
        second_energy=second_energy,
        passed=passed,
    )


def verify(
    encoded: EncodedRestriction,
    spec: RestrictionSpec,
    max_bits: int = DEFAULT_MAX_BITS,
) -> VerificationResult:
    """Certify an encoding against its spec, with a human-readable diagnosis.

    Passes when the ground-state sums equal the allowed set, the ground
    energy equals the declared residual exactly, and the next distinct
    energy level (when one exists) sits strictly above it.
    """
    report = enumerate_spectrum(encoded, spec, max_bits)
    allowed = frozenset(spec.allowed)
    problems: list[str] = []
    missing = sorted(allowed - report.ground_sums)
    spurious = sorted(report.ground_sums - allowed)
    if missing:
        problems.append(
            f"allowed sums {missing} never reach the ground energy")
    if spurious:
        problems.append(
            f"spurious ground states at sums {spurious}")
    if report.ground_energy != encoded.residual_energy:
        problems.append(
            f"ground energy {report.ground_energy} differs from the declared "
            f"residual {encoded.residual_energy}")
    gap_ok = report.second_energy is None or report.second_energy > report.ground_energy
    if not gap_ok:
        problems.append("no positive gap above the ground energy")

    if problems:
        return VerificationResult(False, "; ".join(problems), report)
    gap = (
        f"gap to next level {report.second_energy - report.ground_energy}"
        if report.second_energy is not None
        else "all assignments are ground states"
    )
    diagnosis = (
        f"ground sums {sorted(report.ground_sums)} match the allowed set at "
        f"energy {report.ground_energy} ({gap})"
    )
    return VerificationResult(True, diagnosis, report)


def fractional_energy_ladder(
    n_vars: int, r: RationalLike, lam: RationalLike = 1
) -> list[tuple[int, Fraction]]:
    """Energies ``lam * (s - R)**2`` for s = 0..n_vars, sorted ascending.

    Ties (which occur exactly at half-integer R) are broken by the smaller
    sum first.  For fractional R the minimum lands on the integer nearest R,
    with a nonzero floor energy shared by no second level unless R is a
    half-integer.
    """
    r = as_fraction(r)
    lam = as_fraction(lam)
    if lam <= 0:
        raise ParameterError(f"multiplier must be positive, got {lam}")
    if not 0 <= r <= n_vars:
        raise ParameterError(f"target {r} must lie in [0, {n_vars}]")
    ladder = [(s, lam * (s - r) ** 2) for s in range(n_vars + 1)]
    ladder.sort(key=lambda entry: (entry[1], entry[0]))
    return ladder
