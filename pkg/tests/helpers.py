"""Shared helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction as F

from quborestrict.core import (
    EncodedRestriction,
    EncodingKind,
    RestrictionSpec,
    expand_squared_affine,
)


def broken_one_hot(spec: RestrictionSpec) -> EncodedRestriction:
    """One-hot target term with the selector penalty left out entirely.

    With nothing forcing exactly one dummy on, the all-off dummy pattern
    makes sum 0 (and the all-on pattern other spurious sums) reach zero
    energy, so verification must refute this model.
    """
    n, m = spec.n_vars, spec.m
    target_only = expand_squared_affine(
        [(i, 1) for i in range(n)] + [(n + k, -r) for k, r in enumerate(spec.allowed)],
        0,
        1,
        n_total=n + m,
        n_problem=n,
    )
    return EncodedRestriction(
        model=target_only,
        kind=EncodingKind.ONE_HOT_GENERAL,
        n_dummies=m,
        residual_energy=F(0),
        lambda1=F(1),
        lambda2=F(1),
    )
