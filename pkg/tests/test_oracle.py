"""Tests for the brute-force spectrum oracle and the energy ladder."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from quborestrict.core import (
    DimensionError,
    EncodedRestriction,
    EncodingKind,
    ParameterError,
    QuboModel,
    RestrictionSpec,
    SizeLimitError,
    expand_squared_affine,
)
from quborestrict.encoders import (
    EncoderParams,
    encode_half_integer_m2,
    encode_one_hot_general,
    encode_reduced_general,
    encode_single_value,
)
from quborestrict.oracle import (
    assignment_energies,
    enumerate_spectrum,
    fractional_energy_ladder,
    problem_bit_sums,
    sum_spectrum,
    verify,
)

from helpers import broken_one_hot


class TestEnumerateSpectrum:
    def test_half_integer_pair_profile(self):
        spec = RestrictionSpec(3, (1, 2))
        report = enumerate_spectrum(encode_half_integer_m2(spec), spec)
        assert [report.by_sum[s][0] for s in range(4)] == [F(9, 4), F(1, 4), F(1, 4), F(9, 4)]
        assert report.ground_sums == {1, 2}
        assert report.passed

    def test_single_value_degeneracies(self):
        spec = RestrictionSpec(4, (2,))
        report = enumerate_spectrum(encode_single_value(spec), spec)
        assert report.ground_sums == {2}
        assert report.ground_energy == 0
        assert report.ground_degeneracy == 6
        assert report.by_sum[0] == (F(4), 1)
        assert report.by_sum[1] == (F(1), 4)

    def test_counting_order_matches_model_energy(self):
        model = expand_squared_affine([(i, F(2 * i + 1, 3)) for i in range(5)], F(-5, 2), F(4, 3))
        energies, scale = assignment_energies(model)
        for b in range(32):
            bits = [(b >> i) & 1 for i in range(5)]
            assert F(int(energies[b]), scale) == model.energy(bits)

    def test_size_cap(self):
        model = QuboModel(25, 25, {(0, 0): F(1)})
        with pytest.raises(SizeLimitError):
            assignment_energies(model)
        small = QuboModel(11, 11, {(0, 0): F(1)})
        with pytest.raises(SizeLimitError):
            assignment_energies(small, max_bits=10)
        energies, _ = assignment_energies(small, max_bits=11)
        assert energies.shape == (2**11,)

    def test_spec_model_mismatch(self):
        spec = RestrictionSpec(4, (2,))
        encoded = encode_single_value(RestrictionSpec(3, (2,)))
        with pytest.raises(DimensionError):
            enumerate_spectrum(encoded, spec)

    def test_huge_multiplier_takes_exact_bigint_path(self):
        spec = RestrictionSpec(3, (1, 2))
        encoded = encode_half_integer_m2(spec, EncoderParams(lambda1=10**30))
        report = enumerate_spectrum(encoded, spec)
        assert report.ground_energy == F(10**30, 4)
        assert report.ground_sums == {1, 2}

    def test_thirds_multiplier_stays_exact(self):
        spec = RestrictionSpec(4, (1, 3))
        encoded = encode_reduced_general(spec, EncoderParams(lambda1=F(1, 3), lambda2=F(1, 3)))
        report = enumerate_spectrum(encoded, spec)
        assert report.ground_energy == F(1, 12)
        assert report.passed


class TestVerify:
    def test_passes_canonical_encodings(self):
        spec = RestrictionSpec(9, (2, 5, 9))
        result = verify(encode_reduced_general(spec), spec)
        assert result.passed
        assert result.report.ground_energy == F(1, 4)
        assert "match" in result.diagnosis

    def test_refutes_model_without_selector_penalty(self):
        spec = RestrictionSpec(4, (1, 3))
        result = verify(broken_one_hot(spec), spec)
        assert not result.passed
        # with no one-hot penalty the all-off dummies make sum 0 a ground state
        assert 0 in result.report.ground_sums
        assert "spurious" in result.diagnosis
        assert "0" in result.diagnosis

    def test_reports_missing_values(self):
        spec = RestrictionSpec(4, (1, 3))
        wrong_target = encode_single_value(RestrictionSpec(4, (2,)))
        doctored = EncodedRestriction(
            model=wrong_target.model,
            kind=EncodingKind.SINGLE_VALUE,
            n_dummies=0,
            residual_energy=F(0),
            lambda1=F(1),
        )
        result = verify(doctored, spec)
        assert not result.passed
        assert "never reach" in result.diagnosis

    def test_all_ground_model_passes_without_second_level(self):
        spec = RestrictionSpec(1, (0, 1))
        result = verify(encode_half_integer_m2(spec), spec)
        assert result.passed
        assert result.report.second_energy is None


class TestDummyMinimization:
    def test_by_sum_is_a_lower_bound_on_sampled_assignments(self):
        rng = random.Random(31337)
        spec = RestrictionSpec(6, (1, 4, 6))
        model = encode_one_hot_general(spec).model
        by_sum = sum_spectrum(model)
        for _ in range(300):
            bits = tuple(rng.randint(0, 1) for _ in range(model.n_total))
            s = sum(bits[: model.n_problem])
            assert by_sum[s][0] <= model.energy(bits)

    def test_matches_exhaustive_fraction_arithmetic(self):
        # independent route: plain Python enumeration with Fraction energies
        model = encode_reduced_general(RestrictionSpec(4, (0, 2, 3))).model
        by_sum = sum_spectrum(model)
        direct: dict[int, list] = {}
        for bits in itertools.product((0, 1), repeat=model.n_total):
            s = sum(bits[: model.n_problem])
            direct.setdefault(s, []).append(model.energy(bits))
        for s, energies in direct.items():
            e_min = min(energies)
            assert by_sum[s] == (e_min, energies.count(e_min))


class TestFractionalEnergyLadder:
    def test_ladder_matches_published_values(self):
        ladder = fractional_energy_ladder(10, F("6.4"), 1)
        assert ladder[:3] == [(6, F(16, 100)), (7, F(36, 100)), (5, F(196, 100))]

    def test_half_integer_tie_broken_by_smaller_sum(self):
        ladder = fractional_energy_ladder(3, F(3, 2), 1)
        assert ladder[0] == (1, F(1, 4))
        assert ladder[1] == (2, F(1, 4))

    def test_zero_target(self):
        assert fractional_energy_ladder(2, 0, 1) == [(0, F(0)), (1, F(1)), (2, F(4))]

    def test_out_of_range_target(self):
        with pytest.raises(ParameterError):
            fractional_energy_ladder(5, 6, 1)
        with pytest.raises(ParameterError):
            fractional_energy_ladder(5, F(-1, 2), 1)

    def test_argmin_is_nearest_integer_and_ladder_is_convex(self):
        rng = random.Random(4242)
        for _ in range(50):
            n = rng.randint(1, 12)
            r = F(rng.randint(0, 100 * n), 100)
            ladder = fractional_energy_ladder(n, r, F(rng.randint(1, 5), rng.randint(1, 3)))
            best_s, best_e = ladder[0]
            assert abs(best_s - r) == min(abs(s - r) for s in range(n + 1))
            ties = [s for s, e in ladder if e == best_e]
            if r.denominator == 2 and 0 < r < n:
                assert len(ties) == 2
            else:
                assert len(ties) == 1
            by_s = sorted(ladder)
            energies = [e for _, e in by_s]
            # convex in s: discrete second differences are non-negative
            for a, b, c in zip(energies, energies[1:], energies[2:]):
                assert a - 2 * b + c >= 0

    def test_matches_enumerated_spectrum_of_fractional_model(self):
        n, r = 8, F("6.4")
        model = expand_squared_affine([(i, 1) for i in range(n)], -r, 1)
        by_sum = sum_spectrum(model)
        for s, energy in fractional_energy_ladder(n, r, 1):
            assert by_sum[s][0] == energy


def test_problem_bit_sums_counts_only_problem_bits():
    sums = problem_bit_sums(3, 2)
    assert list(sums) == [0, 1, 1, 2, 0, 1, 1, 2]
