import math

import numpy as np
import pytest
from scipy.optimize import brentq

from qroof import (
    CMAX,
    CONCURRENCE,
    FORMATION,
    GEOMETRIC,
    NonConvexMeasureError,
    NotIsometryError,
    PureQubit,
    QubitState,
    RoofConfig,
    closed_form,
    cmu,
    coherence_rank,
    eigendecompose,
    ensemble_from_isometry,
    eval_pure,
    minimal_pure_split,
    mix,
    roof_minimize,
    two_state_witness,
    verify_closed_form,
)
from qroof.measures import lower_population_from_offdiag
from helpers import random_isometry, random_mixed_state, rng
from test_measures import rank_split_oracle

PLUS = PureQubit(1 / math.sqrt(2), 1 / math.sqrt(2))
FAST = RoofConfig(ensemble_sizes=(2,), restarts=6, max_iters=300, tol=1e-10, seed=0)


def entrywise_error(state: QubitState, other: QubitState) -> float:
    return max(abs(state.rho00 - other.rho00), abs(state.rho01 - other.rho01))


def ensemble_average(spec, ensemble) -> float:
    return sum(w * eval_pure(spec, phi) for w, phi in ensemble.members)


class TestEnsembleFromIsometry:
    def test_identity_gives_eigen_ensemble(self):
        state = QubitState(0.5, 0.25)
        eig = eigendecompose(state)
        ensemble = ensemble_from_isometry(state, np.eye(2))
        assert len(ensemble.members) == 2
        for (weight, phi), lam, vec in zip(
            ensemble.members, eig.eigenvalues, eig.eigenvectors
        ):
            assert weight == pytest.approx(lam, abs=1e-12)
            overlap = phi.c0.conjugate() * vec.c0 + phi.c1.conjugate() * vec.c1
            assert abs(overlap) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_non_isometry(self):
        with pytest.raises(NotIsometryError):
            ensemble_from_isometry(QubitState(0.5, 0.25), np.ones((2, 2)))

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            ensemble_from_isometry(QubitState(0.5, 0.25), np.eye(3))

    def test_pure_state_members_all_parallel(self):
        gen = rng(31)
        state = PLUS.density()
        for n in (2, 3, 4):
            ensemble = ensemble_from_isometry(state, random_isometry(gen, n))
            for _, phi in ensemble.members:
                overlap = phi.c0.conjugate() * PLUS.c0 + phi.c1.conjugate() * PLUS.c1
                assert abs(overlap) == pytest.approx(1.0, abs=1e-10)

    def test_remix_on_random_isometries(self):
        gen = rng(32)
        for _ in range(100):
            state = random_mixed_state(gen, strictly_mixed=False)
            n = int(gen.integers(2, 5))
            ensemble = ensemble_from_isometry(state, random_isometry(gen, n))
            assert entrywise_error(mix(ensemble), state) < 1e-10

    def test_rotation_angle_reproduces_two_state_witness(self):
        # Within the one-parameter real-rotation family there is an angle
        # whose members both carry the state's off-diagonal magnitude; find
        # it by sign change + root refinement and compare ensembles.
        state = QubitState(0.5, 0.25)

        def member_gap(theta: float) -> float:
            u = np.array(
                [
                    [math.cos(theta), math.sin(theta)],
                    [-math.sin(theta), math.cos(theta)],
                ]
            )
            weight, phi = ensemble_from_isometry(state, u).members[0]
            return abs(phi.offdiag()) - 0.25

        thetas = np.linspace(0.0, math.pi, 200)
        gaps = [member_gap(t) for t in thetas]
        crossings = [
            (thetas[i], thetas[i + 1])
            for i in range(len(thetas) - 1)
            if gaps[i] == 0.0 or (gaps[i] < 0) != (gaps[i + 1] < 0)
        ]
        assert crossings
        theta = brentq(member_gap, *crossings[0], xtol=1e-14)
        u = np.array(
            [
                [math.cos(theta), math.sin(theta)],
                [-math.sin(theta), math.cos(theta)],
            ]
        )
        found = ensemble_from_isometry(state, u)
        expected = two_state_witness(state)
        for _, phi in found.members:
            assert abs(phi.offdiag()) == pytest.approx(0.25, abs=1e-10)
        found_weights = sorted(w for w, _ in found.members)
        expected_weights = sorted(w for w, _ in expected.members)
        assert found_weights == pytest.approx(expected_weights, abs=1e-10)


class TestTwoStateWitness:
    def test_reference_state(self):
        # q(1-q) = 0.25^2 with q <= 1/2, and rho00 = 0.5 sits midway
        witness = two_state_witness(QubitState(0.5, 0.25))
        q = (1 - math.sqrt(0.75)) / 2
        weights = sorted(w for w, _ in witness.members)
        assert weights == pytest.approx([0.5, 0.5])
        populations = sorted(abs(phi.c0) ** 2 for _, phi in witness.members)
        assert populations == pytest.approx([q, 1 - q], abs=1e-14)

    def test_pure_input_degenerates_to_itself(self):
        witness = two_state_witness(QubitState(0.5, 0.5))
        assert len(witness.members) == 1
        weight, phi = witness.members[0]
        assert weight == 1.0
        assert abs(phi.offdiag()) == pytest.approx(0.5, abs=1e-14)

    def test_incoherent_input(self):
        witness = two_state_witness(QubitState(0.3, 0.0))
        weights = {round(w, 12): phi for w, phi in witness.members}
        assert set(weights) == {0.3, 0.7}
        assert abs(weights[0.7].c1) == pytest.approx(1.0)  # |1>-type carries 0.7
        assert abs(weights[0.3].c0) == pytest.approx(1.0)

    def test_members_carry_state_offdiagonal(self):
        gen = rng(33)
        for _ in range(100):
            state = random_mixed_state(gen, strictly_mixed=False)
            for _, phi in two_state_witness(state).members:
                assert abs(phi.offdiag()) == pytest.approx(abs(state.rho01), abs=1e-14)

    def test_remix_to_input_with_complex_phases(self):
        gen = rng(34)
        for _ in range(200):
            state = random_mixed_state(gen, strictly_mixed=False)
            assert entrywise_error(mix(two_state_witness(state)), state) < 1e-10


class TestMinimalPureSplit:
    def test_wide_branch_example(self):
        weight, part, residual = minimal_pure_split(QubitState(0.3, 0.2))
        assert weight == pytest.approx(0.4)
        assert residual == pytest.approx((0.1, 0.5))
        assert weight * abs(part.c0) ** 2 == pytest.approx(0.2)

    def test_narrow_branch_example(self):
        weight, part, residual = minimal_pure_split(QubitState(0.1, 0.2))
        assert weight == pytest.approx(0.5)
        assert weight * abs(part.c0) ** 2 == pytest.approx(0.1)
        assert weight * abs(part.c1) ** 2 == pytest.approx(0.4)
        assert residual[0] == pytest.approx(0.0, abs=1e-14)
        assert residual[1] == pytest.approx(0.5)

    def test_incoherent_input(self):
        weight, part, residual = minimal_pure_split(QubitState(0.3, 0.0))
        assert weight == 0.0 and part is None
        assert residual == (0.3, 0.7)

    def test_weight_equals_rank_formula_exactly(self):
        gen = rng(35)
        for _ in range(500):
            state = random_mixed_state(gen, strictly_mixed=False)
            weight, part, residual = minimal_pure_split(state)
            assert weight == coherence_rank(state)
            if part is None:
                continue
            rebuilt00 = weight * abs(part.c0) ** 2 + residual[0]
            rebuilt01 = weight * part.offdiag()
            assert abs(rebuilt00 - state.rho00) < 1e-12
            assert abs(rebuilt01 - state.rho01) < 1e-12
            assert min(residual) >= 0.0

    def test_swapped_orientation(self):
        state = QubitState(0.9, 0.2)  # rho11 = 0.1 is the smaller diagonal
        weight, part, residual = minimal_pure_split(state)
        assert weight == pytest.approx(0.1 + 0.04 / 0.1)
        assert weight * abs(part.c1) ** 2 == pytest.approx(0.1)
        assert residual[1] == pytest.approx(0.0, abs=1e-14)


class TestRoofMinimize:
    def test_formation_reference_state(self):
        state = QubitState(0.5, 0.25)
        expected = eval_pure(FORMATION, two_state_witness(state).members[0][1])
        result = roof_minimize(FORMATION, state, FAST)
        assert result.value == pytest.approx(expected, abs=1e-3)
        assert result.closed_value is not None and result.gap <= 1e-3

    def test_value_equals_witness_average_and_remixes(self):
        gen = rng(36)
        for spec in (FORMATION, GEOMETRIC, CMAX, cmu(0.2)):
            state = random_mixed_state(gen)
            result = roof_minimize(spec, state, FAST)
            assert result.value == pytest.approx(ensemble_average(spec, result.witness), abs=1e-12)
            assert entrywise_error(mix(result.witness), state) < 1e-8

    def test_soundness_against_probed_isometries(self):
        gen = rng(37)
        state = random_mixed_state(gen)
        value = roof_minimize(GEOMETRIC, state, FAST).value
        for _ in range(50):
            n = int(gen.integers(2, 5))
            ensemble = ensemble_from_isometry(state, random_isometry(gen, n))
            assert ensemble_average(GEOMETRIC, ensemble) >= value - 1e-12

    def test_deterministic_given_seed(self):
        state = QubitState(0.35, 0.3 + 0.2j)
        a = roof_minimize(FORMATION, state, FAST)
        b = roof_minimize(FORMATION, state, FAST)
        assert a.value == b.value
        assert a.witness.members == b.witness.members

    def test_order_independent_restart_aggregation(self):
        # per-restart candidates are derived from (seed, size, index) alone,
        # so evaluating them in any order yields the same minimum
        from qroof.roof import _search_restart

        state = QubitState(0.35, 0.3)
        eig = eigendecompose(state)
        (l1, l2), (v1, v2) = eig.eigenvalues, eig.eigenvectors
        w1 = (math.sqrt(l1) * v1.c0, math.sqrt(l1) * v1.c1)
        w2 = (math.sqrt(l2) * v2.c0, math.sqrt(l2) * v2.c1)
        forward = [
            _search_restart(FORMATION, w1, w2, 2, k, FAST)[0] for k in range(FAST.restarts)
        ]
        backward = [
            _search_restart(FORMATION, w1, w2, 2, k, FAST)[0]
            for k in reversed(range(FAST.restarts))
        ]
        assert min(forward) == min(backward)
        assert min(forward) == roof_minimize(FORMATION, state, FAST).value

    def test_pure_state_witness_is_singleton(self):
        result = roof_minimize(CONCURRENCE, PLUS.density(), FAST)
        assert result.value == pytest.approx(1.0)
        assert len(result.witness.members) == 1

    def test_diagonal_state_value_zero(self):
        result = roof_minimize(FORMATION, QubitState(0.3, 0.0), FAST)
        assert result.value == 0.0
        assert all(abs(phi.offdiag()) == 0.0 for _, phi in result.witness.members)

    def test_indicator_uses_structured_split(self):
        gen = rng(38)
        for _ in range(50):
            state = random_mixed_state(gen)
            result = roof_minimize(cmu(0.0), state)
            assert result.value == pytest.approx(rank_split_oracle(state), abs=1e-7)
            assert result.value >= coherence_rank(state) - 1e-12
            assert entrywise_error(mix(result.witness), state) < 1e-10

    def test_larger_ensembles_cannot_beat_closed_form(self):
        state = QubitState(0.4, 0.15 + 0.25j)
        config = RoofConfig(ensemble_sizes=(2, 3, 4), restarts=3, max_iters=400, seed=1)
        result = roof_minimize(GEOMETRIC, state, config)
        closed = lower_population_from_offdiag(abs(state.rho01))
        assert result.value >= closed - 1e-12
        assert result.value == pytest.approx(closed, abs=1e-3)

    def test_three_member_chart_alone(self):
        state = QubitState(0.4, 0.2 + 0.1j)
        config = RoofConfig(ensemble_sizes=(3,), restarts=8, max_iters=800, seed=2)
        result = roof_minimize(GEOMETRIC, state, config)
        assert result.value == pytest.approx(closed_form(GEOMETRIC, state), abs=1e-6)
        assert len(result.witness.members) == 3

    def test_approximately_phase_invariant(self):
        # only the closed forms are exactly phase-invariant; the search sees
        # an fp-perturbed landscape after normalization
        from qroof import phase_normalize

        config = RoofConfig(ensemble_sizes=(2,), restarts=4, max_iters=300, seed=5)
        for state in (QubitState(0.3, 0.25j), QubitState(0.45, 0.2 + 0.3j)):
            normalized, _ = phase_normalize(state)
            a = roof_minimize(CMAX, state, config).value
            b = roof_minimize(CMAX, normalized, config).value
            assert a == pytest.approx(b, abs=1e-6)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RoofConfig(ensemble_sizes=(5,))
        with pytest.raises(ValueError):
            RoofConfig(restarts=0)


class TestClosedFormSandwich:
    def test_oracle_and_witness_bracket_closed_form(self):
        # the witness average must reproduce the closed form to 1e-10 and
        # the search must land within 1e-3 of it; near-pure states make the
        # lower side soft (the formation profile has unbounded slope at the
        # balanced end), so only the absolute gap is asserted
        gen = rng(53)
        for _ in range(500):
            state = random_mixed_state(gen, strictly_mixed=False)
            witness = two_state_witness(state)
            for spec in (FORMATION, GEOMETRIC, CONCURRENCE):
                closed = closed_form(spec, state)
                assert ensemble_average(spec, witness) == pytest.approx(closed, abs=1e-10)
                oracle = roof_minimize(spec, state, FAST).value
                assert abs(oracle - closed) <= 1e-3


class TestVerifyClosedForm:
    def test_geometric_random_states(self):
        gen = rng(39)
        for _ in range(30):
            report = verify_closed_form(GEOMETRIC, random_mixed_state(gen), FAST)
            assert report.passed

    def test_rank_narrow_branch(self):
        report = verify_closed_form(cmu(0.0), QubitState(0.1, 0.2))
        assert report.closed == pytest.approx(0.5)
        assert report.witness_value == pytest.approx(0.5)
        assert report.oracle >= 0.5 - 1e-6
        assert report.passed

    def test_concurrence_on_pure_state(self):
        report = verify_closed_form(CONCURRENCE, PLUS.density(), FAST)
        assert report.closed == pytest.approx(1.0)
        assert report.oracle == pytest.approx(1.0)
        assert report.passed

    def test_rejects_non_convex_continuous_spec(self):
        with pytest.raises(NonConvexMeasureError):
            verify_closed_form(CMAX, QubitState(0.4, 0.2), FAST)
