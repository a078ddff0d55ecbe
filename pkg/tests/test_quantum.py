import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlocalnet import (BlochObservable, ConfigurationError,
                       InvalidParameterError, PAULI_X, PAULI_Z, build_chain,
                       canonical_plan, check_plan, concurrence,
                       extremal_observable, normalize_angle, pair_expectation,
                       source_state)

angles = st.floats(min_value=-20.0, max_value=20.0,
                   allow_nan=False, allow_infinity=False)


def test_source_state_examples():
    assert np.allclose(source_state(0.0), [1, 0, 0, 0])
    assert np.allclose(source_state(math.pi / 4),
                       [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
    assert np.allclose(source_state(math.pi / 6), [math.sqrt(3) / 2, 0, 0, 0.5])


def test_concurrence_examples():
    assert concurrence(math.pi / 4) == pytest.approx(1.0, abs=1e-12)
    assert concurrence(0.0) == 0.0
    assert concurrence(math.pi / 6) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


def test_extremal_observable_examples():
    obs = extremal_observable(0.0, 0)
    assert (obs.vx, obs.vy, obs.vz) == (0.0, 0.0, 1.0)
    obs = extremal_observable(math.pi / 2, 1)
    assert obs.vx == pytest.approx(-1.0, abs=1e-12)
    assert obs.vz == pytest.approx(0.0, abs=1e-12)
    obs = extremal_observable(math.pi / 4, 0)
    assert obs.vx == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    assert obs.vz == pytest.approx(math.sqrt(2) / 2, abs=1e-12)


def test_bloch_observable_rejects_non_unit_vector():
    with pytest.raises(InvalidParameterError):
        BlochObservable(1.0, 1.0, 0.0)


@given(angles)
@settings(max_examples=100)
def test_source_state_norm_and_stabilizer(theta):
    psi = source_state(theta)
    assert abs(np.vdot(psi, psi).real - 1.0) < 1e-12
    zz = np.kron(PAULI_Z.matrix(), PAULI_Z.matrix())
    assert abs(np.vdot(psi, zz @ psi).real - 1.0) < 1e-12


@given(angles)
@settings(max_examples=100)
def test_xx_expectation_matches_concurrence(theta):
    psi = source_state(theta)
    xx = np.kron(PAULI_X.matrix(), PAULI_X.matrix())
    value = np.vdot(psi, xx @ psi).real
    assert abs(value - math.sin(2 * theta)) < 1e-12
    assert abs(abs(value) - concurrence(theta)) < 1e-12


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
@settings(max_examples=100)
def test_observable_squares_to_identity(vx, vy, vz):
    norm = math.sqrt(vx * vx + vy * vy + vz * vz)
    if norm < 1e-6:
        return
    obs = BlochObservable(vx / norm, vy / norm, vz / norm)
    square = obs.matrix() @ obs.matrix()
    assert np.max(np.abs(square - np.eye(2))) < 1e-12


@given(angles, angles, angles)
@settings(max_examples=100)
def test_pair_expectation_matches_trace(theta, alpha, beta):
    first = extremal_observable(alpha, 0)
    second = extremal_observable(beta, 1)
    psi = source_state(theta)
    matrix = np.kron(first.matrix(), second.matrix())
    exact = np.vdot(psi, matrix @ psi).real
    assert abs(pair_expectation(theta, first, second) - exact) < 1e-12


def test_pair_expectation_with_y_components():
    rng = np.random.default_rng(7)
    for _ in range(50):
        vecs = rng.normal(size=(2, 3))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        first = BlochObservable(*vecs[0])
        second = BlochObservable(*vecs[1])
        theta = rng.uniform(0, 2 * math.pi)
        psi = source_state(theta)
        exact = np.vdot(psi, np.kron(first.matrix(), second.matrix()) @ psi).real
        assert abs(pair_expectation(theta, first, second) - exact) < 1e-12


def test_normalize_angle():
    assert normalize_angle(0.0) == 0.0
    assert normalize_angle(2 * math.pi) == 0.0
    assert normalize_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi, abs=1e-12)
    assert normalize_angle(5 * math.pi) == pytest.approx(math.pi, abs=1e-12)


def test_canonical_plan_shape_and_arity_check():
    config = build_chain(3)
    plan = canonical_plan(config, [0.1, 0.2])
    check_plan(config, plan)
    for node, (zero_obs, one_obs) in plan.intermediate.items():
        assert zero_obs == (PAULI_Z,) * config.m
        assert one_obs == (PAULI_X,) * config.m
    with pytest.raises(InvalidParameterError):
        canonical_plan(config, [0.1])
    bad = canonical_plan(build_chain(2), [0.1, 0.2])
    with pytest.raises(ConfigurationError):
        check_plan(config, bad)
