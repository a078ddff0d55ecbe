"""Two-qubit source states, Bloch-vector observables, and measurement plans."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigurationError, InvalidParameterError
from .topology import NetworkConfig, NodeId, extremal_nodes, intermediate_nodes

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BlochObservable:
    """A dichotomic observable v . sigma for a unit 3-vector v (eigenvalues +1, -1)."""

    vx: float
    vy: float
    vz: float

    def __post_init__(self):
        norm_sq = self.vx * self.vx + self.vy * self.vy + self.vz * self.vz
        if abs(norm_sq - 1.0) > 1e-12:
            raise InvalidParameterError(
                f"Bloch vector must have unit length, got |v|^2 = {norm_sq!r}")

    def matrix(self) -> np.ndarray:
        """2x2 Hermitian matrix in the computational basis."""
        return np.array(
            [[self.vz, self.vx - 1j * self.vy],
             [self.vx + 1j * self.vy, -self.vz]],
            dtype=complex)


PAULI_X = BlochObservable(1.0, 0.0, 0.0)
PAULI_Y = BlochObservable(0.0, 1.0, 0.0)
PAULI_Z = BlochObservable(0.0, 0.0, 1.0)


def source_state(theta: float) -> np.ndarray:
    """Amplitudes (cos theta, 0, 0, sin theta) over the basis 00, 01, 10, 11."""
    return np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=complex)


def concurrence(theta: float) -> float:
    """Entanglement of the source state, |sin 2 theta|: 0 product, 1 maximal."""
    return abs(math.sin(2.0 * theta))


def normalize_angle(theta: float) -> float:
    """Reduce an angle to [0, 2 pi) for reporting."""
    reduced = math.fmod(theta, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    return 0.0 if reduced >= TWO_PI else reduced


def extremal_observable(alpha: float, y: int) -> BlochObservable:
    """Single-qubit setting cos(alpha) sigma_z + (-1)^y sin(alpha) sigma_x."""
    sign = -1.0 if y & 1 else 1.0
    return BlochObservable(sign * math.sin(alpha), 0.0, math.cos(alpha))


def pair_expectation(theta: float, first: BlochObservable,
                     second: BlochObservable) -> float:
    """Expectation of first (x) second on the source state of angle theta.

    Equals the trace of the 4x4 product observable against the source
    projector; reduces to vz.vz + sin(2 theta) (vx.vx - vy.vy) because the
    state is supported on the 00/11 plane.
    """
    return (first.vz * second.vz
            + math.sin(2.0 * theta) * (first.vx * second.vx - first.vy * second.vy))


@dataclass(frozen=True)
class MeasurementPlan:
    """Per-node settings for one experiment.

    intermediate maps a node to its two product observables (input 0, input 1),
    each a tuple with one single-qubit factor per attached source in ascending
    source order.  alphas maps an extremal node to the angle of its setting
    family: input y measures cos(alpha) sigma_z + (-1)^y sin(alpha) sigma_x.
    """

    intermediate: Mapping[NodeId, tuple[tuple[BlochObservable, ...],
                                        tuple[BlochObservable, ...]]]
    alphas: Mapping[NodeId, float]


def canonical_plan(config: NetworkConfig, alphas: Sequence[float]) -> MeasurementPlan:
    """The standard plan: all-sigma_z products for input 0, all-sigma_x for input 1."""
    if len(alphas) != config.p:
        raise InvalidParameterError(
            f"need one extremal angle per extremal node ({config.p}), got {len(alphas)}")
    zs = (PAULI_Z,) * config.m
    xs = (PAULI_X,) * config.m
    inter = {node: (zs, xs) for node in intermediate_nodes(config)}
    alpha_map = {node: float(a) for node, a in zip(extremal_nodes(config), alphas)}
    return MeasurementPlan(intermediate=inter, alphas=alpha_map)


def check_plan(config: NetworkConfig, plan: MeasurementPlan) -> None:
    """Raise ConfigurationError unless the plan covers the layout exactly."""
    for node in intermediate_nodes(config):
        if node not in plan.intermediate:
            raise ConfigurationError(f"plan lacks observables for node {node.name}")
        pair = plan.intermediate[node]
        if len(pair) != 2 or any(len(factors) != config.m for factors in pair):
            raise ConfigurationError(
                f"node {node.name} needs {config.m} observable factors per input")
    for node in extremal_nodes(config):
        if node not in plan.alphas:
            raise ConfigurationError(f"plan lacks an angle for node {node.name}")
