"""The nonlinear witness built from input-averaged correlators.

For a layout with p extremal nodes, two ingredients average the full product
correlator over all 2^p extremal input choices: I0 plainly, with all
intermediate inputs 0, and I1 signed by the parity of the extremal inputs,
with all intermediate inputs 1.  The witness S = |I0|^(1/p) + |I1|^(1/p)
stays at or below 1 for every source-factorized classical model, while
entangled sources with tuned settings push it up to sqrt(2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .correlators import SettingAssignment, correlator_factorized
from .errors import InvalidParameterError
from .quantum import MeasurementPlan
from .topology import NetworkConfig

VIOLATION_TOLERANCE = 1e-9

Correlator = Callable[[SettingAssignment], float]


@dataclass(frozen=True)
class EvaluationResult:
    """Witness value with its two ingredients and the inputs that produced them."""

    i0: float
    i1: float
    s: float
    violated: bool
    x0: tuple[int, ...]
    x1: tuple[int, ...]
    bound: float = 1.0


def signed_y_average(correlator: Correlator, config: NetworkConfig, k: int,
                     x_bits: Sequence[int]) -> float:
    """Average correlators over all extremal inputs with sign (-1)^(k sum y).

    Terms are accumulated in lexicographic input order so repeated runs are
    bit-identical.
    """
    if k not in (0, 1):
        raise InvalidParameterError(f"sign exponent k must be 0 or 1, got {k}")
    x_bits = tuple(x_bits)
    total = 0.0
    for y_bits in itertools.product((0, 1), repeat=config.p):
        assignment = SettingAssignment.from_bits(config, x_bits, y_bits)
        sign = -1.0 if k and (sum(y_bits) & 1) else 1.0
        total += sign * correlator(assignment)
    return total / 2.0 ** config.p


def evaluate_I(config: NetworkConfig, thetas: Sequence[float],
               plan: MeasurementPlan, k: int, x_bits: Sequence[int]) -> float:
    """Signed extremal-input average for fixed intermediate inputs x_bits."""
    def corr(assignment: SettingAssignment) -> float:
        return correlator_factorized(config, thetas, plan, assignment)
    return signed_y_average(corr, config, k, x_bits)


def evaluate_S_from_correlator(correlator: Correlator,
                               config: NetworkConfig) -> EvaluationResult:
    """Witness from any correlator source (quantum engine, classical model, ...)."""
    x0 = (0,) * config.l
    x1 = (1,) * config.l
    i0 = signed_y_average(correlator, config, 0, x0)
    i1 = signed_y_average(correlator, config, 1, x1)
    root = 1.0 / config.p
    s = abs(i0) ** root + abs(i1) ** root
    return EvaluationResult(i0=i0, i1=i1, s=s,
                            violated=s > 1.0 + VIOLATION_TOLERANCE, x0=x0, x1=x1)


def evaluate_S(config: NetworkConfig, thetas: Sequence[float],
               plan: MeasurementPlan) -> EvaluationResult:
    """Witness with all-zero intermediate inputs in I0 and all-one in I1."""
    def corr(assignment: SettingAssignment) -> float:
        return correlator_factorized(config, thetas, plan, assignment)
    return evaluate_S_from_correlator(corr, config)


def closed_form_S(thetas: Sequence[float], alphas: Sequence[float],
                  p: int) -> float:
    """Witness of the canonical plan by direct arithmetic.

    |prod cos(alpha_j)|^(1/p) + |prod sin(alpha_j) prod sin(2 theta_r)|^(1/p);
    must agree with evaluate_S on the canonical plan.
    """
    if p < 1 or len(alphas) != p:
        raise InvalidParameterError(
            f"need exactly p = {p} extremal angles, got {len(alphas)}")
    cos_term = math.prod(math.cos(a) for a in alphas)
    sin_term = (math.prod(math.sin(a) for a in alphas)
                * math.prod(math.sin(2.0 * t) for t in thetas))
    root = 1.0 / p
    return abs(cos_term) ** root + abs(sin_term) ** root


def closed_form_smax(thetas: Sequence[float], p: int) -> tuple[float, float]:
    """Best equal-angle witness and the angle attaining it.

    With K = |prod sin(2 theta_r)|^(1/p) the equal-angle witness is
    |cos a| + K |sin a|, stationary at tan(a) = K with value sqrt(1 + K^2).
    Returns (smax, alpha_star).
    """
    if p < 1:
        raise InvalidParameterError(f"extremal node count p must be positive, got {p}")
    product = math.prod(math.sin(2.0 * t) for t in thetas)
    k_value = abs(product) ** (1.0 / p)
    return math.sqrt(1.0 + k_value * k_value), math.atan(k_value)
