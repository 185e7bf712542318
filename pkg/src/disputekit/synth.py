"""Synthetic dyad-year datasets with a known ground truth.

The generator draws each variable uniformly in peace-oriented unit
coordinates (z=1 is the peace-favoring end of its domain) and assigns
dispute outcomes from a logistic model

    P(dispute) = sigmoid(intercept + sum_i c_i * z_i + sum_(i,j) w_ij * z_i * z_j)

With every c_i and w_ij <= 0 the dispute probability is monotone
decreasing in each peace-favoring direction, which downstream tests rely
on. Coefficients are echoed into Dataset.provenance.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, DyadYearRecord
from .schema import BINARY, ORDINAL, VariableSchema, default_schema


@dataclass(frozen=True)
class SynthConfig:
    count: int
    balance: float = 0.5
    intercept: float = 0.0
    coeffs: dict = field(default_factory=dict)  # name -> weight on peace-coordinate
    interactions: tuple = ()  # (name_a, name_b, weight)

    def __post_init__(self):
        if self.count <= 0:
            raise ValueError("count must be positive")
        if not 0.0 < self.balance < 1.0:
            raise ValueError("balance must be in (0,1)")


def _peace_z_to_raw(spec, z: float) -> float:
    """Map a peace-oriented unit coordinate back to raw units."""
    if spec.high_favors_peace:
        return spec.domain_min + z * (spec.domain_max - spec.domain_min)
    return spec.domain_max - z * (spec.domain_max - spec.domain_min)


def dispute_logit(config: SynthConfig, schema: VariableSchema, z: np.ndarray) -> float:
    logit = config.intercept
    for name, w in config.coeffs.items():
        logit += w * z[schema.index(name)]
    for a, b, w in config.interactions:
        logit += w * z[schema.index(a)] * z[schema.index(b)]
    return float(logit)


def synth_generate(config: SynthConfig, seed: int, schema: VariableSchema | None = None) -> Dataset:
    """Generate a reproducible dataset with exact per-class counts.

    Outcome draws follow the logistic ground truth; records are rejection
    sampled per class until the balance quota is met.
    """
    schema = schema or default_schema()
    rng = np.random.default_rng(seed)
    n_dispute = round(config.count * config.balance)
    n_peace = config.count - n_dispute
    if n_dispute == 0 or n_peace == 0:
        raise ValueError("balance leaves one class empty; adjust count or balance")

    quotas = {1: n_dispute, 0: n_peace}
    records = []
    guard = 0
    while quotas[0] > 0 or quotas[1] > 0:
        guard += 1
        if guard > 400 * config.count:
            raise RuntimeError("rejection sampling stalled; ground truth too one-sided for balance")
        z = np.empty(len(schema))
        raw = np.empty(len(schema))
        for i, spec in enumerate(schema):
            if spec.kind == BINARY:
                bit = int(rng.integers(0, 2))
                raw[i] = float(bit)
                z[i] = float(bit) if spec.high_favors_peace else 1.0 - bit
            elif spec.kind == ORDINAL:
                level = int(rng.integers(int(spec.domain_min), int(spec.domain_max) + 1))
                raw[i] = float(level)
                frac = (level - spec.domain_min) / (spec.domain_max - spec.domain_min)
                z[i] = frac if spec.high_favors_peace else 1.0 - frac
            else:
                z[i] = rng.uniform()
                raw[i] = _peace_z_to_raw(spec, z[i])
        p = 1.0 / (1.0 + np.exp(-dispute_logit(config, schema, z)))
        outcome = int(rng.uniform() < p)
        if quotas[outcome] == 0:
            continue
        quotas[outcome] -= 1
        k = len(records)
        records.append(DyadYearRecord(f"S{2 * k:03d}", f"S{2 * k + 1:03d}", 1900 + k % 100,
                                      tuple(float(v) for v in raw), outcome))

    truth = {
        "intercept": config.intercept,
        "coeffs": dict(config.coeffs),
        "interactions": [list(t) for t in config.interactions],
    }
    provenance = f"synthetic seed={seed} truth={json.dumps(truth, sort_keys=True)}"
    return Dataset(schema, tuple(records), provenance)


def separable_config(count: int = 2000, balance: float = 0.5) -> SynthConfig:
    """Strong, mostly-controllable signal: a trained model separates the
    classes (AUC >= 0.95) and intervention search has room to work."""
    return SynthConfig(
        count=count,
        balance=balance,
        intercept=35.0,
        coeffs={
            "allies": -10.0,
            "contiguity": -3.75,
            "major_power": -3.75,
            "distance": -5.0,
            "capability": -15.0,
            "democracy": -17.5,
            "dependency": -17.5,
        },
        interactions=(("democracy", "dependency", -5.0), ("capability", "allies", -2.5)),
    )


def standard_config(count: int = 2000, balance: float = 0.5) -> SynthConfig:
    """Moderate signal with interaction terms."""
    return SynthConfig(
        count=count,
        balance=balance,
        intercept=5.0,
        coeffs={
            "allies": -1.0,
            "contiguity": -0.5,
            "major_power": -0.5,
            "distance": -0.8,
            "capability": -1.5,
            "democracy": -2.0,
            "dependency": -2.0,
        },
        interactions=(("democracy", "dependency", -1.0),),
    )


def noise_config(count: int = 1000, balance: float = 0.5) -> SynthConfig:
    """No signal at all: P(dispute) = 0.5 everywhere."""
    return SynthConfig(count=count, balance=balance)


def two_signal_config(count: int = 1000, informative=("democracy", "dependency"),
                      strength: float = 6.0, balance: float = 0.5) -> SynthConfig:
    """Only two informative inputs; the other five are pure noise."""
    return SynthConfig(
        count=count,
        balance=balance,
        intercept=strength,
        coeffs={name: -strength for name in informative},
    )


def single_signal_config(count: int = 1000, informative: str = "dependency",
                         strength: float = 6.0, balance: float = 0.5) -> SynthConfig:
    return SynthConfig(
        count=count,
        balance=balance,
        intercept=strength / 2.0,
        coeffs={informative: -strength},
    )


PRESETS = {
    "separable": separable_config,
    "standard": standard_config,
    "noise": noise_config,
}
