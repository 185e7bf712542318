"""Posterior sampling with Hamiltonian trajectories.

Each trajectory draws fresh Gaussian momentum, integrates L leapfrog
steps with a per-trajectory jittered step size eps0*(0.8 + 0.4*k),
k ~ U(0,1), run in a uniformly random direction, and accepts or rejects
the endpoint by the Metropolis rule on total energy. Trajectories whose
energy error exceeds the divergence threshold count as rejections.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import PosteriorEnsemble
from .network import MlpArchitecture, ObjectiveConfig, gradient, init_weights, objective

DIVERGENCE_THRESHOLD = 1e6


@dataclass(frozen=True)
class HmcConfig:
    epsilon0: float = 0.05
    L: int = 20
    n_samples: int = 100
    burn_in: int = 100
    thinning: int = 1
    temperature: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.epsilon0 <= 0 or self.L < 1 or self.n_samples < 1 or self.thinning < 1:
            raise ValueError("invalid sampler configuration")
        if self.burn_in < 0 or self.temperature <= 0:
            raise ValueError("invalid sampler configuration")

    def echo(self) -> dict:
        return {
            "epsilon0": self.epsilon0, "L": self.L, "n_samples": self.n_samples,
            "burn_in": self.burn_in, "thinning": self.thinning,
            "temperature": self.temperature, "seed": self.seed,
        }


def leapfrog(w, p, gradient_fn, epsilon: float, L: int):
    """Half-kick / drift / half-kick, repeated L times.

    Returns (w', p', ok); ok is False when a non-finite gradient or state
    was encountered.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    w = np.array(w, dtype=float)
    p = np.array(p, dtype=float)
    g = np.asarray(gradient_fn(w), dtype=float)
    if not np.all(np.isfinite(g)):
        return w, p, False
    p = p - 0.5 * epsilon * g
    for step in range(L):
        w = w + epsilon * p
        if not np.all(np.isfinite(w)):
            return w, p, False
        g = np.asarray(gradient_fn(w), dtype=float)
        if not np.all(np.isfinite(g)):
            return w, p, False
        p = p - (epsilon if step < L - 1 else 0.5 * epsilon) * g
    return w, p, True


def metropolis_accept(e_old_total: float, e_new_total: float, temperature: float, rng) -> bool:
    """Accept iff the move lowers total energy, else with prob exp(-dE/T)."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if math.isnan(e_new_total):
        return False
    d_e = e_new_total - e_old_total
    if d_e <= 0:
        return True
    if math.isinf(d_e):
        return False
    return bool(rng.uniform() < math.exp(-d_e / temperature))


@dataclass
class ChainResult:
    samples: np.ndarray
    acceptance_rate: float
    n_divergent: int
    final_state: np.ndarray


def hmc_chain(energy_fn, gradient_fn, initial, config: HmcConfig) -> ChainResult:
    """Sample any differentiable energy; the posterior wrapper and the
    statistical tests share this core."""
    rng = np.random.default_rng(config.seed)
    w = np.array(initial, dtype=float)
    E = float(energy_fn(w))
    if not np.isfinite(E):
        raise ValueError("energy is not finite at the initial state")

    dim = len(w)
    n_total = config.burn_in + config.n_samples * config.thinning
    kept = np.empty((config.n_samples, dim))
    n_kept = 0
    accepts = 0
    divergent = 0

    for t in range(n_total):
        p = rng.standard_normal(dim)
        direction = 1.0 if rng.uniform() < 0.5 else -1.0
        eps = direction * config.epsilon0 * (0.8 + 0.4 * rng.uniform())
        w_new, p_new, ok = leapfrog(w, p, gradient_fn, eps, config.L)

        h_old = E + 0.5 * float(p @ p)
        if ok:
            e_new = float(energy_fn(w_new))
            h_new = e_new + 0.5 * float(p_new @ p_new)
        else:
            e_new, h_new = math.inf, math.inf

        if not math.isfinite(h_new) or h_new - h_old > DIVERGENCE_THRESHOLD:
            divergent += 1  # divergence counts as a rejection
        elif metropolis_accept(h_old, h_new, config.temperature, rng):
            w, E = w_new, e_new
            accepts += 1

        if t >= config.burn_in and (t - config.burn_in + 1) % config.thinning == 0:
            kept[n_kept] = w
            n_kept += 1

    return ChainResult(
        samples=kept,
        acceptance_rate=accepts / n_total,
        n_divergent=divergent,
        final_state=w,
    )


def hmc_sample(architecture: MlpArchitecture, X, T, obj_config: ObjectiveConfig,
               config: HmcConfig, initial=None) -> PosteriorEnsemble:
    """Sample network weights from the posterior defined by the penalized
    cross-entropy energy (hyperparameters held fixed)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    T = np.asarray(T, dtype=float)
    if initial is None:
        initial = init_weights(architecture, seed=config.seed)

    def energy(w):
        return objective(architecture, w, X, T, obj_config)

    def grad(w):
        return gradient(architecture, w, X, T, obj_config)

    chain = hmc_chain(energy, grad, initial, config)
    return PosteriorEnsemble(
        architecture=architecture,
        samples=chain.samples,
        acceptance_rate=chain.acceptance_rate,
        config=config.echo(),
    )
