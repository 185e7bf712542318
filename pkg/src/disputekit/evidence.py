"""Gaussian-approximation Bayesian training with hyperparameter
re-estimation, and relevance ranking via per-input weight-decay groups.

The outer loop alternates (a) SCG minimization of the penalized
cross-entropy at the current decay coefficients with (b) the update
alpha_g <- gamma_g / sum(w_g^2), where gamma_g counts the effective
parameters of group g from the (Gauss-Newton) data-term curvature:
gamma_g = sum_i lam_i / (lam_i + alpha_g) over the eigenvalues lam of the
group's Hessian block. Inputs whose fan-out group keeps a large alpha are
irrelevant; relevance is reported as 1/alpha.
"""

from dataclasses import dataclass

import numpy as np

from .network import (
    Activation,
    MlpArchitecture,
    ObjectiveConfig,
    gradient,
    init_weights,
    objective,
    unpack,
)
from .scg import ScgLimits, scg_minimize

ALPHA_FLOOR = 1e-8
ALPHA_CAP = 1e6
CONVERGENCE_RTOL = 1e-3


def single_group(arch: MlpArchitecture) -> tuple[np.ndarray, list[str]]:
    return np.zeros(arch.n_weights, dtype=int), ["all_weights"]


def ard_groups(arch: MlpArchitecture) -> tuple[np.ndarray, list[str]]:
    """One decay group per input's fan-out weights, plus shared groups for
    hidden biases, second-layer weights, and output biases."""
    d, M, K = arch.d, arch.M, arch.K
    groups = np.empty(arch.n_weights, dtype=int)
    for j in range(M):
        for i in range(d):
            groups[j * d + i] = i
    groups[M * d:M * d + M] = d            # hidden biases
    groups[M * d + M:M * d + M + K * M] = d + 1  # second-layer weights
    groups[M * d + M + K * M:] = d + 2     # output biases
    labels = [f"input_{i}" for i in range(d)] + ["hidden_bias", "hidden_output", "output_bias"]
    return groups, labels


def alpha_update(gamma: float, sum_w2: float) -> float:
    """One decay-coefficient re-estimation step: gamma / sum(w^2), kept
    inside [ALPHA_FLOOR, ALPHA_CAP] so downstream inverses stay finite."""
    return float(np.clip(gamma / max(sum_w2, 1e-12), ALPHA_FLOOR, ALPHA_CAP))


def gauss_newton_hessian(arch: MlpArchitecture, w: np.ndarray, X: np.ndarray,
                         T: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """Outer-product curvature of the cross-entropy data term (K=1,
    logistic output): H = J' diag(beta*y*(1-y)) J with J the Jacobian of
    the output pre-activation."""
    if arch.K != 1 or arch.output_activation != Activation.LOGISTIC:
        raise ValueError("curvature estimate requires a single logistic output")
    X = np.atleast_2d(np.asarray(X, dtype=float))
    W1, b1, W2, b2 = unpack(arch, w)
    Z = X @ W1.T + b1
    if arch.hidden_activation == Activation.LOGISTIC:
        H = 1.0 / (1.0 + np.exp(-np.clip(Z, -500, 500)))
        Fp = H * (1.0 - H)
    elif arch.hidden_activation == Activation.TANH:
        H = np.tanh(Z)
        Fp = 1.0 - H**2
    else:
        H = Z
        Fp = np.ones_like(Z)
    A = H @ W2.T + b2
    Y = 1.0 / (1.0 + np.exp(-np.clip(A[:, 0], -500, 500)))

    N = X.shape[0]
    S = Fp * W2[0]  # (N, M)
    J = np.concatenate([
        (S[:, :, None] * X[:, None, :]).reshape(N, arch.M * arch.d),
        S,
        H,
        np.ones((N, 1)),
    ], axis=1)
    r = beta * Y * (1.0 - Y)
    return J.T @ (J * r[:, None])


@dataclass
class EvidenceResult:
    architecture: MlpArchitecture
    weights: np.ndarray
    alphas: np.ndarray          # final, one per group
    gammas: np.ndarray          # effective parameter counts per group
    groups: np.ndarray
    group_labels: list
    beta: float
    trace: list                 # per outer iteration: dict of diagnostics
    converged: bool

    def objective_config(self) -> ObjectiveConfig:
        return ObjectiveConfig(beta=self.beta, groups=self.groups, alphas=self.alphas)


def evidence_train(arch: MlpArchitecture, X, T, outer_iters: int = 6, seed: int = 0,
                   groups=None, labels=None, alpha0: float = 0.01, beta: float = 1.0,
                   scg_limits: ScgLimits = ScgLimits(max_iters=200),
                   init_scale: float = 1.0) -> EvidenceResult:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    T = np.asarray(T, dtype=float)
    if X.shape[0] == 0:
        raise ValueError("training set is empty")
    if arch.output_activation != Activation.LOGISTIC:
        raise ValueError("evidence training requires a logistic output")
    if groups is None:
        groups, labels = single_group(arch)
    groups = np.asarray(groups, dtype=int)
    n_groups = int(groups.max()) + 1
    labels = labels or [f"group_{g}" for g in range(n_groups)]

    alphas = np.full(n_groups, float(alpha0))
    gammas = np.zeros(n_groups)
    w = init_weights(arch, seed, scale=init_scale)
    trace = []
    converged = False

    for it in range(outer_iters):
        cfg = ObjectiveConfig(beta=beta, groups=groups, alphas=alphas)
        fit = scg_minimize(
            lambda v: objective(arch, v, X, T, cfg),
            lambda v: gradient(arch, v, X, T, cfg),
            w, scg_limits,
        )
        w = fit.weights

        H = gauss_newton_hessian(arch, w, X, T, beta)
        if not np.all(np.isfinite(H)):
            raise RuntimeError(f"curvature evaluation failed at outer iteration {it}")

        new_alphas = np.empty(n_groups)
        for g in range(n_groups):
            idx = np.flatnonzero(groups == g)
            lam = np.clip(np.linalg.eigvalsh(H[np.ix_(idx, idx)]), 0.0, None)
            gammas[g] = float(np.sum(lam / (lam + alphas[g])))
            new_alphas[g] = alpha_update(gammas[g], float(np.sum(w[idx] ** 2)))

        rel_change = np.abs(new_alphas - alphas) / np.maximum(alphas, 1e-300)
        trace.append({
            "iteration": it,
            "objective": fit.trace[-1],
            "alphas": alphas.copy(),
            "gammas": gammas.copy(),
            "weight_norm": float(np.linalg.norm(w)),
        })
        alphas = new_alphas
        if np.all(rel_change < CONVERGENCE_RTOL):
            converged = True
            break

    return EvidenceResult(arch, w, alphas, gammas.copy(), groups, list(labels),
                          beta, trace, converged)


@dataclass
class ArdResult:
    input_alphas: np.ndarray       # one per input, in schema order
    shared_alphas: dict            # hidden_bias / hidden_output / output_bias
    relevance: np.ndarray          # 1 / input_alphas
    ranking: list                  # input names, most relevant first
    input_names: list
    evidence: EvidenceResult

    def as_dict(self) -> dict:
        return {
            "input_names": list(self.input_names),
            "alphas": [float(a) for a in self.input_alphas],
            "relevance": [float(r) for r in self.relevance],
            "ranking": list(self.ranking),
            "shared_alphas": {k: float(v) for k, v in self.shared_alphas.items()},
        }


def ard_train(arch: MlpArchitecture, X, T, outer_iters: int = 6, seed: int = 0,
              input_names=None, beta: float = 1.0, alpha0: float = 0.01,
              scg_limits: ScgLimits = ScgLimits(max_iters=200),
              init_scale: float = 1.0) -> ArdResult:
    groups, labels = ard_groups(arch)
    res = evidence_train(arch, X, T, outer_iters=outer_iters, seed=seed,
                         groups=groups, labels=labels, alpha0=alpha0, beta=beta,
                         scg_limits=scg_limits, init_scale=init_scale)
    d = arch.d
    names = list(input_names) if input_names is not None else [f"input_{i}" for i in range(d)]
    if len(names) != d:
        raise ValueError("input_names must match the architecture's input count")
    input_alphas = res.alphas[:d]
    relevance = 1.0 / input_alphas
    order = np.argsort(-relevance, kind="stable")
    shared = {label: float(res.alphas[d + k]) for k, label in enumerate(res.group_labels[d:])}
    return ArdResult(
        input_alphas=input_alphas.copy(),
        shared_alphas=shared,
        relevance=relevance,
        ranking=[names[i] for i in order],
        input_names=names,
        evidence=res,
    )
