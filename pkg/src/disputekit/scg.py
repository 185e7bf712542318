"""Scaled conjugate gradient minimization (Moller's algorithm).

Second-order information comes from a finite-difference product along the
search direction; the Levenberg-style lambda scaling keeps steps trusted
without any line search.
"""

from dataclasses import dataclass, field

import numpy as np

SIGMA0 = 1e-4
LAMBDA0 = 1e-6
LAMBDA_MAX = 1e20


@dataclass(frozen=True)
class ScgLimits:
    max_iters: int = 300
    grad_tol: float = 1e-6


@dataclass
class ScgResult:
    weights: np.ndarray
    trace: list = field(default_factory=list)  # E at start + after each accepted step
    iterations: int = 0
    accepted: int = 0
    converged: bool = False
    reason: str = ""


def scg_minimize(objective_fn, gradient_fn, initial, limits: ScgLimits = ScgLimits()) -> ScgResult:
    if limits.max_iters <= 0 or limits.grad_tol <= 0:
        raise ValueError("limits must be positive")
    w = np.array(initial, dtype=float)
    E = float(objective_fn(w))
    if not np.isfinite(E):
        raise ValueError("objective is not finite at the starting point")

    r = -np.asarray(gradient_fn(w), dtype=float)
    p = r.copy()
    p2 = float(p @ p)
    lam, lam_bar = LAMBDA0, 0.0
    success = True
    delta = 0.0
    result = ScgResult(weights=w, trace=[E])
    n = len(w)

    for k in range(limits.max_iters):
        if np.sqrt(r @ r) < limits.grad_tol:
            result.converged = True
            result.reason = "gradient tolerance reached"
            break
        result.iterations = k + 1

        if success:
            p2 = float(p @ p)
            if p2 == 0.0:
                result.converged = True
                result.reason = "search direction collapsed"
                break
            sigma = SIGMA0 / np.sqrt(p2)
            s = (np.asarray(gradient_fn(w + sigma * p), dtype=float) - (-r)) / sigma
            delta = float(p @ s)

        delta += (lam - lam_bar) * p2
        if delta <= 0:  # make the Hessian estimate positive definite
            lam_bar = 2.0 * (lam - delta / p2)
            delta = -delta + lam * p2
            lam = lam_bar

        mu = float(p @ r)
        if mu <= 0:  # not a descent direction: restart along the gradient
            p = r.copy()
            p2 = float(p @ p)
            mu = p2
            if mu == 0.0:
                result.converged = True
                result.reason = "gradient vanished"
                break
        alpha = mu / delta
        E_new = float(objective_fn(w + alpha * p))
        Delta = 2.0 * delta * (E - E_new) / mu**2 if np.isfinite(E_new) else -np.inf

        if Delta >= 0:
            w = w + alpha * p
            E = E_new
            r_old = r
            r = -np.asarray(gradient_fn(w), dtype=float)
            lam_bar = 0.0
            success = True
            result.accepted += 1
            result.trace.append(E)
            if (k + 1) % n == 0:
                p = r.copy()
            else:
                beta = float((r @ r - r @ r_old) / mu)
                p = r + beta * p
            if Delta >= 0.75:
                lam *= 0.25
        else:
            lam_bar = lam
            success = False

        if Delta < 0.25:
            if np.isfinite(Delta):
                lam += delta * (1.0 - Delta) / p2
            else:
                lam *= 4.0
        if lam > LAMBDA_MAX:
            result.reason = "step size collapsed"
            break
    else:
        result.reason = "max iterations"

    result.weights = w
    return result
