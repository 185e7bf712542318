"""Two-layer perceptron core: forward pass, penalized cross-entropy
objective, and exact gradients via backpropagation.

Weight vectors are flat with a frozen layout that hyperparameter groups,
samplers, and artifacts all agree on:

    [ W1 (M x d, row-major) | b1 (M) | W2 (K x M, row-major) | b2 (K) ]

so W = M*d + M + K*M + K.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

EPS = 1e-12  # prediction clamp applied before logarithms


class Activation(str, Enum):
    LINEAR = "linear"
    LOGISTIC = "logistic"
    TANH = "tanh"
    SOFTMAX = "softmax"


@dataclass(frozen=True)
class MlpArchitecture:
    d: int
    M: int
    K: int = 1
    hidden_activation: Activation = Activation.TANH
    output_activation: Activation = Activation.LOGISTIC

    def __post_init__(self):
        if self.d < 1 or self.M < 1 or self.K < 1:
            raise ValueError("d, M, K must all be >= 1")
        if self.hidden_activation == Activation.SOFTMAX:
            raise ValueError("softmax is permitted only at the output layer")

    @property
    def n_weights(self) -> int:
        return self.M * self.d + self.M + self.K * self.M + self.K


def unpack(arch: MlpArchitecture, w: np.ndarray):
    """Split a flat weight vector into (W1, b1, W2, b2) views."""
    w = np.asarray(w, dtype=float)
    if w.shape != (arch.n_weights,):
        raise ValueError(f"weight vector length {w.shape} != {(arch.n_weights,)}")
    d, M, K = arch.d, arch.M, arch.K
    a = M * d
    W1 = w[:a].reshape(M, d)
    b1 = w[a:a + M]
    W2 = w[a + M:a + M + K * M].reshape(K, M)
    b2 = w[a + M + K * M:]
    return W1, b1, W2, b2


def pack(W1, b1, W2, b2) -> np.ndarray:
    return np.concatenate([np.ravel(W1), np.ravel(b1), np.ravel(W2), np.ravel(b2)])


def _logistic(x):
    out = np.empty_like(x, dtype=float)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _apply(act: Activation, x: np.ndarray) -> np.ndarray:
    if act == Activation.LINEAR:
        return x
    if act == Activation.LOGISTIC:
        return _logistic(x)
    if act == Activation.TANH:
        return np.tanh(x)
    if act == Activation.SOFTMAX:
        shifted = x - x.max(axis=1, keepdims=True)
        e = np.exp(shifted)
        return e / e.sum(axis=1, keepdims=True)
    raise ValueError(f"unknown activation {act}")


def forward(arch: MlpArchitecture, w: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Batch forward pass: X (N, d) -> outputs (N, K)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != arch.d:
        raise ValueError(f"input width {X.shape[1]} != architecture d={arch.d}")
    if not np.all(np.isfinite(X)):
        raise ValueError("inputs must be finite")
    W1, b1, W2, b2 = unpack(arch, w)
    H = _apply(arch.hidden_activation, X @ W1.T + b1)
    return _apply(arch.output_activation, H @ W2.T + b2)


@dataclass(frozen=True)
class ObjectiveConfig:
    """Data-term weight plus per-group quadratic weight penalties.

    groups[i] gives the penalty-group id of flat weight i; alphas[g] the
    coefficient of group g. A single all-weights group is the default.
    """

    beta: float = 1.0
    groups: np.ndarray | None = None
    alphas: np.ndarray | None = None

    def resolved(self, n_weights: int) -> tuple[float, np.ndarray, np.ndarray]:
        if self.groups is None:
            groups = np.zeros(n_weights, dtype=int)
            alphas = np.zeros(1) if self.alphas is None else np.asarray(self.alphas, dtype=float)
        else:
            groups = np.asarray(self.groups, dtype=int)
            if groups.shape != (n_weights,):
                raise ValueError("groups must assign every weight to exactly one group")
            alphas = np.asarray(self.alphas, dtype=float)
        if groups.min() < 0 or groups.max() >= len(alphas):
            raise ValueError("group ids must index into alphas")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if np.any(alphas < 0):
            raise ValueError("alphas must be >= 0")
        return self.beta, groups, alphas

    def weight_decay(self, n_weights: int) -> np.ndarray:
        """Per-weight alpha vector."""
        _, groups, alphas = self.resolved(n_weights)
        return alphas[groups]


def cross_entropy(Y: np.ndarray, T: np.ndarray, beta: float = 1.0) -> float:
    """-beta * sum[t ln y + (1-t) ln(1-y)] with outputs clamped to
    [EPS, 1-EPS] so the value is finite for any finite weights."""
    Yc = np.clip(Y, EPS, 1.0 - EPS)
    return float(-beta * np.sum(T * np.log(Yc) + (1.0 - T) * np.log(1.0 - Yc)))


def objective(arch: MlpArchitecture, w: np.ndarray, X: np.ndarray, T: np.ndarray,
              config: ObjectiveConfig = ObjectiveConfig()) -> float:
    X = np.atleast_2d(X)
    if X.shape[0] == 0:
        raise ValueError("objective requires a non-empty dataset")
    T = np.asarray(T, dtype=float).reshape(X.shape[0], arch.K)
    beta, _, _ = config.resolved(arch.n_weights)
    Y = forward(arch, w, X)
    decay = config.weight_decay(arch.n_weights)
    return cross_entropy(Y, T, beta) + 0.5 * float(np.sum(decay * np.asarray(w) ** 2))


def gradient(arch: MlpArchitecture, w: np.ndarray, X: np.ndarray, T: np.ndarray,
             config: ObjectiveConfig = ObjectiveConfig()) -> np.ndarray:
    """Exact gradient of `objective` by backpropagation."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[0] == 0:
        raise ValueError("gradient requires a non-empty dataset")
    T = np.asarray(T, dtype=float).reshape(X.shape[0], arch.K)
    beta, _, _ = config.resolved(arch.n_weights)
    w = np.asarray(w, dtype=float)
    W1, b1, W2, b2 = unpack(arch, w)

    Z = X @ W1.T + b1
    H = _apply(arch.hidden_activation, Z)
    A = H @ W2.T + b2
    Y = _apply(arch.output_activation, A)

    if arch.output_activation == Activation.LOGISTIC:
        # cross-entropy + logistic: delta simplifies to beta*(y - t)
        dA = beta * (Y - T)
    else:
        Yc = np.clip(Y, EPS, 1.0 - EPS)
        inside = (Y > EPS) & (Y < 1.0 - EPS)
        dY = np.where(inside, beta * (Yc - T) / (Yc * (1.0 - Yc)), 0.0)
        if arch.output_activation == Activation.LINEAR:
            dA = dY
        elif arch.output_activation == Activation.TANH:
            dA = dY * (1.0 - Y ** 2)
        else:  # softmax Jacobian per pattern
            dA = Y * (dY - np.sum(dY * Y, axis=1, keepdims=True))

    gW2 = dA.T @ H
    gb2 = dA.sum(axis=0)
    dH = dA @ W2
    if arch.hidden_activation == Activation.LOGISTIC:
        dZ = dH * H * (1.0 - H)
    elif arch.hidden_activation == Activation.TANH:
        dZ = dH * (1.0 - H ** 2)
    else:
        dZ = dH
    gW1 = dZ.T @ X
    gb1 = dZ.sum(axis=0)

    grad = pack(gW1, gb1, gW2, gb2)
    return grad + config.weight_decay(arch.n_weights) * w


def init_weights(arch: MlpArchitecture, seed: int, scale: float = 1.0) -> np.ndarray:
    """Gaussian init, per-layer deviation scale/sqrt(fan-in)."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(seed)
    d, M, K = arch.d, arch.M, arch.K
    first = rng.standard_normal(M * d + M) * (scale / np.sqrt(d))
    second = rng.standard_normal(K * M + K) * (scale / np.sqrt(M))
    return np.concatenate([first, second])


def hidden_unit_permutation(arch: MlpArchitecture, w: np.ndarray, perm) -> np.ndarray:
    """Relabel hidden units (with their fan-in/fan-out weights) — the
    objective is invariant under this."""
    W1, b1, W2, b2 = unpack(arch, np.array(w, dtype=float))
    perm = list(perm)
    return pack(W1[perm], b1[perm], W2[:, perm], b2)
