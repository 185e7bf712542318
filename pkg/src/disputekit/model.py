"""Trained-model containers and moderated prediction.

A single MAP network reports confidence as its margin from the decision
boundary; an ensemble of posterior weight samples reports the spread of
its member outputs.
"""

from dataclasses import dataclass

import numpy as np

from .data import ScalingParams
from .network import MlpArchitecture, forward
from .schema import VariableSchema


@dataclass(frozen=True)
class MlpModel:
    architecture: MlpArchitecture
    weights: np.ndarray
    scaling: ScalingParams
    schema: VariableSchema

    def __post_init__(self):
        if np.asarray(self.weights).shape != (self.architecture.n_weights,):
            raise ValueError("weight vector does not match architecture")
        if len(self.scaling.low) != len(self.schema):
            raise ValueError("scaling must cover every schema variable")


@dataclass(frozen=True)
class PosteriorEnsemble:
    architecture: MlpArchitecture
    samples: np.ndarray  # (S, W)
    acceptance_rate: float
    config: dict
    scaling: ScalingParams | None = None
    schema: VariableSchema | None = None

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2 or s.shape[1] != self.architecture.n_weights:
            raise ValueError("samples must be (n_samples, n_weights)")
        if s.shape[0] < 1:
            raise ValueError("ensemble must contain at least one sample")
        if not 0.0 <= self.acceptance_rate <= 1.0:
            raise ValueError("acceptance_rate must lie in [0,1]")


def _ensemble_outputs(ensemble: PosteriorEnsemble, X: np.ndarray) -> np.ndarray:
    """Per-sample outputs, shape (S, N)."""
    X = np.atleast_2d(X)
    return np.stack([forward(ensemble.architecture, w, X)[:, 0] for w in ensemble.samples])


def predictive(model_or_ensemble, x_scaled: np.ndarray) -> tuple[float, float]:
    """(probability, confidence) for one scaled input vector.

    Ensembles: probability is the sample mean, confidence 1 - 2*std
    (floored at 0). Single models: confidence is the margin 2|p - 0.5|.
    """
    x = np.atleast_2d(np.asarray(x_scaled, dtype=float))
    if isinstance(model_or_ensemble, PosteriorEnsemble):
        outs = _ensemble_outputs(model_or_ensemble, x)[:, 0]
        prob = float(outs.mean())
        conf = max(0.0, 1.0 - 2.0 * float(outs.std()))
        return prob, conf
    model = model_or_ensemble
    prob = float(forward(model.architecture, model.weights, x)[0, 0])
    return prob, 2.0 * abs(prob - 0.5)


class Predictor:
    """Scaling-aware prediction facade over a model or ensemble."""

    def __init__(self, target):
        if isinstance(target, (MlpModel, PosteriorEnsemble)):
            if target.scaling is None or target.schema is None:
                raise ValueError("predictor needs scaling and schema attached")
        else:
            raise TypeError(f"cannot predict with {type(target)!r}")
        self.target = target
        self.schema = target.schema
        self.scaling = target.scaling

    @property
    def is_ensemble(self) -> bool:
        return isinstance(self.target, PosteriorEnsemble)

    def prob_scaled(self, X: np.ndarray) -> np.ndarray:
        """Dispute probabilities for scaled inputs (N, d) -> (N,)."""
        X = np.atleast_2d(X)
        if self.is_ensemble:
            return _ensemble_outputs(self.target, X).mean(axis=0)
        return forward(self.target.architecture, self.target.weights, X)[:, 0]

    def prob_conf_scaled(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        X = np.atleast_2d(X)
        if self.is_ensemble:
            outs = _ensemble_outputs(self.target, X)
            prob = outs.mean(axis=0)
            conf = np.maximum(0.0, 1.0 - 2.0 * outs.std(axis=0))
            return prob, conf
        prob = forward(self.target.architecture, self.target.weights, X)[:, 0]
        return prob, 2.0 * np.abs(prob - 0.5)

    def predict_raw(self, values) -> tuple[float, float]:
        """(probability, confidence) for one record in raw units."""
        x = self.scaling.scale(np.asarray(values, dtype=float))
        return predictive(self.target, x)
