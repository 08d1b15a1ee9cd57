"""
Single-hidden-layer feed-forward network: 5 -> H (tanh) -> N1+1 (linear).

Inputs and targets are min-max scaled to [-1, 1] with constants captured at
training time; a feature or label with zero range scales to 0.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np

from errors import ConfigError

ACTIVATION = 'tanh'


def scale(values: np.ndarray, low: np.ndarray, high: np.ndarray) -> np.ndarray:
    span = high - low
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, 2.0 * (values - low) / safe - 1.0, 0.0)


def unscale(values: np.ndarray, low: np.ndarray, high: np.ndarray) -> np.ndarray:
    return low + (values + 1.0) * 0.5 * (high - low)


@dataclass(eq=False)
class Mlp:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray
    x_min: np.ndarray
    x_max: np.ndarray
    y_min: np.ndarray
    y_max: np.ndarray
    activation: str = field(default=ACTIVATION)

    def __post_init__(self):
        for name in ('W1', 'b1', 'W2', 'b2', 'x_min', 'x_max', 'y_min', 'y_max'):
            setattr(self, name, np.array(getattr(self, name), dtype=float))
        errors = []
        if self.activation != ACTIVATION:
            errors.append(f"Unsupported activation '{self.activation}'")
        if self.W1.ndim != 2 or self.W1.shape[0] < 1:
            errors.append(f"W1 must be (hidden, inputs) with hidden >= 1, got {self.W1.shape}")
        elif self.W2.shape != (self.b2.shape[0], self.W1.shape[0]) or self.b1.shape != (self.W1.shape[0],):
            errors.append("Layer shapes do not chain: "
                          f"W1 {self.W1.shape}, b1 {self.b1.shape}, W2 {self.W2.shape}, b2 {self.b2.shape}")
        if errors:
            raise ConfigError(errors)

    @classmethod
    def initialise(cls, inputs: int, hidden: int, outputs: int, rng: np.random.Generator,
                   x_min, x_max, y_min, y_max) -> 'Mlp':
        """Glorot-style normal weights; zero biases."""
        if hidden < 1:
            raise ConfigError([f"hidden must be >= 1, got {hidden}"])
        W1 = rng.normal(scale=1.0 / np.sqrt(inputs), size=(hidden, inputs))
        W2 = rng.normal(scale=1.0 / np.sqrt(hidden), size=(outputs, hidden))
        return cls(W1, np.zeros(hidden), W2, np.zeros(outputs), x_min, x_max, y_min, y_max)

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return self.W1.shape[1], self.W1.shape[0], self.W2.shape[0]

    @property
    def weights(self) -> Tuple[np.ndarray, ...]:
        return self.W1, self.b1, self.W2, self.b2

    def with_weights(self, weights) -> 'Mlp':
        W1, b1, W2, b2 = (np.array(w) for w in weights)
        return Mlp(W1, b1, W2, b2, self.x_min, self.x_max, self.y_min, self.y_max, self.activation)

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(w)) for w in self.weights)

    def scale_features(self, features) -> np.ndarray:
        return scale(np.atleast_2d(np.asarray(features, dtype=float)), self.x_min, self.x_max)

    def scale_labels(self, labels) -> np.ndarray:
        return scale(np.atleast_2d(np.asarray(labels, dtype=float)), self.y_min, self.y_max)

    def forward(self, Z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Scaled inputs (n, in) -> (hidden activations, scaled outputs)."""
        hidden = np.tanh(Z @ self.W1.T + self.b1)
        return hidden, hidden @ self.W2.T + self.b2

    def output(self, features) -> np.ndarray:
        """Real-valued predictions in label units, shape (n, N1+1)."""
        _, out = self.forward(self.scale_features(features))
        return unscale(out, self.y_min, self.y_max)

    def loss_and_gradients(self, Z: np.ndarray, T: np.ndarray):
        """
        Mean squared error over all scaled outputs and its gradients.

        Returns:
            tuple: (loss, (dW1, db1, dW2, db2))
        """
        hidden, out = self.forward(Z)
        diff = out - T
        loss = float(np.mean(diff * diff))
        d_out = 2.0 * diff / diff.size
        dW2 = d_out.T @ hidden
        db2 = d_out.sum(axis=0)
        d_pre = (d_out @ self.W2) * (1.0 - hidden * hidden)
        dW1 = d_pre.T @ Z
        db1 = d_pre.sum(axis=0)
        return loss, (dW1, db1, dW2, db2)

    def loss(self, Z: np.ndarray, T: np.ndarray) -> float:
        _, out = self.forward(Z)
        return float(np.mean((out - T) ** 2))

    def to_dict(self) -> Dict[str, Any]:
        inputs, hidden, outputs = self.sizes
        return {
            'activation': self.activation,
            'sizes': [inputs, hidden, outputs],
            'W1': self.W1.tolist(),
            'b1': self.b1.tolist(),
            'W2': self.W2.tolist(),
            'b2': self.b2.tolist(),
            'normalization': {
                'feature_min': self.x_min.tolist(),
                'feature_max': self.x_max.tolist(),
                'label_min': self.y_min.tolist(),
                'label_max': self.y_max.tolist(),
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Mlp':
        try:
            norm = data['normalization']
            mlp = cls(data['W1'], data['b1'], data['W2'], data['b2'],
                      norm['feature_min'], norm['feature_max'],
                      norm['label_min'], norm['label_max'],
                      data.get('activation', ACTIVATION))
        except (KeyError, TypeError) as e:
            raise ConfigError([f"Network document is missing {e}"])
        if list(mlp.sizes) != list(data.get('sizes', mlp.sizes)):
            raise ConfigError([f"Declared sizes {data['sizes']} do not match weights {list(mlp.sizes)}"])
        return mlp


def finite_difference_gradients(mlp: Mlp, Z: np.ndarray, T: np.ndarray, h: float = 1e-5):
    """Central differences of Mlp.loss for every weight, in loss_and_gradients order."""
    grads = []
    weights = [w.copy() for w in mlp.weights]
    for w in weights:
        g = np.zeros_like(w)
        for index in np.ndindex(w.shape):
            original = w[index]
            w[index] = original + h
            plus = mlp.with_weights(weights).loss(Z, T)
            w[index] = original - h
            minus = mlp.with_weights(weights).loss(Z, T)
            w[index] = original
            g[index] = (plus - minus) / (2.0 * h)
        grads.append(g)
    return tuple(grads)


__all__ = ['ACTIVATION', 'Mlp', 'scale', 'unscale', 'finite_difference_gradients']
