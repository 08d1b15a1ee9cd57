"""
Training, prediction and solver comparison for the threshold estimator.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigError, Diverged
from generators import FEATURE_NAMES, Dataset
from model import ModelParams
from solver import REJECT_ALL, SolverSettings
from utils import is_integer, is_number
from .mlp import Mlp

logger = logging.getLogger(__name__)

MIN_ROWS = 10


@dataclass(frozen=True)
class TrainSettings:
    hidden: int = 30
    epochs: int = 20000
    learning_rate: float = 0.05
    momentum: float = 0.9
    seed: int = 7
    validation_fraction: float = 0.15
    test_fraction: float = 0.15
    patience: int = 2000

    def __post_init__(self):
        errors = []
        if not is_integer(self.hidden) or self.hidden < 1:
            errors.append(f"hidden must be an integer >= 1, got {self.hidden!r}")
        if not is_integer(self.epochs) or self.epochs < 1:
            errors.append(f"epochs must be an integer >= 1, got {self.epochs!r}")
        if not is_number(self.learning_rate) or not self.learning_rate > 0:
            errors.append(f"learning_rate must be positive, got {self.learning_rate!r}")
        if not is_number(self.momentum) or not 0 <= self.momentum < 1:
            errors.append(f"momentum must be in [0, 1), got {self.momentum!r}")
        if not (is_number(self.validation_fraction) and is_number(self.test_fraction)
                and 0 <= self.validation_fraction < 1 and 0 <= self.test_fraction < 1
                and self.validation_fraction + self.test_fraction < 1):
            errors.append("validation_fraction and test_fraction must be in [0, 1) "
                          "and leave rows for training")
        if not is_integer(self.seed) or self.seed < 0:
            errors.append(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not is_integer(self.patience) or self.patience < 1:
            errors.append(f"patience must be an integer >= 1, got {self.patience!r}")
        if errors:
            raise ConfigError(errors)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> 'TrainSettings':
        data = dict(data or {})
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError([f"Unknown train field: '{key}'" for key in sorted(unknown)])
        return cls(**data)


@dataclass(frozen=True)
class Split:
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray


@dataclass(frozen=True)
class TrainReport:
    epochs_run: int
    best_epoch: int
    train_loss: float
    validation_loss: Optional[float]
    validation_rmse: Optional[float]
    test_rmse: Optional[float]
    rows: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def canonical_order(features: np.ndarray) -> np.ndarray:
    """Row permutation sorting features lexicographically (first column major)."""
    return np.lexsort(features.T[::-1])


def split_rows(dataset: Dataset, settings: TrainSettings) -> Split:
    """
    Seeded train/validation/test split over canonically ordered rows, so the
    split does not depend on the order the rows were supplied in.
    """
    order = canonical_order(dataset.features)
    rng = np.random.default_rng(settings.seed)
    shuffled = order[rng.permutation(len(order))]
    n = len(shuffled)
    n_test = int(round(n * settings.test_fraction))
    n_val = int(round(n * settings.validation_fraction))
    return Split(train=shuffled[n_test + n_val:],
                 validation=shuffled[n_test:n_test + n_val],
                 test=shuffled[:n_test])


def _rmse(mlp: Mlp, dataset: Dataset, rows: np.ndarray) -> Optional[float]:
    if rows.size == 0:
        return None
    diff = mlp.output(dataset.features[rows]) - dataset.labels[rows]
    return float(np.sqrt(np.mean(diff * diff)))


def train(dataset: Dataset, hyper: Optional[TrainSettings] = None) -> Tuple[Mlp, TrainReport]:
    """
    Fit the threshold network by full-batch momentum gradient descent

    Args:
        dataset: training rows, at least MIN_ROWS of them
        hyper: training settings

    Returns:
        tuple: (network holding the best-validation weights, TrainReport)

    Raises:
        ConfigError: If the dataset is too small
        Diverged: If the loss or weights stop being finite
    """
    hyper = hyper or TrainSettings()
    if len(dataset) < MIN_ROWS:
        raise ConfigError([f"Training needs at least {MIN_ROWS} rows, got {len(dataset)}"])

    split = split_rows(dataset, hyper)
    rng = np.random.default_rng(hyper.seed)
    x_min, x_max = dataset.features.min(axis=0), dataset.features.max(axis=0)
    y_min = dataset.labels.min(axis=0).astype(float)
    y_max = dataset.labels.max(axis=0).astype(float)
    mlp = Mlp.initialise(len(FEATURE_NAMES), hyper.hidden, dataset.label_count, rng,
                         x_min, x_max, y_min, y_max)

    Z = mlp.scale_features(dataset.features)
    T = mlp.scale_labels(dataset.labels)
    Z_train, T_train = Z[split.train], T[split.train]
    Z_val, T_val = Z[split.validation], T[split.validation]
    monitor_validation = split.validation.size > 0

    weights = [w.copy() for w in mlp.weights]
    velocity = [np.zeros_like(w) for w in weights]
    best_weights = [w.copy() for w in weights]
    best_loss = np.inf
    best_epoch = 0
    train_loss = np.inf
    epoch = 0

    with np.errstate(over='ignore', invalid='ignore'):
        for epoch in range(1, hyper.epochs + 1):
            current = mlp.with_weights(weights)
            train_loss, grads = current.loss_and_gradients(Z_train, T_train)
            if not np.isfinite(train_loss):
                raise Diverged([f"training loss became non-finite at epoch {epoch} "
                                f"(learning_rate {hyper.learning_rate:g})"])
            watched = current.loss(Z_val, T_val) if monitor_validation else train_loss
            if watched < best_loss:
                best_loss, best_epoch = watched, epoch
                best_weights = [w.copy() for w in weights]
            elif epoch - best_epoch >= hyper.patience:
                logger.info("Early stop at epoch %d (best epoch %d, loss %.3e)",
                            epoch, best_epoch, best_loss)
                break
            for w, v, g in zip(weights, velocity, grads):
                v *= hyper.momentum
                v -= hyper.learning_rate * g
                w += v
            if not all(np.all(np.isfinite(w)) for w in weights):
                raise Diverged([f"weights became non-finite at epoch {epoch} "
                                f"(learning_rate {hyper.learning_rate:g})"])

    best = mlp.with_weights(best_weights)
    report = TrainReport(
        epochs_run=epoch,
        best_epoch=best_epoch,
        train_loss=best.loss(Z_train, T_train),
        validation_loss=best.loss(Z_val, T_val) if monitor_validation else None,
        validation_rmse=_rmse(best, dataset, split.validation),
        test_rmse=_rmse(best, dataset, split.test),
        rows={'train': int(split.train.size), 'validation': int(split.validation.size),
              'test': int(split.test.size)},
    )
    logger.info("Training finished: %s", report.to_dict())
    return best, report


def predict(mlp: Mlp, features: Sequence[float]) -> List[int]:
    """Rounded thresholds D(0..N1) for one feature vector; never below REJECT_ALL."""
    raw = mlp.output(features)[0]
    return [max(int(v), REJECT_ALL) for v in np.rint(raw)]


@dataclass(frozen=True)
class ComparisonRow:
    features: Tuple[float, ...]
    real: Tuple[int, ...]
    predicted: Tuple[int, ...]

    @property
    def abs_errors(self) -> List[int]:
        return [abs(r - p) for r, p in zip(self.real, self.predicted)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'features': dict(zip(FEATURE_NAMES, self.features)),
            'real': list(self.real),
            'predicted': list(self.predicted),
            'abs_errors': self.abs_errors,
        }


@dataclass(frozen=True)
class ComparisonTable:
    rows: Tuple[ComparisonRow, ...] = ()

    @property
    def mae(self) -> float:
        errors = [e for row in self.rows for e in row.abs_errors]
        return float(np.mean(errors)) if errors else 0.0

    @property
    def max_error(self) -> int:
        return max((e for row in self.rows for e in row.abs_errors), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {'rows': [row.to_dict() for row in self.rows],
                'mae': self.mae, 'max_error': self.max_error}


def params_for_features(base: ModelParams, features: Sequence[float]) -> ModelParams:
    R, lambda1, lambda2, mu1, mu2 = features
    return base.with_changes(reward_R=R, lambda1=lambda1, lambda2=lambda2, mu1=mu1, mu2=mu2)


def evaluate_estimator(mlp: Mlp, test_points: Sequence[Sequence[float]], base: ModelParams,
                       settings: Optional[SolverSettings] = None) -> ComparisonTable:
    """
    Solve each test point and set its thresholds beside the network's

    Raises:
        ToolkitError: Whatever the solver raises for a test point
    """
    settings = settings or SolverSettings()
    rows = []
    for point in test_points:
        point = tuple(float(v) for v in point)
        real = settings.run(params_for_features(base, point)).policy.thresholds
        rows.append(ComparisonRow(point, tuple(real), tuple(predict(mlp, point))))
    return ComparisonTable(tuple(rows))


__all__ = [
    'MIN_ROWS',
    'TrainSettings',
    'TrainReport',
    'Split',
    'canonical_order',
    'split_rows',
    'train',
    'predict',
    'ComparisonRow',
    'ComparisonTable',
    'params_for_features',
    'evaluate_estimator',
]
