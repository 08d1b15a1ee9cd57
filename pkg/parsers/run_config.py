"""
Run-config parsing.

A run config is one document with the sections ``model``, ``solver``,
``sim``, ``sweep``, ``train`` and ``output``. Every section is optional; a
missing ``model`` means the reference setting.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

from errors import ConfigError
from generators import SweepSpec
from estimator import TrainSettings
from model import REFERENCE_SETTING, ModelParams
from simulator import SimConfig
from solver import SolverSettings
from utils import is_integer, read_file_content

logger = logging.getLogger(__name__)

SECTIONS = ('model', 'solver', 'sim', 'sweep', 'train', 'output')


@dataclass(frozen=True)
class OutputSettings:
    """CSV directory and decimals; precision None writes full repr floats."""
    dir: str = 'out'
    precision: Optional[int] = 2

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> 'OutputSettings':
        data = dict(data or {})
        unknown = set(data) - {'dir', 'precision'}
        errors = [f"Unknown output field: '{key}'" for key in sorted(unknown)]
        if not isinstance(data.get('dir', ''), str):
            errors.append(f"output.dir must be a string, got {data['dir']!r}")
        precision = data.get('precision', 2)
        if precision is not None and (not is_integer(precision) or precision < 0):
            errors.append(f"output.precision must be a nonnegative integer, got {precision!r}")
        if errors:
            raise ConfigError(errors)
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {'dir': self.dir, 'precision': self.precision}


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams = field(default_factory=lambda: ModelParams.from_dict(REFERENCE_SETTING))
    solver: SolverSettings = field(default_factory=SolverSettings)
    sim: SimConfig = field(default_factory=SimConfig)
    sweep: Optional[SweepSpec] = None
    train: TrainSettings = field(default_factory=TrainSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    source: Optional[str] = None

    def with_overrides(self, out: Optional[str] = None, seed: Optional[int] = None,
                       full_precision: bool = False) -> 'RunConfig':
        """Apply command-line flags on top of the file values."""
        config = self
        if out is not None:
            config = replace(config, output=replace(config.output, dir=out))
        if seed is not None:
            config = replace(config, sim=replace(config.sim, seed=seed),
                             train=replace(config.train, seed=seed))
        if full_precision:
            config = replace(config, output=replace(config.output, precision=None))
        return config

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'model': self.model.to_dict(),
            'solver': self.solver.to_dict(),
            'sim': self.sim.to_dict(),
            'train': self.train.to_dict(),
            'output': self.output.to_dict(),
        }
        if self.sweep is not None:
            data['sweep'] = self.sweep.to_dict()
        return data


class ConfigParser:
    """Turn a run-config document into a RunConfig."""

    def from_dict(self, data: Dict[str, Any]) -> RunConfig:
        """
        Build a RunConfig from a parsed document

        Raises:
            ConfigError: On unknown sections or invalid section contents
        """
        if not isinstance(data, dict):
            raise ConfigError(["Run config must be an object"])
        unknown = sorted(set(data) - set(SECTIONS))
        if unknown:
            raise ConfigError([f"Unknown config section: '{key}'" for key in unknown])
        not_objects = [key for key in SECTIONS if data.get(key) is not None and not isinstance(data[key], dict)]
        if not_objects:
            raise ConfigError([f"Config section '{key}' must be an object" for key in not_objects])

        model = ModelParams.from_dict(data['model']) if 'model' in data else \
            ModelParams.from_dict(REFERENCE_SETTING)
        sweep = SweepSpec.from_dict(data['sweep'], model) if data.get('sweep') is not None else None
        return RunConfig(
            model=model,
            solver=SolverSettings.from_dict(data.get('solver')),
            sim=SimConfig.from_dict(data.get('sim')),
            sweep=sweep,
            train=TrainSettings.from_dict(data.get('train')),
            output=OutputSettings.from_dict(data.get('output')),
        )

    def parse(self, content: str, format: str = 'yaml') -> RunConfig:
        from . import get_parser
        parser = get_parser(format)
        data = parser.parse(content)
        is_valid, errors = parser.validate(data)
        if not is_valid:
            raise ConfigError(errors)
        return self.from_dict(data)

    def load(self, path: Optional[str]) -> RunConfig:
        """Read a config file; None gives the defaults."""
        if path is None:
            return RunConfig()
        from . import detect_format
        try:
            content = read_file_content(path)
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigError([f"Cannot read config {path}: {e}"])
        logger.debug("Loading run config from %s", path)
        return replace(self.parse(content, detect_format(path)), source=path)


__all__ = ['SECTIONS', 'OutputSettings', 'RunConfig', 'ConfigParser']
