"""
Simulator module: Monte Carlo cross-check of policy values.
"""

from .engine import DEFAULT_SEED, SimConfig, SimResult, simulate, step

__all__ = ['DEFAULT_SEED', 'SimConfig', 'SimResult', 'simulate', 'step']
