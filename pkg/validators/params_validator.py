"""
Model parameter validator

This module validates model parameter documents (the JSON/YAML ``model``
section) before they are turned into ModelParams, checking field names,
types, positivity and the capacity geometry C = b * N1.
"""
import json
import math

from errors import ConfigError


FIELD_NAMES = (
    'lambda1', 'lambda2', 'mu1', 'mu2',
    'capacity_C', 'vms_per_pu_b',
    'alpha', 'reward_R', 'preempt_cost_r',
    'holding',
)
POSITIVE_RATES = ('lambda1', 'lambda2', 'mu1', 'mu2', 'alpha')
INTEGER_FIELDS = ('capacity_C', 'vms_per_pu_b')
HOLDING_KINDS = ['SquareSum', 'Polynomial']
POLYNOMIAL_TERMS = ('c20', 'c02', 'c11', 'c10', 'c01', 'c00')


def _is_real(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def validate_holding(doc):
    """
    Validate a holding-cost document

    Args:
        doc: dict like ``{'kind': 'SquareSum'}`` or
            ``{'kind': 'Polynomial', 'coefficients': [c20, c02, c11, c10, c01, c00]}``

    Returns:
        tuple: (is_valid: bool, errors: list)
    """
    errors = []
    if not isinstance(doc, dict):
        return False, ["holding must be an object"]

    for key in doc:
        if key not in ('kind', 'coefficients'):
            errors.append(f"Unknown holding field: '{key}'")

    kind = doc.get('kind')
    if kind not in HOLDING_KINDS:
        errors.append(f"Invalid holding kind: '{kind}'. Valid kinds: {', '.join(HOLDING_KINDS)}")
    elif kind == 'Polynomial':
        coefficients = doc.get('coefficients')
        if not isinstance(coefficients, (list, tuple)) or len(coefficients) != len(POLYNOMIAL_TERMS):
            errors.append(f"Polynomial holding needs {len(POLYNOMIAL_TERMS)} coefficients "
                          f"({', '.join(POLYNOMIAL_TERMS)})")
        elif not all(_is_real(c) for c in coefficients):
            errors.append("Polynomial coefficients must be finite numbers")
    elif doc.get('coefficients') is not None:
        errors.append("SquareSum holding takes no coefficients")

    return len(errors) == 0, errors


def validate_params(config):
    """
    Validate a model parameter document

    Args:
        config: dict with exactly the ModelParams field names

    Returns:
        tuple: (is_valid: bool, errors: list)

    Example:
        >>> is_valid, errors = validate_params({
        ...     'lambda1': 1, 'lambda2': 2, 'mu1': 6, 'mu2': 8,
        ...     'capacity_C': 10, 'vms_per_pu_b': 5, 'alpha': 0.1,
        ...     'reward_R': 5, 'preempt_cost_r': 0.5,
        ...     'holding': {'kind': 'SquareSum'}
        ... })
        >>> print(is_valid)
        True
    """
    if not isinstance(config, dict):
        return False, ["Model parameters must be an object"]

    errors = []

    for field in FIELD_NAMES:
        if field not in config:
            errors.append(f"Missing required field: {field}")
    for field in config:
        if field not in FIELD_NAMES:
            errors.append(f"Unknown field: '{field}'")

    for field in POSITIVE_RATES:
        value = config.get(field)
        if field in config and (not _is_real(value) or value <= 0):
            errors.append(f"{field} must be a positive number")

    if 'reward_R' in config and not _is_real(config['reward_R']):
        errors.append("reward_R must be a finite number")

    cost = config.get('preempt_cost_r')
    if 'preempt_cost_r' in config and (not _is_real(cost) or cost < 0):
        errors.append("preempt_cost_r must be a number >= 0")

    integers_ok = True
    for field in INTEGER_FIELDS:
        value = config.get(field)
        if field in config and (not isinstance(value, int) or isinstance(value, bool) or value < 1):
            errors.append(f"{field} must be a positive integer")
            integers_ok = False

    if integers_ok and all(f in config for f in INTEGER_FIELDS):
        if config['capacity_C'] % config['vms_per_pu_b'] != 0:
            errors.append(f"capacity_C ({config['capacity_C']}) must be an exact multiple "
                          f"of vms_per_pu_b ({config['vms_per_pu_b']})")

    if 'holding' in config:
        _, holding_errors = validate_holding(config['holding'])
        errors.extend(holding_errors)

    return len(errors) == 0, errors


def validate_params_strict(config):
    """
    Validate model parameters and raise if invalid

    Raises:
        ConfigError: If validation fails, with the full list of errors
    """
    is_valid, errors = validate_params(config)
    if not is_valid:
        raise ConfigError(errors)
    return True


def validate_params_json(json_string):
    """
    Validate model parameters from a JSON string

    Returns:
        tuple: (is_valid: bool, errors: list)
    """
    try:
        config = json.loads(json_string)
    except json.JSONDecodeError as e:
        return False, [f"Invalid JSON: {str(e)}"]
    return validate_params(config)


__all__ = [
    'validate_params',
    'validate_params_strict',
    'validate_params_json',
    'validate_holding',
    'FIELD_NAMES',
    'HOLDING_KINDS',
    'POLYNOMIAL_TERMS',
]
