"""
Utility functions for file handling and logging setup.

This module provides helpers for reading config files, writing result
artifacts deterministically and configuring the root logger once per
command-line run.
"""

import json
import logging
import os
import sys
from numbers import Real
from typing import Any, Optional

_LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def read_file_content(file_path: str, encoding: str = 'utf-8') -> str:
    """
    Read file content.

    Args:
        file_path: Path to the file to read
        encoding: Character encoding to use (default: utf-8)

    Returns:
        str: File content

    Raises:
        FileNotFoundError: If file doesn't exist
        UnicodeDecodeError: If the bytes are not valid in ``encoding``
    """
    with open(file_path, 'r', encoding=encoding) as f:
        return f.read()


def configure_logging(verbose: bool = False, stream=None) -> None:
    """
    Install a single stderr handler on the root logger.

    Args:
        verbose: DEBUG when set, WARNING otherwise
        stream: Override for the handler stream (defaults to sys.stderr)
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(_LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def write_text(directory: str, filename: str, content: str) -> str:
    """Write ``content`` to directory/filename with LF line endings; returns the path."""
    path = os.path.join(_ensure_dir(directory), filename)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(content)
    return path


def is_integer(value: Any) -> bool:
    """int but not bool; config documents turn yes/no into booleans."""
    return isinstance(value, int) and not isinstance(value, bool)


def is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def format_number(value: float, precision: Optional[int] = 2) -> str:
    """Fixed decimals, or repr when precision is None."""
    if precision is None:
        return repr(float(value))
    text = f"{float(value):.{precision}f}"
    # no "-0.00"
    if float(text) == 0.0:
        text = f"{0.0:.{precision}f}"
    return text


__all__ = [
    'read_file_content',
    'configure_logging',
    'write_text',
    'dump_json',
    'is_integer',
    'is_number',
    'format_number'
]
