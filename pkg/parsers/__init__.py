"""
Parsers module for run-config documents.

This module provides base parser classes and format detection for reading
run configurations written as JSON or YAML.
"""

import os
from abc import ABC, abstractmethod
from typing import Dict, Any, Tuple

from errors import ConfigError


class BaseParser(ABC):
    """
    Abstract base class for document parsers.

    All format-specific parsers should inherit from this class
    and implement the parse() method.
    """

    @abstractmethod
    def parse(self, content: str) -> Dict[str, Any]:
        """
        Parse document content.

        Args:
            content: The content to parse (string representation)

        Returns:
            dict: Parsed document

        Raises:
            ConfigError: If parsing fails
        """
        pass

    def validate(self, data: Dict[str, Any]) -> Tuple[bool, list]:
        """
        Check that the parsed document only uses known sections.

        Args:
            data: The parsed document

        Returns:
            tuple: (is_valid, list_of_errors)
        """
        from .run_config import SECTIONS
        errors = [f"Unknown config section: '{key}'" for key in sorted(set(data) - set(SECTIONS))]
        return len(errors) == 0, errors


class JSONParser(BaseParser):
    """Parser for JSON documents."""

    def parse(self, content: str) -> Dict[str, Any]:
        import json
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise ConfigError([f"Invalid JSON: {str(e)}"])
        if not isinstance(data, dict):
            raise ConfigError(["JSON content must be an object/dictionary"])
        return data


class YAMLParser(BaseParser):
    """Parser for YAML documents; JSON is valid YAML, so this reads both."""

    def parse(self, content: str) -> Dict[str, Any]:
        import yaml
        try:
            data = yaml.safe_load(content)
        except yaml.YAMLError as e:
            raise ConfigError([f"Invalid YAML: {str(e)}"])
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(["YAML content must be a dictionary/object"])
        return data


def detect_format(filename: str) -> str:
    """
    Detect file format based on filename extension.

    Args:
        filename: The filename to analyze

    Returns:
        str: Detected format ('json' or 'yaml'); unknown extensions read as YAML
    """
    _, ext = os.path.splitext(filename.lower())
    return 'json' if ext == '.json' else 'yaml'


def get_parser(format: str) -> BaseParser:
    """
    Get the appropriate parser for a given format.

    Raises:
        ConfigError: If format is not supported
    """
    parsers = {
        'json': JSONParser(),
        'yaml': YAMLParser(),
        'yml': YAMLParser(),
    }
    parser = parsers.get(format.lower())
    if not parser:
        raise ConfigError([f"Unsupported format: {format}. Supported formats: {', '.join(parsers.keys())}"])
    return parser


from .run_config import SECTIONS, OutputSettings, RunConfig, ConfigParser

__all__ = [
    'BaseParser',
    'JSONParser',
    'YAMLParser',
    'detect_format',
    'get_parser',
    'SECTIONS',
    'OutputSettings',
    'RunConfig',
    'ConfigParser'
]
