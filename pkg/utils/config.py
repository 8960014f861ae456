import os
import sys
import copy
import logging
from fractions import Fraction
from typing import Dict, List, Any, Optional

import json5
from dotenv import load_dotenv

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "bell_config.json5"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class ConfigManager:
    """Manage verification settings: isolation, series, suites and export"""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration manager

        Args:
            config_file (str, optional): Path to a JSON5 configuration file;
                defaults to $BELL_CONFIG, then bell_config.json5
        """
        self.config_file = config_file or os.getenv("BELL_CONFIG", DEFAULT_CONFIG_FILE)
        self.config = self._load_default_config()

    def _load_default_config(self) -> Dict[str, Any]:
        """Load default configuration"""
        return {
            "app": {
                "name": "genbell",
                "version": "1.0.0",
                "log_level": "INFO"
            },
            "roots": {
                "isolation_width": "1/1048576",  # 2^-20
                "refinement_budget": 64
            },
            "series": {
                "tolerance": 1e-12,
                "max_terms_factor": 10
            },
            "verify": {
                "seed": 1,
                "trials": 20,
                "n_max": 12,
                "max_prefix": 8,
                "max_numerator": 20,
                "max_denominator": 8,
                "search_limit": 30,
                "window": 15
            },
            "export": {
                "default_format": "json",
                "schema_version": "1.0.0"
            }
        }

    def load_config(self) -> Dict[str, Any]:
        """
        Load configuration: defaults, then the APP_ENV overlay, then the
        config file, then BELL_LOG_LEVEL

        Returns:
            Dict[str, Any]: Configuration data
        """
        self._deep_merge(self.config, self.get_environment_config())
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    loaded_config = json5.load(f)
                    self._deep_merge(self.config, loaded_config)
                    logger.info(f"Configuration loaded from {self.config_file}")
            else:
                logger.debug(f"Config file {self.config_file} not found, using defaults")
        except (OSError, ValueError) as e:
            logger.error(f"Error loading configuration: {e}")

        level = os.getenv("BELL_LOG_LEVEL")
        if level:
            self.set("app.log_level", level.upper())
        return self.config

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key

        Args:
            key (str): Configuration key (dot notation supported)
            default (Any): Default value if key not found

        Returns:
            Any: Configuration value
        """
        try:
            value = self.config
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> bool:
        """
        Set configuration value

        Args:
            key (str): Configuration key (dot notation supported)
            value (Any): Value to set

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            keys = key.split('.')
            config_ptr = self.config
            for k in keys[:-1]:
                if k not in config_ptr:
                    config_ptr[k] = {}
                config_ptr = config_ptr[k]
            config_ptr[keys[-1]] = value
            return True
        except TypeError as e:
            logger.error(f"Error setting configuration key {key}: {e}")
            return False

    def _deep_merge(self, base: Dict[str, Any], update: Dict[str, Any]) -> None:
        """
        Deep merge two dictionaries

        Args:
            base (Dict[str, Any]): Base dictionary to merge into
            update (Dict[str, Any]): Dictionary with updates
        """
        for key, value in update.items():
            if (key in base and isinstance(base[key], dict) and
                    isinstance(value, dict)):
                self._deep_merge(base[key], value)
            else:
                base[key] = copy.deepcopy(value)

    def validate_config(self) -> Dict[str, List[str]]:
        """
        Validate configuration values

        Returns:
            Dict[str, List[str]]: Validation errors by section
        """
        errors = {}

        level = self.get('app.log_level')
        if not isinstance(level, str) or not isinstance(logging.getLevelName(level.upper()), int):
            errors.setdefault('app', []).append(f"Unknown log level: {level!r}")

        try:
            width = Fraction(str(self.get('roots.isolation_width')))
            if width <= 0:
                errors.setdefault('roots', []).append("Isolation width must be positive")
        except (ValueError, ZeroDivisionError):
            errors.setdefault('roots', []).append("Isolation width must be a rational written p/q")

        budget = self.get('roots.refinement_budget')
        if not isinstance(budget, int) or budget <= 0:
            errors.setdefault('roots', []).append("Refinement budget must be a positive integer")

        tolerance = self.get('series.tolerance')
        if not isinstance(tolerance, (int, float)) or tolerance <= 0:
            errors.setdefault('series', []).append("Series tolerance must be a positive number")

        factor = self.get('series.max_terms_factor')
        if not isinstance(factor, int) or factor <= 0:
            errors.setdefault('series', []).append("Max terms factor must be a positive integer")

        for key in ('trials', 'n_max', 'max_prefix', 'max_denominator', 'search_limit', 'window'):
            value = self.get(f'verify.{key}')
            if not isinstance(value, int) or value <= 0:
                errors.setdefault('verify', []).append(f"verify.{key} must be a positive integer")
        numerator = self.get('verify.max_numerator')
        if not isinstance(numerator, int) or numerator < 0:
            errors.setdefault('verify', []).append("verify.max_numerator must be a nonnegative integer")
        if not isinstance(self.get('verify.seed'), int):
            errors.setdefault('verify', []).append("verify.seed must be an integer")

        if self.get('export.default_format') not in ('json', 'csv'):
            errors.setdefault('export', []).append("Export format must be 'json' or 'csv'")

        return errors

    def get_environment_config(self) -> Dict[str, Any]:
        """
        Get environment-specific configuration

        Returns:
            Dict[str, Any]: Environment configuration
        """
        env = os.getenv('APP_ENV', 'development').lower()

        env_config = {
            'development': {
                'app': {'log_level': 'INFO'}
            },
            'testing': {
                'app': {'log_level': 'WARNING'}
            },
            'production': {
                'app': {'log_level': 'WARNING'}
            }
        }

        return env_config.get(env, {})


# Global configuration instance
_config_instance = None


def get_config(config_file: Optional[str] = None) -> ConfigManager:
    """
    Get or create global configuration instance

    Args:
        config_file (str, optional): Path to configuration file

    Returns:
        ConfigManager: Configuration manager instance
    """
    global _config_instance
    if _config_instance is None:
        load_dotenv()
        _config_instance = ConfigManager(config_file)
        _config_instance.load_config()
    return _config_instance


def reset_config() -> None:
    """Drop the global instance so the next get_config() reloads"""
    global _config_instance
    _config_instance = None


def get_config_value(key: str, default: Any = None) -> Any:
    """
    Get configuration value by key

    Args:
        key (str): Configuration key
        default (Any): Default value if key not found

    Returns:
        Any: Configuration value
    """
    return get_config().get(key, default)


def setup_logging(level: Optional[str] = None) -> None:
    """
    Configure the root logger once, writing to stderr

    Args:
        level (str, optional): Level name; defaults to app.log_level
    """
    level = (level or get_config_value('app.log_level', 'INFO')).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT, stream=sys.stderr, force=True)
    logger.debug(f"Logging configured at {level}")
