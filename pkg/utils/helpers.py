import os
import json
import time
import logging
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

# Set up logging
logger = logging.getLogger(__name__)


def format_fraction(value: Fraction) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_jsonable(data: Any) -> Any:
    """
    Convert report payloads into plain JSON types

    Rationals become "p/q" strings, enums their values, dataclasses and
    objects exposing ``to_dict`` dictionaries, tuples lists.

    Args:
        data (Any): Payload to convert

    Returns:
        Any: JSON-serializable structure
    """
    if isinstance(data, bool) or data is None or isinstance(data, (int, float, str)):
        return data
    if isinstance(data, Fraction):
        return format_fraction(data)
    if isinstance(data, Enum):
        return data.value
    if hasattr(data, "to_dict"):
        return to_jsonable(data.to_dict())
    if is_dataclass(data) and not isinstance(data, type):
        return to_jsonable(asdict(data))
    if isinstance(data, dict):
        return {str(k): to_jsonable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple, set)):
        return [to_jsonable(v) for v in data]
    return str(data)


def safe_json_dump(data: Any, indent: Optional[int] = None) -> str:
    """
    Convert data to a JSON string

    Args:
        data (Any): Data to convert to JSON
        indent (int, optional): Indentation level

    Returns:
        str: JSON string or empty string on error
    """
    try:
        return json.dumps(to_jsonable(data), indent=indent, ensure_ascii=False)
    except (TypeError, ValueError) as e:
        logger.error(f"Could not serialize payload: {e}")
        return ""


def create_directory(path: str) -> bool:
    """
    Create directory if it doesn't exist

    Args:
        path (str): Directory path

    Returns:
        bool: True if directory created or exists
    """
    if not path:
        return True
    try:
        os.makedirs(path, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Failed to create directory {path}: {e}")
        return False


def format_duration(seconds: float) -> str:
    """
    Format duration in human-readable format

    Args:
        seconds (float): Duration in seconds

    Returns:
        str: Formatted duration
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, secs = divmod(seconds, 60)
    return f"{int(minutes)}m {secs:.0f}s"


class Stopwatch:
    """Wall-clock timer for envelopes and log lines"""

    def __init__(self):
        self._start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    @property
    def elapsed_ms(self) -> float:
        return round(self.elapsed * 1000, 3)


def flatten_dict(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Flatten nested dictionaries into dotted keys for tabular export"""
    flat = {}
    for key, value in data.items():
        name = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, dict):
            flat.update(flatten_dict(value, name))
        elif isinstance(value, list):
            flat[name] = json.dumps(value, ensure_ascii=False)
        else:
            flat[name] = value
    return flat
