"""
Report envelopes and their JSON / CSV renderings.

Every CLI invocation produces one ``ReportEnvelope``. JSON output is the
envelope itself; CSV output flattens the command-specific payload into one
row per coefficient, root or suite case through a pandas DataFrame so the
same numbers appear in both forms.
"""

import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from jsonschema import Draft202012Validator

from utils.config import get_config_value
from utils.helpers import create_directory, flatten_dict, safe_json_dump, to_jsonable

# Set up logging
logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).parent.parent / "data" / "schemas" / "report_envelope.schema.json"
FORMATS = ("json", "csv")


@dataclass
class ReportEnvelope:
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    timing_ms: float = 0.0
    schema_version: str = field(default_factory=lambda: get_config_value('export.schema_version', '1.0.0'))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
            "timing_ms": self.timing_ms,
        }


def _construct_rows(results: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = []
    for route, coeffs in results["polynomials"].items():
        for j, c in enumerate(coeffs):
            rows.append({"route": route, "j": j, "coefficient": c})
    return rows


def _roots_rows(results: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = []
    for k, entry in enumerate(results["roots"], start=1):
        lo, hi = entry["interval"] if not entry["point"] else (entry["value"], entry["value"])
        rows.append({"k": k, "point": entry["point"], "lo": lo, "hi": hi,
                     "multiplicity": entry["multiplicity"], "approx": results["approximations"][k - 1]})
    return rows


def _laguerre_rows(results: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = [{"table": "coefficients", "j": j, "value": c} for j, c in enumerate(results["coefficients"])]
    for entry in results.get("orthogonality", []):
        rows.append({"table": "orthogonality", "j": entry["j"], "k": entry["k"],
                     "value": entry["moment"], "orthogonal": entry["orthogonal"]})
    return rows


def _verify_rows(results: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = []
    for index, case in enumerate(results["cases"]):
        row = {"suite": results["suite"], "seed": results["seed"], "case": index,
               "clause": case["clause"], "outcome": case["outcome"]}
        row.update(flatten_dict(case["inputs"], "inputs"))
        observed = case["observed"]
        if isinstance(observed, dict):
            row.update(flatten_dict(observed, "observed"))
        else:
            row["observed"] = observed
        rows.append(row)
    return rows


_ROW_BUILDERS = {
    "construct": _construct_rows,
    "roots": _roots_rows,
    "laguerre": _laguerre_rows,
    "verify": _verify_rows,
}


def envelope_rows(envelope: ReportEnvelope) -> List[Dict[str, Any]]:
    """
    Flatten an envelope's results into table rows

    Raises:
        ValueError: If the command has no tabular form
    """
    data = envelope.to_dict()
    try:
        builder = _ROW_BUILDERS[data["command"]]
    except KeyError:
        raise ValueError(f"No tabular form for command: {data['command']}")
    return builder(data["results"])


def render_json(envelope: ReportEnvelope) -> str:
    return safe_json_dump(envelope.to_dict(), indent=2)


def render_csv(envelope: ReportEnvelope) -> str:
    frame = pd.DataFrame(envelope_rows(envelope))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False)
    return buffer.getvalue()


def render(envelope: ReportEnvelope, format: str = "json") -> str:
    """
    Render an envelope in the requested format

    Args:
        envelope (ReportEnvelope): Envelope to render
        format (str): Export format (json, csv)

    Returns:
        str: Rendered report

    Raises:
        ValueError: On an unsupported format
    """
    if format == "json":
        return render_json(envelope)
    elif format == "csv":
        return render_csv(envelope)
    else:
        raise ValueError(f"Unsupported export format: {format}")


def load_schema(path: Optional[Path] = None) -> Dict[str, Any]:
    with open(path or SCHEMA_PATH, encoding="utf-8") as fp:
        return json.load(fp)


def validate_envelope(data: Dict[str, Any], schema: Optional[Dict[str, Any]] = None) -> List[str]:
    """
    Validate a rendered envelope against the published schema

    Args:
        data (Dict[str, Any]): Envelope as parsed JSON
        schema (Dict[str, Any], optional): Schema to use instead of the shipped one

    Returns:
        List[str]: One message per violation, empty when valid
    """
    validator = Draft202012Validator(schema or load_schema(), format_checker=Draft202012Validator.FORMAT_CHECKER)
    errors = []
    for error in sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.path]):
        location = "/".join(str(p) for p in error.path) or "<root>"
        errors.append(f"{location}: {error.message}")
    if errors:
        logger.warning(f"Envelope failed schema validation with {len(errors)} errors")
    return errors


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write a rendered report to ``out`` or stdout"""
    if out:
        create_directory(str(Path(out).parent))
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {out}")
    else:
        print(text)
