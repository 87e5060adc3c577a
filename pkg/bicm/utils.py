import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from bicm.models import RunManifest

DEFAULT_DIGITS = 12


def format_float(value: float, digits: int = DEFAULT_DIGITS) -> str:
    """Fixed significant-digit rendering; infinities become the literal ``inf``."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        return "0"
    return f"{value:.{digits}g}"


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value, digits)
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = DEFAULT_DIGITS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} cells but header has {len(header)}")
        writer.writerow([_cell(value, digits) for value in row])
    return buffer.getvalue()


def json_safe(value: Any) -> Any:
    """Replace non-finite floats by null; dict entries also gain a ``<key>_inf`` flag."""
    if isinstance(value, BaseModel):
        return json_safe(value.model_dump(mode="python"))
    if isinstance(value, dict):
        out: dict[str, Any] = {}
        for key, item in value.items():
            if isinstance(item, float) and math.isinf(item):
                out[key] = None
                out[f"{key}_inf"] = True
            else:
                out[key] = json_safe(item)
        return out
    if isinstance(value, list | tuple):
        return [json_safe(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(payload: Any, manifest: RunManifest | None = None) -> str:
    body = json_safe(payload)
    if manifest is not None:
        body = {"manifest": json_safe(manifest), "result": body}
    return json.dumps(body, indent=2, allow_nan=False) + "\n"


def write_text(text: str, out: str | Path) -> Path:
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def write_manifest_sidecar(manifest: RunManifest, csv_path: Path) -> Path:
    """``curve.csv`` -> ``curve.manifest.json`` next to it."""
    return write_text(render_json(manifest), csv_path.with_suffix(".manifest.json"))
