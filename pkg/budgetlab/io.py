"""Data files: versioned CSV tables, JSONL records, run manifests and state files."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from .envelopes.curves import EnvelopeCurve
from .errors import DomainError, UsageError
from .schemas import SCHEMA_VERSION, EnvelopeRecord, RunManifest
from .states.density import DensityMatrix

LOGGER = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
PathLike = Union[str, Path]


def schema_header(kind: str) -> str:
    return f"# budgetlab {kind} schema v{SCHEMA_VERSION}\n"


def write_frame(frame: pd.DataFrame, path: PathLike, kind: str, fmt: str = "csv") -> Path:
    """Write ``frame`` as CSV (behind a schema comment line) or as JSON lines."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(schema_header(kind))
            frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    elif fmt == "jsonl":
        # json.dumps writes the shortest repr that round-trips a float64
        rows = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
        with path.open("w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row) + "\n")
    else:
        raise UsageError(f"unknown output format '{fmt}', choose csv or jsonl")
    LOGGER.info("Wrote %d rows to %s", len(frame), path)
    return path


def read_frame(path: PathLike) -> pd.DataFrame:
    path = Path(path)
    if path.suffix == ".jsonl":
        return pd.read_json(path, orient="records", lines=True, precise_float=True)
    return pd.read_csv(path, comment="#")


def write_jsonl(records: Iterable[Union[BaseModel, dict]], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            payload = record.model_dump() if isinstance(record, BaseModel) else record
            handle.write(json.dumps(payload, sort_keys=True) + "\n")
    return path


def write_manifest(manifest: RunManifest, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def manifest_path(data_path: PathLike) -> Path:
    data_path = Path(data_path)
    return data_path.with_name(data_path.stem + ".manifest.json")


# ---- envelopes


def envelope_record(curve: EnvelopeCurve) -> EnvelopeRecord:
    record = curve.to_record()
    try:
        exact = [(str(x), str(y)) for x, y in curve.exact_vertices()]
    except DomainError:
        exact = None
    return EnvelopeRecord(**record, exact_vertices=exact)


def write_envelope(curve: EnvelopeCurve, directory: PathLike, stem: str, resolution: int = 101) -> tuple[Path, Path]:
    """JSON pieces plus a sampled polyline CSV."""

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    json_path = directory / f"{stem}.json"
    json_path.write_text(envelope_record(curve).model_dump_json(indent=2) + "\n", encoding="utf-8")
    columns = ["BL", "BNL"] if curve.plane == "budget" else ["X", "Y"]
    frame = pd.DataFrame(curve.sample(resolution), columns=columns)
    csv_path = write_frame(frame, directory / f"{stem}.csv", kind=f"envelope-{curve.plane}")
    return json_path, csv_path


# ---- state files


def state_payload(rho: DensityMatrix) -> dict:
    return {
        "dims": list(rho.dims.dims),
        "re": [[float(v) for v in row] for row in np.real(rho.mat)],
        "im": [[float(v) for v in row] for row in np.imag(rho.mat)],
    }


def write_state_file(rho: DensityMatrix, path: PathLike, label: Optional[str] = None) -> Path:
    """Write the JSON state format; ``json`` prints floats with round-trip precision."""

    payload = state_payload(rho)
    if label:
        payload["label"] = label
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return path


__all__ = [
    "envelope_record",
    "manifest_path",
    "read_frame",
    "schema_header",
    "state_payload",
    "write_envelope",
    "write_frame",
    "write_jsonl",
    "write_manifest",
    "write_state_file",
]
