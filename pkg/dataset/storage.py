"""Line oriented dataset files with a JSON manifest sidecar.

Each line is ``{"input": [...10 ints], "target": [...10 ints], "len": n}``.
The manifest lives next to the data file as ``<stem>.manifest.json``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Tuple

from pydantic import ValidationError

from errors import DatasetFormatError

from .generator import DatasetManifest, DatasetSample, validate_sample

_FIELDS = ("input", "target", "len")


def manifest_path(path: Path) -> Path:
    return path.with_suffix(".manifest.json")


def write_dataset(samples: Iterable[DatasetSample], manifest: DatasetManifest, path: Path) -> None:
    """Write samples (one JSON object per line) and the manifest."""

    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for sample in samples:
            f.write(json.dumps(sample.to_record()))
            f.write("\n")
            count += 1
    if count != manifest.sample_count:
        manifest = manifest.model_copy(update={"sample_count": count})
    manifest_path(path).write_text(
        json.dumps(manifest.model_dump(mode="json", by_alias=True), indent=2) + "\n",
        encoding="utf-8",
    )


def _parse_line(line: str, line_number: int, max_length: int) -> DatasetSample:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"invalid JSON ({exc.msg})", line_number) from exc
    if not isinstance(record, dict) or tuple(record) != _FIELDS:
        raise DatasetFormatError(f"expected fields {list(_FIELDS)}", line_number)
    input_seq, target_seq, length = record["input"], record["target"], record["len"]
    if not isinstance(input_seq, list) or not isinstance(target_seq, list):
        raise DatasetFormatError("input and target must be arrays", line_number)
    try:
        validate_sample(input_seq, target_seq, length, max_length)
    except ValueError as exc:
        raise DatasetFormatError(str(exc), line_number) from exc
    return DatasetSample(tuple(input_seq), tuple(target_seq), length)


def read_dataset(path: Path) -> Tuple[List[DatasetSample], DatasetManifest]:
    """Read and validate a dataset written by :func:`write_dataset`."""

    meta_path = manifest_path(path)
    if not meta_path.exists():
        raise DatasetFormatError(f"manifest {meta_path} not found")
    try:
        manifest = DatasetManifest.model_validate_json(meta_path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise DatasetFormatError(f"invalid manifest: {exc}") from exc
    samples: List[DatasetSample] = []
    with path.open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            samples.append(_parse_line(line, line_number, manifest.max_length))
    if len(samples) != manifest.sample_count:
        raise DatasetFormatError(
            f"manifest declares {manifest.sample_count} samples but the file holds {len(samples)}"
        )
    return samples, manifest
