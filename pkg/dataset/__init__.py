"""Synthetic dataset generation and storage."""

from .generator import (
    DATASET_PRESETS,
    MAX_LENGTH,
    DatasetManifest,
    DatasetSample,
    LabelAudit,
    audit_labels,
    generate_samples,
    instance_of_length,
    label_with_ga,
    random_instance,
)
from .storage import manifest_path, read_dataset, write_dataset

__all__ = [
    "DATASET_PRESETS",
    "MAX_LENGTH",
    "DatasetManifest",
    "DatasetSample",
    "LabelAudit",
    "audit_labels",
    "generate_samples",
    "instance_of_length",
    "label_with_ga",
    "manifest_path",
    "random_instance",
    "read_dataset",
    "write_dataset",
]
