"""Exporters for report files."""

from fockdens.services.exporters.csv_exporter import (
    export_criterion_csv,
    export_density_csv,
    export_extension_csv,
    export_flatness_csv,
    export_jensen_csv,
    export_sampling_csv,
    export_scan_csv,
    export_scan_summary_csv,
    export_seq_density_csv,
    export_singularity_csv,
)
from fockdens.services.exporters.json_exporter import export_json

__all__ = [
    "export_criterion_csv",
    "export_density_csv",
    "export_extension_csv",
    "export_flatness_csv",
    "export_jensen_csv",
    "export_json",
    "export_sampling_csv",
    "export_scan_csv",
    "export_scan_summary_csv",
    "export_seq_density_csv",
    "export_singularity_csv",
]
