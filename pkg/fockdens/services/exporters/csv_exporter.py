"""CSV exporters for report rows (one header row, deterministic formatting)."""

import csv
from collections.abc import Iterable, Sequence
from io import StringIO

from fockdens.models.reports import (
    CriterionReport,
    DensityReport,
    ExtensionReport,
    FlatnessReport,
    JensenReport,
    SamplingRatioReport,
    ScanReport,
    SeqDensityReport,
    SingularityValue,
)


def format_float(x: float) -> str:
    """Shortest round-trip representation; ``inf``/``-inf``/``nan`` spelled out."""
    return repr(float(x))


def format_vector(values: Iterable[complex]) -> str:
    """``re+imj`` entries joined by ``;``."""
    return ";".join(f"{repr(float(c.real))}{float(c.imag):+}j" for c in values)


def _write(fieldnames: list[str], rows: Iterable[dict[str, str | int]]) -> str:
    output = StringIO()
    writer = csv.DictWriter(output, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return output.getvalue()


def export_density_csv(reports: Sequence[DensityReport]) -> str:
    """One row per density report.

    Raises:
        ValueError: If reports is empty
    """
    if not reports:
        raise ValueError("reports cannot be empty")
    return _write(
        ["center", "radius", "density", "mc_std_error", "area", "signed_excess", "max_direction"],
        (
            {
                "center": format_vector(r.center),
                "radius": format_float(r.radius),
                "density": format_float(r.density),
                "mc_std_error": format_float(r.mc_std_error),
                "area": format_float(r.area),
                "signed_excess": "" if r.signed_excess is None else format_float(r.signed_excess),
                "max_direction": format_vector(r.max_direction),
            }
            for r in reports
        ),
    )


def export_scan_csv(scan: ScanReport) -> str:
    """Grid cells in row-major (center, radius) order."""
    return export_density_csv(scan.cells)


def export_scan_summary_csv(scan: ScanReport) -> str:
    """Per-radius sup/inf over centers."""
    return _write(
        ["radius", "sup_over_z", "inf_over_z"],
        (
            {
                "radius": format_float(r),
                "sup_over_z": format_float(sup),
                "inf_over_z": format_float(inf),
            }
            for r, sup, inf in zip(scan.radii, scan.sup_over_z, scan.inf_over_z, strict=True)
        ),
    )


def export_singularity_csv(values: Sequence[SingularityValue]) -> str:
    """One row per (point, route) evaluation.

    Raises:
        ValueError: If values is empty
    """
    if not values:
        raise ValueError("values cannot be empty")
    return _write(
        ["point", "radius", "route", "value", "quadrature_error", "on_surface"],
        (
            {
                "point": format_vector(v.point),
                "radius": format_float(v.radius),
                "route": v.route.value,
                "value": format_float(v.value),
                "quadrature_error": format_float(v.quadrature_error),
                "on_surface": str(v.on_surface).lower(),
            }
            for v in values
        ),
    )


def export_flatness_csv(report: FlatnessReport) -> str:
    return _write(
        [
            "region_center",
            "region_radius",
            "epsilon_estimate",
            "max_graph_constant",
            "min_normal_injectivity",
            "samples",
            "heuristic",
        ],
        [
            {
                "region_center": format_vector(report.region_center),
                "region_radius": format_float(report.region_radius),
                "epsilon_estimate": format_float(report.epsilon_estimate),
                "max_graph_constant": format_float(report.max_graph_constant),
                "min_normal_injectivity": format_float(report.min_normal_injectivity),
                "samples": report.samples,
                "heuristic": str(report.heuristic).lower(),
            }
        ],
    )


def export_sampling_csv(rows: Sequence[tuple[str, SamplingRatioReport]]) -> str:
    """Sweep rows ``(parameter, report)``.

    Raises:
        ValueError: If rows is empty
    """
    if not rows:
        raise ValueError("rows cannot be empty")
    return _write(
        [
            "parameter",
            "target",
            "window_radius",
            "degree",
            "m",
            "m_std_error",
            "M",
            "M_std_error",
            "conditioning",
            "mass_leak",
        ],
        (
            {
                "parameter": parameter,
                "target": r.target,
                "window_radius": format_float(r.window_radius),
                "degree": r.degree,
                "m": format_float(r.lower),
                "m_std_error": format_float(r.lower_std_error),
                "M": format_float(r.upper),
                "M_std_error": format_float(r.upper_std_error),
                "conditioning": format_float(r.conditioning),
                "mass_leak": format_float(r.mass_leak),
            }
            for parameter, r in rows
        ),
    )


def export_extension_csv(report: ExtensionReport) -> str:
    """Coefficients as ``(multi_index, re, im)`` triples."""
    return _write(
        ["multi_index", "re", "im"],
        (
            {
                "multi_index": ";".join(str(a) for a in alpha),
                "re": format_float(c.real),
                "im": format_float(c.imag),
            }
            for alpha, c in report.coefficients
        ),
    )


def export_jensen_csv(reports: Sequence[JensenReport]) -> str:
    """One row per Jensen report.

    Raises:
        ValueError: If reports is empty
    """
    if not reports:
        raise ValueError("reports cannot be empty")
    return _write(
        ["R", "lhs", "rhs", "ratio", "convention"],
        (
            {
                "R": format_float(r.R),
                "lhs": format_float(r.lhs),
                "rhs": format_float(r.rhs),
                "ratio": format_float(r.ratio),
                "convention": r.convention,
            }
            for r in reports
        ),
    )


def export_criterion_csv(report: CriterionReport) -> str:
    """Grid rows of a product-sequence criterion, both Laplacian conventions."""
    return _write(
        ["z", "w", "lhs", "rhs", "margin", "lhs_dbar", "rhs_dbar", "margin_dbar", "verdict"],
        (
            {
                "z": format_vector([point[0]]),
                "w": format_vector([point[1]]),
                "lhs": format_float(report.lhs[k]),
                "rhs": format_float(report.rhs[k]),
                "margin": format_float(report.margins[k]),
                "lhs_dbar": format_float(report.lhs_dbar[k]),
                "rhs_dbar": format_float(report.rhs_dbar[k]),
                "margin_dbar": format_float(report.margins_dbar[k]),
                "verdict": report.verdict.value,
            }
            for k, point in enumerate(report.grid)
        ),
    )


def export_seq_density_csv(reports: Sequence[SeqDensityReport]) -> str:
    """One row per disc radius."""
    if not reports:
        raise ValueError("reports cannot be empty")
    return _write(
        ["sequence", "center", "R", "count", "density"],
        (
            {
                "sequence": report.label,
                "center": format_vector([report.center]),
                "R": format_float(report.R),
                "count": report.count,
                "density": format_float(report.density),
            }
            for report in reports
        ),
    )
