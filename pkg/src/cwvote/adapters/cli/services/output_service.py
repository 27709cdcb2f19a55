"""Serialization of domain results for JSON and CSV output."""

import json
import math
from typing import Any, Optional, Union

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cwvote import SAMPLER_VERSION, __version__
from cwvote.domain.errors import ShapeError
from cwvote.domain.models import (
    ConfidenceInterval,
    EstimateClass,
    EstimateReport,
    ExtendedCoupling,
    GroupEstimate,
    MomentPoint,
    OracleMoments,
    TailBound,
    WeightReport,
)

console = Console()

MOMENT_COLUMNS = ["N", "beta", "theta", "var_s2", "eabs"]


def json_float(value: Optional[float]) -> Union[float, str, None]:
    """Finite floats as numbers, infinities as the strings "inf" / "-inf"."""
    if value is None:
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(value)


def parse_coupling(value: Any) -> ExtendedCoupling:
    """Inverse of :func:`json_float` for couplings."""
    if isinstance(value, str) and value in ("inf", "-inf"):
        return ExtendedCoupling(float(value))
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ShapeError(f"invalid coupling {value!r} in report")
    return ExtendedCoupling.finite(float(value))


def _interval(ci: Optional[ConfidenceInterval]) -> Optional[dict[str, float]]:
    if ci is None:
        return None
    return {"lower": ci.lower, "upper": ci.upper, "level": ci.level}


class OutputService:
    """Service for turning results into documents and showing configuration."""

    @staticmethod
    def envelope(kind: str, seed: Optional[int], body: dict[str, Any]) -> dict[str, Any]:
        """Wrap a result body with version and seed information."""
        return {
            "kind": kind,
            "version": __version__,
            "sampler_version": SAMPLER_VERSION,
            "seed": seed,
            **body,
        }

    @staticmethod
    def estimate_body(report: EstimateReport) -> dict[str, Any]:
        """Body of an estimate report document."""
        return {
            "n": report.n,
            "level": report.level,
            "groups": [
                {
                    "N": group.N,
                    "T": group.T,
                    "betaHat": json_float(group.beta_hat.value),
                    "classification": group.classification.value,
                    "stdError": group.std_error,
                    "ci": _interval(group.ci),
                }
                for group in report.groups
            ],
        }

    @staticmethod
    def estimate_report_from_document(document: dict[str, Any]) -> EstimateReport:
        """Rebuild an estimate report from its JSON document.

        Raises:
            ShapeError: If required fields are missing or malformed

        """
        try:
            n = int(document["n"])
            level = float(document.get("level", 0.95))
            groups = []
            for entry in document["groups"]:
                ci = entry.get("ci")
                groups.append(
                    GroupEstimate(
                        N=int(entry["N"]),
                        T=float(entry["T"]),
                        beta_hat=parse_coupling(entry["betaHat"]),
                        classification=EstimateClass(entry["classification"]),
                        std_error=entry.get("stdError"),
                        ci=ConfidenceInterval(**ci) if ci else None,
                    )
                )
        except (KeyError, TypeError, ValueError) as e:
            raise ShapeError(f"malformed estimate report: {e}") from e
        if not groups:
            raise ShapeError("estimate report contains no groups")
        return EstimateReport(groups=tuple(groups), n=n, level=level)

    @staticmethod
    def weights_body(report: WeightReport) -> dict[str, Any]:
        """Body of a weight report document."""
        return {
            "deficit": report.deficit,
            "groups": [
                {
                    "N": group.N,
                    "coupling": json_float(group.coupling.value),
                    "w": group.w,
                    "source": group.source.value,
                    "upsilonSq": group.upsilon_sq,
                    "stdError": group.std_error,
                    "ci": _interval(group.ci),
                }
                for group in report.groups
            ],
        }

    @staticmethod
    def bound_body(bound: TailBound) -> dict[str, Any]:
        """Body of a tail bound document."""
        return {
            "boundKind": bound.kind.value,
            "delta": json_float(bound.delta),
            "n": bound.n,
            "groups": bound.groups,
            "prefactor": bound.prefactor,
            "bound": bound.bound,
        }

    @staticmethod
    def moment_rows(points: list[MomentPoint]) -> list[list[Any]]:
        """Rows matching :data:`MOMENT_COLUMNS`."""
        return [
            [point.N, repr(point.beta), repr(point.theta), repr(point.var_s2), repr(point.eabs)]
            for point in points
        ]

    @staticmethod
    def moments_body(points: list[MomentPoint]) -> dict[str, Any]:
        """Body of a moment curve document."""
        return {
            "points": [
                {
                    "N": point.N,
                    "beta": point.beta,
                    "theta": point.theta,
                    "varS2": point.var_s2,
                    "eabs": point.eabs,
                }
                for point in points
            ]
        }

    @staticmethod
    def oracle_body(pairs: list[tuple[OracleMoments, OracleMoments]]) -> dict[str, Any]:
        """Body of an oracle comparison document."""

        def moments(values: OracleMoments) -> dict[str, float]:
            return {
                "logZ": values.log_z,
                "ES2": values.es2,
                "ES4": values.es4,
                "EabsS": values.eabs,
                "EabsS3": values.eabs3,
            }

        return {
            "groups": [
                {
                    "N": reference.N,
                    "beta": reference.beta,
                    "bruteForce": moments(reference),
                    "levels": moments(levels),
                }
                for reference, levels in pairs
            ]
        }

    @staticmethod
    def show_config_console(config: dict[str, Any], source: Optional[str]) -> None:
        """Show configuration in console format."""
        console.print()
        console.print(Panel("[bold blue]cwvote[/bold blue] - Configuration", style="blue"))
        console.print()

        table = Table(title="Effective Configuration")
        table.add_column("Setting", style="cyan")
        table.add_column("Value", style="white")
        for key, value in config.items():
            if isinstance(value, dict):
                for sub_key, sub_value in value.items():
                    table.add_row(f"{key}.{sub_key}", str(sub_value))
            else:
                table.add_row(key, str(value))
        table.add_section()
        table.add_row("source", source or "defaults", style="dim")
        console.print(table)

    @staticmethod
    def show_config_json(config: dict[str, Any], source: Optional[str]) -> None:
        """Show configuration in JSON format."""
        console.print_json(json.dumps({"source": source, "config": config}))
