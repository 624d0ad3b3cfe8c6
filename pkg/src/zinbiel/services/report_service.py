"""Human-readable renderings of command reports.

Every rendering is a pure function of its report, so text output is as
reproducible as the JSON twin.
"""

from typing import List

from ..models import (
    CertificateReport,
    CharSequenceReport,
    DeductionReport,
    GradingReport,
    IdentitySuiteReport,
    IsoReport,
    ResidualReport,
    VerifyReport,
)
from ..utils import format_partition, format_triple, truncate_list


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


class ReportService:
    """Text renderings for the CLI."""

    def verify(self, report: VerifyReport) -> str:
        lines: List[str] = []
        if report.zinbiel:
            lines.append("Zinbiel: OK")
        else:
            lines.append(f"Zinbiel: FAIL ({report.defect_count} defects)")
            shown = [f"  defect at {format_triple(d.triple)}: {d.value}" for d in report.defects]
            lines.extend(truncate_list(shown))
        lines.append(f"lower series dims: {report.series_dims}")
        lines.append(f"nilindex: {report.nilindex if report.nilindex is not None else 'not nilpotent'}")
        lines.append(f"null-filiform: {_yes(report.null_filiform)}")
        if report.annihilator_dims:
            left, right, both = report.annihilator_dims
            lines.append(f"annihilators (left, right, two-sided): {left}, {right}, {both}")
        return "\n".join(lines)

    def charseq(self, report: CharSequenceReport) -> str:
        lines = [
            format_partition(report.partition),
            f"witness: {report.witness}",
            f"certified maximal: {_yes(report.certified)}",
            f"candidates examined: {report.candidates}",
            f"witness chain length: {report.chain_length}",
        ]
        if report.algebra_type is not None:
            lines.append(f"type: {report.algebra_type}")
        if report.layout:
            suffix = "" if report.layout_adapted else " (basis not adapted)"
            lines.append(f"block layout: {format_partition(report.layout)}{suffix}")
        return "\n".join(lines)

    def grade(self, report: GradingReport) -> str:
        lines = [
            f"component dims: {report.component_dims}",
            f"degrees: {report.degrees}",
            "sections:",
        ]
        lines.extend(f"  {section}" for section in report.sections)
        if report.output:
            lines.append(f"graded algebra written to {report.output}")
        return "\n".join(lines)

    def iso(self, report: IsoReport) -> str:
        lines = [f"isomorphic: {report.status}"]
        if report.base_change:
            lines.append(
                "base change: " + ", ".join(f"{k} = {v}" for k, v in report.base_change.items())
            )
        if report.differences:
            lines.append("differing invariants: " + ", ".join(report.differences))
        if report.residual:
            lines.append("unsolved equations:")
            lines.extend(truncate_list([f"  {eq} = 0" for eq in report.residual]))
        lines.append(f"search nodes: {report.nodes}")
        if report.status == "exhausted":
            lines.append(f"search space covered: {_yes(report.complete)}")
        return "\n".join(lines)

    def deduce(self, report: DeductionReport) -> str:
        lines: List[str] = []
        if report.contradiction is not None:
            forced = ", ".join(report.contradiction.forced_zero) or "a constant"
            lines.append(f"contradiction at {report.contradiction.instance}: {forced} forced to 0")
        else:
            lines.append("no contradiction")
        lines.append(
            f"instances expanded: {report.instances_expanded} "
            f"(nonlinear skipped: {report.skipped_nonlinear})"
        )
        lines.append(f"constraints: {len(report.constraints)} (rank {report.rank})")
        lines.extend(
            truncate_list(
                [f"  {c.instance} [{c.coordinate}]: {c.relation}" for c in report.constraints], 20
            )
        )
        if not report.complete:
            lines.append("budget exhausted before every instance was expanded")
        return "\n".join(lines)

    def certificate(self, report: CertificateReport) -> str:
        size = report.p + 1
        lines = [
            f"β system for p = {report.p}, rows i = 1..{size}",
            f"det of the {size}x{size} binomial matrix: {report.determinant}",
            "after subtracting previous rows:",
            f"  first row: [{', '.join(report.reduced_first_row)}]",
            f"  last row:  [{', '.join(report.reduced_last_row)}]",
            f"rank {report.system_rank} on {report.unknowns} unknowns",
        ]
        if report.infeasible:
            lines.append(
                "row combination proving 1 = 0: [" + ", ".join(report.combination) + "]"
            )
        lines.append(f"infeasible: {_yes(report.infeasible)}")
        lines.append(report.statement)
        return "\n".join(lines)

    def residuals(self, report: ResidualReport) -> str:
        lines = [f"{report.family}: {len(report.residuals)} restrictions"]
        lines.extend(f"  {r.name} = {r.value}" for r in report.residuals)
        lines.append(f"all zero: {_yes(report.all_zero)}")
        return "\n".join(lines)

    def identity_suite(self, report: IdentitySuiteReport) -> str:
        lines = [
            f"alternating sums: {report.lemma_cases} cases, {len(report.lemma_failures)} failures",
            "binomial matrix determinants: "
            + ", ".join(f"p={p}: {d}" for p, d in report.determinants.items()),
            f"β system rows: {len(report.constraint_row_failures)} failures",
        ]
        failures = (
            report.lemma_failures
            + report.determinant_failures
            + report.constraint_row_failures
            + report.certificate_failures
        )
        lines.extend(f"  {failure}" for failure in failures)
        lines.append("OK" if report.ok else "FAIL")
        return "\n".join(lines)
