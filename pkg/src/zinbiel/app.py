"""Main Zinbiel toolkit application.

Each public method runs one command end to end and returns a pydantic
report; the CLI only parses flags, renders and picks the exit code.
"""

from pathlib import Path
from typing import Dict, Optional

from .algebra import deduction, families, gradation, identities, isomorphism, spectra, structure
from .algebra.scalar import RATIONALS
from .algebra.structure import Algebra
from .core.config import SearchDefaults, get_search_defaults
from .core.exceptions import ConfigurationError, UnsupportedScopeError
from .core.logging import get_logger
from .models import (
    CertificateReport,
    CharSequenceReport,
    ConstraintEntry,
    ContradictionEntry,
    DeductionReport,
    DefectEntry,
    FamilyParams,
    GradingReport,
    IdentitySuiteReport,
    IsoReport,
    ResidualEntry,
    ResidualReport,
    RunConfig,
    VerifyReport,
)
from .services import FileService, ReportService

logger = get_logger(__name__)


class ZinbielApp:
    """Main Zinbiel toolkit application."""

    def __init__(self, defaults: Optional[SearchDefaults] = None) -> None:
        """Initialize the application.

        Args:
            defaults: Algorithm defaults; the documented ones when omitted
        """
        self.defaults = defaults or get_search_defaults()
        self.file_service = FileService()
        self.report_service = ReportService()

    def load(self, path: Path, assignments: Optional[Dict[str, str]] = None) -> Algebra:
        """Load an algebra and bind the given parameter values."""
        a = self.file_service.load_algebra(path)
        if assignments:
            a = structure.specialize(a, assignments)
        return a

    def family(self, params: FamilyParams, out: Optional[Path] = None) -> str:
        """Build a family member; returns its JSON text and writes it to ``out`` if given."""
        a = families.build_family(params)
        logger.info("family", family=params.describe(), dim=a.dim)
        return self.file_service.save_algebra(a, out)

    def verify(self, path: Path) -> VerifyReport:
        """Check the Zinbiel identity and report the lower series."""
        a = self.file_service.load_algebra(path)
        defects = structure.zinbiel_defects(a)
        series = structure.series_dims(a)
        nilpotent = series[-1] == 0
        return VerifyReport(
            config=RunConfig(command="verify", inputs=[str(path)]),
            dim=a.dim,
            zinbiel=not defects,
            defect_count=len(defects),
            defects=[
                DefectEntry(triple=list(d.triple), value=a.format_vector(d.vector)) for d in defects
            ],
            series_dims=series,
            nilindex=len(series) if nilpotent else None,
            null_filiform=nilpotent and len(series) == a.dim + 1,
            annihilator_dims=list(structure.annihilator_dims(a)),
        )

    def charseq(
        self,
        path: Path,
        strategy: str = "grid",
        grid_height: Optional[int] = None,
        samples: Optional[int] = None,
        sample_height: Optional[int] = None,
        seed: Optional[int] = None,
        assignments: Optional[Dict[str, str]] = None,
    ) -> CharSequenceReport:
        """Characteristic sequence, type and block layout of the witness."""
        a = self.load(path, assignments)
        config = RunConfig(command="charseq", inputs=[str(path)])
        if strategy == "grid":
            config.grid_height = grid_height or self.defaults.grid_height
            chosen: spectra.Strategy = spectra.GridStrategy(config.grid_height)
        elif strategy == "random":
            config.samples = samples if samples is not None else self.defaults.samples
            config.sample_height = sample_height or self.defaults.sample_height
            config.seed = seed if seed is not None else self.defaults.seed
            chosen = spectra.RandomStrategy(config.samples, config.sample_height, config.seed)
        else:
            raise ConfigurationError(f"Unknown strategy {strategy!r}")
        cs = spectra.char_sequence(a, chosen)
        try:
            kind: Optional[str] = spectra.detect_type(a, cs).value
        except UnsupportedScopeError:
            kind = None
        layout = spectra.jordan_layout(a, cs.witness)
        return CharSequenceReport(
            config=config,
            partition=list(cs.partition),
            witness=a.format_vector(cs.witness),
            certified=cs.certified,
            candidates=cs.candidates,
            chain_length=spectra.chain_length(a, cs.witness),
            algebra_type=kind,
            layout=list(layout.blocks),
            layout_adapted=layout.adapted,
        )

    def grade(self, path: Path, out: Optional[Path] = None) -> GradingReport:
        """Natural gradation; the graded tensor goes to ``out`` with its degrees."""
        a = self.file_service.load_algebra(path)
        graded = gradation.natural_grading(a)
        if out is not None:
            self.file_service.save_algebra(graded.algebra, out, graded.degrees)
        return GradingReport(
            config=RunConfig(command="grade", inputs=[str(path)]),
            component_dims=graded.component_dims,
            degrees=list(graded.degrees),
            sections=[
                f"{label} = {a.format_vector(v)}"
                for label, v in zip(graded.algebra.labels, graded.sections)
            ],
            output=str(out) if out is not None else None,
        )

    def iso(
        self,
        src_path: Path,
        dst_path: Path,
        height: Optional[int] = None,
        nodes: Optional[int] = None,
        assignments: Optional[Dict[str, str]] = None,
    ) -> IsoReport:
        """Decide whether two algebras are isomorphic through a degree-1 base change."""
        height = height or self.defaults.iso_height
        nodes = nodes or self.defaults.iso_nodes
        src = self._bind(self.file_service.load_algebra(src_path), assignments)
        dst = self._bind(self.file_service.load_algebra(dst_path), assignments)
        result = isomorphism.iso_search(src, dst, height=height, node_budget=nodes)
        return self._iso_report(
            RunConfig(command="iso", inputs=[str(src_path), str(dst_path)], height=height, budget=nodes),
            result,
        )

    def natural(self, path: Path, height: Optional[int] = None) -> IsoReport:
        """Whether an algebra is isomorphic to its natural gradation."""
        height = height or self.defaults.iso_height
        a = self.file_service.load_algebra(path)
        result = gradation.is_naturally_graded(a, height=height)
        return self._iso_report(
            RunConfig(command="natural", inputs=[str(path)], height=height), result
        )

    def deduce(self, path: Path, budget: Optional[int] = None) -> DeductionReport:
        """Propagate identity instances over a partial table."""
        budget = budget or self.defaults.deduce_budget
        table = self.file_service.load_partial_table(path)
        result = deduction.propagate(table, budget)
        contradiction = None
        if result.contradiction is not None:
            contradiction = ContradictionEntry(
                instance=result.contradiction.instance,
                forced_zero=list(result.contradiction.forced_zero),
            )
        return DeductionReport(
            config=RunConfig(command="deduce", inputs=[str(path)], budget=budget),
            constraints=[
                ConstraintEntry(
                    instance=c.instance, coordinate=c.coordinate + 1, relation=result.relation(c)
                )
                for c in result.constraints
            ],
            contradiction=contradiction,
            instances_expanded=result.instances_expanded,
            skipped_nonlinear=result.skipped_nonlinear,
            complete=result.complete,
            rank=result.rank,
        )

    def nonexist(self, p: int) -> CertificateReport:
        """Certificate that the β system has no solution with β₀ = 1."""
        cert = identities.nonexistence_certificate(p)
        fmt = RATIONALS.format
        return CertificateReport(
            config=RunConfig(command="nonexist"),
            p=p,
            determinant=fmt(cert.determinant),
            reduced_first_row=[fmt(c) for c in cert.reduced[0]],
            reduced_last_row=[fmt(c) for c in cert.reduced[-1]],
            system_rank=cert.system_rank,
            unknowns=cert.unknowns,
            infeasible=cert.infeasible,
            combination=[fmt(c) for c in cert.combination],
            statement=cert.statement,
        )

    def identity_suite(self, max_n: int = 12) -> IdentitySuiteReport:
        """Run every identity check exactly."""
        suite = identities.run_identity_suite(max_n)
        return IdentitySuiteReport(
            config=RunConfig(command="identity-suite"),
            max_n=max_n,
            lemma_cases=suite.lemma_cases,
            lemma_failures=suite.lemma_failures,
            determinants={str(p): RATIONALS.format(d) for p, d in suite.determinants.items()},
            determinant_failures=suite.determinant_failures,
            constraint_row_failures=suite.constraint_row_failures,
            certificate_failures=suite.certificate_failures,
            ok=suite.ok,
        )

    def residuals(self, params: FamilyParams) -> ResidualReport:
        """Restriction residuals of a family member."""
        a = families.build_family(params)
        values = families.residuals_of(a, params.family)
        return ResidualReport(
            config=RunConfig(command="residuals"),
            family=params.describe(),
            residuals=[ResidualEntry(name=r.name, value=a.space.format(r.value)) for r in values],
            all_zero=not any(r.value for r in values),
        )

    @staticmethod
    def _bind(a: Algebra, assignments: Optional[Dict[str, str]]) -> Algebra:
        # each side only binds the parameters it declares
        bound = {k: v for k, v in (assignments or {}).items() if k in a.params}
        return structure.specialize(a, bound) if bound else a

    @staticmethod
    def _iso_report(config: RunConfig, result: isomorphism.IsoResult) -> IsoReport:
        return IsoReport(
            config=config,
            status=result.status.value,
            base_change=result.base_change.entries() if result.base_change is not None else None,
            differences=list(result.differences),
            residual=list(result.residual),
            nodes=result.nodes,
            complete=result.complete,
        )


def render(app: ZinbielApp, command: str, report: object) -> str:
    """Text rendering of a report produced by ``command``."""
    name = {"natural": "iso", "nonexist": "certificate"}.get(command, command.replace("-", "_"))
    renderer = getattr(app.report_service, name)
    return renderer(report)


def exit_code_for(report: object) -> int:
    """0 on a positive outcome, 1 on a negative one, 2 when a search gave up."""
    if isinstance(report, IsoReport):
        return {"yes": 0, "no": 1}.get(report.status, 2)
    if isinstance(report, VerifyReport):
        return 0 if report.zinbiel else 1
    if isinstance(report, CertificateReport):
        return 0 if report.infeasible else 1
    if isinstance(report, IdentitySuiteReport):
        return 0 if report.ok else 1
    if isinstance(report, ResidualReport):
        return 0 if report.all_zero else 1
    return 0
