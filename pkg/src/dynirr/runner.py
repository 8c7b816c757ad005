"""
Job orchestration.

A JobSpec expands into independent tasks, one per (check, parameter tuple).
Tasks are pure and run serially or in a process pool; results are merged in
sorted parameter order so the manifest does not depend on scheduling.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .certify import eisenstein_classic, eisenstein_shifted, origin_criterion_hypotheses, theorem_pipeline
from .config import (
    CHECK_ALIASES,
    DEFAULT_CONFIG,
    SCHEMA_VERSION,
    TOOL_NAME,
    ArtifactKind,
    CheckKind,
    DynirrConfig,
    Family,
    OracleConfig,
    Verdict,
)
from .errors import BudgetExceededError, DynirrError
from .logger import get_logger
from .numtheory import divisors, prime_power
from .reports import StructureReport, jsonable
from . import cubicfam, quadfam, unifam
from .oracle import validate_family
from .parsers import dump_certificate, write_json

CHECK_ORDER = {kind: i for i, kind in enumerate(CheckKind)}


@dataclass
class JobSpec:
    """What to build and which checks to run."""
    family: Family
    k_values: List[int] = field(default_factory=list)
    D_values: List[int] = field(default_factory=list)
    n_values: List[int] = field(default_factory=lambda: [1])
    d_values: List[int] = field(default_factory=list)  # empty: every divisor d >= 2 of D
    checks: List[CheckKind] = field(default_factory=lambda: [CheckKind.ALL])
    survey: bool = False
    output_directory: Optional[str] = None
    tolerance: float = DEFAULT_CONFIG.oracle.tolerance
    budget: int = DEFAULT_CONFIG.budget.max_degree
    jobs: int = 1
    seed: int = 0

    def expanded_checks(self) -> List[CheckKind]:
        if self.survey:
            return [CheckKind.SURVEY]
        kinds = []
        for kind in self.checks:
            kinds.extend(CHECK_ALIASES[self.family] if kind == CheckKind.ALL else [kind])
        return sorted(set(kinds), key=CHECK_ORDER.__getitem__)

    def divisors_of(self, D: int) -> List[int]:
        if self.d_values:
            return [d for d in self.d_values if D % d == 0]
        return [d for d in divisors(D) if d >= 2]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "k": list(self.k_values),
            "D": list(self.D_values),
            "n": list(self.n_values),
            "d": list(self.d_values),
            "checks": [c.value for c in self.expanded_checks()],
            "survey": self.survey,
            "tolerance": self.tolerance,
            "budget": self.budget,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Task:
    """One check on one parameter tuple; unused parameters are None."""
    family: Family
    check: CheckKind
    D: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    budget: int = DEFAULT_CONFIG.budget.max_degree
    tolerance: float = DEFAULT_CONFIG.oracle.tolerance
    seed: int = 0
    extra: Tuple[int, ...] = ()

    @property
    def params(self) -> Dict[str, Any]:
        out = {name: getattr(self, name) for name in ("D", "k", "n", "d") if getattr(self, name) is not None}
        if self.extra:
            out["extra"] = list(self.extra)
        return out

    @property
    def key(self) -> Tuple:
        values = tuple(-1 if v is None else v for v in (self.D, self.k, self.n, self.d))
        return (CHECK_ORDER[self.check],) + values + self.extra

    @property
    def label(self) -> str:
        parts = [self.family.value, self.check.value]
        parts += [f"{name}{value}" for name, value in self.params.items() if name != "extra"]
        return "-".join(parts)


@dataclass
class TaskResult:
    """Outcome of one task."""
    task: Task
    verdict: Verdict
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    certificates: List[Any] = field(default_factory=list)
    seconds: float = 0.0
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "check": self.task.check.value,
            "params": self.task.params,
            "verdict": self.verdict.value,
            "passed": self.passed,
            "details": jsonable(self.details),
        }
        if self.certificates:
            out["certificates"] = [
                {"variant": c.variant, "p": c.p, "digest": c.digest, "verdict": c.verdict.value}
                for c in self.certificates
            ]
        if self.error:
            out["error"] = self.error
        return out


def _from_report(task: Task, report: StructureReport) -> TaskResult:
    failures = [c.to_dict() for c in report.failures()]
    details: Dict[str, Any] = {"checks": len(report.checks), "notes": list(report.notes)}
    if failures:
        details["failures"] = failures
    verdict = Verdict.PASS if report.passed else Verdict.FAIL
    if report.checks and all(c.verdict == Verdict.INFO for c in report.checks):
        verdict = Verdict.INFO
    return TaskResult(task, verdict, report.passed, details)


# Tasks of one grid share builds within a process; a worker keeps its own cache.

@lru_cache(maxsize=4)
def _cubic_instance(k: int, budget: Optional[int]) -> cubicfam.CubicFamilyInstance:
    return cubicfam.build(k, budget)


@lru_cache(maxsize=4)
def _quad_instance(k: int, budget: Optional[int]) -> quadfam.QuadFamilyInstance:
    return quadfam.build(k, budget)


@lru_cache(maxsize=8)
def _uni_context(D: int, budget: Optional[int]) -> unifam.UnicriticalContext:
    return unifam.UnicriticalContext(D, budget)


# ---------------------------------------------------------------------------
# cubic and quadratic-rational tasks
# ---------------------------------------------------------------------------

def _cubic_structure(task: Task) -> TaskResult:
    inst = _cubic_instance(task.k, task.budget)
    report = cubicfam.verify_structure(inst)
    report.extend(cubicfam.degenerate_curves())
    counts = cubicfam.points_at_infinity(inst)
    m = 3 ** (task.k - 2)
    report.add("infinity.[1:1:0]", counts["[1:1:0]"] == 4 * m - 1, multiplicity=counts["[1:1:0]"])
    report.add("infinity.[1:-2:0]", counts["[1:-2:0]"] == 2 * m, multiplicity=counts["[1:-2:0]"])
    origin = origin_criterion_hypotheses(inst.R)
    report.add("origin_criterion", origin.verdict == Verdict.PASS, **origin.to_dict())
    return _from_report(task, report)


def _cubic_eisenstein(task: Task) -> TaskResult:
    inst = _cubic_instance(task.k, task.budget)
    cert = cubicfam.certify_s(inst, strict=False)
    extra = cubicfam.s_hypotheses(inst.s)
    return TaskResult(
        task, cert.verdict, cert.is_irreducible and all(extra.values()),
        {"hypotheses": {**cert.hypotheses, **extra}, "degree": inst.s.degree}, [cert],
    )


def _quad_structure(task: Task) -> TaskResult:
    inst = _quad_instance(task.k, task.budget)
    report = quadfam.verify_structure(inst)
    rng = random.Random(task.seed * 1000 + task.k)
    for _ in range(3):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        outcome = quadfam.check_rational_evaluation(inst, a, b)
        if outcome is None:
            report.notes.append(f"rational spot check at a={a}, b={b} skipped: pole")
        else:
            report.add(f"rational_evaluation(a={a},b={b})", outcome)
    return _from_report(task, report)


def _quad_eisenstein(task: Task) -> TaskResult:
    inst = _quad_instance(task.k, task.budget)
    cert = quadfam.certify_r(inst, strict=False)
    extra = quadfam.r_hypotheses(inst)
    return TaskResult(
        task, cert.verdict, cert.is_irreducible and all(extra.values()),
        {"hypotheses": {**cert.hypotheses, **extra}, "degree": inst.r.degree}, [cert],
    )


def _oracle(task: Task) -> TaskResult:
    cfg = oracle_config(task.tolerance, task.seed)
    if task.family == Family.UNI:
        poly = _uni_context(task.D, task.budget).preperiodic_factor(task.k, task.n, task.d).poly
        result = validate_family(Family.UNI, task.k, task.n, task.d, task.D, poly=poly, config=cfg)
    else:
        poly = _oracle_polynomial(task)
        result = validate_family(task.family, task.k, poly=poly, config=cfg)
    return TaskResult(task, Verdict.PASS if result.passed else Verdict.FAIL, result.passed, result.to_dict())


def oracle_config(tolerance: float, seed: int) -> OracleConfig:
    return replace(DEFAULT_CONFIG.oracle, tolerance=tolerance, seed=seed)


def _oracle_polynomial(task: Task):
    if task.family == Family.CUBIC:
        return _cubic_instance(task.k, task.budget).s
    return _quad_instance(task.k, task.budget).r


# ---------------------------------------------------------------------------
# unicritical tasks
# ---------------------------------------------------------------------------

def _uni_identity(task: Task) -> TaskResult:
    ctx = _uni_context(task.D, task.budget)
    report = unifam.check_identities(ctx, task.k, task.n)
    report.add(
        f"poonen_congruence.m={task.n}.k={task.k}",
        unifam.check_poonen_congruence(ctx, task.n, task.k),
    )
    for d in divisors(task.D):
        if d >= 2:
            report.add(f"multiplicity.d={d}", unifam.check_multiplicity(ctx, task.k, task.n, d))
    return _from_report(task, report)


def _uni_resultant(task: Task) -> TaskResult:
    ctx = _uni_context(task.D, task.budget)
    report = StructureReport("uni.resultant", task.params)
    others = [m for m in range(2, task.n + 2) if m != task.n]
    targets = ([task.n] if task.n >= 2 else []) + others
    for m in targets:
        witness = unifam.check_resultant_lemma(ctx, task.k, task.n, task.d, m)
        report.add(
            f"resultant.R_{task.n}.vs.R_{m}", witness.verdict == Verdict.PASS,
            value=str(witness.value), expected_abs=str(witness.expected_abs), shape=witness.shape,
        )
    return _from_report(task, report)


def _uni_modp(task: Task) -> TaskResult:
    ctx = _uni_context(task.D, task.budget)
    report = unifam.check_modp_power(ctx, task.k, task.n, task.d)
    if ctx.is_prime_power:
        report.add(f"closed_form.P_{task.n}", unifam.check_modp_closed_form(ctx, task.n))
        report.add("aggregate_congruence", unifam.check_aggregate_modp(ctx, task.k, task.n))
    return _from_report(task, report)


def _uni_eisenstein(task: Task) -> TaskResult:
    if prime_power(task.D) is None:
        return TaskResult(task, Verdict.INFO, True, {"note": f"D={task.D} is not a prime power"})
    bundle = theorem_pipeline(task.D, task.k, task.n, task.d, _uni_context(task.D, task.budget))
    ok = bundle.verdict in (Verdict.IRREDUCIBLE, Verdict.OUT_OF_HYPOTHESES)
    details = bundle.to_dict()
    details.pop("certificate", None)
    certs = [bundle.certificate] if bundle.certificate is not None else []
    return TaskResult(task, bundle.verdict, ok, details, certs)


def _uni_gleason(task: Task) -> TaskResult:
    ctx = _uni_context(task.D, task.budget)
    report = unifam.check_gleason(ctx, task.n)
    for m in range(2, task.n):
        poonen = unifam.check_poonen(ctx, m, task.n)
        report.checks.append(poonen)
    return _from_report(task, report)


def _uni_special(task: Task) -> TaskResult:
    ctx = _uni_context(task.D, task.budget)
    report = unifam.special_cases_check(ctx)
    r3 = unifam.check_r3_cyclotomic_factor(task.D)
    report.checks.append(r3)
    certs = []
    for d in divisors(task.D):
        pp = prime_power(d) if d >= 2 else None
        if pp is None:
            continue
        cert = eisenstein_classic(ctx.preperiodic_factor(2, 1, d).poly, pp[0])
        report.add(f"eisenstein.R_2_1_{d}", cert.is_irreducible, p=pp[0])
        certs.append(cert)
    if task.D % 2 == 0:
        cert = eisenstein_shifted(ctx.preperiodic_factor(2, 2, 2).poly, 2, -1)
        report.add("eisenstein.R_2_2_2.shift=-1", cert.is_irreducible)
        certs.append(cert)
    result = _from_report(task, report)
    result.certificates = certs
    return result


def _uni_survey(task: Task) -> TaskResult:
    # extra = (n_min, D_1, D_2, ...)
    table = unifam.fp_survey(list(task.extra[1:]), task.n, task.extra[0])
    details = table.to_dict()
    return TaskResult(task, Verdict.PASS if table.passed else Verdict.FAIL, table.passed, details)


DISPATCH = {
    (Family.CUBIC, CheckKind.STRUCTURE): _cubic_structure,
    (Family.CUBIC, CheckKind.EISENSTEIN): _cubic_eisenstein,
    (Family.CUBIC, CheckKind.ORACLE): _oracle,
    (Family.QUADRAT, CheckKind.STRUCTURE): _quad_structure,
    (Family.QUADRAT, CheckKind.EISENSTEIN): _quad_eisenstein,
    (Family.QUADRAT, CheckKind.ORACLE): _oracle,
    (Family.UNI, CheckKind.IDENTITY): _uni_identity,
    (Family.UNI, CheckKind.RESULTANT): _uni_resultant,
    (Family.UNI, CheckKind.MODP): _uni_modp,
    (Family.UNI, CheckKind.EISENSTEIN): _uni_eisenstein,
    (Family.UNI, CheckKind.GLEASON): _uni_gleason,
    (Family.UNI, CheckKind.SPECIAL): _uni_special,
    (Family.UNI, CheckKind.SURVEY): _uni_survey,
    (Family.UNI, CheckKind.ORACLE): _oracle,
}


def run_task(task: Task) -> TaskResult:
    """Execute one task; budget refusals are recorded, not raised."""
    logger = get_logger()
    handler = DISPATCH.get((task.family, task.check))
    with logger.track_time(task.label) as timing:
        if handler is None:
            result = TaskResult(
                task, Verdict.INFO, True, {"note": f"{task.check.value} does not apply to {task.family.value}"}
            )
        else:
            try:
                result = handler(task)
            except BudgetExceededError as exc:
                logger.warning(f"{task.label}: {exc}")
                result = TaskResult(task, Verdict.INFO, True, {"refused": str(exc)})
            except DynirrError as exc:
                logger.error(f"{task.label}: {exc}")
                result = TaskResult(task, Verdict.FAIL, False, error=f"{type(exc).__name__}: {exc}")
    result.seconds = timing["seconds"]
    return result


@dataclass
class RunOutcome:
    """Merged results of a run and where they were written."""
    results: List[TaskResult]
    manifest: Dict[str, Any]
    manifest_path: Optional[Path] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def failures(self) -> List[TaskResult]:
        return [r for r in self.results if not r.passed]


class JobRunner:
    """
    Expands a JobSpec into tasks, executes them and writes the run manifest
    plus one file per issued certificate.
    """

    def __init__(self, spec: JobSpec, config: Optional[DynirrConfig] = None):
        self.spec = spec
        self.config = config or DEFAULT_CONFIG
        self.logger = get_logger()

    def plan(self) -> List[Task]:
        """Every task of the spec, in manifest order."""
        spec = self.spec
        common = {"budget": spec.budget, "tolerance": spec.tolerance, "seed": spec.seed}
        tasks: List[Task] = []
        for check in spec.expanded_checks():
            if spec.family in (Family.CUBIC, Family.QUADRAT):
                tasks += [Task(spec.family, check, k=k, **common) for k in spec.k_values]
                continue
            if check == CheckKind.SURVEY:
                n_min = max(2, min(spec.n_values))
                tasks.append(
                    Task(spec.family, check, n=max(spec.n_values), extra=(n_min,) + tuple(spec.D_values), **common)
                )
                continue
            for D in spec.D_values:
                if check == CheckKind.SPECIAL:
                    tasks.append(Task(spec.family, check, D=D, **common))
                elif check == CheckKind.GLEASON:
                    tasks += [Task(spec.family, check, D=D, n=n, **common) for n in spec.n_values if n >= 2]
                elif check == CheckKind.IDENTITY:
                    tasks += [
                        Task(spec.family, check, D=D, k=k, n=n, **common)
                        for k in spec.k_values for n in spec.n_values
                    ]
                else:
                    tasks += [
                        Task(spec.family, check, D=D, k=k, n=n, d=d, **common)
                        for k in spec.k_values for n in spec.n_values for d in spec.divisors_of(D)
                    ]
        return sorted(tasks, key=lambda t: t.key)

    def execute(self, tasks: List[Task]) -> List[TaskResult]:
        jobs = max(1, self.spec.jobs)
        self.logger.log_operation_start("execute", {"tasks": len(tasks), "jobs": jobs})
        if jobs == 1 or len(tasks) < 2:
            results = [run_task(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(run_task, tasks))
        results.sort(key=lambda r: r.task.key)
        self.logger.log_operation_end("execute", all(r.passed for r in results), {"tasks": len(results)})
        return results

    def build_manifest(self, results: List[TaskResult], started_at: str) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": __version__,
            "kind": ArtifactKind.MANIFEST.value,
            "spec": self.spec.to_dict(),
            "results": [r.to_dict() for r in results],
            "summary": {
                "tasks": len(results),
                "passed": sum(1 for r in results if r.passed),
                "failed": sum(1 for r in results if not r.passed),
                "refused": sum(1 for r in results if "refused" in r.details),
            },
            "timings": {r.task.label: round(r.seconds, 6) for r in results},
            "started_at": started_at,
            "finished_at": datetime.now(timezone.utc).isoformat(),
        }

    def write_artifacts(self, results: List[TaskResult], manifest: Dict[str, Any]) -> Optional[Path]:
        if not self.spec.output_directory:
            return None
        out = Path(self.spec.output_directory)
        for result in results:
            for i, cert in enumerate(result.certificates):
                suffix = f"-{i}" if len(result.certificates) > 1 else ""
                dump_certificate(cert, out / "certificates" / f"{result.task.label}{suffix}.json", result.task.label)
        path = write_json(out / "manifest.json", manifest)
        self.logger.info(f"Manifest written to {path}")
        return path

    def run(self) -> RunOutcome:
        started_at = datetime.now(timezone.utc).isoformat()
        self.logger.set_context(family=self.spec.family.value)
        tasks = self.plan()
        self.logger.info(f"Planned {len(tasks)} tasks")
        results = self.execute(tasks)
        manifest = self.build_manifest(results, started_at)
        path = self.write_artifacts(results, manifest)
        outcome = RunOutcome(results, manifest, path)
        for failure in outcome.failures():
            self.logger.error(f"FAILED {failure.task.label}", extra=jsonable(failure.to_dict()))
        self.logger.clear_context()
        return outcome

