"""Seeded experiments on the step-count conjecture.

For a cubic-linear map with ``(JH)^g = 0`` the conjecture predicts that every
difference sequence vanishes by step ``(3^(g-1) + 1) / 2`` and that the
inverse has degree at most ``3^(g-1)``. Each trial measures the actual
nilpotency index ``g*`` of ``JH``, runs the sequences up to the predicted
step and classifies the outcome.
"""
from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .druzkowski import DruzkowskiMap, GeneratorConfig, generate_leveled, save_matrix
from .inversion import alternating_sum, iter_p_sequence
from .poly import TermBudgetExceeded
from .polymap import NOT_NILPOTENT, nilpotency_index
from .rng import derive_seed

DEFAULT_BUDGET = 2_000_000


class Verdict(str, enum.Enum):
    CONSISTENT = "CONSISTENT"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    INCONCLUSIVE = "INCONCLUSIVE"


def step_bound(g: int) -> int:
    return (3 ** (g - 1) + 1) // 2


def degree_bound(g: int) -> int:
    return 3 ** (g - 1)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int | None
    seed: int | None
    dimension: int
    target_g: int | None
    measured_g: int | None
    termination: tuple[int | None, ...]
    max_inverse_degree: int | None
    step_bound: int | None
    degree_bound: int | None
    verdict: Verdict
    note: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        out["termination"] = list(self.termination)
        out["verdict"] = self.verdict.value
        return out


@dataclass
class ExperimentReport:
    config: GeneratorConfig
    trials: int
    budget: int
    records: list[TrialRecord]
    wall_time: float = 0.0
    counts: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.records = sorted(self.records, key=lambda r: r.trial_index)
        self.counts = {v.value: 0 for v in Verdict}
        for r in self.records:
            self.counts[r.verdict.value] += 1

    def summary(self) -> str:
        c = self.counts
        return (
            f"{c['CONSISTENT']} CONSISTENT, {c['COUNTEREXAMPLE']} COUNTEREXAMPLE, "
            f"{c['INCONCLUSIVE']} INCONCLUSIVE"
        )

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "config": self.config.to_dict(),
            "trials": self.trials,
            "budget": self.budget,
            "counts": dict(self.counts),
            "records": [r.to_dict() for r in self.records],
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"


def classify(
    termination: list[int | None],
    bound_step: int,
    max_degree: int | None,
    bound_degree: int,
    cap: int,
) -> Verdict:
    """Verdict from per-coordinate termination indices.

    A coordinate still nonzero at ``bound_step`` (either resolved later or
    unresolved with ``cap >= bound_step``) refutes the step bound; an
    inverse of degree above ``bound_degree`` refutes the degree bound.
    """
    for m in termination:
        if m is None:
            if cap >= bound_step:
                return Verdict.COUNTEREXAMPLE
            return Verdict.INCONCLUSIVE
        if m > bound_step:
            return Verdict.COUNTEREXAMPLE
    if max_degree is not None and max_degree > bound_degree:
        return Verdict.COUNTEREXAMPLE
    return Verdict.CONSISTENT


def run_trial(
    m: DruzkowskiMap,
    cap_override: int | None = None,
    max_terms: int | None = DEFAULT_BUDGET,
    *,
    trial_index: int | None = None,
    seed: int | None = None,
    target_g: int | None = None,
) -> TrialRecord:
    d = m.dimension
    base = dict(
        trial_index=trial_index, seed=seed, dimension=d, target_g=target_g,
    )
    g = nilpotency_index(m.jacobian_h(), d)
    if g is NOT_NILPOTENT:
        return TrialRecord(
            **base, measured_g=None, termination=(), max_inverse_degree=None,
            step_bound=None, degree_bound=None, verdict=Verdict.INCONCLUSIVE,
            note="JH is not nilpotent",
        )
    s, b = step_bound(g), degree_bound(g)
    cap = cap_override if cap_override is not None else s
    f, h = m.map, m.cubic_part
    termination: list[int | None] = []
    inverse_degrees = []
    try:
        for i in range(1, d + 1):
            seq = list(iter_p_sequence(f, h, i, cap, max_terms))
            if seq[-1].is_zero():
                termination.append(len(seq) - 1)
                inverse_degrees.append(alternating_sum(seq[:-1]).degree())
            else:
                termination.append(None)
    except TermBudgetExceeded as exc:
        return TrialRecord(
            **base, measured_g=g, termination=tuple(termination),
            max_inverse_degree=None, step_bound=s, degree_bound=b,
            verdict=Verdict.INCONCLUSIVE, note=f"term budget exceeded ({exc.size} > {exc.limit})",
        )
    resolved = all(t is not None for t in termination)
    max_deg = max(inverse_degrees) if resolved else None
    verdict = classify(termination, s, max_deg, b, cap)
    note = ""
    if verdict is Verdict.INCONCLUSIVE:
        note = f"cap {cap} below step bound {s}"
    return TrialRecord(
        **base, measured_g=g, termination=tuple(termination),
        max_inverse_degree=max_deg, step_bound=s, degree_bound=b,
        verdict=verdict, note=note,
    )


def _trial_job(args):
    config, k, max_terms = args
    seed = derive_seed(config.seed, k)
    m = generate_leveled(replace(config, seed=seed))
    return run_trial(m, None, max_terms, trial_index=k, seed=seed, target_g=config.levels), m


def run_experiment(
    config: GeneratorConfig,
    trials: int,
    max_terms: int = DEFAULT_BUDGET,
    workers: int = 1,
    reproducer_dir: str | Path | None = None,
) -> ExperimentReport:
    """Run ``trials`` leveled instances; trial ``k`` uses ``derive_seed(config.seed, k)``.

    Counterexamples are written to ``reproducer_dir`` as matrix files, if given.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    start = time.perf_counter()
    jobs = [(config, k, max_terms) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs))
    else:
        results = [_trial_job(job) for job in jobs]
    records = []
    for record, m in results:
        records.append(record)
        if record.verdict is Verdict.COUNTEREXAMPLE and reproducer_dir is not None:
            write_reproducer(reproducer_dir, record, m)
    report = ExperimentReport(config, trials, max_terms, records)
    report.wall_time = time.perf_counter() - start
    return report


def reproducer_path(directory: str | Path, record: TrialRecord) -> Path:
    return Path(directory) / f"counterexample-d{record.dimension}-seed{record.seed}.json"


def write_reproducer(directory: str | Path, record: TrialRecord, m: DruzkowskiMap) -> Path:
    path = reproducer_path(directory, record)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_matrix(path, m)
    return path
