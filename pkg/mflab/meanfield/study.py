"""입자 수를 늘려 가며 생성 측도의 수렴을 살펴본다."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..errors import IntegrationError, SweepDivergedError
from ..measures import support_radius, w1_between
from ..pmp import (
    DirectResult,
    SweepReport,
    SweepResult,
    direct_optimize,
    forward_backward_sweep,
    integrate_costate_backward,
)
from ..problems import ProblemSpec, sample_initial
from ..simulate import TimeGrid, integrate_forward
from .diagnostics import control_lipschitz_estimate, extract_control_field, lipschitz_estimate, r_independence_score
from .generated import GeneratedPair, build_generated
from .maximality import lipschitz_trials, maximality_check, perturbed_trials, zero_trial
from .phi import phi_chain, phi_gap

logger = logging.getLogger(__name__)

SOLVER_METHODS = ("sweep", "direct", "both")


class SolverOptions(NamedTuple):
    method: str = "sweep"  # "sweep", "direct", "both"
    theta: float = 0.5
    tol: float = 1e-8
    max_iter: int = 500


class DiagnosticOptions(NamedTuple):
    bin_width: float = 0.05
    maximality_trials: int = 20
    distance_method: str = "auto"  # "auto", "sinkhorn"
    sinkhorn_eps: float = 1e-3


class SolvedInstance(NamedTuple):
    n: int
    x0: np.ndarray
    pair: GeneratedPair  # sweep 결과가 있으면 sweep, 없으면 direct 결과로 만든다.
    cost: float
    iterations: int
    converged: bool
    sweep: Optional[SweepResult]
    direct: Optional[DirectResult]


class ConvergenceRow(NamedTuple):
    n: int
    support_radius: float
    lipschitz: float
    distance_to_finest: float
    distance_method: str
    r_independence: float
    maximality_residual: float
    phi_gap: float
    control_lipschitz: float
    cost: float
    iterations: int
    converged: bool


class StudyFailure(NamedTuple):
    n: int
    reason: str


class ConvergenceReport(NamedTuple):
    rows: List[ConvergenceRow]  # N 오름차순
    failures: List[StudyFailure]
    runs: Dict[int, SolvedInstance]
    partial: Dict[int, SweepReport]  # 발산한 sweep이 멈출 때까지의 기록

    @property
    def ok(self) -> bool:
        return not self.failures


def solve_instance(
    p: ProblemSpec, n: int, grid: TimeGrid, seed: int, options: SolverOptions = SolverOptions()
) -> SolvedInstance:
    r"""입자 ``n``\개짜리 문제를 풀고 생성 측도를 만든다.

    ``method="both"``\이면 두 방법을 모두 0에서 시작해 돌리고, 생성 측도와 대표값은 sweep 결과를 쓴다.
    """
    if options.method not in SOLVER_METHODS:
        raise ValueError(f"Unknown solver method: {options.method}")
    x0 = sample_initial(p, n, seed)
    sweep = direct = None
    if options.method in ("sweep", "both"):
        sweep = forward_backward_sweep(p, x0, grid, theta=options.theta, tol=options.tol, max_iter=options.max_iter)
    if options.method in ("direct", "both"):
        direct = direct_optimize(p, x0, grid, tol=options.tol, max_iter=options.max_iter)
    if sweep is not None:
        pair = build_generated(sweep.trajectory, sweep.costate, sweep.controls)
        return SolvedInstance(n, x0, pair, sweep.cost, sweep.report.iterations, sweep.report.converged, sweep, direct)

    trajectory = integrate_forward(p, direct.controls, x0, grid)
    costate = integrate_costate_backward(p, trajectory, direct.controls)
    pair = build_generated(trajectory, costate, direct.controls)
    return SolvedInstance(n, x0, pair, direct.cost_history[-1], direct.iterations, direct.converged, None, direct)


def solve_all(
    p: ProblemSpec,
    n_values: Sequence[int],
    grid: TimeGrid,
    seed: int,
    solver: SolverOptions = SolverOptions(),
    threads: int = 1,
) -> Tuple[Dict[int, SolvedInstance], List[StudyFailure], Dict[int, SweepReport]]:
    r"""입자 수 ``n_values``\마다 문제만 푼다.

    풀이 도중 예외가 생긴 ``N``\은 ``failures``\에 기록하고 나머지는 계속 진행한다. 발산한 sweep이
    그때까지 남긴 기록은 세 번째 반환값에 ``N``\별로 모은다. 수렴하지 않은 ``N``\은 결과를 남기고
    ``failures``\에도 기록한다.

    Returns
    -------
    runs : dict of int to SolvedInstance
    failures : list of StudyFailure
        ``n_values``\의 순서를 따른다.
    partial : dict of int to SweepReport
    """
    if threads < 1:
        raise ValueError("`threads` must be positive value.")

    def attempt(n: int):
        logger.info("Solving %s with N=%d", p.name, n)
        try:
            return solve_instance(p, n, grid, seed, solver)
        except (SweepDivergedError, IntegrationError) as e:
            return e

    with ThreadPoolExecutor(max_workers=threads) as executor:
        outcomes = list(executor.map(attempt, n_values))

    runs: Dict[int, SolvedInstance] = {}
    failures: List[StudyFailure] = []
    partial: Dict[int, SweepReport] = {}
    for n, outcome in zip(n_values, outcomes):
        if isinstance(outcome, Exception):
            failures.append(StudyFailure(n, f"{type(outcome).__name__}: {outcome}"))
            if isinstance(outcome, SweepDivergedError) and outcome.report is not None:
                partial[n] = outcome.report
                logger.warning("N=%d failed after %d iterations: %s", n, outcome.report.iterations, outcome)
            else:
                logger.warning("N=%d failed: %s", n, outcome)
            continue
        runs[n] = outcome
        if not outcome.converged:
            failures.append(StudyFailure(n, "solver did not converge"))
    return runs, failures, partial


def _diagnose(
    p: ProblemSpec, run: SolvedInstance, finest: SolvedInstance, diagnostics: DiagnosticOptions, seed: int
) -> ConvergenceRow:
    pair = run.pair
    nodes = range(pair.grid.nodes)
    radius = max(support_radius(pair.nu(k)) for k in nodes)
    distances = [
        w1_between(pair.nu(k), finest.pair.nu(k), eps=diagnostics.sinkhorn_eps, method=diagnostics.distance_method)
        for k in nodes
    ]
    methods = {d.method for d in distances}
    method = "sinkhorn" if "sinkhorn" in methods else ("replicated" if "replicated" in methods else "exact")

    field = extract_control_field(pair, diagnostics.bin_width)
    count = diagnostics.maximality_trials
    trials = [zero_trial(p.dim)]
    trials += lipschitz_trials(p.control_set, count, seed)
    trials += perturbed_trials(field, p.control_set, count, seed + 1)
    residual = maximality_check(p, pair, field, trials)

    for k in range(pair.grid.steps):
        chain = phi_chain(pair, k, p.control_cost)
        if not chain.holds():
            logger.warning("Phi chain violated at N=%d, node %d: %s", run.n, k, chain)

    return ConvergenceRow(
        n=run.n,
        support_radius=radius,
        lipschitz=lipschitz_estimate(pair),
        distance_to_finest=max(d.value for d in distances),
        distance_method=method,
        r_independence=r_independence_score(pair, diagnostics.bin_width),
        maximality_residual=max(0.0, residual),
        phi_gap=phi_gap(pair, p.control_cost),
        control_lipschitz=control_lipschitz_estimate(run.x0, pair.controls[0]),
        cost=run.cost,
        iterations=run.iterations,
        converged=run.converged,
    )


def convergence_study(
    p: ProblemSpec,
    n_values: Sequence[int],
    grid: TimeGrid,
    seed: int,
    solver: SolverOptions = SolverOptions(),
    diagnostics: DiagnosticOptions = DiagnosticOptions(),
    threads: int = 1,
) -> ConvergenceReport:
    r"""입자 수 ``n_values``\마다 문제를 풀고 진단 값을 모은다.

    초기 분포는 모든 ``N``\에서 같은 표본기와 시드로 뽑는다. 가장 세밀한 해와의 거리 ``d(N)``\은
    :func:`w1_between`\으로 계산하므로 ``N``\이 서로 배수이면 정확한 값이다.

    풀이 도중 예외가 생긴 ``N``\은 행을 만들지 않고 ``failures``\에 기록하며 나머지는 계속 진행한다.
    발산한 sweep의 기록은 ``partial``\에 남는다.
    수렴하지 않은 ``N``\은 행을 만들고 ``failures``\에도 기록한다.

    Parameters
    ----------
    p : ProblemSpec
    n_values : sequence of int
        순증가하는 입자 수
    grid : TimeGrid
    seed : int
    solver : SolverOptions : optional
    diagnostics : DiagnosticOptions : optional
    threads : int : optional
        서로 다른 ``N``\을 동시에 풀 스레드 수. 결과는 스레드 수와 무관하다.

    Returns
    -------
    report : ConvergenceReport
    """
    n_values = [int(n) for n in n_values]
    if not n_values or any(b <= a for (a, b) in zip(n_values, n_values[1:])):
        raise ValueError("`n_values` must be a non-empty strictly increasing sequence.")
    runs, failures, partial = solve_all(p, n_values, grid, seed, solver, threads)

    rows: List[ConvergenceRow] = []
    if runs:
        finest = runs[max(runs)]
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(lambda run: _diagnose(p, run, finest, diagnostics, seed), runs.values()))
        for row in rows:
            logger.info("N=%d: distance to finest %.3e (%s)", row.n, row.distance_to_finest, row.distance_method)
    return ConvergenceReport(rows, failures, runs, partial)


__all__ = [
    "ConvergenceReport",
    "ConvergenceRow",
    "DiagnosticOptions",
    "SOLVER_METHODS",
    "SolvedInstance",
    "SolverOptions",
    "StudyFailure",
    "convergence_study",
    "solve_all",
    "solve_instance",
]
