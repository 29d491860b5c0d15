"""설정 하나를 실행하고 결과를 CSV 파일과 매니페스트로 남긴다.

한 번의 실행은 출력 디렉터리 하나를 혼자 쓴다. 만드는 파일은 다음과 같다.

- ``trajectories.csv``: 입자별 상태, 공상태, 제어
- ``report.csv``: 수렴 연구의 행 (``diagnostics.convergence_study``\\가 참일 때)
- ``sweep.csv``: 풀이기의 반복 기록
- ``labels.csv``: 라벨 동역학이 있는 문제의 라벨 궤적
- ``manifest.json``: 설정, 버전, 소요 시간, 상태, 실패 목록

열의 순서와 의미는 ``docs/output_files.md``\\에 정리되어 있다. 실수는 ``repr``\\로 써서 다시 읽으면
같은 값이 된다.
"""
import csv
import hashlib
import json
import logging
import platform
import time
from datetime import datetime, timezone
from itertools import chain, zip_longest
from os import PathLike
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Union

import numpy as np
import ot
import scipy
import yaml

from ..errors import ConfigError, IntegrationError
from ..meanfield import ConvergenceRow, SolvedInstance, StudyFailure, convergence_study, solve_all
from ..pmp import SweepReport
from ..problems import ProblemSpec, build_problem, sample_labels
from ..simulate import TimeGrid, integrate_replicator
from .config import ExperimentConfig, load_config

logger = logging.getLogger(__name__)

JOB_DONE_SUCCESSFUL = 0
JOB_DONE_FAILED = 1
JOB_CONFIG_INVALID = 2

HASH_BLOCK_SIZE = 65536
DEFAULT_OUTPUT_ROOT = "results"

TRAJECTORIES_FILE = "trajectories.csv"
REPORT_FILE = "report.csv"
SWEEP_FILE = "sweep.csv"
LABELS_FILE = "labels.csv"
MANIFEST_FILE = "manifest.json"

SWEEP_COLUMNS = ("n", "solver", "iteration", "residual", "update_norm", "cost")


class RunOutcome(NamedTuple):
    status: int  # JOB_DONE_SUCCESSFUL 또는 JOB_DONE_FAILED
    output_dir: Path
    artifacts: List[str]
    failures: List[StudyFailure]
    manifest: Dict[str, Any]


def file_sha256(filename: PathLike) -> str:
    """파일의 SHA-256 해시를 16진수 문자열로 계산한다."""
    h = hashlib.sha256()
    with open(filename, "rb") as hashfile:
        while buffer := hashfile.read(HASH_BLOCK_SIZE):
            h.update(buffer)
    return h.hexdigest()


def format_value(value: Any) -> str:
    """CSV 칸에 쓸 문자열. 실수는 왕복해도 같은 값이 되도록 ``repr``\\로 쓴다.

    >>> format_value(0.1)
    '0.1'
    >>> format_value(np.float64(1) / 3)
    '0.3333333333333333'
    >>> format_value(True), format_value(None), format_value(np.int64(7))
    ('true', '', '7')
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(filename: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(filename, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_value(value) for value in row])


def _axis_columns(prefix: str, dim: int) -> List[str]:
    return [f"{prefix}{j}" for j in range(dim)]


def trajectory_header(dim: int) -> List[str]:
    return ["n", "k", "t", "i"] + _axis_columns("x", dim) + _axis_columns("r", dim) + _axis_columns("u", dim)


def trajectory_rows(run: SolvedInstance) -> Iterator[List[Any]]:
    """노드 ``k``\\마다 입자 ``i``\\의 ``x``, ``r``, ``u``. 마지막 노드에는 제어가 없으므로 ``u``\\칸을 비운다."""
    pair = run.pair
    times = pair.grid.times
    blank = [None] * pair.dim
    for k in range(pair.grid.nodes):
        for i in range(pair.n_particles):
            u = list(pair.controls[k, i]) if k < pair.grid.steps else blank
            yield [run.n, k, times[k], i, *pair.states[k, i], *pair.costates[k, i], *u]


def sweep_report_rows(n: int, report: SweepReport) -> Iterator[List[Any]]:
    # 발산으로 멈춘 기록은 비용이 잔차보다 하나 더 많다.
    records = zip_longest(report.residuals, report.update_norms, report.costs)
    for iteration, (residual, update, cost) in enumerate(records, start=1):
        yield [n, "sweep", iteration, residual, update, cost]


def sweep_rows(run: SolvedInstance) -> Iterator[List[Any]]:
    if run.sweep is not None:
        yield from sweep_report_rows(run.n, run.sweep.report)
    if run.direct is not None:
        for iteration, cost in enumerate(run.direct.cost_history):
            yield [run.n, "direct", iteration, None, None, cost]


def report_rows(rows: Iterable[ConvergenceRow]) -> Iterator[List[Any]]:
    for row in rows:
        yield list(row)


def label_header(size: int) -> List[str]:
    return ["n", "k", "t", "i"] + [f"label{j}" for j in range(size)]


def integrate_labels(p: ProblemSpec, run: SolvedInstance, seed: int) -> np.ndarray:
    """풀이기가 구한 제어로 라벨을 적분한다. 반환값의 모양은 ``(S+1, N, n)``\\이다."""
    labels0 = sample_labels(p, run.n, seed)
    trajectory = integrate_replicator(p, run.pair.controls, run.x0, labels0, run.pair.grid)
    if trajectory.renormalisations:
        logger.info("N=%d: labels renormalised %d times", run.n, trajectory.renormalisations)
    return trajectory.labels


def label_rows(n: int, grid: TimeGrid, labels: np.ndarray) -> Iterator[List[Any]]:
    times = grid.times
    for k in range(labels.shape[0]):
        for i in range(labels.shape[1]):
            yield [n, k, times[k], i, *labels[k, i]]


def library_versions() -> Dict[str, str]:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pot": ot.__version__,
        "pyyaml": yaml.__version__,
    }


def resolve_output_dir(config: ExperimentConfig, output_dir: Optional[Union[str, PathLike]] = None) -> Path:
    """명령줄 옵션, 설정 파일의 ``output_dir``, ``results/<problem id>`` 순서로 출력 디렉터리를 정한다."""
    if output_dir is not None:
        return Path(output_dir)
    if config.output_dir is not None:
        return Path(config.output_dir)
    return Path(DEFAULT_OUTPUT_ROOT) / config.problem_id


def run_experiment(
    config: ExperimentConfig,
    output_dir: Optional[Union[str, PathLike]] = None,
    threads: int = 1,
    config_file: Optional[Union[str, PathLike]] = None,
) -> RunOutcome:
    r"""설정 하나를 실행하고 결과 파일을 쓴다.

    풀이 도중 실패한 ``N``\은 건너뛰고 나머지 결과를 모두 쓴 뒤 매니페스트에 실패로 기록한다.
    같은 설정이면 스레드 수와 관계없이 CSV 파일의 내용이 같다.

    Parameters
    ----------
    config : ExperimentConfig
    output_dir : path-like object : optional
        설정 파일의 ``output_dir``\보다 우선한다.
    threads : int : optional
    config_file : path-like object : optional
        설정 파일 경로. 주어지면 매니페스트에 경로와 SHA-256 해시를 남긴다.

    Returns
    -------
    outcome : RunOutcome

    Exceptions
    ----------
    ConfigError
        문제 매개변수의 값이 잘못되었을 경우
    """
    if threads < 1:
        raise ValueError("`threads` must be positive value.")
    started_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    run_clock = time.perf_counter()
    try:
        p = build_problem(config.problem_id, config.problem_params)
    except ValueError as e:
        raise ConfigError("problem.params", str(e)) from e
    grid = TimeGrid(p.horizon, config.time_steps)
    out = resolve_output_dir(config, output_dir)
    out.mkdir(parents=True, exist_ok=True)
    logger.info("Running %s on N=%s, S=%d into %s", p.name, list(config.particles), grid.steps, out)

    wall_times: Dict[str, float] = {}
    clock = time.perf_counter()
    rows: Optional[List[ConvergenceRow]] = None
    if config.convergence_study:
        study = convergence_study(p, config.particles, grid, config.seed, config.solver, config.diagnostics, threads)
        runs, failures, rows, partial = study.runs, list(study.failures), study.rows, study.partial
    else:
        runs, failures, partial = solve_all(p, config.particles, grid, config.seed, config.solver, threads)
    wall_times["solve"] = time.perf_counter() - clock

    labels: Dict[int, np.ndarray] = {}
    if p.label_field is not None:
        clock = time.perf_counter()
        for n in sorted(runs):
            try:
                labels[n] = integrate_labels(p, runs[n], config.seed)
            except IntegrationError as e:
                logger.warning("N=%d: label integration failed: %s", n, e)
                failures.append(StudyFailure(n, f"{type(e).__name__}: {e}"))
        wall_times["labels"] = time.perf_counter() - clock

    clock = time.perf_counter()
    ordered = [runs[n] for n in sorted(runs)]
    artifacts = [TRAJECTORIES_FILE]
    write_csv(
        out / TRAJECTORIES_FILE, trajectory_header(p.dim), chain.from_iterable(trajectory_rows(run) for run in ordered)
    )
    if rows is not None:
        write_csv(out / REPORT_FILE, ConvergenceRow._fields, report_rows(rows))
        artifacts.append(REPORT_FILE)

    def solver_records(n: int) -> Iterator[List[Any]]:
        if n in runs:
            return sweep_rows(runs[n])
        return sweep_report_rows(n, partial[n]) if n in partial else iter(())

    write_csv(out / SWEEP_FILE, SWEEP_COLUMNS, chain.from_iterable(solver_records(n) for n in config.particles))
    artifacts.append(SWEEP_FILE)
    if p.label_field is not None:
        write_csv(
            out / LABELS_FILE,
            label_header(p.label_field.size),
            chain.from_iterable(label_rows(n, grid, labels[n]) for n in sorted(labels)),
        )
        artifacts.append(LABELS_FILE)
    wall_times["write"] = time.perf_counter() - clock
    wall_times["total"] = time.perf_counter() - run_clock

    failures.sort(key=lambda failure: failure.n)
    status = JOB_DONE_FAILED if failures else JOB_DONE_SUCCESSFUL
    manifest = {
        "status": "failed" if failures else "ok",
        "exit_status": status,
        "started_at": started_at,
        "config_file": None if config_file is None else str(config_file),
        "config_sha256": None if config_file is None else file_sha256(config_file),
        "config": config.raw,
        "problem": {"id": config.problem_id, "name": p.name, "params": p.params},
        "particles": list(config.particles),
        "time_steps": grid.steps,
        "threads": threads,
        "versions": library_versions(),
        "wall_times": wall_times,
        "failures": [failure._asdict() for failure in failures],
        "artifacts": artifacts + [MANIFEST_FILE],
    }
    (out / MANIFEST_FILE).write_text(
        json.dumps(manifest, ensure_ascii=False, indent=4, default=str) + "\n", encoding="utf-8"
    )
    if failures:
        logger.warning("Run finished with %d failure(s); see %s", len(failures), out / MANIFEST_FILE)
    else:
        logger.info("Run finished in %.2f s", wall_times["total"])
    return RunOutcome(status, out, artifacts + [MANIFEST_FILE], failures, manifest)


def run(
    config_path: Union[str, PathLike], output_dir: Optional[Union[str, PathLike]] = None, threads: int = 1
) -> RunOutcome:
    """설정 파일을 읽어 :func:`run_experiment`\\를 실행한다. 스키마 오류는 :class:`ConfigError`\\로 올린다."""
    config = load_config(config_path)
    return run_experiment(config, output_dir=output_dir, threads=threads, config_file=config_path)


__all__ = [
    "DEFAULT_OUTPUT_ROOT",
    "HASH_BLOCK_SIZE",
    "JOB_CONFIG_INVALID",
    "JOB_DONE_FAILED",
    "JOB_DONE_SUCCESSFUL",
    "LABELS_FILE",
    "MANIFEST_FILE",
    "REPORT_FILE",
    "RunOutcome",
    "SWEEP_COLUMNS",
    "SWEEP_FILE",
    "TRAJECTORIES_FILE",
    "file_sha256",
    "format_value",
    "resolve_output_dir",
    "run",
    "run_experiment",
    "write_csv",
]
