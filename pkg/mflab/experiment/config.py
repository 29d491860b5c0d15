"""실험 설정 파일(YAML)을 읽고 검사한다.

설정 파일의 구조는 ``docs/config_schema.md``\\에 정리되어 있다. 스키마에 맞지 않는 값은
모두 필드 경로로 시작하는 메시지를 가진 :class:`ConfigError`\\로 보고한다.
"""
from os import PathLike
from pathlib import Path
from typing import Any, Callable, Dict, NamedTuple, Optional, Tuple, Union

import yaml

from ..errors import ConfigError
from ..meanfield import SOLVER_METHODS, DiagnosticOptions, SolverOptions
from ..problems import CATALOG
from .config_paths import MISSING, format_config_path, get_config_item

SCHEMA_VERSION = 1
DISTANCE_METHODS = ("auto", "sinkhorn")
ROOT_PATH = "(root)"

_TOP_LEVEL_KEYS = (
    "schema_version",
    "problem",
    "particles",
    "time_steps",
    "seed",
    "solver",
    "diagnostics",
    "output_dir",
)
_PROBLEM_KEYS = ("id", "params")
_SOLVER_KEYS = ("method", "theta", "tol", "max_iter")
_DIAGNOSTIC_KEYS = (
    "convergence_study",
    "maximality_trials",
    "bin_width",
    "distance_method",
    "sinkhorn_eps",
)


class ExperimentConfig(NamedTuple):
    problem_id: str
    problem_params: Dict[str, Any]
    particles: Tuple[int, ...]  # 순증가
    time_steps: int  # 시간 구간 수 S
    seed: int
    solver: SolverOptions
    diagnostics: DiagnosticOptions
    convergence_study: bool
    output_dir: Optional[str]
    raw: Dict[str, Any]  # 읽은 그대로의 설정. 매니페스트에 다시 적는다.


def _is_int(value: Any) -> bool:
    # YAML의 true/false는 int로 보지 않는다.
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return _is_int(value) or isinstance(value, float)


def _check_keys(data: Any, path: str, allowed: Tuple[str, ...]) -> None:
    if not isinstance(data, dict):
        raise ConfigError(path, "must be a mapping")
    for key in data:
        if key not in allowed:
            field = format_config_path([path, key]) if path != ROOT_PATH else str(key)
            raise ConfigError(field, "unknown field")


def _field(
    data: Dict[str, Any],
    path: str,
    accept: Callable[[Any], bool],
    expected: str,
    default: Any = MISSING,
) -> Any:
    value = get_config_item(data, path)
    if value is MISSING:
        if default is MISSING:
            raise ConfigError(path, "required field is missing")
        return default
    if not accept(value):
        raise ConfigError(path, f"expected {expected}, got {value!r}")
    return value


def _parse_particles(data: Dict[str, Any]) -> Tuple[int, ...]:
    value = _field(
        data,
        "particles",
        lambda v: _is_int(v) or isinstance(v, list),
        "a positive integer or a list of positive integers",
    )
    values = [value] if _is_int(value) else value
    if not values:
        raise ConfigError("particles", "list must not be empty")
    for i, n in enumerate(values):
        if not _is_int(n) or n < 1:
            raise ConfigError(format_config_path(["particles", i]), f"expected a positive integer, got {n!r}")
    if any(b <= a for (a, b) in zip(values, values[1:])):
        raise ConfigError("particles", "values must be strictly increasing")
    return tuple(values)


def _parse_problem(data: Dict[str, Any]) -> Tuple[str, Dict[str, Any]]:
    _check_keys(_field(data, "problem", lambda v: isinstance(v, dict), "a mapping"), "problem", _PROBLEM_KEYS)
    problem_id = _field(data, "problem.id", lambda v: isinstance(v, str), "a string")
    if problem_id not in CATALOG:
        raise ConfigError("problem.id", f"unknown problem {problem_id!r} (see `list-problems`)")
    params = _field(data, "problem.params", lambda v: isinstance(v, dict), "a mapping", default=None) or {}
    known = CATALOG[problem_id].defaults()
    for key in params:
        if key not in known:
            raise ConfigError(f"problem.params.{key}", f"unknown parameter for problem {problem_id!r}")
    return problem_id, dict(params)


def _parse_solver(data: Dict[str, Any]) -> SolverOptions:
    defaults = SolverOptions()
    if get_config_item(data, "solver") is not MISSING:
        _check_keys(data["solver"], "solver", _SOLVER_KEYS)
    method = _field(data, "solver.method", lambda v: v in SOLVER_METHODS, " or ".join(SOLVER_METHODS), defaults.method)
    theta = _field(data, "solver.theta", lambda v: _is_number(v) and 0 < v <= 1, "a number in (0, 1]", defaults.theta)
    tol = _field(data, "solver.tol", lambda v: _is_number(v) and v > 0, "a positive number", defaults.tol)
    max_iter = _field(data, "solver.max_iter", lambda v: _is_int(v) and v >= 1, "a positive integer", defaults.max_iter)
    return SolverOptions(method=method, theta=float(theta), tol=float(tol), max_iter=max_iter)


def _parse_diagnostics(data: Dict[str, Any]) -> Tuple[bool, DiagnosticOptions]:
    defaults = DiagnosticOptions()
    if get_config_item(data, "diagnostics") is not MISSING:
        _check_keys(data["diagnostics"], "diagnostics", _DIAGNOSTIC_KEYS)
    positive = (lambda v: _is_number(v) and v > 0), "a positive number"
    study = _field(data, "diagnostics.convergence_study", lambda v: isinstance(v, bool), "true or false", True)
    bin_width = _field(data, "diagnostics.bin_width", *positive, defaults.bin_width)
    trials = _field(
        data,
        "diagnostics.maximality_trials",
        lambda v: _is_int(v) and v >= 0,
        "a non-negative integer",
        defaults.maximality_trials,
    )
    method = _field(
        data,
        "diagnostics.distance_method",
        lambda v: v in DISTANCE_METHODS,
        " or ".join(DISTANCE_METHODS),
        defaults.distance_method,
    )
    eps = _field(data, "diagnostics.sinkhorn_eps", *positive, defaults.sinkhorn_eps)
    options = DiagnosticOptions(
        bin_width=float(bin_width), maximality_trials=trials, distance_method=method, sinkhorn_eps=float(eps)
    )
    return study, options


def parse_config(data: Any) -> ExperimentConfig:
    """읽어 들인 설정 트리를 검사하고 :class:`ExperimentConfig`\\로 바꾼다.

    :param data: ``yaml.safe_load``\\의 결과
    :raises ConfigError: 스키마에 맞지 않을 경우. 메시지는 필드 경로로 시작한다.
    """
    _check_keys(data, ROOT_PATH, _TOP_LEVEL_KEYS)
    version = _field(data, "schema_version", _is_int, "an integer")
    if version != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"unsupported version {version} (expected {SCHEMA_VERSION})")

    problem_id, params = _parse_problem(data)
    particles = _parse_particles(data)
    time_steps = _field(data, "time_steps", lambda v: _is_int(v) and v >= 1, "a positive integer")
    seed = _field(data, "seed", lambda v: _is_int(v) and v >= 0, "a non-negative integer")
    solver = _parse_solver(data)
    study, diagnostics = _parse_diagnostics(data)
    output_dir = _field(data, "output_dir", lambda v: v is None or isinstance(v, str), "a string", None)
    return ExperimentConfig(
        problem_id=problem_id,
        problem_params=params,
        particles=particles,
        time_steps=time_steps,
        seed=seed,
        solver=solver,
        diagnostics=diagnostics,
        convergence_study=study,
        output_dir=output_dir,
        raw=data,
    )


def load_config(filename: Union[str, PathLike]) -> ExperimentConfig:
    """YAML 설정 파일을 읽는다.

    Parameters
    ----------
    filename : path-like object

    Returns
    -------
    config : ExperimentConfig

    Exceptions
    ----------
    ConfigError
        파일이 YAML로 읽히지 않거나 스키마에 맞지 않을 경우
    OSError
        파일을 읽을 수 없을 경우
    """
    text = Path(filename).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(ROOT_PATH, f"not a valid YAML document ({e})") from e
    return parse_config(data)


__all__ = ["DISTANCE_METHODS", "ExperimentConfig", "SCHEMA_VERSION", "load_config", "parse_config"]
