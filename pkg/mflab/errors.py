"""패키지 전체에서 쓰는 예외 클래스들"""
from typing import Any, Optional


class IntegrationError(RuntimeError):
    """적분 도중 상태나 공상태(costate)가 유한하지 않은 값이 되었을 때 발생한다.

    :param message: 오류 메시지
    :param step: 문제가 생긴 시간 구간의 인덱스
    """

    def __init__(self, message: str, step: Optional[int] = None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step


class LabelInvariantError(IntegrationError):
    """라벨이 허용 집합을 허용 오차 이상으로 벗어났을 때 발생한다."""


class SweepDivergedError(RuntimeError):
    """forward-backward sweep의 비용이 발산했을 때 발생한다. ``report``\\에 그때까지의 기록이 남는다."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class OracleBudgetError(ValueError):
    """전수 탐색 횟수가 한도를 넘을 때 발생한다."""


class AssignmentCapError(ValueError):
    """정확한 W1 계산에서 원자 수가 상한을 넘을 때 발생한다."""


class ConfigError(ValueError):
    """설정 파일이 스키마에 맞지 않을 때 발생한다. 메시지는 항상 필드 경로로 시작한다.

    :param path: 점으로 구분된 필드 경로 (예: ``solver.theta``)
    :param message: 오류 내용
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


__all__ = [
    "AssignmentCapError",
    "ConfigError",
    "IntegrationError",
    "LabelInvariantError",
    "OracleBudgetError",
    "SweepDivergedError",
]
