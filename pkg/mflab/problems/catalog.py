"""문제 목록. 문자열 식별자와 매개변수로 :class:`ProblemSpec`\\을 만든다."""
from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple

from .control import BallControlSet, BoxControlSet, QuadraticControlCost
from .costs import GaussianAttraction, NegativeVariance, QuadraticSpread, ZeroCost
from .fields import BumpActivation, ConstantActivation, KernelVelocity, ZeroVelocity
from .labels import EntropicLabelField, MarkovLabelField
from .definition import MidpointGrid, ProblemSpec, UniformBox


class ParameterDoc(NamedTuple):
    name: str
    default: Any
    description: str


class CatalogEntry(NamedTuple):
    problem_id: str
    summary: str
    section: str  # 이 문제가 보여 주는 이론의 부분
    parameters: Tuple[ParameterDoc, ...]
    factory: Callable[[Dict[str, Any]], ProblemSpec]

    def defaults(self) -> Dict[str, Any]:
        return {p.name: p.default for p in self.parameters}


def _control_set(kind: str, bound: float, dim: int):
    if kind == "box":
        return BoxControlSet(bound, dim)
    if kind == "ball":
        return BallControlSet(bound, dim)
    raise ValueError(f"Unknown control set: {kind}")


def _model_case(params: Dict[str, Any]) -> ProblemSpec:
    return ProblemSpec(
        name="model_case",
        dim=1,
        horizon=float(params["horizon"]),
        control_set=BoxControlSet(params["bound"], 1),
        control_cost=QuadraticControlCost(params["control_weight"]),
        velocity=ZeroVelocity(),
        activation=ConstantActivation(1.0),
        running_cost=ZeroCost(),
        terminal_cost=NegativeVariance(params["variance_weight"]),
        initial=MidpointGrid(params["half_width"]),
        params=params,
    )


def _alignment(params: Dict[str, Any]) -> ProblemSpec:
    dim = int(params["dim"])
    return ProblemSpec(
        name="alignment",
        dim=dim,
        horizon=float(params["horizon"]),
        control_set=_control_set(params["control_set"], params["bound"], dim),
        control_cost=QuadraticControlCost(params["control_weight"]),
        velocity=KernelVelocity(params["kappa"], params["beta"], params["confinement"]),
        activation=BumpActivation(params["activation_width"], params["centered"]),
        running_cost=QuadraticSpread(params["spread_weight"]),
        terminal_cost=None,
        initial=UniformBox(params["half_width"]),
        params=params,
    )


def _control_only(params: Dict[str, Any]) -> ProblemSpec:
    dim = int(params["dim"])
    return ProblemSpec(
        name="control_only",
        dim=dim,
        horizon=float(params["horizon"]),
        control_set=_control_set(params["control_set"], params["bound"], dim),
        control_cost=QuadraticControlCost(params["control_weight"]),
        velocity=ZeroVelocity(),
        activation=ConstantActivation(1.0),
        running_cost=GaussianAttraction(params["attraction_weight"], params["attraction_width"]),
        terminal_cost=None,
        initial=UniformBox(params["half_width"]),
        params=params,
    )


def _replicator_base(name: str, params: Dict[str, Any], label_field) -> ProblemSpec:
    dim = int(params["dim"])
    return ProblemSpec(
        name=name,
        dim=dim,
        horizon=float(params["horizon"]),
        control_set=BoxControlSet(params["bound"], dim),
        control_cost=QuadraticControlCost(params["control_weight"]),
        velocity=ZeroVelocity(),
        activation=ConstantActivation(1.0),
        running_cost=QuadraticSpread(params["spread_weight"]),
        terminal_cost=None,
        initial=UniformBox(params["half_width"]),
        label_field=label_field,
        params=params,
    )


def _replicator_markov(params: Dict[str, Any]) -> ProblemSpec:
    field = MarkovLabelField(params["rates"], params["coupling"], params["initial_label"])
    return _replicator_base("replicator_markov", params, field)


def _replicator_entropic(params: Dict[str, Any]) -> ProblemSpec:
    field = EntropicLabelField(
        params["payoffs"],
        reference=params["reference"],
        epsilon=params["epsilon"],
        width=params["width"],
        lower=params["lower"],
        upper=params["upper"],
        initial_label=params["initial_label"],
    )
    return _replicator_base("replicator_entropic", params, field)


_COMMON_CONTROL = (
    ParameterDoc("control_weight", 1.0, "제어 비용 phi(u) = (control_weight / 2)|u|^2의 계수"),
    ParameterDoc("bound", 1.0, "허용 제어 집합의 반폭 또는 반지름 M"),
    ParameterDoc("horizon", 1.0, "시간 구간 [0, T]의 길이 T"),
    ParameterDoc("half_width", 1.0, "초기 분포의 지지 [-a, a]^d의 반폭 a"),
)

_REPLICATOR_POSITION = (
    ParameterDoc("dim", 1, "위치 공간의 차원 d"),
    ParameterDoc("spread_weight", 1.0, "실행 비용 L = spread_weight * Var(psi)의 계수"),
) + _COMMON_CONTROL

CATALOG: Dict[str, CatalogEntry] = {
    "alignment": CatalogEntry(
        "alignment",
        "정렬 핵 W(x, y) = kappa (y - x)(1 + |y - x|^2)^(-beta)와 선택적 활성화 h를 갖는 입자계. "
        "실행 비용은 분산, 종단 비용 없음. M_v = confinement + |kappa|, sup|h| = 1.",
        "일반 가정: 정렬 상호작용 속도장과 선택적 활성화를 갖는 입자계의 평균장 최적 제어",
        (
            ParameterDoc("dim", 1, "상태 공간의 차원 d"),
            ParameterDoc("kappa", 1.0, "상호작용 세기"),
            ParameterDoc("beta", 0.0, "통신 가중치 감쇠 지수 (0이면 선형 정렬)"),
            ParameterDoc("confinement", 0.0, "국소항 -c x의 계수 c"),
            ParameterDoc("activation_width", 1.0, "활성화 h = 1 / (1 + |x - m|^2 / width^2)의 폭"),
            ParameterDoc("centered", True, "활성화 중심을 무게중심으로 둘지 여부 (False이면 원점)"),
            ParameterDoc("spread_weight", 0.5, "실행 비용 L = spread_weight * Var(psi)의 계수"),
            ParameterDoc("control_set", "box", "허용 제어 집합 종류 (box 또는 ball)"),
        )
        + _COMMON_CONTROL,
        _alignment,
    ),
    "control_only": CatalogEntry(
        "control_only",
        "속도장 v = 0, h = 1인 순수 제어 문제. 실행 비용은 가우스 인력 "
        "L = ∬ weight (1 - exp(-|x - y|^2 / width^2)). M_v = 0, sup|h| = 1.",
        "일반 가정: 상호작용 비용만 있는 순수 제어 문제",
        (
            ParameterDoc("dim", 2, "상태 공간의 차원 d"),
            ParameterDoc("attraction_weight", 1.0, "가우스 인력 비용의 세기"),
            ParameterDoc("attraction_width", 1.0, "가우스 인력 비용의 폭"),
            ParameterDoc("control_set", "ball", "허용 제어 집합 종류 (box 또는 ball)"),
        )
        + _COMMON_CONTROL,
        _control_only,
    ),
    "model_case": CatalogEntry(
        "model_case",
        "1차원 분산 최대화 문제: v = 0, h = 1, L = 0, g(psi) = -(variance_weight / 2) Var(psi), "
        "K = [-M, M], 초기 분포는 [-1, 1]의 균등분포를 근사하는 대칭 중점 격자. "
        "control_weight <= horizon이면 최적 제어가 포화되어 x = 0에서 불연속이다. M_v = 0, sup|h| = 1.",
        "1차원 모델 사례: 매끄러운 제어를 가정하는 최대 원리와의 비교",
        (
            ParameterDoc("control_weight", 0.5, "제어 비용 phi(u) = (control_weight / 2)|u|^2의 계수"),
            ParameterDoc("bound", 1.0, "허용 제어 집합 [-M, M]의 M"),
            ParameterDoc("horizon", 1.0, "시간 구간 [0, T]의 길이 T"),
            ParameterDoc("variance_weight", 1.0, "종단 비용의 분산 계수"),
            ParameterDoc("half_width", 1.0, "초기 격자가 덮는 구간 [-a, a]의 반폭 a"),
        ),
        _model_case,
    ),
    "replicator_entropic": CatalogEntry(
        "replicator_entropic",
        "위치는 v = 0, h = 1, L = spread_weight * Var(psi)로 움직이고, 라벨은 엔트로피 정규화 복제자 "
        "동역학 S + epsilon R을 따른다. 보수는 J(x, e_k, x') = payoffs[k] exp(-|x - x'|^2 / width^2) "
        "(width가 없으면 payoffs[k]). 보존량은 sum lambda eta.",
        "볼록 상태 공간으로의 일반화: 엔트로피 정규화 복제자 동역학",
        _REPLICATOR_POSITION
        + (
            ParameterDoc("payoffs", [1.0, 1.0], "라벨별 보수 계수"),
            ParameterDoc("reference", None, "기준 무게 eta (없으면 균등)"),
            ParameterDoc("epsilon", 0.1, "엔트로피 항의 세기"),
            ParameterDoc("width", None, "보수 핵의 폭 (없으면 위치와 무관)"),
            ParameterDoc("lower", 1e-3, "라벨 하한 r"),
            ParameterDoc("upper", 1e3, "라벨 상한 R"),
            ParameterDoc("initial_label", None, "초기 라벨 (없으면 무작위)"),
        ),
        _replicator_entropic,
    ),
    "replicator_markov": CatalogEntry(
        "replicator_markov",
        "위치는 v = 0, h = 1, L = spread_weight * Var(psi)로 움직이고, 라벨은 마르코프 연쇄 "
        "d lambda / dt = Q(x, psi) lambda를 따른다. Q = rates * (1 + coupling * 국소 밀도).",
        "볼록 상태 공간으로의 일반화: 다중 개체군 시스템의 제어 (가역 마르코프 연쇄)",
        _REPLICATOR_POSITION
        + (
            ParameterDoc("rates", [[-1.0, 1.0], [1.0, -1.0]], "기본 전이율 행렬 (열의 합이 0)"),
            ParameterDoc("coupling", 0.0, "국소 밀도에 따른 전이율 증폭 계수"),
            ParameterDoc("initial_label", [1.0, 0.0], "초기 라벨 (없으면 디리클레 분포)"),
        ),
        _replicator_markov,
    ),
}


def list_entries() -> List[CatalogEntry]:
    """식별자 순으로 정렬된 문제 목록"""
    return [CATALOG[key] for key in sorted(CATALOG)]


def build_problem(problem_id: str, params: Optional[Mapping[str, Any]] = None) -> ProblemSpec:
    """문제를 만든다. 주어지지 않은 매개변수는 기본값을 쓴다.

    :param problem_id: 문제 식별자
    :param params: 기본값을 덮어쓸 매개변수
    :raises KeyError: 알 수 없는 문제 식별자
    :raises ValueError: 알 수 없는 매개변수
    """
    if problem_id not in CATALOG:
        raise KeyError(f"Unknown problem: {problem_id}")
    entry = CATALOG[problem_id]
    merged = entry.defaults()
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValueError(f"Unknown parameter `{key}` for problem `{problem_id}`.")
        merged[key] = value
    return entry.factory(merged)


__all__ = ["CATALOG", "CatalogEntry", "ParameterDoc", "build_problem", "list_entries"]
