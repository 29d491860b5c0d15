"""점으로 구분된 경로로 YAML 설정 트리의 값을 찾는다."""
import re
from typing import Any, Dict, List, Sequence, Union

T_Config_Primitive = Union[str, bool, None, int, float]
T_Config_Types = Union[T_Config_Primitive, "T_Config_Container"]
T_Config_Container = Union[List[T_Config_Types], Dict[str, T_Config_Types]]
T_Config_Key = Union[str, int]


# 값이 없다는 뜻의 전용 싱글톤. YAML의 null(None)과 구분하기 위해 쓴다.
class MissingSingleton:
    def __new__(cls):
        if not hasattr(cls, "instance"):
            cls.instance = super(MissingSingleton, cls).__new__(cls)
        return cls.instance

    def __repr__(self):
        return "MISSING"

    def __bool__(self):
        return False


MISSING = MissingSingleton()
CONFIG_PATH_SEP = "."
re_integer = re.compile(r"^[+\-]?\d+$")


def get_config_tree_item(data: T_Config_Container, *keys: T_Config_Key, default: Any = MISSING) -> T_Config_Types:
    r"""설정 트리에서 해당 경로의 값을 본다.

    Parameters
    ----------
    data : Any
        ``yaml.safe_load``\로 읽은 데이터
    keys : str or int
        각 단계별 키
    default : Any : Optional
        값이 없을 때 대신 반환할 값. 기본값은 :data:`MISSING`\이다.

    Returns
    -------
    value : Any

    Examples
    --------
    >>> d = {'problem': {'id': 'model_case', 'params': {'bound': 1.0}}, 'particles': [8, 16]}
    >>> get_config_tree_item(d, 'problem', 'id')
    'model_case'
    >>> get_config_tree_item(d, 'particles', 1)
    16
    >>> get_config_tree_item(d, 'problem', 'params', 'horizon')
    MISSING
    >>> get_config_tree_item(d, 'problem', 'id', 'x', default=None) is None
    True
    """
    if not keys:
        return data

    keys_head, *keys_tail = keys
    if isinstance(data, dict):
        if keys_head in data:
            return get_config_tree_item(data[keys_head], *keys_tail, default=default)
        return default
    if isinstance(data, list):
        if isinstance(keys_head, int) and -len(data) <= keys_head < len(data):
            return get_config_tree_item(data[keys_head], *keys_tail, default=default)
        return default
    # 원시 자료형에는 더 내려갈 곳이 없다.
    return default


def tokenize_config_path(config_path: str) -> List[T_Config_Key]:
    """경로 문자열을 키 목록으로 나눈다. 정수 모양의 토큰은 리스트 인덱스로 본다.

    >>> tokenize_config_path('solver.theta')
    ['solver', 'theta']
    >>> tokenize_config_path('particles.0')
    ['particles', 0]
    """
    if not config_path:
        return []
    return [int(token) if re_integer.match(token) else token for token in config_path.split(CONFIG_PATH_SEP)]


def format_config_path(keys: Sequence[T_Config_Key]) -> str:
    """:func:`tokenize_config_path`\\의 역"""
    return CONFIG_PATH_SEP.join(str(key) for key in keys)


def get_config_item(data: T_Config_Container, config_path: str, default: Any = MISSING) -> T_Config_Types:
    """:func:`get_config_tree_item`\\과 같지만 경로를 ``"solver.theta"`` 같은 문자열로 받는다."""
    return get_config_tree_item(data, *tokenize_config_path(config_path), default=default)


__all__ = [
    "CONFIG_PATH_SEP",
    "MISSING",
    "format_config_path",
    "get_config_item",
    "get_config_tree_item",
    "tokenize_config_path",
]
