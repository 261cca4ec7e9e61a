"""
内置铺砌目录

各内置铺砌以铺砌文件格式保存，平移量取自平面周期箭图的一个基本区域。
印刷箭图中的顶点标号按 label mod N 映射为索引（spp 的 3 → 0，dP3 的 6 → 0），
因此 --vertex 1 总是印刷标号中的顶点 1。
"""
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from models.tiling import TilingError, TilingSpec, validate_tiling
from utils.logger import get_logger
from .tiling_reader import parse_tiling

logger = get_logger(__name__)


class BuiltinLookupError(TilingError):
    """内置铺砌名称未知或参数缺失/无效"""
    pass


C3_TEXT = """\
# C^3: W = xyz - xzy
vertices 1
arrow x 0 0 1 0
arrow y 0 0 0 1
arrow z 0 0 -1 -1
face + x y z
face - x z y
"""

CONIFOLD_TEXT = """\
# conifold: W = x0 x1 y1 y0 - x1 x0 y0 y1
vertices 2
arrow x0 0 1 0 0
arrow x1 1 0 1 0
arrow y0 1 0 0 1
arrow y1 0 1 -1 -1
face + x0 x1 y1 y0
face - x1 x0 y0 y1
"""

SPP_TEXT = """\
# suspended pinch point: W = x21 x12 x23 x32 - x32 x23 x31 x13 + x13 x31 x11 - x12 x21 x11
# vertex 3 of the printed quiver is index 0
vertices 3
arrow x11 1 1 1 0
arrow x12 1 2 0 0
arrow x21 2 1 -1 0
arrow x23 2 0 0 1
arrow x32 0 2 1 -1
arrow x13 1 0 0 0
arrow x31 0 1 -1 0
face + x21 x12 x23 x32
face - x32 x23 x31 x13
face + x13 x31 x11
face - x12 x21 x11
"""

DP3_TEXT = """\
# dP3 model I; vertex 6 of the printed quiver is index 0
vertices 6
arrow x12 1 2 0 0
arrow x23 2 3 0 0
arrow x34 3 4 0 0
arrow x45 4 5 0 0
arrow x56 5 0 0 0
arrow x61 0 1 0 0
arrow x13 1 3 1 0
arrow x35 3 5 0 1
arrow x51 5 1 -1 -1
arrow x24 2 4 1 1
arrow x46 4 0 -1 0
arrow x62 0 2 0 -1
face + x12 x23 x34 x45 x56 x61
face + x13 x35 x51
face + x24 x46 x62
face - x23 x35 x56 x62
face - x13 x34 x46 x61
face - x12 x24 x45 x51
"""


def c3_zn_text(n: int) -> str:
    """C^3/Z_n，群作用 1/n(1,0,-1)

    格点 (a,b) 的标号为 (a-b) mod n，周期格由 (1,1) 和 (n,0) 生成。
    面循环按首尾相接的顺序保存，即势函数中单词书写顺序的逆序。
    """
    lines = [f"# C^3/Z_{n}", f"vertices {n}"]
    last = n - 1
    for i in range(n):
        shift = (0, 1) if i == last else (0, 0)
        lines.append(f"arrow x{i} {i} {(i + 1) % n} {shift[0]} {shift[1]}")
    for i in range(n):
        shift = (1, -1) if i == last else (1, 0)
        lines.append(f"arrow y{i} {(i + 1) % n} {i} {shift[0]} {shift[1]}")
    for i in range(n):
        lines.append(f"arrow z{i} {i} {i} -1 0")
    for i in range(n):
        lines.append(f"face + z{(i + 1) % n} y{i} x{i}")
        lines.append(f"face - x{i} y{i} z{i}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BuiltinInfo:
    """内置铺砌说明"""
    name: str
    description: str
    needs_param: bool = False


BUILTINS: Tuple[BuiltinInfo, ...] = (
    BuiltinInfo('c3', 'C^3, one vertex, plane partitions'),
    BuiltinInfo('conifold', 'conifold, pyramid partitions'),
    BuiltinInfo('c3-zn', 'C^3/Z_n with action 1/n(1,0,-1), parameter n >= 2', needs_param=True),
    BuiltinInfo('spp', 'suspended pinch point'),
    BuiltinInfo('dp3', 'dP3 model I'),
)

_STATIC = {'c3': C3_TEXT, 'conifold': CONIFOLD_TEXT, 'spp': SPP_TEXT, 'dp3': DP3_TEXT}


class TilingCatalog:
    """内置铺砌目录类，单例并缓存已构造的铺砌"""

    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
                cls._instance._cache = {}
            return cls._instance

    def get(self, name: str, param: Optional[int] = None) -> TilingSpec:
        """
        获取内置铺砌

        Raises:
            BuiltinLookupError: 名称未知或参数缺失/无效
            TilingError: 内置数据未通过校验
        """
        key = (name, param)
        with self._lock:
            if key in self._cache:
                return self._cache[key]

        if name == 'c3-zn':
            if param is None:
                raise BuiltinLookupError("builtin c3-zn requires a parameter n >= 2")
            if param < 2:
                raise BuiltinLookupError(f"builtin c3-zn requires n >= 2, got {param}")
            text = c3_zn_text(param)
            label = f"c3-z{param}"
        elif name in _STATIC:
            if param is not None:
                raise BuiltinLookupError(f"builtin {name} takes no parameter")
            text = _STATIC[name]
            label = name
        else:
            raise BuiltinLookupError(f"unknown builtin tiling '{name}'")

        tiling = parse_tiling(text, name=label)
        report = validate_tiling(tiling)
        if not report.ok:
            # 内置数据出错属于程序缺陷
            raise TilingError(f"builtin {label} failed validation: {report.violations[0]}")
        logger.debug(f"加载内置铺砌 {label}")

        with self._lock:
            self._cache[key] = tiling
        return tiling

    def list(self) -> List[BuiltinInfo]:
        return list(BUILTINS)


def builtin_tiling(name: str, param: Optional[int] = None) -> TilingSpec:
    """按名称获取内置铺砌"""
    return TilingCatalog().get(name, param)


def list_builtins() -> List[BuiltinInfo]:
    return TilingCatalog().list()
