"""
铺砌文件读取

行格式（UTF-8，'#' 开始注释，空白分隔）:
    vertices <N>
    arrow <name> <src> <dst> <dx> <dy>
    face <+|-> <arrow-name> <arrow-name> ...
"""
import os
import re
from typing import List

from models.tiling import ArrowSpec, FaceSpec, TilingParseError, TilingSpec
from utils.logger import get_logger

logger = get_logger(__name__)

ARROW_NAME = re.compile(r'^[A-Za-z0-9_]+$')

# 声明顺序: vertices → arrow → face
_STAGES = {'vertices': 0, 'arrow': 1, 'face': 2}


def _parse_int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise TilingParseError(f"{what} must be an integer, got '{token}'", line_no)


def parse_tiling(text: str, name: str = "tiling") -> TilingSpec:
    """
    解析铺砌文本

    只检查语法层面的约束；语义不变量由 validate_tiling 检查。

    Raises:
        TilingParseError: 语法错误、重复箭头名或面引用了未声明的箭头
    """
    vertex_count = None
    arrows: List[ArrowSpec] = []
    faces: List[FaceSpec] = []
    seen = set()
    stage = -1

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword not in _STAGES:
            raise TilingParseError(f"unknown keyword '{keyword}'", line_no)
        if _STAGES[keyword] < stage or (keyword != 'vertices' and stage < 0):
            raise TilingParseError(f"'{keyword}' declared out of order (expected vertices, arrows, faces)", line_no)
        stage = _STAGES[keyword]

        if keyword == 'vertices':
            if vertex_count is not None:
                raise TilingParseError("vertices declared twice", line_no)
            if len(tokens) != 2:
                raise TilingParseError("expected: vertices <N>", line_no)
            vertex_count = _parse_int(tokens[1], "vertex count", line_no)
            if vertex_count <= 0:
                raise TilingParseError("vertex count must be positive", line_no)

        elif keyword == 'arrow':
            if len(tokens) != 6:
                raise TilingParseError("expected: arrow <name> <src> <dst> <dx> <dy>", line_no)
            arrow_name = tokens[1]
            if not ARROW_NAME.match(arrow_name):
                raise TilingParseError(f"invalid arrow name '{arrow_name}'", line_no)
            if arrow_name in seen:
                raise TilingParseError(f"duplicate arrow name '{arrow_name}'", line_no)
            src = _parse_int(tokens[2], "src", line_no)
            dst = _parse_int(tokens[3], "dst", line_no)
            for endpoint in (src, dst):
                if not 0 <= endpoint < vertex_count:
                    raise TilingParseError(f"vertex {endpoint} out of range 0..{vertex_count - 1}", line_no)
            shift = (_parse_int(tokens[4], "dx", line_no), _parse_int(tokens[5], "dy", line_no))
            seen.add(arrow_name)
            arrows.append(ArrowSpec(arrow_name, src, dst, shift))

        else:
            if len(tokens) < 3:
                raise TilingParseError("expected: face <+|-> <arrow> ...", line_no)
            if tokens[1] not in ('+', '-'):
                raise TilingParseError(f"face sign must be + or -, got '{tokens[1]}'", line_no)
            cycle = tuple(tokens[2:])
            for arrow_name in cycle:
                if arrow_name not in seen:
                    raise TilingParseError(f"unknown arrow '{arrow_name}'", line_no)
            faces.append(FaceSpec(1 if tokens[1] == '+' else -1, cycle))

    if vertex_count is None:
        raise TilingParseError("missing 'vertices' declaration")
    if not arrows:
        raise TilingParseError("no arrows declared")
    if not faces:
        raise TilingParseError("no faces declared")

    logger.debug(f"解析铺砌 {name}: {vertex_count} 顶点, {len(arrows)} 箭头, {len(faces)} 面")
    return TilingSpec(vertex_count, tuple(arrows), tuple(faces), name=name)


def read_tiling_file(path: str) -> TilingSpec:
    """读取铺砌文件"""
    if not os.path.exists(path):
        raise TilingParseError(f"tiling file not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_tiling(text, name=name)
