# utils/decorators.py
import sys
from functools import wraps
from typing import Any, Callable

from utils.logger import get_logger, log_error

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NOT_CERTIFIED = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 4


class UsageError(Exception):
    """命令行参数错误"""
    pass


def exit_code_for(error: BaseException) -> int:
    """异常类型 → 退出码"""
    from database.catalog import BuiltinLookupError
    from engine.cover import WindowError
    from engine.ideals import ConsistencyError, ResourceLimitError
    from models.series import SeriesError

    if isinstance(error, ConsistencyError):
        return EXIT_NOT_CERTIFIED
    if isinstance(error, (ResourceLimitError, WindowError)):
        return EXIT_RESOURCE
    if isinstance(error, (UsageError, BuiltinLookupError, SeriesError, ValueError)):
        return EXIT_USAGE
    return EXIT_VALIDATION


def cli_error_handler(func: Callable[..., int]) -> Callable[..., int]:
    """命令行子命令错误处理装饰器: 记录日志，在 stderr 输出错误并返回退出码"""
    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        try:
            return func(*args, **kwargs)
        except Exception as e:
            code = exit_code_for(e)
            log_error(get_logger(__name__), e, context=f"命令执行失败 ({type(e).__name__}, 退出码 {code})")
            print(f"error: {e}", file=sys.stderr)
            return code
    return wrapper
