# main.py
"""
砖块铺砌 DT 配分函数计算程序入口
"""

import sys
import os
import traceback
from datetime import datetime

# 添加项目根目录到系统路径
project_root = os.path.abspath(os.path.dirname(__file__))
sys.path.insert(0, project_root)

from utils.logger import get_logger, setup_logger  # noqa: E402

logger = get_logger(__name__)


def exception_handler(exc_type, exc_value, exc_traceback):
    """全局异常处理器"""
    try:
        setup_logger(__name__).critical("Uncaught exception:", exc_info=(exc_type, exc_value, exc_traceback))
    except Exception:
        pass  # 确保异常处理器本身不会引发异常

    # 调用默认的异常处理
    sys.__excepthook__(exc_type, exc_value, exc_traceback)


def main(argv=None) -> int:
    """主函数"""
    sys.excepthook = exception_handler
    from ui.cli import run
    return run(argv)


if __name__ == '__main__':
    start_time = datetime.now()

    try:
        exit_code = main()
        logger.info(f'运行时间: {datetime.now() - start_time}')
        sys.exit(exit_code)

    except Exception as e:
        logger.critical(f"程序异常退出: {str(e)}", exc_info=True)
        traceback.print_exc()
        sys.exit(1)
