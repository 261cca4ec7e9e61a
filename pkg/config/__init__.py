"""
配置模块初始化文件
用于导出配置变量和确保配置模块的正确加载
"""
from typing import Optional

from .config import (
    EnumerationConfig,
    WindowConfig,
    SeriesConfig,
    VerifyConfig,
    OutputConfig,
    ConfigManager,
    get_config
)
from .logging_config import LoggingConfig


def init_config_and_logging(log_level: Optional[str] = None, log_file: bool = True):
    """
    初始化配置和日志系统的便捷函数

    Args:
        log_level: 覆盖 settings.json 中的日志级别
        log_file: 是否写入轮转日志文件
    """
    config = get_config()
    logging_config = LoggingConfig.from_dict(config.logging)
    logging_config.file_output = logging_config.file_output and log_file
    if log_level:
        logging_config.set_log_level(log_level)
    logging_config.setup_logging()
    logger = logging_config.get_logger(__name__)
    logger.info("配置和日志系统已初始化")
    return config, logger


__all__ = [
    'EnumerationConfig',
    'WindowConfig',
    'SeriesConfig',
    'VerifyConfig',
    'OutputConfig',
    'ConfigManager',
    'LoggingConfig',
    'get_config',
    'init_config_and_logging'
]
