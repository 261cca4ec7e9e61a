# config/logging_config.py
"""
日志配置文件，包含所有日志相关的设置
"""
import os
import sys
import logging
from logging.handlers import RotatingFileHandler
from dataclasses import dataclass, fields
from typing import Dict, Any

LEVEL_MAP = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL
}


@dataclass
class LoggingConfig:
    """日志配置类"""
    log_level: int = logging.WARNING
    log_format: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    date_format: str = '%Y-%m-%d %H:%M:%S'
    log_dir: str = 'logs'
    log_file: str = 'tiling_dt.log'
    max_bytes: int = 10 * 1024 * 1024  # 10MB
    backup_count: int = 5
    console_output: bool = True
    file_output: bool = True

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LoggingConfig':
        """从 settings.json 的 logging 段创建配置"""
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in data.items() if k in known}
        level = values.get('log_level')
        if isinstance(level, str):
            values['log_level'] = LEVEL_MAP.get(level.upper(), logging.WARNING)
        return cls(**values)

    def setup_logging(self):
        """配置并初始化日志系统"""
        logger = logging.getLogger()
        logger.setLevel(self.log_level)

        # 清除现有的处理器
        logger.handlers.clear()

        if self.file_output:
            os.makedirs(self.log_dir, exist_ok=True)
            log_path = os.path.join(self.log_dir, self.log_file)
            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=self.max_bytes,
                backupCount=self.backup_count,
                encoding='utf-8'
            )
            file_handler.setFormatter(logging.Formatter(self.log_format, self.date_format))
            logger.addHandler(file_handler)

        # 控制台输出走 stderr，stdout 只留给命令结果
        if self.console_output:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(logging.Formatter(self.log_format, self.date_format))
            logger.addHandler(console_handler)

    def get_logger(self, name: str) -> logging.Logger:
        """获取指定名称的日志记录器"""
        return logging.getLogger(name)

    def set_log_level(self, level: str):
        """动态设置日志级别"""
        if level.upper() in LEVEL_MAP:
            self.log_level = LEVEL_MAP[level.upper()]
            logging.getLogger().setLevel(self.log_level)
