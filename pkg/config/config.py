# config/config.py
"""
主配置文件，包含所有计算流程的配置类和默认设置
"""
import os
import json
from dataclasses import dataclass
from typing import Dict, Any


@dataclass
class EnumerationConfig:
    """理想枚举配置类"""
    max_size: int = 12
    max_ideals: int = 5_000_000
    time_budget_seconds: float = 3600.0
    threads: int = 1

    def __post_init__(self):
        if self.max_size < 0:
            raise ValueError("max_size 不能为负数")
        if self.threads < 1:
            raise ValueError("线程数必须是正整数")


@dataclass
class WindowConfig:
    """覆盖窗口配置类"""
    margin: int = 2
    max_radius: int = 64

    def __post_init__(self):
        if self.margin < 1:
            raise ValueError("窗口边距必须至少为1")


@dataclass
class SeriesConfig:
    """幂级数配置类"""
    # 少于此项数不做递推猜测
    min_recurrence_terms: int = 4


@dataclass
class VerifyConfig:
    """验证配置类"""
    degree_bound: int = 6
    condition_c_max_states: int = 200_000


@dataclass
class OutputConfig:
    """输出配置类"""
    format: str = "human"
    tsv_delimiter: str = "\t"
    export_path: str = "exports"
    encoding: str = "utf-8"

    def __post_init__(self):
        if self.format not in ("human", "tsv"):
            raise ValueError(f"未知的输出格式: {self.format}")


class ConfigManager:
    """配置管理器类"""
    _instance = None
    _config_file = os.path.join(os.path.dirname(__file__), "settings.json")

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self):
        """加载配置文件"""
        self.enumeration = EnumerationConfig()
        self.window = WindowConfig()
        self.series = SeriesConfig()
        self.verify = VerifyConfig()
        self.output = OutputConfig()
        self.logging: Dict[str, Any] = {}

        if not os.path.exists(self._config_file):
            raise FileNotFoundError(f"配置文件未找到: {self._config_file}")

        with open(self._config_file, 'r', encoding='utf-8') as f:
            config_data = json.load(f)
            self._update_config(config_data)

    def _update_config(self, config_data: Dict[str, Any]):
        """更新配置"""
        for section, values in config_data.items():
            if section == 'logging':
                self.logging = dict(values)
                continue
            if hasattr(self, section):
                config_obj = getattr(self, section)
                for key, value in values.items():
                    if hasattr(config_obj, key):
                        setattr(config_obj, key, value)
                # 重新执行数据验证
                if hasattr(config_obj, '__post_init__'):
                    config_obj.__post_init__()

    @classmethod
    def reset(cls):
        """丢弃单例（测试中重新加载配置时使用）"""
        cls._instance = None


def get_config() -> ConfigManager:
    """获取配置管理器实例"""
    return ConfigManager()
