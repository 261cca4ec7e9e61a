"""
统计汇总、导出与配置
"""
from fractions import Fraction

import pytest

from config import ConfigManager, get_config
from engine.ideals import partition_function
from models.ideal import SeriesByDim
from models.tiling import DimVector
from utils.decorators import (EXIT_NOT_CERTIFIED, EXIT_RESOURCE, EXIT_USAGE, EXIT_VALIDATION, UsageError,
                              cli_error_handler, exit_code_for)
from utils.export import DataValidationError, TextExporter, TSVExporter
from utils.statistics import SeriesStatistics


def test_by_size_table(c3):
    stats = SeriesStatistics(partition_function(c3, 0, 3))
    table = stats.by_size()
    assert table['count'].tolist() == [1, 1, 3, 6]
    assert table['terms'].tolist() == [1, 1, 1, 1]
    assert table['x0'].tolist() == [0, 1, 6, 18]
    summary = stats.get_summary()
    assert summary['total'] == 11
    assert summary['authoritative'] is True


def test_by_size_fills_missing_sizes():
    series = SeriesByDim(2, 0, 3)
    series.add(DimVector((1, 0)))
    table = SeriesStatistics(series).by_size()
    assert table['size'].tolist() == [0, 1, 2, 3]
    assert table['count'].tolist() == [0, 1, 0, 0]


def test_empty_series_table():
    table = SeriesStatistics(SeriesByDim(1, 0, 2)).by_size()
    assert table['count'].tolist() == [0, 0, 0]
    assert SeriesStatistics(SeriesByDim(1, 0, 2)).to_lines()[0].startswith("# ")


def test_tsv_exporter(tmp_path):
    path = tmp_path / "out" / "table.tsv"
    written = TSVExporter().export_data(['k', 'value'], [[1, Fraction(1, 2)], [2, Fraction(3)]],
                                        path=str(path), comments=["note"])
    assert written == str(path)
    assert path.read_text(encoding='utf-8').splitlines() == ["# note", "k\tvalue", "1\t1/2", "2\t3"]


def test_exporter_default_directory(tmp_path):
    written = TextExporter(export_dir=str(tmp_path)).export_text("hello\n", filename_prefix="z")
    assert written.startswith(str(tmp_path))
    assert written.endswith(".txt")
    with pytest.raises(DataValidationError):
        TSVExporter(export_dir=str(tmp_path)).export_data(['a', 'b'], [[1]])


def test_exit_codes():
    from engine.cover import WindowError
    from engine.ideals import ConsistencyError, ResourceLimitError
    from models.series import SeriesError
    from models.tiling import TilingParseError

    assert exit_code_for(ConsistencyError("x")) == EXIT_NOT_CERTIFIED
    assert exit_code_for(ResourceLimitError("x")) == EXIT_RESOURCE
    assert exit_code_for(WindowError("x")) == EXIT_RESOURCE
    assert exit_code_for(UsageError("x")) == EXIT_USAGE
    assert exit_code_for(SeriesError("x")) == EXIT_USAGE
    assert exit_code_for(TilingParseError("x", 3)) == EXIT_VALIDATION


def test_error_handler_prints_message(capsys):
    @cli_error_handler
    def failing() -> int:
        raise UsageError("bad flag")

    assert failing() == EXIT_USAGE
    assert "error: bad flag" in capsys.readouterr().err


def test_config_defaults():
    ConfigManager.reset()
    config = get_config()
    assert config is get_config()
    assert config.enumeration.max_size == 12
    assert config.window.margin == 2
    assert config.output.format == "human"
