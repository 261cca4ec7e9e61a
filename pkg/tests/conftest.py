"""
测试公共夹具
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from database import builtin_tiling  # noqa: E402
from engine.cover import build_cover  # noqa: E402


@pytest.fixture(scope='session')
def c3():
    return builtin_tiling('c3')


@pytest.fixture(scope='session')
def conifold():
    return builtin_tiling('conifold')


@pytest.fixture(scope='session')
def spp():
    return builtin_tiling('spp')


@pytest.fixture(scope='session')
def dp3():
    return builtin_tiling('dp3')


@pytest.fixture(scope='session')
def c3_cover(c3):
    return build_cover(c3, 0, 6)


@pytest.fixture(scope='session')
def conifold_cover(conifold):
    return build_cover(conifold, 0, 6)
