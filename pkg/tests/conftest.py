"""pytest共通設定とフィクスチャ"""

import os
import sys
import tempfile
from pathlib import Path

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# ユーザーの設定ファイル・環境変数の影響を受けないようにする
os.environ["IMMERSION_LAB_HOME"] = tempfile.mkdtemp(prefix="immersion_lab_test_")
os.environ.pop("IMMERSION_LAB_CAPACITY", None)

import pytest
from hypothesis import HealthCheck, settings

from src.models.multigraph import Multigraph
from src.services.graph_generator import GraphGenerator
from src.services.settings_service import SettingsService

settings.register_profile(
    "default", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.register_profile(
    "ci", max_examples=200, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def fresh_settings():
    """テストごとに設定シングルトンを作り直す"""
    SettingsService.reset()
    yield
    SettingsService.reset()


@pytest.fixture
def triangle():
    """C3"""
    return GraphGenerator.cycle(3)


@pytest.fixture
def k4():
    return GraphGenerator.complete(4)


@pytest.fixture
def doubled_c4():
    """各辺が2重の4-閉路"""
    return GraphGenerator.doubled_cycle(4)


@pytest.fixture
def star3():
    """K1,3（中心0）"""
    return GraphGenerator.star(3)


@pytest.fixture
def path3():
    """a–b–c の道（0–1–2）"""
    return GraphGenerator.path(3)


@pytest.fixture
def two_triangles_bridge():
    """橋 2–3 で結んだ2つの三角形"""
    return Multigraph.from_edges(
        range(6),
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
    )


@pytest.fixture
def graph_text():
    """テキスト形式の C3"""
    return "v 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\n"
