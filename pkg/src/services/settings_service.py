import json
import logging
import os
from pathlib import Path
from typing import Optional

from src.utils.constants import (
    CAPACITY_ENV_VAR, CROSSING_SET_LIMIT, CUT_SWEEP_MAX_VERTICES,
    DEFAULT_COVER_CAPACITY, DEFAULT_LINKAGE_CAPACITY, DEFAULT_MINOR_CAPACITY,
    DEFAULT_PACKING_CAPACITY, DEFAULT_SEARCH_CAPACITY, DEFAULT_TANGLE_SEARCH_CAPACITY,
    HOME_ENV_VAR, SEPARATION_LIMIT, SETTINGS_DIR_NAME, SETTINGS_FILE_NAME, SHELL_MAX_VERTICES,
)
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class SettingsService:
    """探索予算・列挙上限を管理するサービス"""

    _instance = None
    _settings = None
    _stored = None
    _settings_file = None

    # 環境変数 IMMERSION_LAB_CAPACITY で一括上書きされる予算キー
    BUDGET_KEYS = (
        'search_capacity', 'minor_capacity', 'packing_capacity',
        'cover_capacity', 'linkage_capacity', 'tangle_search_capacity',
    )

    # デフォルト設定
    DEFAULTS = {
        'search_capacity': DEFAULT_SEARCH_CAPACITY,
        'minor_capacity': DEFAULT_MINOR_CAPACITY,
        'packing_capacity': DEFAULT_PACKING_CAPACITY,
        'cover_capacity': DEFAULT_COVER_CAPACITY,
        'linkage_capacity': DEFAULT_LINKAGE_CAPACITY,
        'tangle_search_capacity': DEFAULT_TANGLE_SEARCH_CAPACITY,
        'cut_sweep_max_vertices': CUT_SWEEP_MAX_VERTICES,
        'separation_limit': SEPARATION_LIMIT,
        'crossing_set_limit': CROSSING_SET_LIMIT,
        'shell_max_vertices': SHELL_MAX_VERTICES,
    }

    @classmethod
    def get_instance(cls) -> 'SettingsService':
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def reset(cls):
        """シングルトンを破棄（テスト用）"""
        cls._instance = None

    def __init__(self):
        self._settings_file = self._get_settings_path()
        self._stored = self._load_stored()
        self._settings = self._apply_override(self._stored)

    def _get_settings_path(self) -> Path:
        """設定ファイルのパスを取得"""
        home = os.environ.get(HOME_ENV_VAR)
        settings_dir = Path(home) if home else Path(os.path.expanduser('~')) / SETTINGS_DIR_NAME
        return settings_dir / SETTINGS_FILE_NAME

    def _load_stored(self) -> dict:
        """デフォルトを設定ファイルで上書き"""
        settings = self.DEFAULTS.copy()

        if self._settings_file.exists():
            try:
                with open(self._settings_file, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                for key, value in loaded.items():
                    if key in self.DEFAULTS:
                        settings[key] = int(value)
            except (OSError, ValueError, TypeError, AttributeError) as e:
                logger.warning("ignoring unreadable settings file %s: %s", self._settings_file, e)
        return settings

    def _apply_override(self, stored: dict) -> dict:
        """環境変数 IMMERSION_LAB_CAPACITY で全予算キーを上書き"""
        settings = dict(stored)
        override = self._capacity_override()
        if override is not None:
            for key in self.BUDGET_KEYS:
                settings[key] = override
        return settings

    @staticmethod
    def _capacity_override() -> Optional[int]:
        raw = os.environ.get(CAPACITY_ENV_VAR)
        if raw is None or raw.strip() == '':
            return None
        try:
            value = int(raw)
        except ValueError:
            raise GraphInputError(f"{CAPACITY_ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 1:
            raise GraphInputError(f"{CAPACITY_ENV_VAR} must be positive, got {value}")
        return value

    def save_settings(self) -> bool:
        """設定を保存（環境変数による上書きは保存しない）"""
        try:
            self._settings_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self._settings_file, 'w', encoding='utf-8') as f:
                json.dump(self._stored, f, ensure_ascii=False, indent=2)
            return True
        except OSError as e:
            logger.error("failed to save settings: %s", e)
            return False

    def get(self, key: str, default=None):
        """設定値を取得"""
        return self._settings.get(key, default if default is not None else self.DEFAULTS.get(key))

    def set(self, key: str, value):
        """設定値を変更（保存はしない）"""
        if key not in self.DEFAULTS:
            raise GraphInputError(f"unknown setting {key!r}")
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise GraphInputError(f"setting {key} must be an integer, got {value!r}") from None
        if number < 1:
            raise GraphInputError(f"setting {key} must be positive, got {number}")
        self._stored[key] = number
        self._settings[key] = number

    def to_dict(self) -> dict:
        """有効な設定値（環境変数の上書きを含む）"""
        return dict(self._settings)

    @property
    def settings_file(self) -> Path:
        return self._settings_file

    # 便利なプロパティ
    @property
    def search_capacity(self) -> int:
        return self.get('search_capacity')

    @property
    def minor_capacity(self) -> int:
        return self.get('minor_capacity')

    @property
    def packing_capacity(self) -> int:
        return self.get('packing_capacity')

    @property
    def cover_capacity(self) -> int:
        return self.get('cover_capacity')

    @property
    def linkage_capacity(self) -> int:
        return self.get('linkage_capacity')

    @property
    def tangle_search_capacity(self) -> int:
        return self.get('tangle_search_capacity')

    @property
    def cut_sweep_max_vertices(self) -> int:
        return self.get('cut_sweep_max_vertices')

    @property
    def separation_limit(self) -> int:
        return self.get('separation_limit')

    @property
    def crossing_set_limit(self) -> int:
        return self.get('crossing_set_limit')

    @property
    def shell_max_vertices(self) -> int:
        return self.get('shell_max_vertices')
