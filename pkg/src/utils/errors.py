"""immersion-lab 共通例外"""
from typing import Optional


class ImmersionLabError(Exception):
    """immersion-lab 関連エラー基底クラス"""
    pass


class GraphInputError(ImmersionLabError):
    """入力エラー（不正なグラフ・未知のID・事前条件違反）"""
    pass


class CapacityError(ImmersionLabError):
    """探索予算・列挙上限の超過"""

    def __init__(self, message: str, budget: Optional[str] = None):
        super().__init__(message)
        self.budget = budget
