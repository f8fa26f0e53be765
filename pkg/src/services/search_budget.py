"""探索ノード展開数の予算管理"""
from src.utils.errors import CapacityError


class SearchBudget:
    """展開回数が上限を超えたら CapacityError を送出する"""

    def __init__(self, limit: int, name: str):
        self.limit = limit
        self.name = name
        self.used = 0

    def tick(self, amount: int = 1):
        self.used += amount
        if self.used > self.limit:
            raise CapacityError(f"{self.name} exceeded its budget of {self.limit} expansions", self.name)

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.used)
