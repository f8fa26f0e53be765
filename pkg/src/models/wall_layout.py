"""壁グラフの座標レイアウト"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class WallLayout:
    """m行 n列位置の壁（頂点 (i,j) の ID は (j-1)*n + (i-1)）"""
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise GraphInputError("wall dimensions must be positive")

    @property
    def n_rows(self) -> int:
        return self.m

    @property
    def n_columns(self) -> int:
        return (self.n + 1) // 2

    def vertex_id(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise GraphInputError(f"coordinate ({i},{j}) outside the {self.m}x{self.n} wall")
        return (j - 1) * self.n + (i - 1)

    def coordinates(self, vertex_id: int) -> Tuple[int, int]:
        if not 0 <= vertex_id < self.m * self.n:
            raise GraphInputError(f"vertex id {vertex_id} outside the wall")
        return (vertex_id % self.n + 1, vertex_id // self.n + 1)

    def row(self, i: int) -> FrozenSet[int]:
        if not 1 <= i <= self.m:
            raise GraphInputError(f"row index {i} out of range 1..{self.m}")
        return frozenset(self.vertex_id(x, i) for x in range(1, self.n + 1))

    def column(self, k: int) -> FrozenSet[int]:
        if not 1 <= k <= self.n_columns:
            raise GraphInputError(f"column index {k} out of range 1..{self.n_columns}")
        xs = range(2 * k - 1, min(2 * k, self.n) + 1)
        return frozenset(self.vertex_id(x, y) for x in xs for y in range(1, self.m + 1))

    def rows(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(self.row(i) for i in range(1, self.m + 1))

    def columns(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(self.column(k) for k in range(1, self.n_columns + 1))

    def contains_row(self, side: Iterable[int]) -> bool:
        side = frozenset(side)
        return any(r <= side for r in self.rows())

    def contains_column(self, side: Iterable[int]) -> bool:
        side = frozenset(side)
        return any(c <= side for c in self.columns())
