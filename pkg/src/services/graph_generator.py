"""名前付きグラフ族の生成サービス"""
import logging
from typing import List, Tuple

from src.models.multigraph import EdgeCut, Multigraph
from src.models.wall_layout import WallLayout
from src.services.graph_transformer import GraphTransformer
from src.utils.constants import COMPLETE_ALIASES, CYCLE_ALIAS_RANGE, THETA_ALIASES
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


def _require_positive(**values: int):
    for name, value in values.items():
        if value < 1:
            raise GraphInputError(f"{name} must be positive, got {value}")


class GraphGenerator:
    """壁・格子・シータ・閉路などの生成"""

    # 壁
    @staticmethod
    def wall(m: int, n: int) -> Multigraph:
        """m行の壁（各行 n 頂点）

        水平辺 (i,j)(i+1,j)、縦辺 (2a-1,2b-1)(2a-1,2b) と (2a,2b)(2a,2b+1)。
        """
        _require_positive(m=m, n=n)
        layout = WallLayout(m, n)
        pairs: List[Tuple[int, int]] = []
        for j in range(1, m + 1):
            for i in range(1, n):
                pairs.append((layout.vertex_id(i, j), layout.vertex_id(i + 1, j)))
        for a in range(1, (n + 1) // 2 + 1):
            for b in range(1, m // 2 + 1):
                pairs.append((layout.vertex_id(2 * a - 1, 2 * b - 1), layout.vertex_id(2 * a - 1, 2 * b)))
        for a in range(1, n // 2 + 1):
            for b in range(1, (m - 1) // 2 + 1):
                pairs.append((layout.vertex_id(2 * a, 2 * b), layout.vertex_id(2 * a, 2 * b + 1)))
        return Multigraph.from_edges(range(m * n), pairs)

    @staticmethod
    def square_wall(r: int) -> Multigraph:
        """r行 r列の壁（m=r, n=2r）"""
        _require_positive(r=r)
        return GraphGenerator.wall(r, 2 * r)

    @staticmethod
    def square_wall_layout(r: int) -> WallLayout:
        _require_positive(r=r)
        return WallLayout(r, 2 * r)

    @staticmethod
    def row(layout: WallLayout, i: int):
        return layout.row(i)

    @staticmethod
    def column(layout: WallLayout, k: int):
        return layout.column(k)

    @staticmethod
    def diagonal_vertices(r: int) -> Tuple[Tuple[int, int], ...]:
        """対角頂点 ((2i-1, i))_{i=1..r}"""
        _require_positive(r=r)
        return tuple((2 * i - 1, i) for i in range(1, r + 1))

    @staticmethod
    def small_cut_conclusions(layout: WallLayout, cut: EdgeCut) -> Tuple[bool, bool, bool]:
        """小さいカットに対する三つの結論

        Returns:
            (ちょうど一方が列を含む, ちょうど一方が行を含む, Aが列を含む ⇔ Aが行を含む)
        """
        a_col = layout.contains_column(cut.side_a)
        b_col = layout.contains_column(cut.side_b)
        a_row = layout.contains_row(cut.side_a)
        b_row = layout.contains_row(cut.side_b)
        return (a_col != b_col, a_row != b_row, a_col == a_row)

    # 格子・シータ
    @staticmethod
    def grid(m: int, n: int) -> Multigraph:
        """{1..n}×{1..m} の格子（(x,y) の ID は (y-1)*n + (x-1)）"""
        _require_positive(m=m, n=n)
        vid = lambda x, y: (y - 1) * n + (x - 1)
        pairs = [(vid(x, y), vid(x + 1, y)) for y in range(1, m + 1) for x in range(1, n)]
        pairs += [(vid(x, y), vid(x, y + 1)) for y in range(1, m) for x in range(1, n + 1)]
        return Multigraph.from_edges(range(m * n), pairs)

    @staticmethod
    def theta_graph(r: int) -> Multigraph:
        """2頂点を r 本の平行辺で結ぶ"""
        _require_positive(r=r)
        return Multigraph.from_edges((0, 1), [(0, 1)] * r)

    # 基本族
    @staticmethod
    def path(n: int) -> Multigraph:
        _require_positive(n=n)
        return Multigraph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> Multigraph:
        """n ≥ 1（n=1 はループ、n=2 は2-閉路）"""
        _require_positive(n=n)
        return Multigraph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def doubled_cycle(n: int) -> Multigraph:
        return GraphTransformer.duplicate_edges(GraphGenerator.cycle(n), 2)[0]

    @staticmethod
    def complete(n: int) -> Multigraph:
        _require_positive(n=n)
        return Multigraph.from_edges(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])

    @staticmethod
    def doubled_complete(n: int) -> Multigraph:
        return GraphTransformer.duplicate_edges(GraphGenerator.complete(n), 2)[0]

    @staticmethod
    def star(d: int) -> Multigraph:
        """中心0、葉1..d"""
        if d < 0:
            raise GraphInputError("star degree must be nonnegative")
        return Multigraph.from_edges(range(d + 1), [(0, i) for i in range(1, d + 1)])

    @staticmethod
    def empty(n: int) -> Multigraph:
        if n < 0:
            raise GraphInputError("vertex count must be nonnegative")
        return Multigraph(tuple(range(n)), ())

    @staticmethod
    def pattern(alias: str) -> Multigraph:
        """組み込みパターン別名（k2..k4, theta2..theta4, c3..c8）"""
        name = alias.strip().lower()
        if name.startswith('theta') and name[5:].isdigit() and int(name[5:]) in THETA_ALIASES:
            return GraphGenerator.theta_graph(int(name[5:]))
        if name.startswith('k') and name[1:].isdigit() and int(name[1:]) in COMPLETE_ALIASES:
            return GraphGenerator.complete(int(name[1:]))
        if name.startswith('c') and name[1:].isdigit() and int(name[1:]) in CYCLE_ALIAS_RANGE:
            return GraphGenerator.cycle(int(name[1:]))
        raise GraphInputError(f"unknown pattern alias {alias!r}")

    @staticmethod
    def is_pattern_alias(alias: str) -> bool:
        try:
            GraphGenerator.pattern(alias)
            return True
        except GraphInputError:
            return False
