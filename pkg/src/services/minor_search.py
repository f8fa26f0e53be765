"""マイナー・ソーンズの厳密探索"""
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Set

from src.models.immersion import MinorModel, Thorns
from src.models.multigraph import Multigraph
from src.services.graph_transformer import GraphTransformer
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class _MinorSearch:
    """パターン頂点ごとに未使用頂点の連結部分集合を小さい順に割り当てる"""

    def __init__(self, g: Multigraph, h: Multigraph, budget: SearchBudget):
        self.g = g
        self.h = h
        self.budget = budget
        self.position = {v: i for i, v in enumerate(g.vertices)}
        self.adjacency = {v: g.neighbors(v) for v in g.vertices}
        self.pattern_adjacency = {v: h.neighbors(v) for v in h.vertices}
        self.order = self._order()
        self.assigned: Dict[int, FrozenSet[int]] = {}
        self.used: Set[int] = set()

    def _order(self) -> List[int]:
        remaining = sorted(self.h.vertices, key=lambda v: (-len(self.pattern_adjacency[v]), v))
        order: List[int] = []
        while remaining:
            placed = set(order)
            best = max(remaining, key=lambda v: len(self.pattern_adjacency[v] & placed))
            order.append(best)
            remaining.remove(best)
        return order

    def connected_subsets(self, max_size: int) -> Iterator[FrozenSet[int]]:
        """未使用頂点上の連結部分集合（各集合は最小位置の頂点を根に1回だけ現れる）"""
        free = [v for v in self.g.vertices if v not in self.used]
        for root in free:
            rank = self.position[root]

            def extend(sub: FrozenSet[int], frontier: FrozenSet[int], extension: List[int]):
                self.budget.tick()
                yield sub
                if len(sub) == max_size:
                    return
                pending = list(extension)
                while pending:
                    w = pending.pop()
                    exclusive = [u for u in self.adjacency[w]
                                 if u not in self.used and self.position[u] > rank
                                 and u not in sub and u not in frontier]
                    yield from extend(sub | {w}, frontier | self.adjacency[w], pending + exclusive)

            start = [u for u in self.adjacency[root] if u not in self.used and self.position[u] > rank]
            yield from extend(frozenset((root,)), self.adjacency[root] | {root}, start)

    def _touches(self, first: FrozenSet[int], second: FrozenSet[int]) -> bool:
        return any(self.adjacency[v] & second for v in first)

    def solve(self, idx: int = 0) -> Optional[Dict[int, FrozenSet[int]]]:
        if idx == len(self.order):
            return dict(self.assigned)
        v = self.order[idx]
        spare = self.g.n_vertices - len(self.used) - (len(self.order) - idx - 1)
        if spare < 1:
            return None
        placed_neighbors = [self.assigned[u] for u in self.pattern_adjacency[v] if u in self.assigned]
        candidates = sorted(self.connected_subsets(spare),
                            key=lambda s: (len(s), sorted(self.position[x] for x in s)))
        for branch_set in candidates:
            if not all(self._touches(branch_set, other) for other in placed_neighbors):
                continue
            self.assigned[v] = branch_set
            self.used |= branch_set
            found = self.solve(idx + 1)
            if found is not None:
                return found
            del self.assigned[v]
            self.used -= branch_set
        return None


class MinorSearch:

    @staticmethod
    def find_minor(g: Multigraph, h: Multigraph, capacity: Optional[int] = None) -> Optional[MinorModel]:
        """H-マイナーモデルを返す。存在しなければ None

        Raises:
            GraphInputError: H が単純グラフでない場合
            CapacityError: 予算切れ
        """
        if not h.is_simple():
            raise GraphInputError("minor search needs a simple pattern")
        if h.n_vertices > g.n_vertices:
            return None
        budget = SearchBudget(capacity or SettingsService.get_instance().minor_capacity, 'minor_capacity')
        branch_sets = _MinorSearch(g, h, budget).solve()
        logger.debug("find_minor |V(G)|=%d |V(H)|=%d: %s after %d expansions",
                     g.n_vertices, h.n_vertices, 'found' if branch_sets else 'absent', budget.used)
        if branch_sets is None:
            return None
        return MinorModel(pattern=h, host=g, branch_sets=branch_sets)

    @staticmethod
    def find_thorns(g: Multigraph, h: Multigraph, capacity: Optional[int] = None) -> Optional[Thorns]:
        """L(G) の H-マイナーを辺集合に引き戻して H-ソーンズを得る"""
        line, edge_to_vertex = GraphTransformer.line_graph(g)
        model = MinorSearch.find_minor(line, h, capacity=capacity)
        if model is None:
            return None
        vertex_to_edge = {x: eid for eid, x in edge_to_vertex.items()}
        branch_sets = {v: frozenset(vertex_to_edge[x] for x in s) for v, s in model.branch_sets.items()}
        return Thorns(pattern=h, host=g, branch_sets=branch_sets)
