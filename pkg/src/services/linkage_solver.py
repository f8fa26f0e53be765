"""木リンケージ（指定辺集合を含む辺素な連結部分グラフ）の厳密探索"""
import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from src.models.multigraph import Multigraph
from src.services.graph_operations import GraphOperations
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)

Piece = Tuple[FrozenSet[int], FrozenSet[int]]  # (頂点集合, 辺集合)


class _LinkageSearch:
    """部分ごとに、成分を道でつなぎ合わせる全通りを後戻りで試す"""

    def __init__(self, g: Multigraph, x: FrozenSet[int], parts: List[FrozenSet[int]], budget: SearchBudget):
        self.g = g
        self.x = x
        self.parts = parts
        self.budget = budget
        self.position = {v: i for i, v in enumerate(g.vertices)}
        # 頂点 → (隣接頂点, その間の X 外の辺ID昇順)
        self.links: Dict[int, List[Tuple[int, List[int]]]] = {}
        for v in g.vertices:
            by_neighbor: Dict[int, List[int]] = {}
            for e in g.incident_edges(v):
                if e.id not in x and not e.is_loop:
                    by_neighbor.setdefault(e.other(v), []).append(e.id)
            self.links[v] = sorted(((w, sorted(ids)) for w, ids in by_neighbor.items()),
                                   key=lambda item: self.position[item[0]])

    def solve(self, i: int = 0, used: FrozenSet[int] = frozenset()) -> Optional[List[FrozenSet[int]]]:
        if i == len(self.parts):
            return []
        for tree in self._trees(self.parts[i], used):
            rest = self.solve(i + 1, used | tree)
            if rest is not None:
                return [tree] + rest
        return None

    def _pieces(self, part: FrozenSet[int]) -> List[Piece]:
        ends = self.g.ends_of(part)
        sub = self.g.subgraph(ends, part)
        pieces = []
        for comp in GraphOperations.components(sub):
            pieces.append((comp, frozenset(eid for eid in part if self.g.edge(eid).u in comp)))
        return pieces

    def _trees(self, part: FrozenSet[int], used: FrozenSet[int]) -> Iterator[FrozenSet[int]]:
        pieces = self._pieces(part)
        yield from self._merge(pieces[0], pieces[1:], used)

    def _merge(self, current: Piece, others: List[Piece], used: FrozenSet[int]) -> Iterator[FrozenSet[int]]:
        if not others:
            yield current[1]
            return
        targets = {v: idx for idx, (vertices, _) in enumerate(others) for v in vertices}
        for path_vertices, path_edges, end in self._paths(current[0], targets, used | current[1]):
            idx = targets[end]
            merged = (current[0] | path_vertices | others[idx][0], current[1] | path_edges | others[idx][1])
            yield from self._merge(merged, others[:idx] + others[idx + 1:], used)

    def _paths(self, sources: FrozenSet[int], targets: Dict[int, int],
               blocked: FrozenSet[int]) -> Iterator[Tuple[FrozenSet[int], FrozenSet[int], int]]:
        """sources から最初に targets に達する道を辺数の少ない順に列挙"""
        starts = sorted(sources, key=self.position.__getitem__)
        for length in range(1, self.g.n_vertices):
            for s in starts:
                yield from self._walk(s, length, sources, targets, blocked, [s], [])

    def _walk(self, current: int, remaining: int, sources: FrozenSet[int], targets: Dict[int, int],
              blocked: FrozenSet[int], vertices: List[int], edges: List[int]):
        self.budget.tick()
        for w, ids in self.links[current]:
            if w in sources or w in vertices:
                continue
            eid = next((e for e in ids if e not in blocked), None)
            if eid is None:
                continue
            if w in targets:
                if remaining == 1:
                    yield frozenset(vertices[1:] + [w]), frozenset(edges + [eid]), w
                continue
            if remaining > 1:
                yield from self._walk(w, remaining - 1, sources, targets, blocked, vertices + [w], edges + [eid])


class LinkageSolver:

    @staticmethod
    def tree_linkage(g: Multigraph, x: Iterable[int], parts: Sequence[Iterable[int]]) -> Optional[List[FrozenSet[int]]]:
        """E(T_i) ∩ X = X_i を満たす辺素な連結部分グラフ T_1..T_n（なければ None）

        Raises:
            GraphInputError: parts が X の分割でない場合
            CapacityError: 予算切れ
        """
        x = frozenset(x)
        parts = [frozenset(p) for p in parts]
        for eid in x:
            g.edge(eid)
        seen: Set[int] = set()
        for part in parts:
            if not part:
                raise GraphInputError("every part of X must be nonempty")
            if part & seen:
                raise GraphInputError("parts of X must be disjoint")
            seen |= part
        if seen != x:
            raise GraphInputError("parts must cover X exactly")

        budget = SearchBudget(SettingsService.get_instance().linkage_capacity, 'linkage_capacity')
        trees = _LinkageSearch(g, x, parts, budget).solve()
        logger.debug("tree linkage over %d parts: %s after %d expansions",
                     len(parts), 'found' if trees else 'absent', budget.used)
        return trees
