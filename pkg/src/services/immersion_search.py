"""厳密なイマージョン探索サービス（小規模向けバックトラッキング）"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from src.models.immersion import Immersion
from src.models.multigraph import Edge, Multigraph
from src.models.pattern import PlusGraph
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class _RouteSearch:
    """枝頂点の選択とルーティングを交互に行う深さ優先探索

    パターン頂点は「配置済み頂点への辺が多い順 → 次数の降順 → ID」で並べ、
    両端が配置された時点でその辺をルーティングする。ルートは短い順に試す。
    平行辺のクラスでは未使用の最小ID辺だけを使う（対称性の除去）。
    """

    def __init__(self, g: Multigraph, h: Multigraph, budget: SearchBudget,
                 fixed_branch: Optional[Mapping[int, int]] = None,
                 forbidden_edges: Iterable[int] = (),
                 vertex_classes: Optional[Mapping[int, Iterable[int]]] = None,
                 edge_groups: Optional[Mapping[int, int]] = None):
        self.g = g
        self.h = h
        self.budget = budget
        self.fixed = dict(fixed_branch or {})
        self.forbidden = frozenset(forbidden_edges)
        self.classes = {v: frozenset(c) for v, c in (vertex_classes or {}).items()}
        self.groups = dict(edge_groups) if edge_groups else None
        self._validate()

        has_pattern_loop = any(e.is_loop for e in h.edges)
        self.break_symmetry = self.groups is None or not has_pattern_loop

        self.position = {v: i for i, v in enumerate(g.vertices)}
        self.adjacency: Dict[int, List[Tuple[int, List[int]]]] = {}
        self.loops: Dict[int, List[int]] = {}
        for x in g.vertices:
            by_neighbor: Dict[int, List[int]] = {}
            loops: List[int] = []
            for e in g.incident_edges(x):
                if e.id in self.forbidden:
                    continue
                if e.is_loop:
                    loops.append(e.id)
                else:
                    by_neighbor.setdefault(e.other(x), []).append(e.id)
            self.adjacency[x] = sorted(((y, sorted(ids)) for y, ids in by_neighbor.items()),
                                       key=lambda item: self.position[item[0]])
            self.loops[x] = sorted(loops)

        self.used: Set[int] = set()
        self.route_groups: Set[int] = set()
        self.branch: Dict[int, int] = {}
        self.taken: Set[int] = set()
        self.routes: Dict[int, Tuple[int, ...]] = {}
        self.order, self.batches = self._plan()

    def _validate(self):
        for v, x in self.fixed.items():
            self.h.require_vertex(v)
            self.g.require_vertex(x)
        if len(set(self.fixed.values())) != len(self.fixed):
            raise GraphInputError("fixed branch map is not injective")
        for eid in self.forbidden:
            self.g.edge(eid)
        for v, allowed in self.classes.items():
            self.h.require_vertex(v)
            for x in allowed:
                self.g.require_vertex(x)

    def _plan(self) -> Tuple[List[int], List[List[Edge]]]:
        h = self.h
        degree = {v: h.degree(v) for v in h.vertices}
        remaining = [v for v in h.vertices if degree[v] > 0]
        order: List[int] = []
        placed: Set[int] = set()
        while remaining:
            def priority(v):
                links = sum(1 for e in h.incident_edges(v) if e.other(v) in placed and not e.is_loop)
                return (-links, -degree[v], v)
            best = min(remaining, key=priority)
            order.append(best)
            placed.add(best)
            remaining.remove(best)
        order += sorted(v for v in h.vertices if degree[v] == 0)

        index = {v: i for i, v in enumerate(order)}
        batches: List[List[Edge]] = [[] for _ in order]
        for e in h.edges:
            batches[max(index[e.u], index[e.v])].append(e)
        for batch in batches:
            batch.sort(key=lambda e: (-(degree[e.u] + degree[e.v]), e.id))
        return order, batches

    # 探索本体
    def solutions(self) -> Iterator[Immersion]:
        if self.h.n_vertices > self.g.n_vertices:
            return
        if self.h.n_edges > self.g.n_edges - len(self.forbidden):
            return
        yield from self._place(0)

    def _snapshot(self) -> Immersion:
        return Immersion(pattern=self.h, host=self.g, branch=dict(self.branch),
                         routes={k: self.routes[k] for k in sorted(self.routes)})

    def _free_degree(self, x: int) -> int:
        free = sum(1 for _, ids in self.adjacency[x] for eid in ids if eid not in self.used)
        return free + 2 * sum(1 for eid in self.loops[x] if eid not in self.used)

    def _candidates(self, v: int) -> List[int]:
        need = self.h.degree(v)
        if v in self.fixed:
            pool = [self.fixed[v]]
        else:
            fixed_targets = set(self.fixed.values())
            pool = [x for x in self.g.vertices if x not in fixed_targets]
        if v in self.classes:
            pool = [x for x in pool if x in self.classes[v]]
        pool = [x for x in pool if x not in self.taken and self._free_degree(x) >= need]
        return sorted(pool, key=lambda x: (-self._free_degree(x), self.position[x]))

    def _place(self, idx: int) -> Iterator[Immersion]:
        if idx == len(self.order):
            yield self._snapshot()
            return
        v = self.order[idx]
        for x in self._candidates(v):
            self.budget.tick()
            self.branch[v] = x
            self.taken.add(x)
            try:
                yield from self._route_batch(idx, 0)
            finally:
                del self.branch[v]
                self.taken.discard(x)

    def _route_batch(self, idx: int, j: int) -> Iterator[Immersion]:
        batch = self.batches[idx]
        if j == len(batch):
            yield from self._place(idx + 1)
            return
        unrouted = sum(len(b) for b in self.batches[idx:]) - j
        if unrouted > self.g.n_edges - len(self.forbidden) - len(self.used):
            return
        e = batch[j]
        if e.is_loop:
            routes = self._cycles(self.branch[e.u])
        else:
            routes = self._paths(self.branch[e.u], self.branch[e.v])
        for route in routes:
            self.routes[e.id] = route
            try:
                yield from self._route_batch(idx, j + 1)
            finally:
                del self.routes[e.id]

    # ルート生成
    def _edge_choices(self, ids: List[int]) -> Iterator[int]:
        for eid in ids:
            if eid in self.used:
                continue
            if self.groups is not None and self.groups[eid] in self.route_groups:
                continue
            yield eid
            if self.break_symmetry:
                return

    def _reachable(self, a: int) -> Set[int]:
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y, ids in self.adjacency[x]:
                if y not in seen and any(eid not in self.used for eid in ids):
                    seen.add(y)
                    queue.append(y)
        return seen

    def _paths(self, a: int, b: int) -> Iterator[Tuple[int, ...]]:
        """a から b への道を辺数の少ない順に列挙"""
        reachable = self._reachable(a)
        if b not in reachable:
            return
        for length in range(1, len(reachable)):
            yield from self._walks(a, b, length, {a})

    def _cycles(self, x: int) -> Iterator[Tuple[int, ...]]:
        """x を通る閉路（長さ1はホストのループ）"""
        for eid in self._edge_choices(self.loops[x]):
            yield from self._extend(eid, lambda: iter([()]))
        reachable = self._reachable(x)
        for length in range(2, len(reachable) + 1):
            for y, ids in self.adjacency[x]:
                for eid in self._edge_choices(ids):
                    yield from self._extend(
                        eid, lambda y=y, length=length: self._walks(y, x, length - 1, {y}))

    def _extend(self, eid: int, rest) -> Iterator[Tuple[int, ...]]:
        self.budget.tick()
        group = self.groups[eid] if self.groups is not None else None
        self.used.add(eid)
        if group is not None:
            self.route_groups.add(group)
        try:
            for tail in rest():
                yield (eid,) + tail
        finally:
            self.used.discard(eid)
            if group is not None:
                self.route_groups.discard(group)

    def _walks(self, current: int, target: int, remaining: int,
               visited: Set[int]) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            if current == target:
                yield ()
            return
        if current == target:
            return
        for y, ids in self.adjacency[current]:
            if y in visited or (remaining == 1 and y != target):
                continue
            for eid in self._edge_choices(ids):
                visited.add(y)
                try:
                    yield from self._extend(
                        eid, lambda y=y: self._walks(y, target, remaining - 1, visited))
                finally:
                    visited.discard(y)


class ImmersionSearch:
    """イマージョンの存在判定と構成"""

    @staticmethod
    def find_immersion(g: Multigraph, h: Multigraph,
                       fixed_branch: Optional[Mapping[int, int]] = None,
                       forbidden_edges: Iterable[int] = (),
                       vertex_classes: Optional[Mapping[int, Iterable[int]]] = None,
                       edge_groups: Optional[Mapping[int, int]] = None,
                       capacity: Optional[int] = None) -> Optional[Immersion]:
        """H-イマージョンを1つ返す。存在しなければ None

        Raises:
            CapacityError: 予算内で探索が終わらなかった場合（不在とは区別する）
        """
        budget = SearchBudget(capacity or SettingsService.get_instance().search_capacity, 'search_capacity')
        search = _RouteSearch(g, h, budget, fixed_branch, forbidden_edges, vertex_classes, edge_groups)
        result = next(search.solutions(), None)
        logger.debug("find_immersion |V(G)|=%d |E(G)|=%d |E(H)|=%d: %s after %d expansions",
                     g.n_vertices, g.n_edges, h.n_edges, 'found' if result else 'absent', budget.used)
        return result

    @staticmethod
    def iter_immersions(g: Multigraph, h: Multigraph, budget: SearchBudget,
                        forbidden_edges: Iterable[int] = (),
                        edge_groups: Optional[Mapping[int, int]] = None) -> Iterator[Immersion]:
        """全イマージョンを列挙（平行辺の入れ替えによる重複は除く）"""
        search = _RouteSearch(g, h, budget, forbidden_edges=forbidden_edges, edge_groups=edge_groups)
        return search.solutions()

    @staticmethod
    def has_immersion(g: Multigraph, h: Multigraph, forbidden_edges: Iterable[int] = (),
                      capacity: Optional[int] = None) -> bool:
        return ImmersionSearch.find_immersion(g, h, forbidden_edges=forbidden_edges, capacity=capacity) is not None

    @staticmethod
    def realizes(s_plus: PlusGraph, r_plus: PlusGraph, capacity: Optional[int] = None) -> bool:
        """葉を葉へ、核を核へ写す R⁺ の S⁺ へのイマージョンが存在するか"""
        classes: Dict[int, FrozenSet[int]] = {}
        for v in r_plus.graph.vertices:
            classes[v] = s_plus.leaves if v in r_plus.leaves else s_plus.core
        found = ImmersionSearch.find_immersion(s_plus.graph, r_plus.graph,
                                               vertex_classes=classes, capacity=capacity)
        return found is not None
