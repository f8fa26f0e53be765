"""辺素パッキング・最小被覆・半整数版の厳密ソルバー"""
import logging
from collections import defaultdict
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Set, Tuple

from src.models.immersion import HalfIntegralImmersion, Immersion
from src.models.multigraph import Multigraph
from src.models.results import CoverResult, PackingResult
from src.services.graph_transformer import GraphTransformer
from src.services.immersion_search import ImmersionSearch
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.utils.constants import DEFAULT_K_MAX
from src.utils.errors import CapacityError, GraphInputError

logger = logging.getLogger(__name__)

ClassKey = Tuple[int, int]
# 被覆探索の内部で使う「残りグラフのイマージョン像」を返す関数
ImageFinder = Callable[[FrozenSet[int]], Optional[FrozenSet[int]]]


class PackingSolver:
    """ν（辺素パッキング数）と τ（最小被覆）を独立に計算する"""

    # パッキング
    @staticmethod
    def max_packing(g: Multigraph, h: Multigraph, k_max: int = DEFAULT_K_MAX,
                    edge_groups: Optional[Mapping[int, int]] = None) -> PackingResult:
        """辺素な H-イマージョンの最大個数（k_max で打ち切り）

        平行辺クラスごとの使用数ベクトルに還元し、多重集合パッキングを
        メモ化付きで厳密に解く。予算切れでは exact=False の下界を返す。
        """
        if k_max < 0:
            raise GraphInputError("k_max must be nonnegative")
        if h.n_edges == 0:
            return PackingSolver._edgeless_packing(g, h, k_max)

        capacity_limit = SettingsService.get_instance().packing_capacity
        budget = SearchBudget(capacity_limit, 'packing_capacity')
        classes = sorted({e.parallel_key for e in g.edges})
        index = {key: i for i, key in enumerate(classes)}
        capacity = [0] * len(classes)
        for e in g.edges:
            capacity[index[e.parallel_key]] += 1

        representatives: Dict[Tuple[int, ...], Immersion] = {}
        exact = True
        try:
            for imm in ImmersionSearch.iter_immersions(g, h, budget, edge_groups=edge_groups):
                vector = [0] * len(classes)
                for eid, count in imm.used_edges().items():
                    vector[index[g.edge(eid).parallel_key]] += count
                representatives.setdefault(tuple(vector), imm)
        except CapacityError:
            exact = False
            logger.warning("packing enumeration stopped after %d usage vectors", len(representatives))

        vectors = PackingSolver._minimal_vectors(list(representatives))
        logger.debug("packing: %d immersion usage vectors, %d minimal", len(representatives), len(vectors))
        # 列挙が打ち切られても、集めたベクトルの組合せ探索は別予算で行う
        combination_budget = SearchBudget(capacity_limit, 'packing_capacity')
        try:
            chosen = PackingSolver._best_multiset(vectors, tuple(capacity), k_max, combination_budget)
        except CapacityError:
            exact = False
            chosen = PackingSolver._greedy_multiset(vectors, tuple(capacity), k_max)
            logger.warning("packing search exhausted its budget; greedy lower bound %d", len(chosen))

        free: Dict[ClassKey, List[int]] = defaultdict(list)
        for e in sorted(g.edges, key=lambda e: e.id):
            free[e.parallel_key].append(e.id)
        witnesses = tuple(
            PackingSolver._concretize(g, representatives[vectors[i]], free, edge_groups) for i in chosen
        )
        return PackingResult(count=len(witnesses), witnesses=witnesses, exact=exact or len(chosen) == k_max)

    @staticmethod
    def _edgeless_packing(g: Multigraph, h: Multigraph, k_max: int) -> PackingResult:
        """辺のないパターンは辺を奪い合わないので |V(G)| ≥ |V(H)| なら上限まで詰められる"""
        if h.n_vertices > g.n_vertices:
            return PackingResult(count=0)
        branch = dict(zip(h.vertices, g.vertices))
        witness = Immersion(pattern=h, host=g, branch=branch, routes={})
        return PackingResult(count=k_max, witnesses=(witness,) * k_max)

    @staticmethod
    def _minimal_vectors(vectors: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
        """他のベクトルを成分ごとに上から抑えるものを除く"""
        ordered = sorted(vectors, key=lambda v: (sum(v), v))
        minimal: List[Tuple[int, ...]] = []
        for v in ordered:
            if not any(all(a <= b for a, b in zip(m, v)) for m in minimal):
                minimal.append(v)
        return minimal

    @staticmethod
    def _best_multiset(vectors: List[Tuple[int, ...]], capacity: Tuple[int, ...], k_max: int,
                       budget: SearchBudget) -> List[int]:
        """容量内に収まるベクトル多重集合の最大個数（選んだ添字を昇順で返す）"""
        memo: Dict[Tuple[Tuple[int, ...], int], int] = {}

        def best(cap: Tuple[int, ...], i: int) -> int:
            if i == len(vectors):
                return 0
            key = (cap, i)
            if key in memo:
                return memo[key]
            budget.tick()
            value = best(cap, i + 1)
            if value < k_max:
                rest = tuple(c - x for c, x in zip(cap, vectors[i]))
                if min(rest, default=0) >= 0:
                    value = max(value, min(k_max, 1 + best(rest, i)))
            memo[key] = value
            return value

        need = best(capacity, 0)
        chosen: List[int] = []
        cap, i = capacity, 0
        while need > 0:
            rest = tuple(c - x for c, x in zip(cap, vectors[i]))
            if min(rest, default=0) >= 0 and 1 + best(rest, i) >= need:
                chosen.append(i)
                cap = rest
                need -= 1
            else:
                i += 1
        return chosen

    @staticmethod
    def _greedy_multiset(vectors: List[Tuple[int, ...]], capacity: Tuple[int, ...], k_max: int) -> List[int]:
        chosen: List[int] = []
        cap = capacity
        for i, vector in enumerate(vectors):
            while len(chosen) < k_max:
                rest = tuple(c - x for c, x in zip(cap, vector))
                if min(rest, default=0) < 0:
                    break
                chosen.append(i)
                cap = rest
        return chosen

    @staticmethod
    def _concretize(g: Multigraph, imm: Immersion, free: Dict[ClassKey, List[int]],
                    edge_groups: Optional[Mapping[int, int]]) -> Immersion:
        """ルートの各辺を、同じ平行クラスの未使用の辺に割り当て直す"""
        routes: Dict[int, Tuple[int, ...]] = {}
        # 多くの辺を使うルートから割り当てる
        order = sorted(imm.routes, key=lambda pe: (-len(imm.routes[pe]), pe))
        for pattern_edge in order:
            assigned: List[int] = []
            groups: Set[int] = set()
            for eid in imm.routes[pattern_edge]:
                pool = free[g.edge(eid).parallel_key]
                choice = PackingSolver._pick_copy(pool, groups, edge_groups)
                pool.remove(choice)
                assigned.append(choice)
                if edge_groups is not None:
                    groups.add(edge_groups[choice])
            routes[pattern_edge] = tuple(assigned)
        return Immersion(pattern=imm.pattern, host=g, branch=imm.branch,
                         routes={pe: routes[pe] for pe in sorted(routes)})

    @staticmethod
    def _pick_copy(pool: List[int], route_groups: Set[int], edge_groups: Optional[Mapping[int, int]]) -> int:
        if edge_groups is None:
            return pool[0]
        remaining: Dict[int, int] = defaultdict(int)
        for eid in pool:
            remaining[edge_groups[eid]] += 1
        allowed = [eid for eid in pool if edge_groups[eid] not in route_groups]
        return min(allowed, key=lambda eid: (-remaining[edge_groups[eid]], eid))

    # 被覆
    @staticmethod
    def min_cover(g: Multigraph, h: Multigraph) -> CoverResult:
        """G−Z が H-イマージョンを持たない最小の Z（同じ大きさでは辞書順最小）"""
        if h.n_edges == 0:
            if h.n_vertices <= g.n_vertices:
                raise GraphInputError("an edgeless pattern cannot be destroyed by deleting edges")
            return CoverResult()

        def finder(removed: FrozenSet[int]) -> Optional[FrozenSet[int]]:
            imm = ImmersionSearch.find_immersion(g, h, forbidden_edges=removed)
            return None if imm is None else imm.image_edges()

        return PackingSolver._branch_and_bound(g, finder)

    @staticmethod
    def _branch_and_bound(g: Multigraph, finder: ImageFinder) -> CoverResult:
        """被覆の大きさ s を 0 から増やし、見つかった像の辺で分岐する"""
        budget = SearchBudget(SettingsService.get_instance().cover_capacity, 'cover_capacity')
        try:
            for size in range(g.n_edges + 1):
                covers: Set[FrozenSet[int]] = set()
                visited: Set[FrozenSet[int]] = set()

                def search(removed: FrozenSet[int], left: int):
                    if removed in visited:
                        return
                    visited.add(removed)
                    budget.tick()
                    image = finder(removed)
                    if image is None:
                        covers.add(removed)
                        return
                    if left == 0:
                        return
                    for eid in sorted(image):
                        search(removed | {eid}, left - 1)

                search(frozenset(), size)
                if covers:
                    best = min(covers, key=lambda z: (len(z), sorted(z)))
                    logger.debug("cover of size %d after %d nodes", len(best), budget.used)
                    return CoverResult(edges=best, exact=True)
        except CapacityError as e:
            logger.warning("cover search stopped (%s); returning a greedy cover", e)
            return CoverResult(edges=PackingSolver._greedy_cover(g, finder), exact=False)
        raise GraphInputError("pattern survives deleting every edge")

    @staticmethod
    def _greedy_cover(g: Multigraph, finder: ImageFinder) -> FrozenSet[int]:
        removed: FrozenSet[int] = frozenset()
        try:
            image = finder(removed)
            while image is not None:
                removed = removed | image
                image = finder(removed)
        except CapacityError:
            return frozenset(g.edge_ids)
        return removed

    # 半整数版
    @staticmethod
    def half_integral_packing(g: Multigraph, h: Multigraph, k_max: int = DEFAULT_K_MAX) -> PackingResult:
        """辺を2重化したグラフでパッキングを解き、証明書を元のグラフへ戻す"""
        doubled, back = GraphTransformer.duplicate_edges(g, 2)
        result = PackingSolver.max_packing(doubled, h, k_max, edge_groups=back)
        witnesses = tuple(
            HalfIntegralImmersion(
                pattern=w.pattern, host=g, branch=w.branch,
                routes={pe: tuple(back[eid] for eid in route) for pe, route in w.routes.items()},
            )
            for w in result.witnesses
        )
        return PackingResult(count=result.count, witnesses=witnesses, exact=result.exact)

    @staticmethod
    def half_integral_cover(g: Multigraph, h: Multigraph) -> CoverResult:
        """G−Z が半整数 H-イマージョンを持たない最小の Z ⊆ E(G)"""
        if h.n_edges == 0:
            if h.n_vertices <= g.n_vertices:
                raise GraphInputError("an edgeless pattern cannot be destroyed by deleting edges")
            return CoverResult()
        doubled, back = GraphTransformer.duplicate_edges(g, 2)
        copies: Dict[int, List[int]] = defaultdict(list)
        for new_id, original in back.items():
            copies[original].append(new_id)

        def finder(removed: FrozenSet[int]) -> Optional[FrozenSet[int]]:
            forbidden = [c for eid in removed for c in copies[eid]]
            imm = ImmersionSearch.find_immersion(doubled, h, forbidden_edges=forbidden, edge_groups=back)
            return None if imm is None else frozenset(back[eid] for eid in imm.image_edges())

        return PackingSolver._branch_and_bound(g, finder)
