"""小さなホスト上のタングル・辺タングルの全列挙"""
import logging
from typing import Callable, Generic, List, Optional, Sequence, Tuple, TypeVar

from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.services.cut_enumerator import CutEnumerator, CutEnumeratorFn
from src.services.graph_operations import GraphOperations
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.services.tangle_axioms import bit_mask
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)

T = TypeVar('T')


class _OrientationSearch(Generic[T]):
    """向き付けのペアごとに片方を選び、単項条件と三つ組条件で枝刈りする

    bad_triple(x, y, z) は三つ組が公理に反するとき True。
    """

    def __init__(self, pairs: Sequence[Tuple[T, T]], allowed: Callable[[T], bool],
                 masks: Callable[[T], tuple], bad_triple: Callable[[tuple, tuple, tuple], bool],
                 budget: SearchBudget, limit: Optional[int]):
        self.pairs = pairs
        self.allowed = allowed
        self.masks = masks
        self.bad_triple = bad_triple
        self.budget = budget
        self.limit = limit
        self.chosen: List[T] = []
        self.chosen_masks: List[tuple] = []
        self.found: List[List[T]] = []

    def run(self) -> List[List[T]]:
        self._extend(0)
        return self.found

    def _done(self) -> bool:
        return self.limit is not None and len(self.found) >= self.limit

    def _consistent(self, mx: tuple) -> bool:
        if self.bad_triple(mx, mx, mx):
            return False
        for i, my in enumerate(self.chosen_masks):
            if self.bad_triple(mx, mx, my) or self.bad_triple(mx, my, my):
                return False
            for mz in self.chosen_masks[i + 1:]:
                if self.bad_triple(mx, my, mz):
                    return False
        return True

    def _extend(self, idx: int):
        if self._done():
            return
        if idx == len(self.pairs):
            self.found.append(list(self.chosen))
            return
        for x in self.pairs[idx]:
            self.budget.tick()
            if not self.allowed(x):
                continue
            mx = self.masks(x)
            if not self._consistent(mx):
                continue
            self.chosen.append(x)
            self.chosen_masks.append(mx)
            self._extend(idx + 1)
            self.chosen.pop()
            self.chosen_masks.pop()


def _orientation_pairs(items, key) -> List[Tuple]:
    """(x, x の逆) の組を正準順に並べる（自己逆の要素は単独の選択肢）"""
    seen = set()
    pairs = []
    for x in sorted(items, key=key):
        if x in seen:
            continue
        y = x.reversed()
        seen.update((x, y))
        pairs.append((x,) if x == y else tuple(sorted((x, y), key=key)))
    return pairs


class TangleSearch:
    """公理を満たす明示的な族をすべて構成する"""

    @staticmethod
    def materialize_tangles(g: Multigraph, theta: int, limit: Optional[int] = None) -> List[TangleFamily]:
        if theta < 1:
            raise GraphInputError("tangle order must be positive")
        separations = list(CutEnumerator.separations(g, theta))
        pairs = _orientation_pairs(separations, Separation.sort_key)
        pairs.sort(key=lambda pair: pair[0].order)

        vbit = {v: i for i, v in enumerate(g.vertices)}
        ebit = {eid: i for i, eid in enumerate(g.edge_ids)}
        full_v = (1 << g.n_vertices) - 1
        full_e = (1 << g.n_edges) - 1

        def covers(x, y, z):
            return x[0] | y[0] | z[0] == full_v and x[1] | y[1] | z[1] == full_e

        budget = SearchBudget(SettingsService.get_instance().tangle_search_capacity, 'tangle_search_capacity')
        search = _OrientationSearch(
            pairs,
            allowed=lambda s: s.a_vertices != g.vertex_set,
            masks=lambda s: (bit_mask(s.a_vertices, vbit), bit_mask(s.a_edges, ebit)),
            bad_triple=covers,
            budget=budget,
            limit=limit,
        )
        families = [TangleFamily(host=g, order=theta, members=frozenset(m)) for m in search.run()]
        logger.debug("materialized %d tangles of order %d over %d orientation pairs",
                     len(families), theta, len(pairs))
        return families

    @staticmethod
    def materialize_edge_tangles(g: Multigraph, theta: int, limit: Optional[int] = None,
                                 enumerator: Optional[CutEnumeratorFn] = None) -> List[EdgeTangleFamily]:
        if theta < 1:
            raise GraphInputError("edge-tangle order must be positive")
        enumerate_fn = enumerator or CutEnumerator.cuts
        pairs = _orientation_pairs(enumerate_fn(g, theta), EdgeCut.sort_key)
        pairs.sort(key=lambda pair: pair[0].order_in(g))

        bit = {v: i for i, v in enumerate(g.vertices)}
        budget = SearchBudget(SettingsService.get_instance().tangle_search_capacity, 'tangle_search_capacity')
        search = _OrientationSearch(
            pairs,
            allowed=lambda c: GraphOperations.edges_touching(g, c.side_b) >= theta,
            masks=lambda c: (bit_mask(c.side_b, bit),),
            bad_triple=lambda x, y, z: x[0] & y[0] & z[0] == 0,
            budget=budget,
            limit=limit,
        )
        families = [EdgeTangleFamily(host=g, order=theta, members=frozenset(m)) for m in search.run()]
        logger.debug("materialized %d edge-tangles of order %d over %d orientation pairs",
                     len(families), theta, len(pairs))
        return families
