"""頂点集合・辺集合の自由性判定"""
import logging
from itertools import combinations
from typing import Iterable, Optional

from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.services.cut_enumerator import CutEnumeratorFn
from src.services.tangle_service import TangleService

logger = logging.getLogger(__name__)


class FreenessService:

    @staticmethod
    def is_free_vertices(t: TangleFamily, x: Iterable[int]) -> bool:
        """位数 < |X| で X ⊆ V(A) となるメンバー (A,B) が存在しない"""
        x = frozenset(x)
        for v in x:
            t.host.require_vertex(v)
        for s in TangleService.separation_members(t, below=len(x)):
            if x <= s.a_vertices:
                logger.debug("vertex set %s trapped by a member of order %d", sorted(x), s.order)
                return False
        return True

    @staticmethod
    def is_free_edges(e: EdgeTangleFamily, y: Iterable[int],
                      enumerator: Optional[CutEnumeratorFn] = None) -> bool:
        """Z ⊆ Y と ℰ−Z のメンバーで、Y−Z の全辺の両端が A に入るものが存在しない"""
        y = frozenset(y)
        for eid in y:
            e.host.edge(eid)
        for size in range(min(len(y) + 1, e.order)):
            for z in combinations(sorted(y), size):
                rest = y - frozenset(z)
                restricted = TangleService.restrict(e, z)
                ends = e.host.ends_of(rest)
                for c in TangleService.cut_members(restricted, below=len(rest), enumerator=enumerator):
                    if ends <= c.side_a:
                        logger.debug("edge set %s trapped after deleting %s", sorted(y), list(z))
                        return False
        return True
