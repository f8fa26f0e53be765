"""タングル公理・辺タングル公理の網羅検査サービス"""
import logging
from fractions import Fraction
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.models.verdict import Verdict
from src.services.cut_enumerator import CutEnumerator, CutEnumeratorFn
from src.services.graph_operations import GraphOperations

logger = logging.getLogger(__name__)


def bit_mask(items, bit: Dict[int, int]) -> int:
    mask = 0
    for item in items:
        mask |= 1 << bit[item]
    return mask


class TangleAxiomChecker:
    """公理を 単項条件 → 向き付け → 三つ組 の順に検査する

    反例は正準順で最初に見つかったものを返す。
    """

    @staticmethod
    def check_tangle_axioms(t: TangleFamily, at_order=None) -> Verdict:
        """(T1) 向き付け、(T2) A1∪A2∪A3 ≠ G、(T3) V(A) ≠ V(G)

        Args:
            at_order: (T1) を検査する位数（既定は族の位数）
        """
        g = t.host
        order = Fraction(at_order) if at_order is not None else t.order
        bound = ceil(order)
        separations = list(CutEnumerator.separations(g, bound))
        if t.is_explicit:
            members = t.sorted_members()
        else:
            members = sorted((s for s in separations if t.contains(s)), key=Separation.sort_key)
        logger.debug("tangle check: %d separations, %d members", len(separations), len(members))

        for s in members:
            if s.a_vertices == g.vertex_set:
                return Verdict.violation('T3', "member has V(A) = V(G)", (s,))

        for s in sorted(separations, key=Separation.sort_key):
            if not t.contains(s) and not t.contains(s.reversed()):
                return Verdict.violation('T1', f"separation of order {s.order} is not oriented", (s,))

        witness = TangleAxiomChecker.covering_triple(g, members)
        if witness is not None:
            return Verdict.violation('T2', "three members cover G", witness)
        return Verdict.success()

    @staticmethod
    def covering_triple(g: Multigraph, members: Sequence[Separation]) -> Optional[Tuple[Separation, ...]]:
        """A1 ∪ A2 ∪ A3 = G となる最初の三つ組（重複を許す）"""
        vbit = {v: i for i, v in enumerate(g.vertices)}
        ebit = {eid: i for i, eid in enumerate(g.edge_ids)}
        full_v = (1 << g.n_vertices) - 1
        full_e = (1 << g.n_edges) - 1
        masks = [(bit_mask(s.a_vertices, vbit), bit_mask(s.a_edges, ebit)) for s in members]
        for i, (v1, e1) in enumerate(masks):
            for j in range(i, len(masks)):
                v12, e12 = v1 | masks[j][0], e1 | masks[j][1]
                for k in range(j, len(masks)):
                    if v12 | masks[k][0] == full_v and e12 | masks[k][1] == full_e:
                        return (members[i], members[j], members[k])
        return None

    @staticmethod
    def check_edge_tangle_axioms(e: EdgeTangleFamily, enumerator: Optional[CutEnumeratorFn] = None) -> Verdict:
        """(E1) 向き付け、(E2) B1∩B2∩B3 ≠ ∅、(E3) B に接続する辺が θ 本以上"""
        g = e.host
        enumerate_fn = enumerator or CutEnumerator.cuts
        cuts = sorted(enumerate_fn(g, e.order), key=EdgeCut.sort_key)
        if e.is_explicit:
            members = e.sorted_members()
        else:
            members = [c for c in cuts if e.contains(c)]
        logger.debug("edge-tangle check: %d cuts, %d members", len(cuts), len(members))

        for c in members:
            touching = GraphOperations.edges_touching(g, c.side_b)
            if touching < e.order:
                return Verdict.violation('E3', f"only {touching} edges are incident with B", (c,))

        for c in cuts:
            if not e.contains(c) and not e.contains(c.reversed()):
                return Verdict.violation('E1', f"cut of order {c.order_in(g)} is not oriented", (c,))

        witness = TangleAxiomChecker.disjoint_triple(g, members)
        if witness is not None:
            return Verdict.violation('E2', "three members have disjoint B sides", witness)
        return Verdict.success()

    @staticmethod
    def disjoint_triple(g: Multigraph, members: Sequence[EdgeCut]) -> Optional[Tuple[EdgeCut, ...]]:
        """B1 ∩ B2 ∩ B3 = ∅ となる最初の三つ組（重複を許す）"""
        bit = {v: i for i, v in enumerate(g.vertices)}
        masks: List[int] = [bit_mask(c.side_b, bit) for c in members]
        for i, b1 in enumerate(masks):
            for j in range(i, len(masks)):
                b12 = b1 & masks[j]
                for k in range(j, len(masks)):
                    if b12 & masks[k] == 0:
                        return (members[i], members[j], members[k])
        return None
