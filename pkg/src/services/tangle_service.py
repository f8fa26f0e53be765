"""タングル構成サービス（正規化・パートナー・共役・制限・誘導タングル・壁タングル）"""
import logging
from fractions import Fraction
from math import ceil
from typing import Iterable, List, Optional, Sequence, Set

from src.models.immersion import Immersion, Thorns
from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.models.wall_layout import WallLayout
from src.services.cut_enumerator import CutEnumerator, CutEnumeratorFn
from src.services.graph_generator import GraphGenerator
from src.services.graph_operations import GraphOperations
from src.services.graph_transformer import GraphTransformer
from src.services.immersion_verifier import ImmersionVerifier
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class TangleService:
    """分離・辺カットの族に関する構成と関係述語"""

    # メンバー列挙
    @staticmethod
    def separation_members(t: TangleFamily, below: Optional[int] = None) -> List[Separation]:
        """位数 < min(θ, below) のメンバー（正準順）"""
        bound = ceil(t.order)
        if below is not None:
            bound = min(bound, below)
        if t.is_explicit:
            return [s for s in t.sorted_members() if s.order < bound]
        found = [s for s in CutEnumerator.separations(t.host, bound) if t.contains(s)]
        return sorted(found, key=Separation.sort_key)

    @staticmethod
    def cut_members(e: EdgeTangleFamily, below: Optional[int] = None,
                    enumerator: Optional[CutEnumeratorFn] = None) -> List[EdgeCut]:
        bound = e.order if below is None else min(e.order, below)
        if e.is_explicit:
            return [c for c in e.sorted_members() if c.order_in(e.host) < bound]
        enumerate_fn = enumerator or CutEnumerator.cuts
        found = [c for c in enumerate_fn(e.host, bound) if e.contains(c)]
        return sorted(found, key=EdgeCut.sort_key)

    # 正規化
    @staticmethod
    def normalize(g: Multigraph, s: Separation) -> Separation:
        """三段階の正規化

        1. N_A(v) ⊆ V(B) を満たす非孤立の境界頂点 v を A から除き、v の全接続辺を B に移す
        2. 両端が境界にある B の辺を A に移す
        3. B で孤立した頂点を B から除き A に置く
        """
        s.validate_for(g)
        a_vertices, a_edges = set(s.a_vertices), set(s.a_edges)
        b_vertices, b_edges = set(s.b_vertices), set(s.b_edges)

        boundary = a_vertices & b_vertices
        removed = set()
        for v in boundary:
            incident = g.incident_edges(v)
            if not incident:
                continue
            a_neighbors = {e.other(v) for e in incident if e.id in a_edges and not e.is_loop}
            if a_neighbors <= b_vertices:
                removed.add(v)
        for v in removed:
            a_vertices.discard(v)
            for e in g.incident_edges(v):
                a_edges.discard(e.id)
                b_edges.add(e.id)

        boundary = a_vertices & b_vertices
        moved = {eid for eid in b_edges if g.edge(eid).ends <= boundary}
        b_edges -= moved
        a_edges |= moved

        touched = g.ends_of(b_edges)
        isolated = b_vertices - touched
        b_vertices -= isolated
        a_vertices |= isolated

        return Separation(frozenset(a_vertices), frozenset(a_edges), frozenset(b_vertices), frozenset(b_edges))

    @staticmethod
    def is_normalized(g: Multigraph, s: Separation) -> bool:
        """全境界頂点が A−V(B) と B−V(A) の双方に隣接する"""
        a_only = s.a_vertices - s.b_vertices
        b_only = s.b_vertices - s.a_vertices
        for v in s.boundary:
            neighbors = g.neighbors(v)
            if not (neighbors & a_only) or not (neighbors & b_only):
                return False
        return True

    # パートナーと共役
    @staticmethod
    def partner(g: Multigraph, s: Separation) -> EdgeCut:
        """L(G) の正規化済み分離に対応する G の辺カット"""
        line, _ = GraphTransformer.line_graph(g)
        s.validate_for(line)
        if not TangleService.is_normalized(line, s):
            raise GraphInputError("partner is defined for normalized separations only")
        return TangleService._partner_of(g, s)

    @staticmethod
    def _partner_of(g: Multigraph, s: Separation) -> EdgeCut:
        side_a: Set[int] = set()
        side_b: Set[int] = set()
        for v in g.vertices:
            clique = GraphTransformer.clique_of(g, v)
            if not clique or clique <= s.a_vertices:
                side_a.add(v)
            if clique and clique <= s.b_vertices:
                side_b.add(v)
        if side_a & side_b or side_a | side_b != g.vertex_set:
            raise GraphInputError("separation does not induce a partner edge-cut")
        return EdgeCut(frozenset(side_a), frozenset(side_b))

    @staticmethod
    def conjugate(e: EdgeTangleFamily) -> TangleFamily:
        """L(G) 上の共役族（位数 θ/3）"""
        g = e.host
        line, _ = GraphTransformer.line_graph(g)

        def member(s: Separation) -> bool:
            normalized = TangleService.normalize(line, s)
            return e.contains(TangleService._partner_of(g, normalized))

        return TangleFamily(host=line, order=Fraction(e.order, 3), oracle=member)

    # 制限・誘導
    @staticmethod
    def restrict(e: EdgeTangleFamily, x: Iterable[int]) -> EdgeTangleFamily:
        """ℰ−X：G−X の位数 θ−|X| の族"""
        removed = frozenset(x)
        if len(removed) >= e.order:
            raise GraphInputError(f"|X| = {len(removed)} must be below the order {e.order}")
        host = GraphOperations.delete_edges(e.host, removed)
        return EdgeTangleFamily(host=host, order=e.order - len(removed), oracle=e.contains)

    @staticmethod
    def induced_edge_tangle(host: Multigraph, imm: Immersion, e_prime: EdgeTangleFamily) -> EdgeTangleFamily:
        """H-イマージョンが誘導するホストの辺タングル族"""
        if imm.host != host or imm.pattern != e_prime.host:
            raise GraphInputError("immersion does not connect the given pattern and host")
        verdict = ImmersionVerifier.verify_immersion(imm)
        if not verdict.ok:
            raise GraphInputError(f"invalid immersion: {verdict.clause}: {verdict.detail}")
        pattern_vertices = imm.pattern.vertices

        def member(c: EdgeCut) -> bool:
            side_a = frozenset(h for h in pattern_vertices if imm.branch[h] in c.side_a)
            return e_prime.contains(EdgeCut(side_a, imm.pattern.vertex_set - side_a))

        return EdgeTangleFamily(host=host, order=e_prime.order, oracle=member)

    @staticmethod
    def wall_edge_tangle(r: int, theta: int) -> EdgeTangleFamily:
        """r行 r列の壁で、B がある列を丸ごと含むカットの族"""
        if theta < 1 or r < 2 * theta:
            raise GraphInputError(f"wall edge-tangle needs r >= 2*theta (r={r}, theta={theta})")
        layout = GraphGenerator.square_wall_layout(r)
        host = GraphGenerator.square_wall(r)
        return EdgeTangleFamily(
            host=host, order=theta,
            oracle=lambda c: layout.contains_column(c.side_b),
        )

    # 関係述語
    @staticmethod
    def is_cross_free(cuts: Sequence[EdgeCut], host: Multigraph) -> bool:
        """相異なる2カットの A 側が常に交わらない"""
        distinct: List[EdgeCut] = []
        for c in cuts:
            c.validate_for(host)
            if c not in distinct:
                distinct.append(c)
        for i, first in enumerate(distinct):
            for second in distinct[i + 1:]:
                if first.side_a & second.side_a:
                    return False
        return True

    @staticmethod
    def controls(e: EdgeTangleFamily, th: Thorns, enumerator: Optional[CutEnumeratorFn] = None) -> bool:
        """位数 < |V(H)| の全メンバーについて各枝集合が B と交わる"""
        if th.host != e.host:
            raise GraphInputError("thorns and edge-tangle live on different hosts")
        members = TangleService.cut_members(e, below=th.pattern.n_vertices, enumerator=enumerator)
        for h in th.pattern.vertices:
            touched = e.host.ends_of(th.branch_sets[h])
            for c in members:
                if not touched & c.side_b:
                    logger.debug("branch set of %d trapped by %s", h, c.to_dict())
                    return False
        return True

    @staticmethod
    def induced_by_wall_subdivision(t: TangleFamily, sub: Immersion, layout: WallLayout) -> bool:
        """全メンバー (A,B) で E(B) が各行の像と交わる"""
        verdict = ImmersionVerifier.verify_subdivision(sub)
        if not verdict.ok:
            raise GraphInputError(f"not a wall subdivision: {verdict.clause}")
        if sub.pattern != GraphGenerator.wall(layout.m, layout.n):
            raise GraphInputError("subdivision pattern is not the given wall")
        if sub.host != t.host:
            raise GraphInputError("tangle and subdivision live on different hosts")

        row_images = []
        for row in layout.rows():
            image = frozenset(
                eid for e in sub.pattern.edges if e.u in row and e.v in row
                for eid in sub.routes[e.id]
            )
            if image:
                row_images.append(image)
        for s in TangleService.separation_members(t):
            if any(not (s.b_edges & image) for image in row_images):
                return False
        return True
