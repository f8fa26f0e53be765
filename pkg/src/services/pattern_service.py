"""S_G⁺ の構成・シェル列挙・次数列"""
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from src.models.multigraph import Edge, Multigraph
from src.models.pattern import PlusGraph, Shell
from src.services.settings_service import SettingsService
from src.utils.errors import CapacityError, GraphInputError

logger = logging.getLogger(__name__)


class PatternService:

    @staticmethod
    def s_plus(g: Multigraph, s_vertices: Iterable[int], s_edges: Optional[Iterable[int]] = None) -> PlusGraph:
        """部分グラフ S に、S の外の各接続ごとに葉を付加した S_G⁺

        葉の頂点IDと辺IDは G の未使用IDから割り当てる。
        S に両端を持つ外部辺は葉を2枚（ループなら v に2枚）生む。
        """
        core = frozenset(s_vertices)
        for v in core:
            g.require_vertex(v)
        inside = (frozenset(e.id for e in g.edges if e.ends <= core) if s_edges is None
                  else frozenset(s_edges))
        for eid in inside:
            if not g.edge(eid).ends <= core:
                raise GraphInputError(f"edge {eid} leaves the vertex set of the subgraph")

        vertices: List[int] = [v for v in g.vertices if v in core]
        edges: List[Edge] = [e for e in g.edges if e.id in inside]
        leaf_origin: Dict[int, int] = {}
        next_vertex, next_edge = g.next_vertex_id, g.next_edge_id
        for e in g.edges:
            if e.id in inside:
                continue
            ends = [e.u, e.v]
            for end in ends:
                if end not in core:
                    continue
                vertices.append(next_vertex)
                edges.append(Edge(next_edge, end, next_vertex))
                leaf_origin[next_vertex] = e.id
                next_vertex += 1
                next_edge += 1
        plus = Multigraph(tuple(vertices), tuple(edges))
        logger.debug("S+ with %d core vertices and %d leaves", len(core), len(leaf_origin))
        return PlusGraph(graph=plus, core=core, leaf_origin=leaf_origin)

    @staticmethod
    def enumerate_shells(h: Multigraph) -> List[Shell]:
        """各クラスが連結な部分グラフを誘導する V(H) の分割すべて"""
        limit = SettingsService.get_instance().shell_max_vertices
        if h.n_vertices > limit:
            raise CapacityError(f"shell enumeration is limited to {limit} vertices, got {h.n_vertices}",
                                'shell_max_vertices')
        base = h.to_networkx()
        shells = []
        for blocks in PatternService._set_partitions(list(h.vertices)):
            if all(nx.is_connected(base.subgraph(block)) for block in blocks):
                pieces = tuple(
                    (frozenset(block), frozenset(e.id for e in h.edges if e.ends <= frozenset(block)))
                    for block in blocks
                )
                shells.append(Shell(pieces))
        return shells

    @staticmethod
    def _set_partitions(items: List[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        """制限成長列による集合分割の列挙（辞書順）"""
        n = len(items)
        if n == 0:
            yield ()
            return
        labels = [0] * n

        def grow(i: int, blocks: int):
            if i == n:
                parts: List[List[int]] = [[] for _ in range(blocks)]
                for item, label in zip(items, labels):
                    parts[label].append(item)
                yield tuple(tuple(p) for p in parts)
                return
            for label in range(blocks + 1):
                labels[i] = label
                yield from grow(i + 1, max(blocks, label + 1))

        yield from grow(1, 1)

    @staticmethod
    def degree_sequence(h: Multigraph) -> Tuple[int, ...]:
        """非増加の次数列"""
        return tuple(sorted((h.degree(v) for v in h.vertices), reverse=True))
