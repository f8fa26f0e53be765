"""グラフ基本演算サービス（次数・カット・削除・連結性）"""
import logging
from typing import Iterable, List, FrozenSet

import networkx as nx

from src.models.multigraph import EdgeCut, Multigraph
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class GraphOperations:
    """多重グラフに対する純粋関数群"""

    @staticmethod
    def degree(g: Multigraph, v: int) -> int:
        """次数（ループは2と数える）"""
        return g.degree(v)

    @staticmethod
    def cut_order(g: Multigraph, c: EdgeCut) -> int:
        """カットを横切る辺の本数"""
        c.validate_for(g)
        return c.order_in(g)

    @staticmethod
    def crossing_edges(g: Multigraph, c: EdgeCut) -> FrozenSet[int]:
        c.validate_for(g)
        return frozenset(c.crossing_edges(g))

    @staticmethod
    def edges_touching(g: Multigraph, vertex_ids: Iterable[int]) -> int:
        """少なくとも一端が vertex_ids に入る辺の本数"""
        side = frozenset(vertex_ids)
        return sum(1 for e in g.edges if e.u in side or e.v in side)

    @staticmethod
    def delete_edges(g: Multigraph, edge_ids: Iterable[int]) -> Multigraph:
        """G − Y（辺集合）"""
        removed = frozenset(edge_ids)
        for eid in removed:
            g.edge(eid)
        return Multigraph(g.vertices, tuple(e for e in g.edges if e.id not in removed))

    @staticmethod
    def delete_vertices(g: Multigraph, vertex_ids: Iterable[int]) -> Multigraph:
        """G − Y（頂点集合、接続辺も除く）"""
        removed = frozenset(vertex_ids)
        for v in removed:
            g.require_vertex(v)
        return Multigraph(
            tuple(v for v in g.vertices if v not in removed),
            tuple(e for e in g.edges if e.u not in removed and e.v not in removed),
        )

    @staticmethod
    def components(g: Multigraph) -> List[FrozenSet[int]]:
        """連結成分（挿入順で最初に現れる頂点の順）"""
        position = {v: i for i, v in enumerate(g.vertices)}
        comps = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
        return sorted(comps, key=lambda c: min(position[v] for v in c))

    @staticmethod
    def is_connected(g: Multigraph) -> bool:
        if g.n_vertices == 0:
            return False
        return nx.is_connected(g.to_networkx())

    @staticmethod
    def flow_network(g: Multigraph) -> nx.DiGraph:
        """無向多重辺を容量付き双方向弧に変換（ループは無視）"""
        network = nx.DiGraph()
        network.add_nodes_from(g.vertices)
        for e in g.edges:
            if e.is_loop:
                continue
            for a, b in ((e.u, e.v), (e.v, e.u)):
                if network.has_edge(a, b):
                    network[a][b]['capacity'] += 1
                else:
                    network.add_edge(a, b, capacity=1)
        return network

    @staticmethod
    def local_edge_connectivity(g: Multigraph, u: int, v: int) -> int:
        """u–v 間の辺素な道の最大本数（Menger）"""
        g.require_vertex(u)
        g.require_vertex(v)
        if u == v:
            raise GraphInputError("local edge-connectivity needs two distinct vertices")
        return int(nx.maximum_flow_value(GraphOperations.flow_network(g), u, v))

    @staticmethod
    def is_k_edge_connected(g: Multigraph, k: int) -> bool:
        """|V| ≥ 2 かつ k 本未満の辺除去で非連結にならない"""
        if k < 1:
            raise GraphInputError("k must be positive")
        if g.n_vertices < 2:
            return False
        network = GraphOperations.flow_network(g)
        source = g.vertices[0]
        for target in g.vertices[1:]:
            if nx.maximum_flow_value(network, source, target) < k:
                logger.debug("cut below %d between %d and %d", k, source, target)
                return False
        return True
