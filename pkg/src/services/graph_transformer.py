"""グラフ変換サービス（線グラフ・辺複製・全細分・イマージョン展開）"""
from typing import Dict, FrozenSet, List, Tuple

from src.models.multigraph import Edge, Multigraph
from src.utils.errors import GraphInputError


class GraphTransformer:
    """構成的なグラフ変換"""

    @staticmethod
    def line_graph(g: Multigraph) -> Tuple[Multigraph, Dict[int, int]]:
        """線グラフ L(G)

        頂点IDは元の辺IDと同じ。2辺が端点を共有すれば1本だけ辺を張る。

        Returns:
            (L(G), 辺ID → 線グラフ頂点ID)
        """
        position = {e.id: i for i, e in enumerate(g.edges)}
        pairs = set()
        for v in g.vertices:
            incident = g.incident_edges(v)
            for i, e in enumerate(incident):
                for f in incident[i + 1:]:
                    a, b = sorted((e.id, f.id), key=position.__getitem__)
                    pairs.add((a, b))
        ordered = sorted(pairs, key=lambda p: (position[p[0]], position[p[1]]))
        line = Multigraph(
            vertices=g.edge_ids,
            edges=tuple(Edge(i, a, b) for i, (a, b) in enumerate(ordered)),
        )
        return line, {eid: eid for eid in g.edge_ids}

    @staticmethod
    def clique_of(g: Multigraph, v: int) -> FrozenSet[int]:
        """cl(v)：v に接続する辺（線グラフ頂点）の集合"""
        return frozenset(e.id for e in g.incident_edges(v))

    @staticmethod
    def duplicate_edges(g: Multigraph, k: int) -> Tuple[Multigraph, Dict[int, int]]:
        """各辺を k 本の平行辺に置き換える

        Returns:
            (複製グラフ, 新辺ID → 元の辺ID)
        """
        if k < 1:
            raise GraphInputError("duplication factor must be positive")
        edges: List[Edge] = []
        back: Dict[int, int] = {}
        for i, e in enumerate(g.edges):
            for j in range(k):
                new_id = i * k + j
                edges.append(Edge(new_id, e.u, e.v))
                back[new_id] = e.id
        return Multigraph(g.vertices, tuple(edges)), back

    @staticmethod
    def subdivision_map(g: Multigraph) -> Dict[int, Tuple[int, int, int]]:
        """辺ID → (細分頂点 x_e, 前半辺ID, 後半辺ID)"""
        base = g.next_vertex_id
        return {e.id: (base + i, 2 * i, 2 * i + 1) for i, e in enumerate(g.edges)}

    @staticmethod
    def subdivide_all(g: Multigraph) -> Multigraph:
        """全ての辺を1回ずつ細分（ループは x_e を通る2-閉路になる）"""
        mapping = GraphTransformer.subdivision_map(g)
        vertices = list(g.vertices)
        edges: List[Edge] = []
        for e in g.edges:
            x, first, second = mapping[e.id]
            vertices.append(x)
            edges.append(Edge(first, e.u, x))
            edges.append(Edge(second, x, e.v))
        return Multigraph(tuple(vertices), tuple(edges))

    @staticmethod
    def immersion_expansion(g: Multigraph) -> Tuple[Multigraph, Dict[int, int]]:
        """L(全細分(G)) に各元頂点 v の頂点 u_v を追加し cl(v) 全体と結ぶ

        Returns:
            (展開グラフ, v → u_v)
        """
        subdivided = GraphTransformer.subdivide_all(g)
        line, _ = GraphTransformer.line_graph(subdivided)
        base = line.next_vertex_id
        apex = {v: base + p for p, v in enumerate(g.vertices)}

        edges = list(line.edges)
        next_id = line.next_edge_id
        for v in g.vertices:
            for half in subdivided.incident_edges(v):
                edges.append(Edge(next_id, apex[v], half.id))
                next_id += 1
        vertices = line.vertices + tuple(apex[v] for v in g.vertices)
        return Multigraph(vertices, tuple(edges)), apex
