"""多重グラフモデル（ループ・多重辺を許容する不変値）"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class Edge:
    """辺レコード（辺ID・端点a・端点b）"""
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def ends(self) -> FrozenSet[int]:
        return frozenset((self.u, self.v))

    @property
    def parallel_key(self) -> Tuple[int, int]:
        """同じ端点を持つ辺のクラスキー"""
        return (min(self.u, self.v), max(self.u, self.v))

    def other(self, x: int) -> int:
        """端点xの反対側の端点"""
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphInputError(f"vertex {x} is not an end of edge {self.id}")

    def to_list(self) -> List[int]:
        return [self.id, self.u, self.v]


@dataclass(frozen=True)
class Multigraph:
    """有限多重グラフ

    頂点と辺は挿入順を保持する。構築後は変更しない。
    """
    vertices: Tuple[int, ...] = ()
    edges: Tuple[Edge, ...] = ()
    _vertex_set: FrozenSet[int] = field(init=False, repr=False, compare=False)
    _edge_index: Dict[int, Edge] = field(init=False, repr=False, compare=False)
    _incidence: Dict[int, Tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, 'vertices', vertices)
        object.__setattr__(self, 'edges', edges)

        vertex_set = frozenset(vertices)
        if len(vertex_set) != len(vertices):
            raise GraphInputError("duplicate vertex id")
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise GraphInputError(f"vertex id must be a nonnegative integer: {v!r}")

        edge_index: Dict[int, Edge] = {}
        incidence: Dict[int, List[Edge]] = {v: [] for v in vertices}
        for e in edges:
            if not isinstance(e.id, int) or e.id < 0:
                raise GraphInputError(f"edge id must be a nonnegative integer: {e.id!r}")
            if e.id in edge_index:
                raise GraphInputError(f"duplicate edge id {e.id}")
            if e.u not in vertex_set or e.v not in vertex_set:
                raise GraphInputError(f"edge {e.id} has an endpoint outside the vertex set")
            edge_index[e.id] = e
            incidence[e.u].append(e)
            if not e.is_loop:
                incidence[e.v].append(e)

        object.__setattr__(self, '_vertex_set', vertex_set)
        object.__setattr__(self, '_edge_index', edge_index)
        object.__setattr__(self, '_incidence', {v: tuple(es) for v, es in incidence.items()})

    @classmethod
    def from_edges(cls, vertices: Iterable[int], pairs: Iterable[Tuple[int, int]]) -> 'Multigraph':
        """端点ペア列から生成（辺IDは0から順に採番）"""
        return cls(
            vertices=tuple(vertices),
            edges=tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)),
        )

    # 基本参照
    @property
    def vertex_set(self) -> FrozenSet[int]:
        return self._vertex_set

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def next_vertex_id(self) -> int:
        return max(self.vertices) + 1 if self.vertices else 0

    @property
    def next_edge_id(self) -> int:
        return max(self._edge_index) + 1 if self._edge_index else 0

    def has_vertex(self, v: int) -> bool:
        return v in self._vertex_set

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._edge_index

    def require_vertex(self, v: int):
        if v not in self._vertex_set:
            raise GraphInputError(f"unknown vertex id {v}")

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise GraphInputError(f"unknown edge id {edge_id}") from None

    def incident_edges(self, v: int) -> Tuple[Edge, ...]:
        """vに接続する辺（ループは1回だけ現れる）"""
        self.require_vertex(v)
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incident_edges(v))

    def neighbors(self, v: int) -> FrozenSet[int]:
        """v以外の隣接頂点"""
        return frozenset(e.other(v) for e in self.incident_edges(v) if not e.is_loop)

    def edges_between(self, u: int, v: int) -> Tuple[Edge, ...]:
        return tuple(e for e in self.incident_edges(u) if e.ends == frozenset((u, v)))

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.is_loop or e.parallel_key in seen:
                return False
            seen.add(e.parallel_key)
        return True

    def ends_of(self, edge_ids: Iterable[int]) -> FrozenSet[int]:
        """辺集合の端点集合"""
        ends = set()
        for eid in edge_ids:
            ends |= self.edge(eid).ends
        return frozenset(ends)

    # 派生グラフ
    def with_edge(self, u: int, v: int) -> 'Multigraph':
        """辺uvを追加したグラフ"""
        self.require_vertex(u)
        self.require_vertex(v)
        return Multigraph(self.vertices, self.edges + (Edge(self.next_edge_id, u, v),))

    def subgraph(self, vertex_ids: Iterable[int], edge_ids: Optional[Iterable[int]] = None) -> 'Multigraph':
        """部分グラフ（edge_ids省略時は誘導部分グラフ）"""
        keep = frozenset(vertex_ids)
        for v in keep:
            self.require_vertex(v)
        if edge_ids is None:
            edges = tuple(e for e in self.edges if e.u in keep and e.v in keep)
        else:
            wanted = frozenset(edge_ids)
            for eid in wanted:
                self.edge(eid)
            edges = tuple(e for e in self.edges if e.id in wanted)
        return Multigraph(tuple(v for v in self.vertices if v in keep), edges)

    def to_networkx(self) -> nx.MultiGraph:
        """networkx多重グラフに変換（辺キー＝辺ID）"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.u, e.v, key=e.id)
        return graph

    def to_dict(self) -> dict:
        return {
            'vertices': sorted(self.vertices),
            'edges': [e.to_list() for e in sorted(self.edges, key=lambda e: e.id)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Multigraph':
        try:
            vertices = tuple(int(v) for v in data.get('vertices', []))
            edges = tuple(Edge(int(i), int(u), int(v)) for i, u, v in data.get('edges', []))
        except (TypeError, ValueError) as e:
            raise GraphInputError(f"malformed graph record: {e}") from None
        return cls(vertices, edges)


@dataclass(frozen=True)
class EdgeCut:
    """辺カット [A,B]（頂点集合の順序付き二分割）"""
    side_a: FrozenSet[int]
    side_b: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'side_a', frozenset(self.side_a))
        object.__setattr__(self, 'side_b', frozenset(self.side_b))
        if self.side_a & self.side_b:
            raise GraphInputError("edge-cut sides must be disjoint")

    def reversed(self) -> 'EdgeCut':
        return EdgeCut(self.side_b, self.side_a)

    def validate_for(self, g: Multigraph):
        if self.side_a | self.side_b != g.vertex_set:
            raise GraphInputError("edge-cut does not partition the vertex set")

    def crossing_edges(self, g: Multigraph) -> Tuple[int, ...]:
        return tuple(e.id for e in g.edges if (e.u in self.side_a) != (e.v in self.side_a))

    def order_in(self, g: Multigraph) -> int:
        return sum(1 for e in g.edges if (e.u in self.side_a) != (e.v in self.side_a))

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (tuple(sorted(self.side_a)), tuple(sorted(self.side_b)))

    def to_dict(self) -> dict:
        return {'sideA': sorted(self.side_a), 'sideB': sorted(self.side_b)}

    @classmethod
    def from_dict(cls, data: dict) -> 'EdgeCut':
        try:
            return cls(frozenset(int(v) for v in data['sideA']),
                       frozenset(int(v) for v in data['sideB']))
        except (KeyError, TypeError, ValueError) as e:
            raise GraphInputError(f"malformed edge-cut record: {e}") from None

