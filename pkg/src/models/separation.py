"""分離モデル"""
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from src.models.multigraph import Multigraph
from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class Separation:
    """分離 (A,B)：辺素な部分グラフ対で A ∪ B = G

    境界頂点は両側に属する。辺のない頂点もどちらかの側に明示的に置く。
    """
    a_vertices: FrozenSet[int]
    a_edges: FrozenSet[int]
    b_vertices: FrozenSet[int]
    b_edges: FrozenSet[int]

    def __post_init__(self):
        for name in ('a_vertices', 'a_edges', 'b_vertices', 'b_edges'):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def boundary(self) -> FrozenSet[int]:
        return self.a_vertices & self.b_vertices

    @property
    def order(self) -> int:
        return len(self.a_vertices & self.b_vertices)

    def reversed(self) -> 'Separation':
        return Separation(self.b_vertices, self.b_edges, self.a_vertices, self.a_edges)

    def is_valid_for(self, g: Multigraph) -> bool:
        if self.a_edges & self.b_edges:
            return False
        if self.a_edges | self.b_edges != frozenset(g.edge_ids):
            return False
        if self.a_vertices | self.b_vertices != g.vertex_set:
            return False
        for eid in self.a_edges:
            if not g.edge(eid).ends <= self.a_vertices:
                return False
        for eid in self.b_edges:
            if not g.edge(eid).ends <= self.b_vertices:
                return False
        return True

    def validate_for(self, g: Multigraph):
        for eid in self.a_edges | self.b_edges:
            g.edge(eid)
        for v in self.a_vertices | self.b_vertices:
            g.require_vertex(v)
        if not self.is_valid_for(g):
            raise GraphInputError("not a separation of the host graph")

    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return (
            tuple(sorted(self.a_vertices)), tuple(sorted(self.a_edges)),
            tuple(sorted(self.b_vertices)), tuple(sorted(self.b_edges)),
        )

    def to_dict(self) -> dict:
        return {
            'sideA': {'vertices': sorted(self.a_vertices), 'edges': sorted(self.a_edges)},
            'sideB': {'vertices': sorted(self.b_vertices), 'edges': sorted(self.b_edges)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Separation':
        try:
            side_a, side_b = data['sideA'], data['sideB']
            return cls(
                frozenset(int(v) for v in side_a['vertices']),
                frozenset(int(e) for e in side_a['edges']),
                frozenset(int(v) for v in side_b['vertices']),
                frozenset(int(e) for e in side_b['edges']),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise GraphInputError(f"malformed separation record: {e}") from None
