"""木分解モデル"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List

from src.models.multigraph import Multigraph
from src.utils.enums import DecompositionKind
from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class TreeDecomposition:
    """辺連結度による木分解（バッグはホスト頂点の分割）"""
    host: Multigraph
    tree: Multigraph
    bags: Dict[int, FrozenSet[int]] = field(default_factory=dict, hash=False)
    kind: DecompositionKind = DecompositionKind.TWO_EC

    def __post_init__(self):
        object.__setattr__(self, 'bags', {b: frozenset(vs) for b, vs in self.bags.items()})

    def bag_of(self, v: int) -> int:
        for bag_id, vertices in self.bags.items():
            if v in vertices:
                return bag_id
        raise GraphInputError(f"vertex {v} lies in no bag")

    def tree_edge_pairs(self) -> List[List[int]]:
        return [sorted((e.u, e.v)) for e in sorted(self.tree.edges, key=lambda e: e.id)]

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'bags': {str(b): sorted(vs) for b, vs in sorted(self.bags.items())},
            'treeEdges': self.tree_edge_pairs(),
        }

    @classmethod
    def from_dict(cls, host: Multigraph, data: dict) -> 'TreeDecomposition':
        try:
            kind = DecompositionKind(data['kind'])
            bags = {int(b): frozenset(int(v) for v in vs) for b, vs in data['bags'].items()}
            pairs = [(int(a), int(b)) for a, b in data['treeEdges']]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise GraphInputError(f"malformed decomposition record: {e}") from None
        tree = Multigraph.from_edges(sorted(bags), pairs)
        return cls(host=host, tree=tree, bags=bags, kind=kind)
