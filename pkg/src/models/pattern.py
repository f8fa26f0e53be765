"""パターン補助モデル（S_G⁺ とシェル）"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from src.models.multigraph import Multigraph


@dataclass(frozen=True)
class PlusGraph:
    """葉を付加した部分グラフ S_G⁺

    leaf_origin: 葉頂点 → 元グラフの辺ID
    """
    graph: Multigraph
    core: FrozenSet[int]
    leaf_origin: Dict[int, int] = field(default_factory=dict, hash=False)

    @property
    def leaves(self) -> FrozenSet[int]:
        return frozenset(self.leaf_origin)


@dataclass(frozen=True)
class Shell:
    """頂点集合の連結な分割（各クラスは誘導辺を伴う）"""
    pieces: Tuple[Tuple[FrozenSet[int], FrozenSet[int]], ...]

    @property
    def classes(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(vertices for vertices, _ in self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)
