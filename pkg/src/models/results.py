"""ソルバー結果モデル"""
from dataclasses import dataclass, field
from typing import FrozenSet, Tuple

from src.models.immersion import Immersion


@dataclass(frozen=True)
class PackingResult:
    """辺素パッキング（exact=False は予算切れの下界）"""
    count: int
    witnesses: Tuple[Immersion, ...] = ()
    exact: bool = True

    def to_dict(self) -> dict:
        return {
            'count': self.count,
            'exact': self.exact,
            'witnesses': [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class CoverResult:
    """被覆辺集合 Z"""
    edges: FrozenSet[int] = field(default_factory=frozenset)
    exact: bool = True

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_dict(self) -> dict:
        return {'edges': sorted(self.edges), 'size': self.size, 'exact': self.exact}


@dataclass(frozen=True)
class ExperimentRow:
    graph_id: str
    n_vertices: int
    n_edges: int
    pattern: str
    nu: int
    nu_exact: bool
    tau: int
    tau_exact: bool
    runtime_ms: int = 0

    def to_csv_row(self) -> list:
        return [
            self.graph_id, self.n_vertices, self.n_edges, self.pattern,
            self.nu, str(self.nu_exact).lower(), self.tau, str(self.tau_exact).lower(),
            self.runtime_ms,
        ]
