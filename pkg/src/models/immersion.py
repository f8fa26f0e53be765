"""イマージョン・ソーンズ・マイナーモデル"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from src.models.multigraph import Multigraph
from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class Immersion:
    """H-イマージョン (π_V, π_E)

    branch: パターン頂点 → ホスト頂点
    routes: パターン辺 → ホスト辺IDの列（道、ループなら閉路）
    """
    pattern: Multigraph
    host: Multigraph
    branch: Dict[int, int] = field(default_factory=dict, hash=False)
    routes: Dict[int, Tuple[int, ...]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'branch', dict(self.branch))
        object.__setattr__(self, 'routes', {k: tuple(r) for k, r in self.routes.items()})

    def used_edges(self) -> Counter:
        """ホスト辺ごとの使用回数"""
        usage = Counter()
        for route in self.routes.values():
            usage.update(route)
        return usage

    def image_edges(self) -> FrozenSet[int]:
        return frozenset(eid for route in self.routes.values() for eid in route)

    def to_dict(self) -> dict:
        return {
            'pattern': self.pattern.to_dict(),
            'host': self.host.to_dict(),
            'branch': {str(h): g for h, g in sorted(self.branch.items())},
            'routes': {str(e): list(r) for e, r in sorted(self.routes.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Immersion':
        try:
            return cls(
                pattern=Multigraph.from_dict(data['pattern']),
                host=Multigraph.from_dict(data['host']),
                branch={int(h): int(g) for h, g in data['branch'].items()},
                routes={int(e): tuple(int(x) for x in r) for e, r in data['routes'].items()},
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise GraphInputError(f"malformed immersion certificate: {e}") from None


@dataclass(frozen=True)
class HalfIntegralImmersion(Immersion):
    """半整数イマージョン（各ホスト辺は高々2本のルートに現れる）"""
    pass


@dataclass(frozen=True)
class Thorns:
    """H-ソーンズ（枝集合は辺素な連結部分グラフの辺集合）"""
    pattern: Multigraph
    host: Multigraph
    branch_sets: Dict[int, FrozenSet[int]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'branch_sets', {h: frozenset(s) for h, s in self.branch_sets.items()})

    def to_dict(self) -> dict:
        return {
            'pattern': self.pattern.to_dict(),
            'host': self.host.to_dict(),
            'branchSets': {str(h): sorted(s) for h, s in sorted(self.branch_sets.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Thorns':
        try:
            return cls(
                pattern=Multigraph.from_dict(data['pattern']),
                host=Multigraph.from_dict(data['host']),
                branch_sets={int(h): frozenset(int(x) for x in s) for h, s in data['branchSets'].items()},
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise GraphInputError(f"malformed thorns certificate: {e}") from None


@dataclass(frozen=True)
class MinorModel:
    """H-マイナーモデル（枝集合は互いに素な連結頂点集合）"""
    pattern: Multigraph
    host: Multigraph
    branch_sets: Dict[int, FrozenSet[int]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'branch_sets', {h: frozenset(s) for h, s in self.branch_sets.items()})

    def to_dict(self) -> dict:
        return {
            'pattern': self.pattern.to_dict(),
            'host': self.host.to_dict(),
            'branchSets': {str(h): sorted(s) for h, s in sorted(self.branch_sets.items())},
        }
