"""タングル族・辺タングル族モデル

族は明示的なメンバー集合か、メンバー判定オラクルのどちらか一方で表す。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, FrozenSet, List, Optional, Union

from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.utils.errors import GraphInputError


def _order_to_json(order: Fraction) -> Union[int, str]:
    return int(order) if order.denominator == 1 else str(order)


@dataclass(frozen=True)
class TangleFamily:
    """分離の族（位数θは有理数）"""
    host: Multigraph
    order: Fraction
    members: Optional[FrozenSet[Separation]] = None
    oracle: Optional[Callable[[Separation], bool]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'order', Fraction(self.order))
        if (self.members is None) == (self.oracle is None):
            raise GraphInputError("a family needs exactly one of members or oracle")
        if self.members is not None:
            members = frozenset(self.members)
            object.__setattr__(self, 'members', members)
            for s in members:
                s.validate_for(self.host)
                if s.order >= self.order:
                    raise GraphInputError(f"member of order {s.order} in a family of order {self.order}")

    @property
    def is_explicit(self) -> bool:
        return self.members is not None

    def contains(self, s: Separation) -> bool:
        # 位数の比較はFractionで厳密に行う
        if s.order >= self.order:
            return False
        if self.members is not None:
            return s in self.members
        return bool(self.oracle(s))

    def sorted_members(self) -> List[Separation]:
        if self.members is None:
            raise GraphInputError("oracle-backed family has no member list")
        return sorted(self.members, key=Separation.sort_key)

    def to_dict(self) -> dict:
        return {
            'order': _order_to_json(self.order),
            'members': [s.to_dict() for s in self.sorted_members()],
        }

    @classmethod
    def from_dict(cls, host: Multigraph, data: dict) -> 'TangleFamily':
        try:
            order = Fraction(str(data['order']))
            members = frozenset(Separation.from_dict(m) for m in data.get('members', []))
        except (KeyError, ValueError, ZeroDivisionError) as e:
            raise GraphInputError(f"malformed tangle certificate: {e}") from None
        return cls(host=host, order=order, members=members)


@dataclass(frozen=True)
class EdgeTangleFamily:
    """辺カットの族（位数θは整数）"""
    host: Multigraph
    order: int
    members: Optional[FrozenSet[EdgeCut]] = None
    oracle: Optional[Callable[[EdgeCut], bool]] = field(default=None, compare=False)

    def __post_init__(self):
        if (self.members is None) == (self.oracle is None):
            raise GraphInputError("a family needs exactly one of members or oracle")
        if self.members is not None:
            members = frozenset(self.members)
            object.__setattr__(self, 'members', members)
            for c in members:
                c.validate_for(self.host)
                if c.order_in(self.host) >= self.order:
                    raise GraphInputError("member order must be below the family order")

    @property
    def is_explicit(self) -> bool:
        return self.members is not None

    def contains(self, c: EdgeCut) -> bool:
        if c.order_in(self.host) >= self.order:
            return False
        if self.members is not None:
            return c in self.members
        return bool(self.oracle(c))

    def sorted_members(self) -> List[EdgeCut]:
        if self.members is None:
            raise GraphInputError("oracle-backed family has no member list")
        return sorted(self.members, key=EdgeCut.sort_key)

    def to_dict(self) -> dict:
        return {
            'order': self.order,
            'members': [c.to_dict() for c in self.sorted_members()],
        }

    @classmethod
    def from_dict(cls, host: Multigraph, data: dict) -> 'EdgeTangleFamily':
        try:
            order = int(data['order'])
            members = frozenset(EdgeCut.from_dict(m) for m in data.get('members', []))
        except (KeyError, TypeError, ValueError) as e:
            raise GraphInputError(f"malformed edge-tangle certificate: {e}") from None
        return cls(host=host, order=order, members=members)
