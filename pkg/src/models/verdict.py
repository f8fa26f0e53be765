"""検証結果モデル"""
from dataclasses import dataclass
from typing import Any, Optional, Tuple


@dataclass(frozen=True)
class Verdict:
    """検証結果（合格、または違反条項と反例）"""
    ok: bool
    clause: Optional[str] = None
    detail: str = ""
    witness: Tuple[Any, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def success(cls) -> 'Verdict':
        return cls(ok=True)

    @classmethod
    def violation(cls, clause: str, detail: str = "", witness: Tuple[Any, ...] = ()) -> 'Verdict':
        return cls(ok=False, clause=clause, detail=detail, witness=tuple(witness))

    def to_dict(self) -> dict:
        data = {'ok': self.ok}
        if not self.ok:
            data['clause'] = self.clause
            data['detail'] = self.detail
            data['witness'] = [w.to_dict() if hasattr(w, 'to_dict') else w for w in self.witness]
        return data
