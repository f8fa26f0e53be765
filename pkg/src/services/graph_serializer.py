"""グラフのテキスト形式・証明書JSONのシリアライズ/デシリアライズを行うサービス"""
import json
import logging
import sys
from typing import Any, List, Optional, TextIO

from src.models.multigraph import Edge, Multigraph
from src.utils.constants import CERTIFICATE_VERSION, TEXT_COMMENT_PREFIX, TEXT_EDGE_TAG, TEXT_VERTEX_TAG
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class GraphSerializer:
    """テキストグラフ形式と証明書JSONの入出力"""

    @staticmethod
    def serialize(g: Multigraph) -> str:
        """正準テキスト形式（頂点、辺ともID昇順）"""
        lines = [f"{TEXT_VERTEX_TAG} {v}" for v in sorted(g.vertices)]
        lines += [f"{TEXT_EDGE_TAG} {e.id} {e.u} {e.v}" for e in sorted(g.edges, key=lambda e: e.id)]
        return "".join(line + "\n" for line in lines)

    @staticmethod
    def parse(text: str) -> Multigraph:
        """テキスト形式を解析

        Args:
            text: `v <id>` / `e <id> <u> <v>` の行、`#` 以降はコメント
        Returns:
            Multigraph（記述順を保持）
        """
        vertices: List[int] = []
        edges: List[Edge] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split(TEXT_COMMENT_PREFIX, 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                if tokens[0] == TEXT_VERTEX_TAG and len(tokens) == 2:
                    vertices.append(GraphSerializer._parse_id(tokens[1]))
                elif tokens[0] == TEXT_EDGE_TAG and len(tokens) == 4:
                    eid, u, v = (GraphSerializer._parse_id(t) for t in tokens[1:])
                    edges.append(Edge(eid, u, v))
                else:
                    raise GraphInputError(f"unrecognised record {line!r}")
            except GraphInputError as e:
                raise GraphInputError(f"line {lineno}: {e}") from None
        return Multigraph(tuple(vertices), tuple(edges))

    @staticmethod
    def _parse_id(token: str) -> int:
        if not (token.isascii() and token.isdigit()):
            raise GraphInputError(f"ids are nonnegative decimal integers, got {token!r}")
        return int(token)

    @staticmethod
    def read_graph(path: Optional[str] = None, stream: Optional[TextIO] = None) -> Multigraph:
        """ファイル、または標準入力からグラフを読み込み"""
        if path is not None and path != '-':
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    text = f.read()
            except OSError as e:
                raise GraphInputError(f"cannot read graph file {path}: {e}") from None
            except UnicodeDecodeError as e:
                raise GraphInputError(f"graph file {path} is not UTF-8 text: {e}") from None
            return GraphSerializer.parse(text)
        try:
            text = (stream or sys.stdin).read()
        except UnicodeDecodeError as e:
            raise GraphInputError(f"standard input is not UTF-8 text: {e}") from None
        return GraphSerializer.parse(text)

    @staticmethod
    def dumps(data: Any) -> str:
        """証明書JSON（キー順固定）"""
        return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)

    @staticmethod
    def certificate(kind: str, payload: dict) -> dict:
        data = {'version': CERTIFICATE_VERSION, 'kind': kind}
        data.update(payload)
        return data

    @staticmethod
    def load_json(path: str) -> dict:
        """証明書JSONファイルを読み込み"""
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            raise GraphInputError(f"cannot read certificate {path}: {e}") from None
        except json.JSONDecodeError as e:
            raise GraphInputError(f"certificate {path} is not valid JSON: {e}") from None
        except UnicodeDecodeError as e:
            raise GraphInputError(f"certificate {path} is not UTF-8 text: {e}") from None
        if not isinstance(data, dict):
            raise GraphInputError("certificate must be a JSON object")
        logger.debug("loaded certificate %s (%s)", path, data.get('kind', 'untyped'))
        return data

    @staticmethod
    def save_to_file(text: str, filepath: str) -> bool:
        """テキストをファイルに保存"""
        try:
            with open(filepath, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            return True
        except IOError as e:
            logger.error("file save failed: %s", e)
            return False
