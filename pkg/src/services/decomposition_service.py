"""辺連結度による木分解の構成サービス"""
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from src.models.multigraph import Multigraph
from src.models.tree_decomposition import TreeDecomposition
from src.services.cut_enumerator import CutEnumerator
from src.services.graph_operations import GraphOperations
from src.utils.enums import DecompositionKind
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class DecompositionService:
    """橋ブロック木と、ほぼ4辺連結グラフの木分解"""

    @staticmethod
    def _assemble(g: Multigraph, bags: Iterable[FrozenSet[int]], joins: Iterable[Tuple[int, int]],
                  kind: DecompositionKind) -> TreeDecomposition:
        """バッグを最小頂点位置の順に番号付けし、ホスト頂点対で与えた結合を木辺にする"""
        position = {v: i for i, v in enumerate(g.vertices)}
        ordered = sorted(bags, key=lambda b: min(position[v] for v in b))
        bag_id = {v: i for i, bag in enumerate(ordered) for v in bag}
        pairs = sorted(tuple(sorted((bag_id[u], bag_id[v]))) for u, v in joins)
        tree = Multigraph.from_edges(range(len(ordered)), pairs)
        return TreeDecomposition(host=g, tree=tree, bags=dict(enumerate(ordered)), kind=kind)

    @staticmethod
    def bridge_block_tree(g: Multigraph) -> TreeDecomposition:
        """橋を除いた各成分をバッグとし、橋を木辺とする"""
        if not GraphOperations.is_connected(g):
            raise GraphInputError("bridge-block tree needs a connected graph")
        simple_view = nx.MultiGraph()
        simple_view.add_nodes_from(g.vertices)
        simple_view.add_edges_from((e.u, e.v, e.id) for e in g.edges if not e.is_loop)
        bridge_ids = [g.edges_between(u, v)[0].id for u, v in nx.bridges(simple_view)]
        blocks = GraphOperations.components(GraphOperations.delete_edges(g, bridge_ids))
        joins = [(g.edge(eid).u, g.edge(eid).v) for eid in bridge_ids]
        logger.debug("bridge-block tree: %d bridges, %d blocks", len(bridge_ids), len(blocks))
        return DecompositionService._assemble(g, blocks, joins, DecompositionKind.TWO_EC)

    @staticmethod
    def is_nearly_4ec(g: Multigraph) -> bool:
        """連結で、位数 < 4 の全カットの交差辺が同じ端点の平行辺"""
        if not GraphOperations.is_connected(g):
            return False
        for c in CutEnumerator.crossing_set_cuts(g, 4):
            crossing = c.crossing_edges(g)
            if len({g.edge(eid).parallel_key for eid in crossing}) > 1:
                logger.debug("order-%d cut with non-parallel crossing edges %s", len(crossing), list(crossing))
                return False
        return True

    @staticmethod
    def _splitting_class(h: Multigraph) -> Optional[Tuple[int, int, List[int]]]:
        """除去で非連結になる多重度 ≤ 3 の平行クラス（多重度、端点の順で最初のもの）"""
        classes: Dict[Tuple[int, int], List[int]] = {}
        for e in h.edges:
            if not e.is_loop:
                classes.setdefault(e.parallel_key, []).append(e.id)
        for (u, v), ids in sorted(classes.items(), key=lambda item: (len(item[1]), item[0])):
            if len(ids) > 3:
                continue
            if not GraphOperations.is_connected(GraphOperations.delete_edges(h, ids)):
                return u, v, ids
        return None

    @staticmethod
    def _decompose(h: Multigraph, bags: List[FrozenSet[int]], joins: List[Tuple[int, int]]):
        split = DecompositionService._splitting_class(h)
        if split is None:
            bags.append(h.vertex_set)
            return
        u, v, ids = split
        side_a = next(c for c in GraphOperations.components(GraphOperations.delete_edges(h, ids)) if u in c)
        side_b = h.vertex_set - side_a
        joins.append((u, v))
        DecompositionService._decompose(h.subgraph(side_a), bags, joins)
        DecompositionService._decompose(h.subgraph(side_b), bags, joins)

    @staticmethod
    def decompose_nearly_4ec(g: Multigraph) -> TreeDecomposition:
        """位数 < 4 の平行辺カットで再帰的に分割する"""
        if not DecompositionService.is_nearly_4ec(g):
            raise GraphInputError("graph is not nearly 4-edge-connected")
        bags: List[FrozenSet[int]] = []
        joins: List[Tuple[int, int]] = []
        DecompositionService._decompose(g, bags, joins)
        logger.debug("nearly-4ec decomposition: %d bags", len(bags))
        return DecompositionService._assemble(g, bags, joins, DecompositionKind.NEARLY_FOUR_EC)
