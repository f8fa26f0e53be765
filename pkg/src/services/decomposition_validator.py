"""木分解の独立検証（分解の構成手順は使わず、バッグの辺連結度は最大流で確かめる）"""
import logging
from collections import defaultdict
from typing import Dict, List, Tuple

import networkx as nx

from src.models.tree_decomposition import TreeDecomposition
from src.models.verdict import Verdict
from src.services.graph_operations import GraphOperations
from src.utils.enums import DecompositionKind

logger = logging.getLogger(__name__)


class DecompositionValidator:

    @staticmethod
    def validate(td: TreeDecomposition) -> Verdict:
        """分割・木構造・バッグの辺連結度・バッグ間の辺を検査"""
        host, tree = td.host, td.tree

        seen: Dict[int, int] = {}
        for bag_id in sorted(td.bags):
            bag = td.bags[bag_id]
            if not bag:
                return Verdict.violation('partition', f"bag {bag_id} is empty", (bag_id,))
            for v in sorted(bag):
                if not host.has_vertex(v):
                    return Verdict.violation('partition', f"bag {bag_id} holds unknown vertex {v}", (bag_id, v))
                if v in seen:
                    return Verdict.violation('partition', f"vertex {v} lies in bags {seen[v]} and {bag_id}",
                                             (seen[v], bag_id))
                seen[v] = bag_id
        missing = sorted(host.vertex_set - set(seen))
        if missing:
            return Verdict.violation('partition', f"vertices {missing} lie in no bag", tuple(missing))

        if (tree.n_vertices == 0 or tree.vertex_set != frozenset(td.bags)
                or not nx.is_tree(tree.to_networkx())):
            return Verdict.violation('tree', "bag tree is not a tree over the bag ids")

        k = 2 if td.kind == DecompositionKind.TWO_EC else 4
        for bag_id in sorted(td.bags):
            bag = td.bags[bag_id]
            if len(bag) > 1 and not GraphOperations.is_k_edge_connected(host.subgraph(bag), k):
                return Verdict.violation('bag-connectivity', f"bag {bag_id} is not {k}-edge-connected", (bag_id,))

        between: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        for e in host.edges:
            a, b = seen[e.u], seen[e.v]
            if a != b:
                between[(min(a, b), max(a, b))].append(e.id)
        tree_pairs = {(min(e.u, e.v), max(e.u, e.v)) for e in tree.edges}
        for pair in sorted(between):
            if pair not in tree_pairs:
                return Verdict.violation('cross-edge', f"host edges {between[pair]} join non-adjacent bags {pair}",
                                         pair)

        for pair in sorted(tree_pairs):
            ids = between.get(pair, [])
            if td.kind == DecompositionKind.TWO_EC:
                if len(ids) != 1:
                    return Verdict.violation('tree-edge-multiplicity',
                                             f"tree edge {pair} carries {len(ids)} host edges", pair)
            else:
                if not 1 <= len(ids) <= 3:
                    return Verdict.violation('tree-edge-multiplicity',
                                             f"tree edge {pair} carries {len(ids)} host edges", pair)
                if len({host.edge(eid).parallel_key for eid in ids}) != 1:
                    return Verdict.violation('parallel', f"host edges across tree edge {pair} are not parallel", pair)
        return Verdict.success()
