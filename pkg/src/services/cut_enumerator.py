"""辺カット・分離の網羅列挙サービス"""
import logging
from itertools import combinations, product
from math import comb
from typing import Callable, Iterator, List

import networkx as nx

from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.services.settings_service import SettingsService
from src.utils.errors import CapacityError

logger = logging.getLogger(__name__)

CutEnumeratorFn = Callable[[Multigraph, int], Iterator[EdgeCut]]


class CutEnumerator:
    """位数 < max_order の全カット／全分離を決定的な順序で列挙"""

    @staticmethod
    def enumerate_cuts(g: Multigraph, max_order: int) -> List[EdgeCut]:
        """頂点二分割スイープ（ビット i が立つ頂点を A 側に置く）"""
        return list(CutEnumerator.sweep_cuts(g, max_order))

    @staticmethod
    def sweep_cuts(g: Multigraph, max_order: int) -> Iterator[EdgeCut]:
        limit = SettingsService.get_instance().cut_sweep_max_vertices
        n = g.n_vertices
        if n > limit:
            raise CapacityError(f"bipartition sweep is limited to {limit} vertices, got {n}", 'cut_sweep_max_vertices')
        if max_order <= 0:
            return
        bit = {v: i for i, v in enumerate(g.vertices)}
        pairs = [(bit[e.u], bit[e.v]) for e in g.edges if not e.is_loop]
        for mask in range(1 << n):
            crossing = 0
            for a, b in pairs:
                if ((mask >> a) ^ (mask >> b)) & 1:
                    crossing += 1
                    if crossing >= max_order:
                        break
            else:
                side_a = frozenset(v for v in g.vertices if mask >> bit[v] & 1)
                yield EdgeCut(side_a, g.vertex_set - side_a)

    @staticmethod
    def enumerate_cuts_by_crossing_set(g: Multigraph, max_order: int) -> List[EdgeCut]:
        return list(CutEnumerator.crossing_set_cuts(g, max_order))

    @staticmethod
    def crossing_set_cuts(g: Multigraph, max_order: int) -> Iterator[EdgeCut]:
        """交差辺集合 F を列挙し、G−F の成分を2彩色してカットを作る

        各カットは自身の交差辺集合に対してちょうど1回だけ現れる。
        """
        non_loop = [e for e in g.edges if not e.is_loop]
        candidates = sum(comb(len(non_loop), k) for k in range(max(0, max_order)))
        limit = SettingsService.get_instance().crossing_set_limit
        if candidates > limit:
            raise CapacityError(f"{candidates} crossing-set candidates exceed the limit {limit}", 'crossing_set_limit')

        base = g.to_networkx()
        position = {v: i for i, v in enumerate(g.vertices)}
        for k in range(max(0, max_order)):
            for crossing in combinations(non_loop, k):
                view = nx.restricted_view(base, [], [(e.u, e.v, e.id) for e in crossing])
                comps = sorted(
                    (frozenset(c) for c in nx.connected_components(view)),
                    key=lambda c: min(position[v] for v in c),
                )
                comp_of = {v: i for i, c in enumerate(comps) for v in c}
                quotient = nx.Graph()
                quotient.add_nodes_from(range(len(comps)))
                if any(comp_of[e.u] == comp_of[e.v] for e in crossing):
                    continue
                quotient.add_edges_from((comp_of[e.u], comp_of[e.v]) for e in crossing)
                if not nx.is_bipartite(quotient):
                    continue

                pieces = []
                for part in sorted(nx.connected_components(quotient), key=min):
                    coloring = nx.bipartite.color(quotient.subgraph(part))
                    first = frozenset().union(*(comps[i] for i in part if coloring[i] == 0))
                    second = frozenset().union(*(comps[i] for i in part if coloring[i] == 1))
                    pieces.append((first, second))

                for choice in product((0, 1), repeat=len(pieces)):
                    side_a = frozenset().union(*(piece[c] for piece, c in zip(pieces, choice)))
                    yield EdgeCut(side_a, g.vertex_set - side_a)

    @staticmethod
    def cuts(g: Multigraph, max_order: int) -> Iterator[EdgeCut]:
        """状況に応じてスイープか交差辺集合列挙を選ぶ"""
        settings = SettingsService.get_instance()
        non_loop = sum(1 for e in g.edges if not e.is_loop)
        candidates = sum(comb(non_loop, k) for k in range(max(0, max_order)))
        if g.n_vertices <= 12:
            return CutEnumerator.sweep_cuts(g, max_order)
        if candidates <= settings.crossing_set_limit:
            return CutEnumerator.crossing_set_cuts(g, max_order)
        return CutEnumerator.sweep_cuts(g, max_order)

    @staticmethod
    def enumerate_separations(g: Multigraph, max_order: int) -> List[Separation]:
        return list(CutEnumerator.separations(g, max_order))

    @staticmethod
    def separations(g: Multigraph, max_order: int) -> Iterator[Separation]:
        """境界 S（|S| < max_order）を選び、G−S の各成分と S 内の各辺に側を割り当てる"""
        limit = SettingsService.get_instance().separation_limit
        produced = 0
        base = g.to_networkx()
        position = {v: i for i, v in enumerate(g.vertices)}
        for size in range(min(max(0, max_order), g.n_vertices + 1)):
            for boundary in combinations(g.vertices, size):
                boundary_set = frozenset(boundary)
                rest = [v for v in g.vertices if v not in boundary_set]
                comps = sorted(
                    (frozenset(c) for c in nx.connected_components(base.subgraph(rest))),
                    key=lambda c: min(position[v] for v in c),
                )
                comp_of = {v: i for i, c in enumerate(comps) for v in c}
                comp_edges = [[] for _ in comps]
                inner_edges = []
                for e in g.edges:
                    if e.u in boundary_set and e.v in boundary_set:
                        inner_edges.append(e.id)
                    else:
                        outside = e.u if e.u not in boundary_set else e.v
                        comp_edges[comp_of[outside]].append(e.id)

                produced += 1 << (len(comps) + len(inner_edges))
                if produced > limit:
                    raise CapacityError(f"more than {limit} separations to enumerate", 'separation_limit')

                for comp_choice in product((0, 1), repeat=len(comps)):
                    a_vertices, b_vertices = set(boundary_set), set(boundary_set)
                    a_edges, b_edges = set(), set()
                    for i, side in enumerate(comp_choice):
                        (a_vertices if side == 0 else b_vertices).update(comps[i])
                        (a_edges if side == 0 else b_edges).update(comp_edges[i])
                    for edge_choice in product((0, 1), repeat=len(inner_edges)):
                        extra_a = {eid for eid, side in zip(inner_edges, edge_choice) if side == 0}
                        extra_b = set(inner_edges) - extra_a
                        yield Separation(
                            frozenset(a_vertices), frozenset(a_edges | extra_a),
                            frozenset(b_vertices), frozenset(b_edges | extra_b),
                        )
