"""イマージョン・ソーンズ・マイナー・パッキング証明書の検証サービス"""
import logging
from collections import Counter
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from src.models.immersion import Immersion, MinorModel, Thorns
from src.models.multigraph import Multigraph
from src.models.results import CoverResult
from src.models.verdict import Verdict
from src.services.immersion_search import ImmersionSearch
from src.utils.errors import GraphInputError

logger = logging.getLogger(__name__)


class ImmersionVerifier:
    """証明書を条項順に検査し、最初に破れた条項を返す"""

    @staticmethod
    def verify_immersion(imm: Immersion) -> Verdict:
        """単射性・ルートの正当性・端点・辺素性"""
        return ImmersionVerifier._verify(imm, max_usage=1)

    @staticmethod
    def verify_half_integral(imm: Immersion) -> Verdict:
        """辺素性の代わりに各ホスト辺の使用回数 ≤ 2 を検査"""
        return ImmersionVerifier._verify(imm, max_usage=2)

    @staticmethod
    def verify_subdivision(imm: Immersion) -> Verdict:
        """イマージョン条件に加え、2本のルートの共有頂点は共通端点の像に限る"""
        verdict = ImmersionVerifier.verify_immersion(imm)
        if not verdict.ok:
            return verdict
        edges = sorted(imm.pattern.edges, key=lambda e: e.id)
        route_vertices = {e.id: imm.host.ends_of(imm.routes[e.id]) for e in edges}
        for first, second in combinations(edges, 2):
            allowed = {imm.branch[v] for v in first.ends & second.ends}
            shared = route_vertices[first.id] & route_vertices[second.id]
            if not shared <= allowed:
                return Verdict.violation(
                    'internal-disjointness',
                    f"routes of pattern edges {first.id} and {second.id} meet at {sorted(shared - allowed)}",
                    (first.id, second.id),
                )
        return Verdict.success()

    @staticmethod
    def _verify(imm: Immersion, max_usage: int) -> Verdict:
        ImmersionVerifier._check_ids(imm)

        images = list(imm.branch.values())
        if len(set(images)) != len(images):
            duplicated = sorted(v for v, n in Counter(images).items() if n > 1)
            return Verdict.violation('injectivity', f"branch vertices reused: {duplicated}", tuple(duplicated))

        for e in sorted(imm.pattern.edges, key=lambda e: e.id):
            problem = ImmersionVerifier._route_problem(imm, e.id)
            if problem is not None:
                clause, detail = problem
                return Verdict.violation(clause, f"pattern edge {e.id}: {detail}", (e.id,))

        usage = imm.used_edges()
        for eid in sorted(usage):
            if usage[eid] > max_usage:
                users = tuple(sorted(h for h, r in imm.routes.items() if eid in r))
                clause = 'edge-disjointness' if max_usage == 1 else 'multiplicity'
                return Verdict.violation(clause, f"host edge {eid} used {usage[eid]} times", (eid,) + users)
        return Verdict.success()

    @staticmethod
    def _check_ids(imm: Immersion):
        if set(imm.branch) != imm.pattern.vertex_set:
            raise GraphInputError("branch map must cover exactly the pattern vertices")
        for g_vertex in imm.branch.values():
            imm.host.require_vertex(g_vertex)
        if set(imm.routes) != set(imm.pattern.edge_ids):
            raise GraphInputError("route map must cover exactly the pattern edges")
        for route in imm.routes.values():
            for eid in route:
                imm.host.edge(eid)

    @staticmethod
    def _route_problem(imm: Immersion, pattern_edge_id: int) -> Optional[Tuple[str, str]]:
        e = imm.pattern.edge(pattern_edge_id)
        route = imm.routes[pattern_edge_id]
        start, end = imm.branch[e.u], imm.branch[e.v]
        forward = ImmersionVerifier._walk(imm.host, route, start, end, closed=e.is_loop)
        if forward is None or e.is_loop:
            return forward
        backward = ImmersionVerifier._walk(imm.host, route, end, start, closed=False)
        return None if backward is None else forward

    @staticmethod
    def _walk(host: Multigraph, route: Sequence[int], start: int, end: int,
              closed: bool) -> Optional[Tuple[str, str]]:
        """route が start から end への道（closed なら start を通る閉路）かを調べる"""
        if not route:
            return ('route-validity', "empty route")
        if len(set(route)) != len(route):
            return ('route-validity', "route repeats an edge")
        visited = [start]
        current = start
        for eid in route:
            edge = host.edge(eid)
            if current not in edge.ends:
                return ('route-validity', f"host edge {eid} does not continue the walk at {current}")
            current = edge.other(current)
            visited.append(current)
        if current != end:
            return ('endpoints', f"walk ends at {current}, expected {end}")
        inner = visited[1:-1] if closed else visited
        if len(set(inner)) != len(inner) or (closed and start in inner):
            return ('route-validity', "route revisits a vertex")
        return None

    # ソーンズ・マイナー
    @staticmethod
    def verify_thorns(th: Thorns) -> Verdict:
        """辺を持つ連結な枝集合・辺素性・隣接は頂点共有で実現"""
        if not th.pattern.is_simple():
            raise GraphInputError("thorns are defined for simple patterns")
        if set(th.branch_sets) != th.pattern.vertex_set:
            raise GraphInputError("branch sets must cover exactly the pattern vertices")
        for edges in th.branch_sets.values():
            for eid in edges:
                th.host.edge(eid)

        for h in sorted(th.branch_sets):
            edges = th.branch_sets[h]
            if not edges:
                return Verdict.violation('nonempty', f"branch set of {h} has no edge", (h,))
            if not ImmersionVerifier._edges_connected(th.host, edges):
                return Verdict.violation('connectivity', f"branch set of {h} is disconnected", (h,))
        for first, second in combinations(sorted(th.branch_sets), 2):
            if th.branch_sets[first] & th.branch_sets[second]:
                return Verdict.violation('edge-disjointness', f"branch sets of {first} and {second} share an edge",
                                         (first, second))
        for e in sorted(th.pattern.edges, key=lambda e: e.id):
            if not th.host.ends_of(th.branch_sets[e.u]) & th.host.ends_of(th.branch_sets[e.v]):
                return Verdict.violation('adjacency', f"branch sets of {e.u} and {e.v} share no vertex", (e.u, e.v))
        return Verdict.success()

    @staticmethod
    def verify_minor(model: MinorModel) -> Verdict:
        if not model.pattern.is_simple():
            raise GraphInputError("minor models are defined for simple patterns")
        if set(model.branch_sets) != model.pattern.vertex_set:
            raise GraphInputError("branch sets must cover exactly the pattern vertices")
        for vertices in model.branch_sets.values():
            for v in vertices:
                model.host.require_vertex(v)

        for h in sorted(model.branch_sets):
            vertices = model.branch_sets[h]
            if not vertices:
                return Verdict.violation('nonempty', f"branch set of {h} is empty", (h,))
            if not nx.is_connected(model.host.to_networkx().subgraph(vertices)):
                return Verdict.violation('connectivity', f"branch set of {h} is disconnected", (h,))
        for first, second in combinations(sorted(model.branch_sets), 2):
            if model.branch_sets[first] & model.branch_sets[second]:
                return Verdict.violation('disjointness', f"branch sets of {first} and {second} overlap",
                                         (first, second))
        for e in sorted(model.pattern.edges, key=lambda e: e.id):
            a, b = model.branch_sets[e.u], model.branch_sets[e.v]
            if not any((x.u in a and x.v in b) or (x.u in b and x.v in a) for x in model.host.edges):
                return Verdict.violation('adjacency', f"no host edge between branch sets of {e.u} and {e.v}",
                                         (e.u, e.v))
        return Verdict.success()

    @staticmethod
    def _edges_connected(host: Multigraph, edge_ids: Iterable[int]) -> bool:
        graph = nx.MultiGraph()
        for eid in edge_ids:
            e = host.edge(eid)
            graph.add_edge(e.u, e.v, key=eid)
        return graph.number_of_nodes() > 0 and nx.is_connected(graph)

    # パッキング・リンケージ
    @staticmethod
    def verify_packing(witnesses: Sequence[Immersion], half_integral: bool = False) -> Verdict:
        """各証明書の妥当性と、全体での辺使用回数（辺素 or ≤ 2）"""
        total = Counter()
        for index, imm in enumerate(witnesses):
            verdict = (ImmersionVerifier.verify_half_integral(imm) if half_integral
                       else ImmersionVerifier.verify_immersion(imm))
            if not verdict.ok:
                return Verdict.violation(verdict.clause, f"witness {index}: {verdict.detail}", (index,))
            total.update(imm.image_edges() if not half_integral else imm.used_edges())
        limit = 2 if half_integral else 1
        for eid in sorted(total):
            if total[eid] > limit:
                return Verdict.violation('joint-usage', f"host edge {eid} used {total[eid]} times overall", (eid,))
        return Verdict.success()

    @staticmethod
    def verify_tree_linkage(g: Multigraph, x: Iterable[int], parts: Sequence[Iterable[int]],
                            trees: Sequence[Iterable[int]]) -> Verdict:
        x = frozenset(x)
        parts: List[frozenset] = [frozenset(p) for p in parts]
        trees: List[frozenset] = [frozenset(t) for t in trees]
        if len(parts) != len(trees):
            return Verdict.violation('count', f"{len(trees)} trees for {len(parts)} parts")
        for index, tree in enumerate(trees):
            for eid in tree:
                g.edge(eid)
            if not ImmersionVerifier._edges_connected(g, tree):
                return Verdict.violation('connectivity', f"tree {index} is not connected", (index,))
            if tree & x != parts[index]:
                return Verdict.violation('terminals', f"tree {index} meets X outside its part", (index,))
        for i, j in combinations(range(len(trees)), 2):
            if trees[i] & trees[j]:
                return Verdict.violation('edge-disjointness', f"trees {i} and {j} share an edge", (i, j))
        return Verdict.success()

    @staticmethod
    def verify_cover(g: Multigraph, h: Multigraph, cover: CoverResult) -> Verdict:
        """G−Z に H-イマージョンが残っていないことを探索で確認"""
        for eid in cover.edges:
            g.edge(eid)
        residual = ImmersionSearch.find_immersion(g, h, forbidden_edges=cover.edges)
        if residual is not None:
            return Verdict.violation('residual-immersion', "the pattern still immerses after deleting Z",
                                     (residual,))
        return Verdict.success()
