"""タングル・辺タングルの構成と公理検査のテスト"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings

from src.models.immersion import Immersion, Thorns
from src.models.multigraph import EdgeCut, Multigraph
from src.models.separation import Separation
from src.models.tangle_family import EdgeTangleFamily, TangleFamily
from src.services.cut_enumerator import CutEnumerator
from src.services.freeness_service import FreenessService
from src.services.graph_generator import GraphGenerator
from src.services.graph_transformer import GraphTransformer
from src.services.settings_service import SettingsService
from src.services.tangle_axioms import TangleAxiomChecker
from src.services.tangle_search import TangleSearch
from src.services.tangle_service import TangleService
from src.utils.errors import CapacityError, GraphInputError
from tests import oracles
from tests.strategies import multigraphs


def trivial_edge_tangle(g: Multigraph, theta: int) -> EdgeTangleFamily:
    """{[∅, V]} だけからなる族"""
    return EdgeTangleFamily(host=g, order=theta, members=frozenset({EdgeCut(frozenset(), g.vertex_set)}))


class TestCutEnumerator:
    """カット・分離の列挙"""

    def test_k2_has_four_cuts(self):
        assert len(CutEnumerator.enumerate_cuts(GraphGenerator.complete(2), 2)) == 4

    def test_edgeless_pair_has_four_order_zero_cuts(self):
        assert len(CutEnumerator.enumerate_cuts(GraphGenerator.empty(2), 1)) == 4

    def test_nonpositive_order_gives_nothing(self, triangle):
        assert CutEnumerator.enumerate_cuts(triangle, 0) == []
        assert CutEnumerator.enumerate_cuts_by_crossing_set(triangle, 0) == []

    @given(multigraphs(max_vertices=6, max_edges=7))
    def test_crossing_sets_agree_with_sweep(self, g):
        """交差辺集合による列挙は二分割スイープと同じカットを重複なく返す"""
        for max_order in (1, 2, 3):
            by_crossing = CutEnumerator.enumerate_cuts_by_crossing_set(g, max_order)
            assert len(by_crossing) == len(set(by_crossing))
            assert set(by_crossing) == set(CutEnumerator.enumerate_cuts(g, max_order))

    def test_sweep_respects_vertex_limit(self):
        SettingsService.get_instance().set('cut_sweep_max_vertices', 3)
        with pytest.raises(CapacityError):
            CutEnumerator.enumerate_cuts(GraphGenerator.path(4), 1)

    def test_separations_of_path(self, path3):
        order_zero = CutEnumerator.enumerate_separations(path3, 1)
        assert len(order_zero) == 2
        assert all(s.is_valid_for(path3) for s in CutEnumerator.enumerate_separations(path3, 3))


class TestNormalization:
    """分離の正規化"""

    def test_normalized_path_separation_unchanged(self, path3):
        s = Separation({0, 1}, {0}, {1, 2}, {1})
        assert TangleService.is_normalized(path3, s)
        assert TangleService.normalize(path3, s) == s

    def test_star_boundary_collapses(self):
        """中心と葉の両方が境界から外れる"""
        star = GraphGenerator.star(2)
        s = Separation({0, 1}, {0}, {0, 1, 2}, {1})
        assert s.order == 2
        result = TangleService.normalize(star, s)
        assert result == Separation(set(), set(), {0, 1, 2}, {0, 1})
        assert TangleService.is_normalized(star, result)

    def test_invalid_separation_rejected(self, path3):
        with pytest.raises(GraphInputError):
            TangleService.normalize(path3, Separation({0, 1}, {0}, {1, 2}, set()))

    @settings(max_examples=200)
    @given(multigraphs(max_vertices=6, max_edges=6, connected=True))
    def test_normalize_is_idempotent_and_never_raises_order(self, g):
        for s in CutEnumerator.separations(g, g.n_vertices + 1):
            result = TangleService.normalize(g, s)
            assert result.is_valid_for(g)
            assert TangleService.is_normalized(g, result)
            assert result.order <= s.order
            assert TangleService.normalize(g, result) == result

    @given(multigraphs(max_vertices=5, max_edges=5, connected=True))
    def test_tangle_membership_survives_normalization(self, g):
        assume(g.n_edges > 0)
        for theta in (1, 2):
            for t in TangleSearch.materialize_tangles(g, theta):
                for s in CutEnumerator.separations(g, theta):
                    assert t.contains(s) == t.contains(TangleService.normalize(g, s))


class TestPartner:
    """線グラフの分離に対応する辺カット"""

    def test_trivial_separation(self, triangle):
        line, _ = GraphTransformer.line_graph(triangle)
        s = Separation(line.vertex_set, frozenset(line.edge_ids), set(), set())
        assert TangleService.partner(triangle, s) == EdgeCut(triangle.vertex_set, set())

    def test_partner_of_path_split(self):
        """a–b–c–d の線グラフ（道）を中央の辺で分ける"""
        g = GraphGenerator.path(4)
        line, _ = GraphTransformer.line_graph(g)
        s = Separation({0, 1}, {0}, {1, 2}, {1})
        assert s.is_valid_for(line)
        cut = TangleService.partner(g, s)
        assert cut == EdgeCut({0, 1}, {2, 3})
        assert cut.order_in(g) == s.order

    def test_non_normalized_rejected(self, path3):
        s = Separation({0, 1}, {0}, {1}, set())
        with pytest.raises(GraphInputError):
            TangleService.partner(path3, s)

    @settings(max_examples=100)
    @given(multigraphs(max_vertices=7, max_edges=7, connected=True))
    def test_partner_order_equals_separation_order(self, g):
        line, _ = GraphTransformer.line_graph(g)
        for s in CutEnumerator.separations(line, 3):
            if not TangleService.is_normalized(line, s):
                continue
            cut = TangleService.partner(g, s)
            assert cut.order_in(g) == s.order


class TestConjugate:
    """辺タングルの共役"""

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_conjugate_of_doubled_cycle_is_tangle(self, n):
        g = GraphGenerator.doubled_cycle(n)
        edge_tangles = TangleSearch.materialize_edge_tangles(g, 4)
        assert edge_tangles
        conjugate = TangleService.conjugate(edge_tangles[0])
        assert conjugate.order == Fraction(4, 3)
        assert TangleAxiomChecker.check_tangle_axioms(conjugate, at_order=2).ok

    def test_doubled_c3_has_only_the_trivial_edge_tangle(self):
        g = GraphGenerator.doubled_cycle(3)
        found = TangleSearch.materialize_edge_tangles(g, 4)
        assert len(found) == 1
        assert found[0].members == frozenset({EdgeCut(frozenset(), g.vertex_set)})


class TestAxioms:
    """公理検査と反例"""

    def test_order_one_tangle_toward_graph(self, triangle):
        t = TangleFamily(host=triangle, order=1, members=frozenset({
            Separation(set(), set(), triangle.vertex_set, frozenset(triangle.edge_ids)),
        }))
        assert TangleAxiomChecker.check_tangle_axioms(t).ok

    def test_empty_family_is_not_oriented(self, triangle):
        verdict = TangleAxiomChecker.check_tangle_axioms(TangleFamily(host=triangle, order=1, members=frozenset()))
        assert verdict.clause == 'T1'

    def test_full_side_member(self, triangle):
        t = TangleFamily(host=triangle, order=1, members=frozenset({
            Separation(triangle.vertex_set, frozenset(triangle.edge_ids), set(), set()),
        }))
        assert TangleAxiomChecker.check_tangle_axioms(t).clause == 'T3'

    def test_both_orientations_cover(self, path3):
        """両向きを持つ族は三つ組条件で落ちる"""
        members = frozenset(
            s for s in CutEnumerator.separations(path3, 2) if s.a_vertices != path3.vertex_set
        )
        verdict = TangleAxiomChecker.check_tangle_axioms(TangleFamily(host=path3, order=2, members=members))
        assert verdict.clause == 'T2'
        assert len(verdict.witness) == 3

    def test_materialized_tangle_of_triangle(self, triangle):
        found = TangleSearch.materialize_tangles(triangle, 1)
        assert len(found) == 1
        assert TangleAxiomChecker.check_tangle_axioms(found[0]).ok

    def test_doubled_c3_edge_tangle(self):
        g = GraphGenerator.doubled_cycle(3)
        assert TangleAxiomChecker.check_edge_tangle_axioms(trivial_edge_tangle(g, 4)).ok

    def test_too_few_incident_edges(self):
        g = GraphGenerator.doubled_cycle(2)
        verdict = TangleAxiomChecker.check_edge_tangle_axioms(trivial_edge_tangle(g, 5))
        assert verdict.clause == 'E3'
        assert verdict.witness == (EdgeCut(frozenset(), g.vertex_set),)

    def test_missing_orientation(self, triangle):
        verdict = TangleAxiomChecker.check_edge_tangle_axioms(
            EdgeTangleFamily(host=triangle, order=1, members=frozenset()))
        assert verdict.clause == 'E1'

    def test_disjoint_b_sides(self):
        """各頂点を単独で A 側に置くと3つの B 側が交わらない"""
        g = GraphGenerator.doubled_cycle(3)
        members = {EdgeCut(frozenset(), g.vertex_set)}
        members |= {EdgeCut({v}, g.vertex_set - {v}) for v in g.vertices}
        verdict = TangleAxiomChecker.check_edge_tangle_axioms(
            EdgeTangleFamily(host=g, order=5, members=frozenset(members)))
        assert verdict.clause == 'E2'
        assert len(verdict.witness) == 3
        assert TangleSearch.materialize_edge_tangles(g, 5) == []

    def test_materialized_edge_tangles_pass(self, k4):
        for theta in (1, 2, 3, 4):
            for e in TangleSearch.materialize_edge_tangles(k4, theta):
                assert TangleAxiomChecker.check_edge_tangle_axioms(e).ok


class TestWallEdgeTangle:
    """壁の辺タングル"""

    def test_small_wall_full_check(self):
        e = TangleService.wall_edge_tangle(2, 1)
        assert e.host.n_vertices == 8
        assert TangleAxiomChecker.check_edge_tangle_axioms(e).ok

    def test_larger_wall_via_bridges(self):
        e = TangleService.wall_edge_tangle(4, 2)
        enumerated = CutEnumerator.enumerate_cuts_by_crossing_set(e.host, 2)
        assert set(enumerated) == set(oracles.bridge_cuts(e.host))
        verdict = TangleAxiomChecker.check_edge_tangle_axioms(e, enumerator=CutEnumerator.crossing_set_cuts)
        assert verdict.ok

    def test_wall_too_small_for_order(self):
        with pytest.raises(GraphInputError):
            TangleService.wall_edge_tangle(2, 2)


class TestRestrictionAndInduction:
    """制限・誘導タングル"""

    def test_restrict_doubled_c3(self):
        g = GraphGenerator.doubled_cycle(3)
        restricted = TangleService.restrict(trivial_edge_tangle(g, 4), [0])
        assert restricted.order == 3
        assert restricted.host.n_edges == 5
        assert TangleAxiomChecker.check_edge_tangle_axioms(restricted).ok

    def test_restrict_too_many_edges(self, triangle):
        with pytest.raises(GraphInputError):
            TangleService.restrict(trivial_edge_tangle(triangle, 2), [0, 1])

    def test_restricted_materialized_tangles_pass(self, k4):
        for e in TangleSearch.materialize_edge_tangles(k4, 4):
            for x in combinations(k4.edge_ids, 2):
                assert TangleAxiomChecker.check_edge_tangle_axioms(TangleService.restrict(e, x)).ok

    def test_induced_by_immersion(self):
        h = GraphGenerator.doubled_cycle(3)
        host = GraphGenerator.doubled_cycle(4)
        imm = Immersion(pattern=h, host=host, branch={0: 0, 1: 1, 2: 2},
                        routes={0: (0,), 1: (1,), 2: (2,), 3: (3,), 4: (4, 6), 5: (5, 7)})
        induced = TangleService.induced_edge_tangle(host, imm, trivial_edge_tangle(h, 4))
        assert TangleService.cut_members(induced) == [EdgeCut(frozenset(), host.vertex_set)]
        assert TangleAxiomChecker.check_edge_tangle_axioms(induced).ok

    def test_induced_rejects_broken_immersion(self):
        h = GraphGenerator.complete(2)
        host = GraphGenerator.path(3)
        imm = Immersion(pattern=h, host=host, branch={0: 0, 1: 2}, routes={0: (0,)})
        with pytest.raises(GraphInputError):
            TangleService.induced_edge_tangle(host, imm, trivial_edge_tangle(h, 1))


class TestRelations:
    """自由性・交差のなさ・支配"""

    def test_empty_set_is_free(self, triangle):
        t = TangleSearch.materialize_tangles(triangle, 1)[0]
        assert FreenessService.is_free_vertices(t, [])
        assert FreenessService.is_free_vertices(t, [0])

    def test_vertex_trapped_by_member(self, triangle):
        t = TangleFamily(host=triangle, order=1, members=frozenset({
            Separation(triangle.vertex_set, frozenset(triangle.edge_ids), set(), set()),
        }))
        assert not FreenessService.is_free_vertices(t, [0])

    def test_free_edge_pair(self):
        g = GraphGenerator.doubled_cycle(3)
        assert FreenessService.is_free_edges(trivial_edge_tangle(g, 4), [0, 2])

    def test_trapped_edge_pair(self, triangle):
        e = EdgeTangleFamily(host=triangle, order=2, members=frozenset({EdgeCut(triangle.vertex_set, set())}))
        assert not FreenessService.is_free_edges(e, [0, 1])

    @pytest.mark.parametrize("host_name", ["doubled-c3", "doubled-c4", "k4", "theta4"])
    @pytest.mark.parametrize("xi", [1, 2])
    def test_free_adjacent_pair_survives_deletions(self, host_name, xi):
        g = {
            "doubled-c3": lambda: GraphGenerator.doubled_cycle(3),
            "doubled-c4": lambda: GraphGenerator.doubled_cycle(4),
            "k4": lambda: GraphGenerator.complete(4),
            "theta4": lambda: GraphGenerator.theta_graph(4),
        }[host_name]()
        edge_tangles = TangleSearch.materialize_edge_tangles(g, xi + 2)
        assert edge_tangles
        for e in edge_tangles:
            for size in range(xi + 1):
                for z in combinations(g.edge_ids, size):
                    restricted = TangleService.restrict(e, z)
                    pairs = oracles.edges_sharing_end(g, z)
                    assert any(FreenessService.is_free_edges(restricted, pair) for pair in pairs), z

    def test_cross_free(self, k4):
        single = EdgeCut({0}, {1, 2, 3})
        assert TangleService.is_cross_free([single], k4)
        assert TangleService.is_cross_free([single, single], k4)
        assert TangleService.is_cross_free([single, EdgeCut({1}, {0, 2, 3})], k4)
        assert not TangleService.is_cross_free([EdgeCut({0, 1}, {2, 3}), EdgeCut({1, 2}, {0, 3})], k4)
        with pytest.raises(GraphInputError):
            TangleService.is_cross_free([EdgeCut({0}, {1})], k4)

    def test_controls_trivial_family(self, k4):
        th = Thorns(pattern=GraphGenerator.complete(2), host=k4, branch_sets={0: {0}, 1: {5}})
        assert TangleService.controls(trivial_edge_tangle(k4, 4), th)

    def test_branch_set_trapped(self):
        g = Multigraph.from_edges([0, 1, 2], [(0, 0), (0, 1), (1, 2)])
        e = EdgeTangleFamily(host=g, order=2, members=frozenset({EdgeCut({0}, {1, 2})}))
        th = Thorns(pattern=GraphGenerator.complete(2), host=g, branch_sets={0: {0}, 1: {2}})
        assert not TangleService.controls(e, th)

    def test_controls_wall_tangle(self):
        """全ての列と交わる枝集合は支配される"""
        e = TangleService.wall_edge_tangle(4, 2)
        layout = GraphGenerator.square_wall_layout(4)
        g = e.host
        rows = layout.rows()
        branch_sets = {
            h: frozenset(x.id for x in g.edges if x.u in rows[h] and x.v in rows[h])
            for h in range(2)
        }
        th = Thorns(pattern=GraphGenerator.complete(2), host=g, branch_sets=branch_sets)
        assert TangleService.controls(e, th, enumerator=CutEnumerator.crossing_set_cuts)
