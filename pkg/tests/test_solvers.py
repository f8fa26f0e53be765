"""パッキング・被覆・木リンケージ・実験ハーネスのテスト"""

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.multigraph import Multigraph
from src.models.results import ExperimentRow
from src.services.experiment_runner import ExperimentRunner
from src.services.graph_generator import GraphGenerator
from src.services.graph_transformer import GraphTransformer
from src.services.immersion_search import ImmersionSearch
from src.services.immersion_verifier import ImmersionVerifier
from src.services.linkage_solver import LinkageSolver
from src.services.packing_solver import PackingSolver
from src.services.settings_service import SettingsService
from src.utils.errors import GraphInputError
from src.workers.experiment_worker import ExperimentWorker
from tests import oracles
from tests.strategies import multigraphs


def placeholder_row(graph_id: str, n: int) -> ExperimentRow:
    return ExperimentRow(graph_id, n, 0, 'k2', 0, True, 0, True, 0)


class TestPacking:
    """最大辺素パッキング"""

    def test_k4_holds_one_triangle(self, k4):
        result = PackingSolver.max_packing(k4, GraphGenerator.complete(3))
        assert result.count == 1
        assert oracles.max_disjoint_images(k4, GraphGenerator.complete(3)) == 1
        assert result.exact

    def test_cycle_holds_one_triangle(self):
        assert PackingSolver.max_packing(GraphGenerator.cycle(4), GraphGenerator.complete(3)).count == 1

    def test_doubled_c4_holds_four_digons(self, doubled_c4):
        h = GraphGenerator.theta_graph(2)
        result = PackingSolver.max_packing(doubled_c4, h)
        assert result.count == 4
        assert result.count == oracles.max_disjoint_images(doubled_c4, h)
        assert ImmersionVerifier.verify_packing(result.witnesses).ok

    def test_k_max_caps_the_count(self, doubled_c4):
        result = PackingSolver.max_packing(doubled_c4, GraphGenerator.theta_graph(2), k_max=2)
        assert result.count == 2
        assert result.exact

    def test_negative_k_max(self, triangle):
        with pytest.raises(GraphInputError):
            PackingSolver.max_packing(triangle, GraphGenerator.complete(2), k_max=-1)

    def test_edgeless_pattern(self, triangle):
        result = PackingSolver.max_packing(triangle, GraphGenerator.empty(2), k_max=5)
        assert result.count == 5
        assert PackingSolver.max_packing(triangle, GraphGenerator.empty(4)).count == 0

    def test_budget_exhaustion_gives_lower_bound(self, doubled_c4):
        SettingsService.get_instance().set('packing_capacity', 3)
        result = PackingSolver.max_packing(doubled_c4, GraphGenerator.theta_graph(2))
        assert not result.exact
        assert result.count <= 4
        assert ImmersionVerifier.verify_packing(result.witnesses).ok

    def test_truncated_enumeration_still_combines_vectors(self, monkeypatch, doubled_c4):
        """列挙が予算を使い切っても、集めた使用数ベクトルの組合せは厳密に探す"""
        enumerate_all = ImmersionSearch.iter_immersions

        def exhausting(g, h, budget, **kwargs):
            yield from enumerate_all(g, h, budget, **kwargs)
            budget.tick(budget.remaining + 1)

        def no_greedy(*args):
            pytest.fail("combination search fell back to the greedy bound")

        monkeypatch.setattr(ImmersionSearch, 'iter_immersions', staticmethod(exhausting))
        monkeypatch.setattr(PackingSolver, '_greedy_multiset', staticmethod(no_greedy))
        result = PackingSolver.max_packing(doubled_c4, GraphGenerator.theta_graph(2))
        assert not result.exact
        assert result.count == 4
        assert ImmersionVerifier.verify_packing(result.witnesses).ok

    @settings(max_examples=60)
    @given(multigraphs(max_vertices=5, max_edges=6), st.sampled_from(['k2', 'k3', 'theta2']))
    def test_agrees_with_brute_force(self, g, alias):
        h = GraphGenerator.pattern(alias)
        result = PackingSolver.max_packing(g, h)
        assert result.count == oracles.max_disjoint_images(g, h)
        assert ImmersionVerifier.verify_packing(result.witnesses).ok


class TestCover:
    """最小被覆"""

    def test_k4_needs_three_edges(self, k4):
        h = GraphGenerator.complete(3)
        result = PackingSolver.min_cover(k4, h)
        assert result.size == 3
        assert result.exact
        assert result.size == oracles.min_cover_size(k4, h)
        assert ImmersionVerifier.verify_cover(k4, h, result).ok

    def test_cycle_needs_one_edge(self):
        result = PackingSolver.min_cover(GraphGenerator.cycle(4), GraphGenerator.complete(3))
        assert result.edges == frozenset({0})
        assert oracles.min_cover_size(GraphGenerator.cycle(4), GraphGenerator.complete(3)) == 1

    def test_doubled_c4(self, doubled_c4):
        h = GraphGenerator.theta_graph(2)
        result = PackingSolver.min_cover(doubled_c4, h)
        assert result.size == 5
        assert result.size == oracles.min_cover_size(doubled_c4, h)

    def test_absent_pattern_needs_nothing(self, star3):
        assert PackingSolver.min_cover(star3, GraphGenerator.complete(3)).size == 0

    def test_edgeless_pattern(self, triangle):
        with pytest.raises(GraphInputError):
            PackingSolver.min_cover(triangle, GraphGenerator.empty(2))
        assert PackingSolver.min_cover(triangle, GraphGenerator.empty(4)).size == 0

    def test_budget_exhaustion_gives_valid_cover(self, k4):
        SettingsService.get_instance().set('cover_capacity', 1)
        h = GraphGenerator.complete(3)
        result = PackingSolver.min_cover(k4, h)
        assert not result.exact
        assert result.size >= 3
        assert ImmersionVerifier.verify_cover(k4, h, result).ok

    @settings(max_examples=60)
    @given(multigraphs(max_vertices=4, max_edges=6), st.sampled_from(['k2', 'k3', 'theta2']))
    def test_agrees_with_brute_force(self, g, alias):
        h = GraphGenerator.pattern(alias)
        result = PackingSolver.min_cover(g, h)
        assert result.size == oracles.min_cover_size(g, h)
        assert result.size >= PackingSolver.max_packing(g, h).count


class TestHalfIntegral:
    """半整数パッキングと被覆"""

    def test_path_holds_a_half_integral_triangle(self, path3):
        """P3 でも辺を2回ずつ使えば K3 が作れる"""
        k3 = GraphGenerator.complete(3)
        packing = PackingSolver.half_integral_packing(path3, k3)
        assert packing.count == 1
        assert ImmersionVerifier.verify_half_integral(packing.witnesses[0]).ok
        assert not ImmersionVerifier.verify_immersion(packing.witnesses[0]).ok
        assert PackingSolver.half_integral_cover(path3, k3).size == 1

    def test_edgeless_cover_rejected(self, triangle):
        with pytest.raises(GraphInputError):
            PackingSolver.half_integral_cover(triangle, GraphGenerator.empty(1))

    @pytest.mark.slow
    @settings(max_examples=100)
    @given(multigraphs(max_vertices=5, max_edges=8), st.sampled_from(['k3', 'theta2']))
    def test_equals_packing_in_doubled_graph(self, g, alias):
        h = GraphGenerator.pattern(alias)
        result = PackingSolver.half_integral_packing(g, h)
        doubled, _ = GraphTransformer.duplicate_edges(g, 2)
        assert result.count == PackingSolver.max_packing(doubled, h).count
        for w in result.witnesses:
            assert w.host == g
            assert ImmersionVerifier.verify_half_integral(w).ok
        assert ImmersionVerifier.verify_packing(result.witnesses, half_integral=True).ok


class TestTreeLinkage:
    """指定辺を含む辺素な木"""

    def test_connects_a_split_part(self):
        c4 = GraphGenerator.cycle(4)
        trees = LinkageSolver.tree_linkage(c4, [0, 2], [[0, 2]])
        assert len(trees) == 1
        assert trees[0] & {0, 2} == {0, 2}
        assert len(trees[0]) == 3
        assert ImmersionVerifier.verify_tree_linkage(c4, [0, 2], [[0, 2]], trees).ok

    def test_connected_parts_need_nothing(self, star3):
        trees = LinkageSolver.tree_linkage(star3, [0, 1, 2], [[0, 1], [2]])
        assert trees == [frozenset({0, 1}), frozenset({2})]

    def test_no_free_edges_to_connect(self):
        c4 = GraphGenerator.cycle(4)
        assert LinkageSolver.tree_linkage(c4, [0, 1, 2, 3], [[0, 2], [1, 3]]) is None

    def test_disconnected_host(self):
        g = Multigraph.from_edges(range(4), [(0, 1), (2, 3)])
        assert LinkageSolver.tree_linkage(g, [0, 1], [[0, 1]]) is None

    @pytest.mark.parametrize("x,parts", [
        ([0, 1], [[0], []]),
        ([0, 1], [[0, 1], [1]]),
        ([0, 1], [[0]]),
    ])
    def test_parts_must_partition_x(self, star3, x, parts):
        with pytest.raises(GraphInputError):
            LinkageSolver.tree_linkage(star3, x, parts)

    def test_unknown_edge(self, star3):
        with pytest.raises(GraphInputError):
            LinkageSolver.tree_linkage(star3, [9], [[9]])


class TestExperiments:
    """ν と τ の比較実験"""

    def test_doubled_cycles(self):
        rows = ExperimentRunner.ep_experiment('doubled-cycle', GraphGenerator.theta_graph(2), range(3, 6),
                                              pattern_name='theta2', omit_timing=True)
        assert [(r.graph_id, r.nu, r.tau) for r in rows] == [
            ('doubled-cycle-3', 3, 4), ('doubled-cycle-4', 4, 5), ('doubled-cycle-5', 5, 6),
        ]
        assert all(r.runtime_ms == 0 for r in rows)

    @pytest.mark.slow
    @pytest.mark.parametrize("family,sizes", [('doubled-cycle', range(3, 7)), ('doubled-complete', range(2, 5))])
    def test_cover_never_below_packing(self, family, sizes):
        rows = ExperimentRunner.ep_experiment(family, GraphGenerator.theta_graph(2), sizes, omit_timing=True)
        assert len(rows) == len(sizes)
        assert all(r.tau >= r.nu for r in rows)

    def test_unknown_family(self):
        with pytest.raises(GraphInputError):
            ExperimentRunner.build('hypercube', 3)

    def test_csv(self):
        stream = io.StringIO()
        rows = ExperimentRunner.ep_experiment('doubled-cycle', GraphGenerator.theta_graph(2), [3],
                                              pattern_name='theta2', omit_timing=True)
        ExperimentRunner.write_csv(rows, stream)
        assert stream.getvalue() == (
            "graph_id,n_vertices,n_edges,pattern,nu,nu_exact,tau,tau_exact,runtime_ms\n"
            "doubled-cycle-3,3,6,theta2,3,true,4,true,0\n"
        )

    def test_parallel_jobs_keep_order(self):
        k3 = GraphGenerator.complete(3)
        serial = ExperimentRunner.ep_experiment('cycle', k3, [3, 4, 5], 'k3', omit_timing=True)
        parallel = ExperimentRunner.ep_experiment('cycle', k3, [3, 4, 5], 'k3', jobs=2, omit_timing=True)
        assert parallel == serial
        assert [r.graph_id for r in serial] == ['cycle-3', 'cycle-4', 'cycle-5']


class TestExperimentWorker:
    """ワーカーの順序・進捗・取り消し"""

    def test_rows_in_submission_order(self):
        calls = []
        worker = ExperimentWorker(placeholder_row, [('a', 1), ('b', 2), ('c', 3)],
                                  progress=lambda *args: calls.append(args))
        rows = worker.run()
        assert [r.graph_id for r in rows] == ['a', 'b', 'c']
        assert calls == [(1, 3, 'a done'), (2, 3, 'b done'), (3, 3, 'c done')]

    def test_cancel_before_run(self):
        worker = ExperimentWorker(placeholder_row, [('a', 1)])
        worker.cancel()
        assert worker.run() == []

    def test_pool_rows_in_submission_order(self):
        worker = ExperimentWorker(placeholder_row, [(str(i), i) for i in range(5)], jobs=2)
        assert [r.n_vertices for r in worker.run()] == [0, 1, 2, 3, 4]
