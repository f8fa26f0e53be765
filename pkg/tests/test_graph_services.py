"""グラフ基本サービス（演算・変換・シリアライズ・設定）のテスト"""

import io
import json
from itertools import combinations

import pytest
from hypothesis import given

from src.models.multigraph import EdgeCut, Multigraph
from src.services.graph_generator import GraphGenerator
from src.services.graph_operations import GraphOperations
from src.services.graph_serializer import GraphSerializer
from src.services.graph_transformer import GraphTransformer
from src.services.search_budget import SearchBudget
from src.services.settings_service import SettingsService
from src.utils.constants import CAPACITY_ENV_VAR, HOME_ENV_VAR
from src.utils.errors import CapacityError, GraphInputError
from tests.strategies import multigraphs


class TestGraphOperations:
    """GraphOperationsのテスト"""

    def test_degrees(self, triangle, k4):
        assert GraphOperations.degree(triangle, 0) == 2
        assert GraphOperations.degree(k4, 3) == 3
        assert GraphOperations.degree(Multigraph.from_edges([0], [(0, 0)]), 0) == 2

    def test_cut_order(self, doubled_c4):
        c4 = GraphGenerator.cycle(4)
        assert GraphOperations.cut_order(c4, EdgeCut({0, 2}, {1, 3})) == 4
        assert GraphOperations.cut_order(c4, EdgeCut(set(), {0, 1, 2, 3})) == 0
        assert GraphOperations.cut_order(doubled_c4, EdgeCut({0, 1}, {2, 3})) == 4

    def test_cut_must_partition(self, triangle):
        with pytest.raises(GraphInputError):
            GraphOperations.cut_order(triangle, EdgeCut({0}, {1}))

    def test_loops_never_cross(self):
        g = Multigraph.from_edges([0, 1], [(0, 0), (0, 1)])
        assert GraphOperations.crossing_edges(g, EdgeCut({0}, {1})) == frozenset({1})

    def test_delete_edges_c4_gives_path(self):
        g = GraphOperations.delete_edges(GraphGenerator.cycle(4), [3])
        assert g.n_edges == 3
        assert GraphOperations.is_connected(g)
        assert sorted(g.degree(v) for v in g.vertices) == [1, 1, 2, 2]

    def test_delete_vertex_k4_gives_k3(self, k4):
        g = GraphOperations.delete_vertices(k4, [0])
        assert g.n_vertices == 3
        assert g.n_edges == 3

    def test_delete_unknown_edge(self, triangle):
        with pytest.raises(GraphInputError):
            GraphOperations.delete_edges(triangle, [9])

    def test_components_in_insertion_order(self):
        g = Multigraph.from_edges([4, 0, 1, 3], [(0, 1)])
        assert GraphOperations.components(g) == [frozenset({4}), frozenset({0, 1}), frozenset({3})]

    def test_edges_touching(self, star3):
        assert GraphOperations.edges_touching(star3, {1}) == 1
        assert GraphOperations.edges_touching(star3, {0}) == 3
        assert GraphOperations.edges_touching(star3, set()) == 0

    def test_single_vertex_never_k_connected(self):
        assert not GraphOperations.is_k_edge_connected(GraphGenerator.empty(1), 1)

    def test_k4_is_3_not_4_connected(self, k4):
        assert GraphOperations.is_k_edge_connected(k4, 3)
        assert not GraphOperations.is_k_edge_connected(k4, 4)

    def test_doubled_c4_is_4_connected(self, doubled_c4):
        assert GraphOperations.is_k_edge_connected(doubled_c4, 4)
        assert not GraphOperations.is_k_edge_connected(doubled_c4, 5)

    def test_theta4_is_4_connected(self):
        assert GraphOperations.is_k_edge_connected(GraphGenerator.theta_graph(4), 4)

    def test_local_edge_connectivity(self, k4, doubled_c4):
        assert GraphOperations.local_edge_connectivity(k4, 0, 1) == 3
        assert GraphOperations.local_edge_connectivity(doubled_c4, 0, 2) == 4
        with pytest.raises(GraphInputError):
            GraphOperations.local_edge_connectivity(k4, 0, 0)

    @given(multigraphs(max_vertices=5, max_edges=7))
    def test_k_connectivity_matches_edge_removal(self, g):
        """k 本未満の辺除去で非連結にならないことと一致する"""
        for k in (1, 2, 3):
            expected = g.n_vertices >= 2 and all(
                GraphOperations.is_connected(GraphOperations.delete_edges(g, removed))
                for size in range(k) for removed in combinations(g.edge_ids, size)
            )
            assert GraphOperations.is_k_edge_connected(g, k) == expected


class TestGraphTransformer:
    """GraphTransformerのテスト"""

    def test_line_graph_of_triangle(self, triangle):
        line, mapping = GraphTransformer.line_graph(triangle)
        assert line.n_vertices == 3
        assert line.n_edges == 3
        assert mapping == {0: 0, 1: 1, 2: 2}

    def test_line_graph_of_path(self):
        line, _ = GraphTransformer.line_graph(GraphGenerator.path(4))
        assert line.n_vertices == 3
        assert line.n_edges == 2

    def test_line_graph_parallel_pair_is_k2(self):
        """両端を共有する2辺でも線グラフの辺は1本"""
        line, _ = GraphTransformer.line_graph(GraphGenerator.theta_graph(2))
        assert line.n_vertices == 2
        assert line.n_edges == 1

    def test_clique_of(self, star3):
        assert GraphTransformer.clique_of(star3, 0) == frozenset({0, 1, 2})
        g = Multigraph.from_edges([0, 1, 2], [(0, 0), (0, 1)])
        assert GraphTransformer.clique_of(g, 0) == frozenset({0, 1})
        assert GraphTransformer.clique_of(g, 2) == frozenset()

    @given(multigraphs(max_vertices=5, max_edges=6))
    def test_cliques_are_cliques(self, g):
        """cl(v) は L(G) の完全部分グラフ"""
        line, _ = GraphTransformer.line_graph(g)
        for v in g.vertices:
            clique = sorted(GraphTransformer.clique_of(g, v))
            for a, b in combinations(clique, 2):
                assert line.edges_between(a, b)

    def test_duplicate_edges(self, triangle):
        doubled, back = GraphTransformer.duplicate_edges(triangle, 2)
        assert doubled.n_edges == 6
        assert sorted(back.values()) == [0, 0, 1, 1, 2, 2]
        assert GraphTransformer.duplicate_edges(triangle, 1)[0] == triangle
        with pytest.raises(GraphInputError):
            GraphTransformer.duplicate_edges(triangle, 0)

    def test_doubled_c4_is_4_connected(self):
        doubled, _ = GraphTransformer.duplicate_edges(GraphGenerator.cycle(4), 2)
        assert GraphOperations.is_k_edge_connected(doubled, 4)

    def test_subdivide_k2(self):
        g = GraphTransformer.subdivide_all(GraphGenerator.complete(2))
        assert g.n_vertices == 3
        assert g.n_edges == 2
        assert sorted(g.degree(v) for v in g.vertices) == [1, 1, 2]

    def test_subdivide_triangle_is_c6(self, triangle):
        g = GraphTransformer.subdivide_all(triangle)
        assert g.n_vertices == 6
        assert all(g.degree(v) == 2 for v in g.vertices)
        assert GraphOperations.is_connected(g)

    def test_subdivide_loop_gives_two_cycle(self):
        g = GraphTransformer.subdivide_all(Multigraph.from_edges([0], [(0, 0)]))
        assert g.n_vertices == 2
        assert g.edge(0).parallel_key == g.edge(1).parallel_key

    def test_immersion_expansion_counts(self, triangle):
        g, apex = GraphTransformer.immersion_expansion(GraphGenerator.complete(2))
        assert g.n_vertices == 4
        g, apex = GraphTransformer.immersion_expansion(triangle)
        assert g.n_vertices == 9
        assert all(g.degree(apex[v]) == 2 for v in triangle.vertices)

    def test_immersion_expansion_isolated_vertex(self):
        g, apex = GraphTransformer.immersion_expansion(GraphGenerator.empty(1))
        assert g.n_vertices == 1
        assert g.degree(apex[0]) == 0


class TestGraphSerializer:
    """GraphSerializerのテスト"""

    def test_parse(self, graph_text, triangle):
        assert GraphSerializer.parse(graph_text) == triangle

    def test_parse_comments_and_blank_lines(self):
        g = GraphSerializer.parse("# header\nv 3\n\nv 1  # trailing\ne 4 3 1\n")
        assert g.vertices == (3, 1)
        assert g.edge(4).ends == frozenset({1, 3})

    def test_serialize_sorted(self):
        g = Multigraph((2, 0), ())
        assert GraphSerializer.serialize(g) == "v 0\nv 2\n"

    @pytest.mark.parametrize("text", [
        "x 1\n", "v\n", "v -1\n", "v a\n", "v \u00b2\n", "v \u0663\n", "e 0 0\n", "v 0\ne 0 0 1\n", "v 0\nv 0\n",
    ])
    def test_malformed_text(self, text):
        with pytest.raises(GraphInputError):
            GraphSerializer.parse(text)

    def test_line_number_in_error(self):
        with pytest.raises(GraphInputError, match="line 2"):
            GraphSerializer.parse("v 0\nq\n")

    def test_read_graph_from_stream_and_file(self, tmp_path, graph_text, triangle):
        assert GraphSerializer.read_graph(stream=io.StringIO(graph_text)) == triangle
        path = tmp_path / "g.txt"
        assert GraphSerializer.save_to_file(graph_text, str(path))
        assert GraphSerializer.read_graph(str(path)) == triangle
        with pytest.raises(GraphInputError):
            GraphSerializer.read_graph(str(tmp_path / "missing.txt"))

    def test_read_graph_rejects_undecodable_bytes(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_bytes(b"v 0\n\xff\n")
        with pytest.raises(GraphInputError, match="UTF-8"):
            GraphSerializer.read_graph(str(path))
        stream = io.TextIOWrapper(io.BytesIO(b"v \xff\n"), encoding='utf-8')
        with pytest.raises(GraphInputError, match="standard input"):
            GraphSerializer.read_graph(stream=stream)

    def test_save_to_file_reports_failure(self, tmp_path):
        assert not GraphSerializer.save_to_file("v 0\n", str(tmp_path))

    def test_certificate_and_json(self, tmp_path):
        cert = GraphSerializer.certificate('cover', {'edges': [1]})
        assert cert == {'version': '1.0', 'kind': 'cover', 'edges': [1]}
        path = tmp_path / "c.json"
        path.write_text(GraphSerializer.dumps(cert), encoding='utf-8')
        assert GraphSerializer.load_json(str(path)) == cert

    def test_load_json_rejects_non_object(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps([1, 2]), encoding='utf-8')
        with pytest.raises(GraphInputError):
            GraphSerializer.load_json(str(path))
        path.write_text("{", encoding='utf-8')
        with pytest.raises(GraphInputError):
            GraphSerializer.load_json(str(path))


class TestSettingsAndBudget:
    """SettingsService・SearchBudgetのテスト"""

    def test_defaults(self):
        settings = SettingsService.get_instance()
        assert settings is SettingsService.get_instance()
        assert settings.cut_sweep_max_vertices == 25
        assert settings.shell_max_vertices == 10

    def test_capacity_override(self, monkeypatch):
        monkeypatch.setenv(CAPACITY_ENV_VAR, "123")
        SettingsService.reset()
        settings = SettingsService.get_instance()
        for key in SettingsService.BUDGET_KEYS:
            assert settings.get(key) == 123
        assert settings.cut_sweep_max_vertices == 25

    @pytest.mark.parametrize("raw", ["abc", "0", "-4"])
    def test_bad_capacity_override(self, monkeypatch, raw):
        monkeypatch.setenv(CAPACITY_ENV_VAR, raw)
        SettingsService.reset()
        with pytest.raises(GraphInputError):
            SettingsService.get_instance()

    def test_settings_file(self, monkeypatch, tmp_path):
        (tmp_path / "settings.json").write_text(json.dumps({'search_capacity': 77, 'bogus': 1}),
                                                encoding='utf-8')
        monkeypatch.setenv(HOME_ENV_VAR, str(tmp_path))
        SettingsService.reset()
        settings = SettingsService.get_instance()
        assert settings.search_capacity == 77
        assert settings.get('bogus') is None

    def test_save_and_set(self, monkeypatch, tmp_path):
        monkeypatch.setenv(HOME_ENV_VAR, str(tmp_path))
        SettingsService.reset()
        settings = SettingsService.get_instance()
        settings.set('minor_capacity', 5)
        assert settings.save_settings()
        SettingsService.reset()
        assert SettingsService.get_instance().minor_capacity == 5
        with pytest.raises(GraphInputError):
            settings.set('unknown', 1)
        with pytest.raises(GraphInputError):
            settings.set('minor_capacity', 'lots')
        with pytest.raises(GraphInputError):
            settings.set('minor_capacity', 0)

    def test_capacity_override_is_not_saved(self, monkeypatch, tmp_path):
        monkeypatch.setenv(HOME_ENV_VAR, str(tmp_path))
        monkeypatch.setenv(CAPACITY_ENV_VAR, "9")
        SettingsService.reset()
        settings = SettingsService.get_instance()
        settings.set('cover_capacity', 11)
        assert settings.search_capacity == 9
        assert settings.save_settings()
        stored = json.loads((tmp_path / "settings.json").read_text(encoding='utf-8'))
        assert stored['cover_capacity'] == 11
        assert stored['search_capacity'] == SettingsService.DEFAULTS['search_capacity']

    def test_budget(self):
        budget = SearchBudget(2, 'search_capacity')
        budget.tick()
        budget.tick()
        assert budget.remaining == 0
        with pytest.raises(CapacityError) as info:
            budget.tick()
        assert info.value.budget == 'search_capacity'
