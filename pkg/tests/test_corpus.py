import json

import networkx as nx
import pytest

from discharge_lab.corpus import (
    EXHAUSTIVE_SMALL,
    FILTER_FAMILY_A,
    PATTERN_FAMILY,
    RANDOM_PLANAR,
    CorpusSpec,
    corpus_family,
    embedding_code,
    exhaustive_graphs,
    exhaustive_small,
    first_triangle,
    generate,
    pattern_family,
    plane_embeddings,
    random_planar,
)
from discharge_lab.exceptions import BadSpec
from discharge_lab.formats import graph_id, write_plg
from discharge_lab.plane_graph import build_from_rotation

from .graphs import K4_ROTATION, SQUARE_ROTATION


class TestCorpusSpec:
    def test_from_json(self):
        spec = CorpusSpec.from_json({"generator": RANDOM_PLANAR, "parameters": {"n": 8}})
        assert spec.filter == "none"
        assert spec.to_json() == {"generator": RANDOM_PLANAR, "parameters": {"n": 8}, "filter": "none"}

    @pytest.mark.parametrize(
        "data",
        [
            {"generator": "grid"},
            {"generator": RANDOM_PLANAR, "filter": "planar"},
            {"generator": RANDOM_PLANAR, "parameters": [8]},
            {"generator": RANDOM_PLANAR, "size": 8},
            {"parameters": {}},
            [RANDOM_PLANAR],
        ],
    )
    def test_invalid(self, data):
        with pytest.raises(BadSpec):
            CorpusSpec.from_json(data)

    def test_load(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(json.dumps({"generator": EXHAUSTIVE_SMALL, "parameters": {"n": 4}}))
        assert CorpusSpec.load(str(path)).parameters == {"n": 4}

    def test_load_errors(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text("{not json")
        with pytest.raises(BadSpec):
            CorpusSpec.load(str(path))
        with pytest.raises(BadSpec):
            CorpusSpec.load(str(tmp_path / "missing.json"))


class TestPatternFamily:
    def test_grid(self):
        assert len(pattern_family("C2", 3, 5)) == 9
        assert len(pattern_family("C3", 3, 4)) == 8

    def test_named(self):
        (g,) = pattern_family("C2", names=["C(3,3,4)"])
        assert g.vertex_count == 6

    def test_bad_kind(self):
        with pytest.raises(BadSpec):
            pattern_family("C7")

    def test_bad_range(self):
        with pytest.raises(BadSpec):
            generate(CorpusSpec(PATTERN_FAMILY, {"kind": "C2", "low": 2}))


class TestRandomPlanar:
    def test_triangulation(self):
        g = random_planar(10, seed=4)
        assert g.vertex_count == 10
        assert g.edge_count == 24
        assert g.outer_vertices == frozenset({0, 1, 2})
        assert all(face.degree == 3 for face in g.faces)

    def test_seeded(self):
        assert write_plg(random_planar(12, seed=7)) == write_plg(random_planar(12, seed=7))

    def test_deletions(self):
        g = random_planar(10, seed=4, deletions=3)
        assert g.edge_count == 21
        assert g.outer_triangle is not None

    def test_count(self):
        graphs = generate(CorpusSpec(RANDOM_PLANAR, {"n": 9, "count": 3, "seed": 1}))
        assert len(graphs) == 3
        assert len({graph_id(g) for g in graphs}) > 1

    def test_too_small(self):
        with pytest.raises(BadSpec):
            random_planar(2)


class TestExhaustiveSmall:
    def test_four_vertices(self):
        graphs = exhaustive_small(4)
        # connected graphs on 1, 2, 3 and 4 vertices
        assert len(graphs) == 1 + 1 + 2 + 6
        assert any(g.vertex_count == 4 and g.edge_count == 6 for g in graphs)

    def test_min_vertices(self):
        assert len(exhaustive_small(4, min_vertices=4)) == 6

    def test_five_vertices(self):
        graphs = exhaustive_small(5, min_vertices=5)
        # 20 connected planar graphs, some with several embeddings
        assert len(list(exhaustive_graphs(5, min_vertices=5))) == 20
        assert len(graphs) > 20
        assert all(g.vertex_count == 5 for g in graphs)
        codes = {embedding_code(dict(enumerate(g.rotation(v) for v in range(g.vertex_count)))) for g in graphs}
        assert len(codes) == len(graphs)

    def test_cap(self):
        with pytest.raises(BadSpec):
            exhaustive_small(10)

    def test_first_triangle(self):
        assert first_triangle(build_from_rotation(K4_ROTATION)).outer_triangle is not None
        assert first_triangle(build_from_rotation(SQUARE_ROTATION)).outer_face is None


class TestFilter:
    def test_family_a_filter(self):
        spec = CorpusSpec(PATTERN_FAMILY, {"names": ["C(3,3)", "C(3,3,4)"]}, FILTER_FAMILY_A)
        (g,) = generate(spec)
        assert g.vertex_count == 4

    def test_small_graphs_pass(self):
        spec = CorpusSpec(EXHAUSTIVE_SMALL, {"n": 4}, FILTER_FAMILY_A)
        assert len(generate(spec)) == 10


class TestCorpusFamily:
    def test_random(self):
        spec = corpus_family("random", ("10", "2"), seed=5)
        assert spec.generator == RANDOM_PLANAR
        assert spec.parameters == {"n": "10", "seed": 5, "deletions": "2"}
        assert generate(spec)[0].edge_count == 22

    def test_fans(self):
        assert len(generate(corpus_family("C2", ("3", "4")))) == 4

    def test_names(self):
        spec = corpus_family("C(3,3,4)", ("H",))
        assert spec.parameters == {"names": ["C(3,3,4)", "H"]}

    def test_exhaustive_needs_a_count(self):
        with pytest.raises(BadSpec):
            corpus_family("exhaustive", ())


# triangle a b c with two pendants on a, and with one pendant on a and on b
CRICKET = nx.Graph([(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)])
BULL = nx.Graph([(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)])


def face_degrees(rotation):
    return sorted(face.degree for face in build_from_rotation(rotation).faces)


class TestPlaneEmbeddings:
    @pytest.mark.parametrize("graph", [CRICKET, BULL])
    def test_pendants_on_one_or_both_sides(self, graph):
        embeddings = plane_embeddings(graph)
        assert len(embeddings) == 2
        assert sorted(face_degrees(r) for r in embeddings) == [[3, 7], [5, 5]]

    def test_star_has_one_class(self):
        assert len(plane_embeddings(nx.star_graph(4))) == 1

    def test_3_connected_has_one_class(self):
        (rotation,) = plane_embeddings(nx.complete_graph(4))
        assert build_from_rotation(rotation).edge_count == 6

    def test_non_planar(self):
        assert plane_embeddings(nx.complete_graph(5)) == []

    def test_code_ignores_mirror_and_labels(self):
        mirrored = {v: list(reversed(row)) for v, row in K4_ROTATION.items()}
        relabelled = {3 - v: [3 - w for w in row] for v, row in K4_ROTATION.items()}
        assert embedding_code(mirrored) == embedding_code(K4_ROTATION) == embedding_code(relabelled)

    def test_code_separates_embeddings(self):
        one, other = plane_embeddings(CRICKET)
        assert embedding_code(one) != embedding_code(other)
