from fractions import Fraction

import pytest

from discharge_lab.exceptions import (
    Disconnected,
    InconsistentRotation,
    NonSimple,
    NoSuchFace,
    NotATriangle,
    NotSphereEmbedding,
    UnknownVertex,
)
from discharge_lab.plane_graph import (
    build_from_rotation,
    designate_outer,
    find_face,
    from_named_rotation,
    initial_charge_sum,
)

from .graphs import K4_ROTATION, icosahedron, k4, octahedron, path, square, triangle


class TestBuildFromRotation:
    def test_k4_faces(self):
        g = build_from_rotation(K4_ROTATION)
        assert g.vertex_count == 4
        assert g.edge_count == 6
        assert len(g.faces) == 4
        assert all(face.degree == 3 and face.boundary_is_cycle for face in g.faces)

    def test_every_dart_on_one_face(self):
        g = octahedron()
        walks = [d for face in g.faces for d in face.boundary_walk]
        assert sorted(walks) == list(range(len(g.darts)))

    def test_twins(self):
        g = k4()
        for dart in g.darts:
            twin = g.darts[dart.twin]
            assert (twin.origin, twin.target) == (dart.target, dart.origin)

    def test_face_walk_follows_clockwise_predecessor(self):
        g = k4()
        face = g.face_of_dart(g.dart(0, 1).id)
        assert face.vertices == (0, 1, 3)

    def test_path_has_one_face(self):
        g = path()
        assert len(g.faces) == 1
        assert g.faces[0].degree == 4
        assert not g.faces[0].boundary_is_cycle

    def test_single_vertex(self):
        g = build_from_rotation({0: []})
        assert len(g.faces) == 1
        assert g.faces[0].degree == 0

    def test_loop(self):
        with pytest.raises(NonSimple):
            build_from_rotation({0: [0]})

    def test_parallel_edge(self):
        with pytest.raises(NonSimple):
            build_from_rotation({0: [1, 1], 1: [0]})

    def test_missing_twin(self):
        with pytest.raises(InconsistentRotation):
            build_from_rotation({0: [1], 1: []})

    def test_disconnected(self):
        with pytest.raises(Disconnected) as exc:
            build_from_rotation({0: [1], 1: [0], 2: [3], 3: [2]})
        assert exc.value.components == 2

    def test_unknown_neighbour(self):
        with pytest.raises(UnknownVertex):
            build_from_rotation({0: [7]})

    def test_toroidal_rotation(self):
        rotation = dict(K4_ROTATION)
        rotation[3] = [0, 2, 1]
        with pytest.raises(NotSphereEmbedding):
            build_from_rotation(rotation)


class TestNamedRotation:
    def test_labels(self):
        g = from_named_rotation({"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}, outer=("a", "b", "c"))
        assert g.labels == ("a", "b", "c")
        assert g.vertex("b") == 1
        assert g.label(2) == "c"
        assert g.outer_triangle is not None

    def test_numeric_names(self):
        g = k4()
        assert g.vertex("3") == 3
        with pytest.raises(UnknownVertex):
            g.vertex("z")


class TestOuterFace:
    def test_designate(self):
        g = k4()
        assert g.outer_vertices == frozenset({0, 1, 2})
        assert set(g.outer_triangle.vertices) == {0, 1, 2}
        assert g.is_interior(3)
        assert not g.is_interior(0)
        assert len(g.bounded_faces()) == 3

    def test_designate_keeps_original(self):
        g = build_from_rotation(K4_ROTATION)
        designate_outer(g, (0, 1, 2))
        assert g.outer_face is None

    def test_not_a_face(self):
        g = octahedron()
        with pytest.raises(NoSuchFace):
            designate_outer(g, (0, 5, 1))

    def test_not_a_triangle(self):
        with pytest.raises(NotATriangle):
            designate_outer(k4(), (0, 1))
        with pytest.raises(NotATriangle):
            designate_outer(k4(), (0, 0, 1))

    def test_find_face(self):
        g = square()
        assert find_face(g, (0, 1, 2, 3)) is not None
        assert find_face(g, (0, 1, 2)) is None


class TestNeighbourhoods:
    def test_incident_faces_clockwise(self):
        g = k4()
        faces = g.incident_faces(3)
        assert len(faces) == 3
        assert all(3 in face.incident_vertices for face in faces)
        assert [face.id for face in faces] == [
            g.face_of_dart(g.dart(3, w).id).id for w in g.rotation(3)
        ]

    def test_edge_faces(self):
        g = k4()
        left, right = g.edge_faces(0, 1)
        assert left.id != right.id
        assert frozenset({0, 1}) in left.edges
        assert frozenset({0, 1}) in right.edges

    def test_boundary_darts(self):
        g = k4()
        darts = g.boundary_darts(g.outer_face)
        assert len(darts) == 3
        assert all(darts[i].target == darts[(i + 1) % 3].origin for i in range(3))
        assert {d.origin for d in darts} == {0, 1, 2}
        assert all(g.face_of_dart(d.id).id == g.outer_face for d in darts)

    def test_neighbors_clockwise(self):
        assert k4().neighbors(0) == (1, 3, 2)

    def test_degree(self):
        g = octahedron()
        assert [g.degree(v) for v in range(6)] == [4] * 6

    def test_to_networkx(self):
        nxg = octahedron().to_networkx()
        assert nxg.number_of_edges() == 12
        assert not nxg.has_edge(0, 5)


class TestEuler:
    @pytest.mark.parametrize("factory", [triangle, k4, square, path, octahedron, icosahedron])
    def test_initial_charge_sum(self, factory):
        assert initial_charge_sum(factory()) == Fraction(-12)
