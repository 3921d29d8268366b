import networkx as nx
import pytest

from discharge_lab.catalog import build_pattern, parse_pattern
from discharge_lab.cycles import (
    EmbeddedCycle,
    brute_force_cycles,
    canonical_cycle,
    classify_chords,
    cycle_sides,
    cycles_adjacent,
    enumerate_cycles,
    find_family_a_witness,
    find_separating_3cycles,
    in_family_a,
    six_cycle_chord_check,
)
from discharge_lab.exceptions import BadParameters, LimitExceeded, MissingOuterFace
from discharge_lab.plane_graph import build_from_rotation, designate_outer

from .graphs import SEPARATED_ROTATION, embedded, icosahedron, k4, octahedron, square, triangle

# hexagon 0..5 with the chord 0-2
HEXAGON_CHORD_ROTATION = {0: [1, 2, 5], 1: [2, 0], 2: [3, 0, 1], 3: [4, 2], 4: [5, 3], 5: [0, 4]}


def lengths(cycles):
    result = {}
    for c in cycles:
        result[c.length] = result.get(c.length, 0) + 1
    return result


class TestCanonicalCycle:
    def test_rotation_and_reflection(self):
        assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
        assert canonical_cycle((2, 1, 3)) == (1, 2, 3)
        assert canonical_cycle((4, 0, 3, 1)) == (0, 3, 1, 4)

    def test_edge_set(self):
        c = EmbeddedCycle.from_sequence((2, 0, 1))
        assert c.vertices == (0, 1, 2)
        assert c.edge_set == {frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})}


class TestEnumerateCycles:
    def test_k4(self):
        assert lengths(enumerate_cycles(k4(), 6)) == {3: 4, 4: 3}

    def test_triangle(self):
        assert lengths(enumerate_cycles(triangle(), 6)) == {3: 1}

    def test_cube(self):
        cube = embedded(nx.convert_node_labels_to_integers(nx.cubical_graph()))
        assert lengths(enumerate_cycles(cube, 4)) == {4: 6}

    @pytest.mark.parametrize("factory", [k4, octahedron, icosahedron, square])
    def test_agrees_with_brute_force(self, factory):
        g = factory()
        for max_len in (3, 5, 6):
            assert enumerate_cycles(g, max_len) == brute_force_cycles(g, max_len)

    def test_cap(self):
        with pytest.raises(LimitExceeded):
            enumerate_cycles(octahedron(), 6, cap=5)

    @pytest.mark.parametrize("max_len", [2, 9])
    def test_bounds(self, max_len):
        with pytest.raises(BadParameters):
            enumerate_cycles(k4(), max_len)


class TestChords:
    def test_triangular_chord(self):
        g = build_from_rotation(HEXAGON_CHORD_ROTATION)
        chords = classify_chords(g, EmbeddedCycle((0, 1, 2, 3, 4, 5)))
        assert len(chords) == 1
        assert set(chords[0].chord) == {0, 2}
        assert chords[0].triangular

    def test_chordless_square(self):
        assert classify_chords(square(), EmbeddedCycle((0, 1, 2, 3))) == []

    def test_k4_outer_triangle(self):
        assert classify_chords(k4(), EmbeddedCycle((0, 1, 2))) == []


class TestAdjacency:
    def test_shared_edge(self):
        assert cycles_adjacent(EmbeddedCycle((0, 1, 2)), EmbeddedCycle((0, 1, 2, 3)))

    def test_shared_vertex_only(self):
        a = EmbeddedCycle((0, 1, 2))
        b = EmbeddedCycle((0, 3, 4))
        assert not cycles_adjacent(a, b)
        assert cycles_adjacent(a, b) == cycles_adjacent(b, a)


class TestFamilyA:
    def test_k4(self):
        assert in_family_a(k4()) is True

    def test_c334_witness(self):
        witness = in_family_a(build_pattern(parse_pattern("C(3,3,4)")))
        assert witness is not True
        assert [c.length for c in witness.cycles] == [3, 4, 5, 6]
        assert len(witness.shared_edges) == 6
        assert all(witness.shared_edges.values())

    def test_witness_json(self):
        witness = find_family_a_witness(octahedron())
        assert witness is not None
        data = witness.to_json()
        assert sorted(data["cycles"]) == ["3", "4", "5", "6"]


class TestSeparatingTriangles:
    def test_k4(self):
        assert find_separating_3cycles(k4()) == []

    def test_triangle(self):
        assert find_separating_3cycles(triangle()) == []

    def test_separating(self):
        g = designate_outer(build_from_rotation(SEPARATED_ROTATION), (0, 1, 2))
        assert find_separating_3cycles(g) == [EmbeddedCycle((0, 1, 3))]
        sides = cycle_sides(g, EmbeddedCycle((0, 1, 3)))
        assert sides.interior == {4}
        assert sides.exterior == {2}

    def test_needs_outer_face(self):
        with pytest.raises(MissingOuterFace):
            find_separating_3cycles(build_from_rotation(SEPARATED_ROTATION))


class TestSixCycleChords:
    def test_single_chord_is_fine(self):
        assert six_cycle_chord_check(build_from_rotation(HEXAGON_CHORD_ROTATION)) == []

    def test_octahedron(self):
        found = six_cycle_chord_check(octahedron())
        assert found
        assert all(len(chords) > 1 for _, chords in found)
