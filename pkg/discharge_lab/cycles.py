from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .conf import get_setting
from .exceptions import BadParameters, LimitExceeded, MissingOuterFace
from .plane_graph import PlaneGraph

INTERNAL = "internal"
EXTERNAL = "external"


def canonical_cycle(vertices: Sequence[int]) -> Tuple[int, ...]:
    """
    Rotate the cyclic sequence to start at its smallest vertex and pick the
    direction whose second vertex is smaller.
    """
    vertices = list(vertices)
    n = len(vertices)
    start = vertices.index(min(vertices))
    forward = tuple(vertices[(start + i) % n] for i in range(n))
    backward = tuple(vertices[(start - i) % n] for i in range(n))
    return min(forward, backward)


@dataclass(frozen=True, order=True)
class EmbeddedCycle:
    vertices: Tuple[int, ...]

    @classmethod
    def from_sequence(cls, vertices: Sequence[int]) -> "EmbeddedCycle":
        return cls(canonical_cycle(vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def edge_set(self) -> FrozenSet[FrozenSet[int]]:
        n = len(self.vertices)
        return frozenset(
            frozenset((self.vertices[i], self.vertices[(i + 1) % n])) for i in range(n)
        )

    def to_json(self):
        return list(self.vertices)


@dataclass(frozen=True)
class ChordClassification:
    chord: Tuple[int, int]
    side: str
    triangular: bool

    def to_json(self):
        return {"chord": list(self.chord), "side": self.side, "triangular": self.triangular}


@dataclass(frozen=True)
class CycleSides:
    interior: FrozenSet[int]
    exterior: FrozenSet[int]
    interior_faces: FrozenSet[int]


@dataclass(frozen=True)
class FamilyAWitness:
    c3: EmbeddedCycle
    c4: EmbeddedCycle
    c5: EmbeddedCycle
    c6: EmbeddedCycle

    @property
    def cycles(self) -> Tuple[EmbeddedCycle, ...]:
        return (self.c3, self.c4, self.c5, self.c6)

    @property
    def shared_edges(self) -> Dict[Tuple[int, int], FrozenSet[FrozenSet[int]]]:
        result = {}
        cycles = self.cycles
        for i, a in enumerate(cycles):
            for b in cycles[i + 1:]:
                result[(a.length, b.length)] = a.edge_set & b.edge_set
        return result

    def to_json(self):
        return {
            "cycles": {str(c.length): c.to_json() for c in self.cycles},
            "shared_edges": {
                "{}-{}".format(*pair): sorted(sorted(edge) for edge in edges)
                for pair, edges in sorted(self.shared_edges.items())
            },
        }


def enumerate_cycles(g: PlaneGraph, max_len: int, cap: int = None) -> List[EmbeddedCycle]:
    if not 3 <= max_len <= 8:
        raise BadParameters("enumerate_cycles", (max_len,), "max_len must lie in 3..8")
    cap = cap or get_setting("CYCLE_CAP")

    seen = set()
    for vertices in nx.simple_cycles(nx.Graph(g.to_networkx()), length_bound=max_len):
        if len(vertices) < 3:
            continue
        seen.add(canonical_cycle(vertices))
        if len(seen) > cap:
            raise LimitExceeded("cycle", cap)
    return sorted((EmbeddedCycle(c) for c in seen), key=lambda c: (c.length, c.vertices))


def brute_force_cycles(g: PlaneGraph, max_len: int) -> List[EmbeddedCycle]:
    """
    Path-extension enumerator, independent of networkx.
    """
    found = set()

    def extend(path, on_path):
        last = path[-1]
        for w in g.rotation(last):
            if w == path[0] and len(path) >= 3:
                found.add(canonical_cycle(path))
            elif w > path[0] and w not in on_path and len(path) < max_len:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.discard(w)
                path.pop()

    for start in range(g.vertex_count):
        extend([start], {start})
    return sorted((EmbeddedCycle(c) for c in found), key=lambda c: (c.length, c.vertices))


def cycle_sides(g: PlaneGraph, c: EmbeddedCycle) -> CycleSides:
    """
    Split faces and vertices by the side of ``c`` they lie on. The exterior
    is the side holding the outer face (face 0 when none is designated).
    """
    cycle_edges = c.edge_set
    regions = nx.Graph()
    regions.add_nodes_from(face.id for face in g.faces)
    for u, w in g.edges():
        if frozenset((u, w)) in cycle_edges:
            continue
        left, right = g.edge_faces(u, w)
        regions.add_edge(left.id, right.id)

    anchor = g.outer_face if g.outer_face is not None else 0
    outside = nx.node_connected_component(regions, anchor)
    interior_faces = frozenset(face.id for face in g.faces if face.id not in outside)

    on_cycle = set(c.vertices)
    interior = set()
    exterior = set()
    for v in range(g.vertex_count):
        if v in on_cycle:
            continue
        face = g.incident_faces(v)[0]
        if face.id in interior_faces:
            interior.add(v)
        else:
            exterior.add(v)
    return CycleSides(frozenset(interior), frozenset(exterior), interior_faces)


def classify_chords(g: PlaneGraph, c: EmbeddedCycle) -> List[ChordClassification]:
    position = {v: i for i, v in enumerate(c.vertices)}
    n = c.length
    cycle_edges = c.edge_set
    sides = None
    result = []
    for u, w in g.edges():
        if u not in position or w not in position or frozenset((u, w)) in cycle_edges:
            continue
        if sides is None:
            sides = cycle_sides(g, c)
        gap = abs(position[u] - position[w])
        face = g.face_of_dart(g.dart(u, w).id)
        result.append(
            ChordClassification(
                chord=(u, w),
                side=INTERNAL if face.id in sides.interior_faces else EXTERNAL,
                triangular=gap == 2 or gap == n - 2,
            )
        )
    return result


def cycles_adjacent(a: EmbeddedCycle, b: EmbeddedCycle) -> bool:
    return bool(a.edge_set & b.edge_set)


def find_family_a_witness(g: PlaneGraph, cap: int = None) -> Optional[FamilyAWitness]:
    """
    First quadruple of pairwise adjacent 3-, 4-, 5- and 6-cycles, or None.
    """
    cycles = enumerate_cycles(g, 6, cap=cap)
    by_length = defaultdict(list)
    by_edge = defaultdict(lambda: defaultdict(set))
    for index, cycle in enumerate(cycles):
        by_length[cycle.length].append(index)
        for edge in cycle.edge_set:
            by_edge[edge][cycle.length].add(index)

    adjacency = {}

    def adjacent(index, length):
        key = (index, length)
        if key not in adjacency:
            found = set()
            for edge in cycles[index].edge_set:
                found |= by_edge[edge][length]
            adjacency[key] = found
        return adjacency[key]

    for i3 in by_length[3]:
        fours = adjacent(i3, 4)
        for i4 in sorted(fours):
            fives = adjacent(i3, 5) & adjacent(i4, 5)
            for i5 in sorted(fives):
                sixes = adjacent(i3, 6) & adjacent(i4, 6) & adjacent(i5, 6)
                if sixes:
                    return FamilyAWitness(
                        c3=cycles[i3],
                        c4=cycles[i4],
                        c5=cycles[i5],
                        c6=cycles[min(sixes)],
                    )
    return None


def in_family_a(g: PlaneGraph, cap: int = None) -> Union[bool, FamilyAWitness]:
    witness = find_family_a_witness(g, cap=cap)
    return True if witness is None else witness


def find_separating_3cycles(g: PlaneGraph) -> List[EmbeddedCycle]:
    if g.outer_triangle is None:
        raise MissingOuterFace("find_separating_3cycles")
    result = []
    for cycle in enumerate_cycles(g, 3):
        sides = cycle_sides(g, cycle)
        if sides.interior and sides.exterior:
            result.append(cycle)
    return result


def six_cycle_chord_check(g: PlaneGraph) -> List[Tuple[EmbeddedCycle, List[ChordClassification]]]:
    """
    6-cycles that have a triangular chord but more than one chord.
    """
    result = []
    for cycle in enumerate_cycles(g, 6):
        if cycle.length != 6:
            continue
        chords = classify_chords(g, cycle)
        if any(chord.triangular for chord in chords) and len(chords) != 1:
            result.append((cycle, chords))
    return result
