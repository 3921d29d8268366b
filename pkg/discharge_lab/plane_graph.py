"""
Plane graphs given by rotation systems.

A vertex lists its neighbours in clockwise order. Every edge ``vw`` yields two
darts ``v -> w`` and ``w -> v``. A face walk leaves a dart through its twin and
continues with the neighbour that precedes the arrival vertex in the clockwise
rotation (the counterclockwise convention of ``networkx.PlanarEmbedding``).
"""
import copy
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from django.utils.functional import cached_property

from .exceptions import (
    Disconnected,
    InconsistentRotation,
    NonSimple,
    NoSuchFace,
    NotATriangle,
    NotSphereEmbedding,
    UnknownVertex,
)


@dataclass(frozen=True)
class Dart:
    id: int
    origin: int
    target: int
    twin: int
    next_at_origin: int


@dataclass(frozen=True)
class FaceRecord:
    id: int
    boundary_walk: Tuple[int, ...]
    vertices: Tuple[int, ...]
    incident_vertices: FrozenSet[int]

    @property
    def degree(self) -> int:
        return len(self.boundary_walk)

    @property
    def boundary_is_cycle(self) -> bool:
        return len(self.vertices) == len(self.incident_vertices)

    @property
    def edges(self) -> FrozenSet[FrozenSet[int]]:
        n = len(self.vertices)
        return frozenset(
            frozenset((self.vertices[i], self.vertices[(i + 1) % n]))
            for i in range(n)
        )


@dataclass(frozen=True)
class OuterTriangle:
    vertices: Tuple[int, int, int]


class PlaneGraph:
    """
    Immutable connected simple plane graph.

    Use :func:`build_from_rotation` (or :func:`from_named_rotation`) to create
    instances; the constructor assumes an already validated rotation.
    """

    def __init__(self, rotation: Sequence[Sequence[int]], labels: Sequence[str] = None):
        self._rotation = tuple(tuple(neighbors) for neighbors in rotation)
        self.vertex_count = len(self._rotation)
        if labels is None:
            labels = [str(v) for v in range(self.vertex_count)]
        self.labels = tuple(labels)
        self._label_index = {label: v for v, label in enumerate(self.labels)}
        self._outer_face = None

        darts = []
        self._dart_index = {}
        for v, neighbors in enumerate(self._rotation):
            for w in neighbors:
                self._dart_index[(v, w)] = len(darts)
                darts.append((v, w))

        self.darts = tuple(
            Dart(
                id=index,
                origin=v,
                target=w,
                twin=self._dart_index[(w, v)],
                next_at_origin=self._dart_index[(v, self._cw_next(v, w))],
            )
            for index, (v, w) in enumerate(darts)
        )

    def __repr__(self):
        return "<PlaneGraph V={} E={} outer={}>".format(
            self.vertex_count, self.edge_count, self._outer_face
        )

    def _cw_next(self, v, w):
        neighbors = self._rotation[v]
        return neighbors[(neighbors.index(w) + 1) % len(neighbors)]

    @cached_property
    def embedding(self) -> nx.PlanarEmbedding:
        embedding = nx.PlanarEmbedding()
        embedding.add_nodes_from(range(self.vertex_count))
        embedding.set_data({v: list(neighbors) for v, neighbors in enumerate(self._rotation)})
        return embedding

    @cached_property
    def _face_tables(self):
        face_of_dart = [None] * len(self.darts)
        faces = []
        for dart in self.darts:
            if face_of_dart[dart.id] is not None:
                continue

            walk = []
            v, w = dart.origin, dart.target
            while True:
                index = self._dart_index[(v, w)]
                if face_of_dart[index] is not None:
                    break
                face_of_dart[index] = len(faces)
                walk.append(index)
                v, w = self.embedding.next_face_half_edge(v, w)

            vertices = tuple(self.darts[index].origin for index in walk)
            faces.append(
                FaceRecord(
                    id=len(faces),
                    boundary_walk=tuple(walk),
                    vertices=vertices,
                    incident_vertices=frozenset(vertices),
                )
            )

        if not faces:
            # single vertex, no edges
            faces.append(
                FaceRecord(id=0, boundary_walk=(), vertices=(), incident_vertices=frozenset({0}))
            )
        return tuple(faces), tuple(face_of_dart)

    @property
    def faces(self) -> Tuple[FaceRecord, ...]:
        return self._face_tables[0]

    @property
    def edge_count(self) -> int:
        return len(self.darts) // 2

    @property
    def outer_face(self) -> Optional[int]:
        return self._outer_face

    @property
    def outer_triangle(self) -> Optional[OuterTriangle]:
        if self._outer_face is None:
            return None
        face = self.faces[self._outer_face]
        if face.degree != 3 or not face.boundary_is_cycle:
            return None
        return OuterTriangle(vertices=face.vertices)

    @property
    def outer_vertices(self) -> FrozenSet[int]:
        if self._outer_face is None:
            return frozenset()
        return self.faces[self._outer_face].incident_vertices

    def with_outer_face(self, face_id: int) -> "PlaneGraph":
        other = copy.copy(self)
        other._outer_face = face_id
        return other

    def check_vertex(self, v):
        if not isinstance(v, int) or not 0 <= v < self.vertex_count:
            raise UnknownVertex(v)

    def vertex(self, name) -> int:
        """
        Vertex id for a label, or for a numeric id given as int or str.
        """
        if isinstance(name, int):
            self.check_vertex(name)
            return name
        if name in self._label_index:
            return self._label_index[name]
        if isinstance(name, str) and name.isdigit():
            return self.vertex(int(name))
        raise UnknownVertex(name)

    def label(self, v: int) -> str:
        return self.labels[v]

    def rotation(self, v: int) -> Tuple[int, ...]:
        self.check_vertex(v)
        return self._rotation[v]

    neighbors = rotation

    def degree(self, v: int) -> int:
        return len(self.rotation(v))

    def dart(self, v: int, w: int) -> Dart:
        return self.darts[self._dart_index[(v, w)]]

    def has_edge(self, v: int, w: int) -> bool:
        return (v, w) in self._dart_index

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((d.origin, d.target) for d in self.darts if d.origin < d.target)

    def face(self, face_id: int) -> FaceRecord:
        return self.faces[face_id]

    def face_of_dart(self, dart_id: int) -> FaceRecord:
        return self.faces[self._face_tables[1][dart_id]]

    def boundary_darts(self, face_id: int) -> List[Dart]:
        return [self.darts[d] for d in self.face(face_id).boundary_walk]

    def incident_faces(self, v: int) -> List[FaceRecord]:
        """
        Faces around ``v`` in clockwise order, with multiplicity.
        """
        return [self.face_of_dart(self._dart_index[(v, w)]) for w in self.rotation(v)]

    def edge_faces(self, v: int, w: int) -> Tuple[FaceRecord, FaceRecord]:
        """
        The faces on both sides of the edge ``vw``.
        """
        return (
            self.face_of_dart(self._dart_index[(v, w)]),
            self.face_of_dart(self._dart_index[(w, v)]),
        )

    def bounded_faces(self) -> List[FaceRecord]:
        return [face for face in self.faces if face.id != self._outer_face]

    def is_interior(self, v: int) -> bool:
        """
        True for vertices off the outer face boundary.
        """
        return v not in self.outer_vertices

    @cached_property
    def _nx_graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return nx.freeze(graph)

    def to_networkx(self) -> nx.Graph:
        return self._nx_graph


def _normalize(adjacency: Mapping[Hashable, Sequence[Hashable]]):
    keys = list(adjacency)
    if set(keys) == set(range(len(keys))):
        index = {v: v for v in keys}
        labels = [str(v) for v in range(len(keys))]
    else:
        index = {v: i for i, v in enumerate(keys)}
        labels = [str(v) for v in keys]

    rotation = [None] * len(keys)
    for key, neighbors in adjacency.items():
        v = index[key]
        seen = set()
        row = []
        for neighbor in neighbors:
            if neighbor not in index:
                raise UnknownVertex(neighbor)
            w = index[neighbor]
            if w == v or w in seen:
                raise NonSimple(key, neighbor)
            seen.add(w)
            row.append(w)
        rotation[v] = row
    return rotation, labels


def build_from_rotation(adjacency: Mapping[Hashable, Sequence[Hashable]]) -> PlaneGraph:
    """
    Build a plane graph from clockwise neighbour lists.

    Keys ``0..n-1`` are kept as vertex ids; any other keys are numbered in
    mapping order and kept as labels.
    """
    rotation, labels = _normalize(adjacency)
    n = len(rotation)
    if n == 0:
        raise Disconnected(0)

    for v, neighbors in enumerate(rotation):
        for w in neighbors:
            if v not in rotation[w]:
                raise InconsistentRotation(labels[v], labels[w])

    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((v, w) for v, neighbors in enumerate(rotation) for w in neighbors)
    components = nx.number_connected_components(graph)
    if components != 1:
        raise Disconnected(components)

    g = PlaneGraph(rotation, labels)
    f = len(g.faces)
    if n - g.edge_count + f != 2:
        raise NotSphereEmbedding(n, g.edge_count, f)
    return g


def from_named_rotation(adjacency: Mapping[Hashable, Sequence[Hashable]], outer=None) -> PlaneGraph:
    """
    Same as :func:`build_from_rotation`, optionally designating the outer
    triangle by vertex names.
    """
    g = build_from_rotation(adjacency)
    if outer is not None:
        g = designate_outer(g, [g.vertex(name) for name in outer])
    return g


def faces(g: PlaneGraph) -> List[FaceRecord]:
    return list(g.faces)


def find_face(g: PlaneGraph, vertices: Sequence[int]) -> Optional[FaceRecord]:
    """
    The lowest-id face whose boundary is a cycle through exactly ``vertices``.
    """
    wanted = frozenset(vertices)
    for face in g.faces:
        if (
            face.degree == len(vertices)
            and face.boundary_is_cycle
            and face.incident_vertices == wanted
        ):
            return face
    return None


def designate_outer(g: PlaneGraph, triple: Sequence[int]) -> PlaneGraph:
    triple = tuple(triple)
    if len(triple) != 3 or len(set(triple)) != 3:
        raise NotATriangle(triple)
    for v in triple:
        g.check_vertex(v)

    face = find_face(g, triple)
    if face is None:
        raise NoSuchFace(triple)
    return g.with_outer_face(face.id)


def degree(g: PlaneGraph, v: int) -> int:
    return g.degree(v)


def incident_faces(g: PlaneGraph, v: int) -> List[FaceRecord]:
    return g.incident_faces(v)


def initial_charge_sum(g: PlaneGraph) -> Fraction:
    vertices = sum(2 * g.degree(v) - 6 for v in range(g.vertex_count))
    faces_ = sum(face.degree - 6 for face in g.faces)
    return Fraction(vertices + faces_)
