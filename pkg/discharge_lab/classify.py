"""
Face and vertex vocabulary of the discharging argument: richness and
position of faces, flaw vertices, wheel hubs, trios and the clusters whose
3-faces share charge.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from django.utils.functional import cached_property

from .conf import get_setting
from .exceptions import MissingOuterFace, OverlappingCluster
from .plane_graph import FaceRecord, PlaneGraph

POOR = "poor"
SEMI_RICH = "semi-rich"
RICH = "rich"

INNER = "inner"
EXTREME = "extreme"
UNBOUNDED = "unbounded"

GOOD = "good"
BAD = "bad"
WORSE = "worse"
WORST = "worst"
HUB = "hub"

WHEEL = "wheel"
TRIO = "trio"
MERGED = "merged"

OVERLAP_ERROR = "error"
OVERLAP_MERGE = "merge"


def vertex_key(v: int) -> str:
    return "v{}".format(v)


def face_key(f: int) -> str:
    return "f{}".format(f)


def richness_of(big_vertices: int) -> str:
    if big_vertices == 0:
        return POOR
    if big_vertices == 1:
        return SEMI_RICH
    return RICH


def degree_pattern(g: PlaneGraph, face: FaceRecord, fours: int) -> bool:
    """
    True for a ``(4,...,4,5+)``-face with ``fours`` vertices of degree 4.
    """
    degrees = [g.degree(v) for v in face.vertices]
    return (
        len(degrees) == fours + 1
        and degrees.count(4) == fours
        and sum(1 for d in degrees if d >= 5) == 1
    )


def cyclic_windows(values: Sequence, size: int):
    n = len(values)
    if n < size:
        return
    for i in range(n):
        yield tuple(values[(i + j) % n] for j in range(size))


def matches_cyclic(values: Sequence, wanted: Sequence) -> bool:
    """
    Whether ``wanted`` occurs as consecutive entries of the cyclic sequence,
    read in either direction. Entries of ``wanted`` may be callables.
    """
    def fits(window):
        return all(
            test(value) if callable(test) else value == test
            for value, test in zip(window, wanted)
        )

    backward = list(reversed(values))
    return any(fits(w) for w in cyclic_windows(values, len(wanted))) or any(
        fits(w) for w in cyclic_windows(backward, len(wanted))
    )


@dataclass(frozen=True)
class FaceClass:
    face: int
    degree: int
    richness: str
    position: str
    big_vertices: int

    def to_json(self):
        return {
            "face": self.face,
            "degree": self.degree,
            "richness": self.richness,
            "position": self.position,
        }


@dataclass(frozen=True)
class Cluster:
    id: str
    kind: str
    faces: Tuple[int, ...]
    centers: Tuple[int, ...]

    def to_json(self):
        return {"id": self.id, "kind": self.kind, "faces": list(self.faces), "centers": list(self.centers)}


@dataclass(frozen=True)
class TrioRole:
    trio: Cluster
    roles: Tuple[Tuple[Tuple[int, int], str], ...]

    def role(self, v: int, f: int) -> Optional[str]:
        return dict(self.roles).get((v, f))


@dataclass(frozen=True)
class VertexProfile:
    vertex: int
    degree: int
    face_degrees: Tuple[int, ...]
    interior: bool
    flaw: bool
    w5_hub: bool
    roles: Tuple[Tuple[int, str, str], ...]

    def to_json(self):
        return {
            "vertex": self.vertex,
            "degree": self.degree,
            "face_degrees": list(self.face_degrees),
            "interior": self.interior,
            "flaw": self.flaw,
            "w5_hub": self.w5_hub,
            "roles": [{"face": f, "role": role, "cluster": cluster} for f, role, cluster in self.roles],
        }


class Classification:
    """
    Classifications of one plane graph with a designated outer triangle.
    Everything is computed once, from degrees and the embedding only.
    """

    def __init__(self, g: PlaneGraph, overlap: str = None):
        if g.outer_triangle is None:
            raise MissingOuterFace("classification")
        self.g = g
        self.overlap = overlap or get_setting("CLUSTER_OVERLAP")
        self.outer = g.outer_face
        self.c0 = g.outer_vertices

    # faces

    @cached_property
    def face_classes(self) -> Dict[int, FaceClass]:
        result = {}
        for face in self.g.faces:
            big = sum(1 for v in face.incident_vertices if self.g.degree(v) >= 5)
            if face.id == self.outer:
                position = UNBOUNDED
            elif face.incident_vertices & self.c0:
                position = EXTREME
            else:
                position = INNER
            result[face.id] = FaceClass(
                face=face.id,
                degree=face.degree,
                richness=richness_of(big),
                position=position,
                big_vertices=big,
            )
        return result

    def position(self, f: int) -> str:
        return self.face_classes[f].position

    def richness(self, f: int) -> str:
        return self.face_classes[f].richness

    def is_inner(self, f: int, degree: int = None) -> bool:
        fc = self.face_classes[f]
        return fc.position == INNER and (degree is None or fc.degree == degree)

    def across(self, f: int) -> List[FaceRecord]:
        """
        The face on the other side of each boundary edge, in walk order.
        """
        face = self.g.face(f)
        return [self.g.face_of_dart(self.g.darts[d].twin) for d in face.boundary_walk]

    def adjacent_to_triangle(self, f: int) -> bool:
        return any(
            other.id != f and other.id != self.outer and other.degree == 3
            for other in self.across(f)
        )

    def c0_edges(self):
        return self.g.face(self.outer).edges

    # vertices

    def face_degrees(self, v: int) -> Tuple[int, ...]:
        return tuple(face.degree for face in self.g.incident_faces(v))

    def triangle_count(self, v: int) -> int:
        return sum(1 for face in self.g.incident_faces(v) if face.degree == 3)

    def is_flaw(self, v: int) -> bool:
        g = self.g
        if g.degree(v) != 4 or not g.is_interior(v):
            return False
        faces = g.incident_faces(v)
        if not all(self.is_inner(face.id) for face in faces):
            return False
        if not matches_cyclic([face.degree for face in faces], (3, 5, 3, lambda d: d >= 5)):
            return False
        return any(face.degree == 5 and self.richness(face.id) == POOR for face in faces)

    @cached_property
    def hubs(self) -> Tuple[int, ...]:
        result = []
        for v in range(self.g.vertex_count):
            if self.g.degree(v) != 4 or not self.g.is_interior(v):
                continue
            faces = self.g.incident_faces(v)
            if len({face.id for face in faces}) == 4 and all(self.is_inner(face.id, 3) for face in faces):
                result.append(v)
        return tuple(result)

    def is_hub(self, v: int) -> bool:
        return v in self.hubs

    @cached_property
    def trios(self) -> List[Cluster]:
        found = {}
        for x in range(self.g.vertex_count):
            faces = self.g.incident_faces(x)
            if len(faces) < 4:
                continue
            for window in cyclic_windows(faces, 3):
                ids = tuple(face.id for face in window)
                if len(set(ids)) != 3 or not all(self.is_inner(f, 3) for f in ids):
                    continue
                vertices = set().union(*(face.incident_vertices for face in window))
                if len(vertices) == 5:
                    found.setdefault(tuple(sorted(ids)), x)
        return [
            Cluster(id="T{}".format(i), kind=TRIO, faces=faces, centers=(center,))
            for i, (faces, center) in enumerate(sorted(found.items()), start=1)
        ]

    @cached_property
    def wheels(self) -> List[Cluster]:
        return [
            Cluster(
                id="W{}".format(i),
                kind=WHEEL,
                faces=tuple(sorted(face.id for face in self.g.incident_faces(hub))),
                centers=(hub,),
            )
            for i, hub in enumerate(self.hubs, start=1)
        ]

    @cached_property
    def raw_clusters(self) -> List[Cluster]:
        wheel_faces = [set(w.faces) for w in self.wheels]
        trios = [t for t in self.trios if not any(set(t.faces) <= faces for faces in wheel_faces)]
        return self.wheels + trios

    @cached_property
    def overlaps(self) -> Dict[int, Tuple[str, ...]]:
        owners = defaultdict(list)
        for cluster in self.raw_clusters:
            for f in cluster.faces:
                owners[f].append(cluster.id)
        return {f: tuple(ids) for f, ids in sorted(owners.items()) if len(ids) > 1}

    @cached_property
    def clusters(self) -> List[Cluster]:
        """
        R8 clusters. Under the "error" policy a 3-face in two clusters raises
        OverlappingCluster; under "merge" overlapping clusters are united.
        """
        if not self.overlaps:
            return list(self.raw_clusters)
        if self.overlap != OVERLAP_MERGE:
            f, ids = next(iter(self.overlaps.items()))
            raise OverlappingCluster(f, ids)

        union = nx.Graph()
        for cluster in self.raw_clusters:
            union.add_node(cluster.id)
            for f in cluster.faces:
                union.add_edge(cluster.id, ("face", f))
        by_id = {cluster.id: cluster for cluster in self.raw_clusters}
        merged = []
        for component in nx.connected_components(union):
            members = sorted((by_id[node] for node in component if node in by_id), key=lambda c: c.id)
            if len(members) == 1:
                merged.append(members[0])
                continue
            merged.append(
                Cluster(
                    id="+".join(c.id for c in members),
                    kind=MERGED,
                    faces=tuple(sorted({f for c in members for f in c.faces})),
                    centers=tuple(sorted({v for c in members for v in c.centers})),
                )
            )
        return sorted(merged, key=lambda c: c.faces)

    @cached_property
    def cluster_of_face(self) -> Dict[int, Cluster]:
        return {f: cluster for cluster in self.clusters for f in cluster.faces}

    def cluster_incidence(self, cluster: Cluster, v: int) -> int:
        return sum(1 for f in cluster.faces if v in self.g.face(f).incident_vertices)

    def role(self, v: int, f: int) -> str:
        """
        Role of the 3-face ``f`` for the vertex ``v``: good outside clusters,
        then bad / worse / worst by how many cluster faces meet ``v``.
        """
        cluster = self.cluster_of_face.get(f)
        if cluster is None:
            return GOOD
        count = self.cluster_incidence(cluster, v)
        if count == 1:
            return BAD
        if count == 2:
            return WORSE
        return WORST

    def trio_roles(self) -> List[TrioRole]:
        result = []
        for cluster in self.clusters:
            roles = []
            for f in cluster.faces:
                for v in sorted(self.g.face(f).incident_vertices):
                    role = HUB if v in cluster.centers and cluster.kind == WHEEL else self.role(v, f)
                    roles.append(((v, f), role))
            result.append(TrioRole(trio=cluster, roles=tuple(roles)))
        return result

    def profile(self, v: int) -> VertexProfile:
        roles = []
        hub = self.is_hub(v)
        for face in self.g.incident_faces(v):
            cluster = self.cluster_of_face.get(face.id)
            if cluster is None:
                continue
            role = HUB if hub and cluster.kind != TRIO else self.role(v, face.id)
            roles.append((face.id, role, cluster.id))
        return VertexProfile(
            vertex=v,
            degree=self.g.degree(v),
            face_degrees=self.face_degrees(v),
            interior=self.g.is_interior(v),
            flaw=self.is_flaw(v),
            w5_hub=hub,
            roles=tuple(roles),
        )


def classify_faces(g: PlaneGraph) -> List[FaceClass]:
    classes = Classification(g, overlap=OVERLAP_MERGE).face_classes
    return [classes[face.id] for face in g.faces]


def classify_vertices(g: PlaneGraph, overlap: str = OVERLAP_MERGE) -> List[VertexProfile]:
    c = Classification(g, overlap=overlap)
    return [c.profile(v) for v in range(g.vertex_count)]
