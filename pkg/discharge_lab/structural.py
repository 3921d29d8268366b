"""
Structural checklist for a plane graph with a designated outer triangle.

Every check reports :class:`Violation` records instead of raising: arbitrary
graphs legitimately break the facts a minimal counterexample would satisfy,
and the discharging verdicts consume the report.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

from .catalog import F_ANCHORS, F_OUTER, H_ANCHORS, ConfigPattern, PatternKind, find_matches
from .classify import POOR, RICH, SEMI_RICH, Classification, face_key, matches_cyclic, vertex_key
from .cycles import canonical_cycle, find_separating_3cycles
from .exceptions import MissingOuterFace
from .plane_graph import PlaneGraph

logger = logging.getLogger(__name__)

INTERIOR_LOW_DEGREE = "interior-low-degree"
SEPARATING_TRIANGLE = "separating-triangle"
NON_CYCLE_FACE = "non-cycle-face"
FACE_PAIR_SHAPE = "face-pair-shape"
VERTEX_FACE_PATTERN = "vertex-face-pattern"
WHEEL_SHORT_NEIGHBOUR = "wheel-short-neighbour"
REDUCIBLE_4444_FACE = "reducible-4444-face"
TWO_FACE_LOW_DEGREE = "two-face-low-degree"
FLAW_VERTEX = "flaw-vertex"
FIVE_VERTEX_RICH = "five-vertex-rich"
SIX_VERTEX_5353 = "six-vertex-5353"
WHEEL_NEIGHBOUR_DEGREES = "wheel-neighbour-degrees"
H_DEGREE = "h-degree"

BASE_KINDS = (
    INTERIOR_LOW_DEGREE,
    SEPARATING_TRIANGLE,
    NON_CYCLE_FACE,
    FACE_PAIR_SHAPE,
    VERTEX_FACE_PATTERN,
    WHEEL_SHORT_NEIGHBOUR,
)
REDUCIBLE_KINDS = (
    REDUCIBLE_4444_FACE,
    TWO_FACE_LOW_DEGREE,
    FLAW_VERTEX,
    FIVE_VERTEX_RICH,
    SIX_VERTEX_5353,
    WHEEL_NEIGHBOUR_DEGREES,
    H_DEGREE,
)
ALL_KINDS = BASE_KINDS + REDUCIBLE_KINDS

FORBIDDEN_VERTEX_PATTERNS = (
    (3, 3, 4),
    (3, 3, 5),
    (3, 4, 3),
    (3, 4, 4),
    (4, 3, 5),
)


@dataclass(frozen=True)
class Violation:
    kind: str
    elements: Tuple[str, ...]
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind, "elements": list(self.elements), "detail": self.detail}


@dataclass(frozen=True)
class StructuralReport:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def clean(self) -> bool:
        return not self.violations

    def kinds(self) -> Tuple[str, ...]:
        return tuple(sorted({v.kind for v in self.violations}))

    def by_kind(self, kind: str) -> List[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def without(self, kinds: Iterable[str]) -> "StructuralReport":
        kinds = set(kinds)
        return StructuralReport(tuple(v for v in self.violations if v.kind not in kinds))

    def near(self, elements: Iterable[str]) -> List[Violation]:
        """
        Violations naming any of ``elements``.
        """
        elements = set(elements)
        return [v for v in self.violations if elements & set(v.elements)]

    def to_json(self):
        return {"clean": self.clean, "violations": [v.to_json() for v in self.violations]}


class _Scanner:
    def __init__(self, g: PlaneGraph, classification: Classification):
        self.g = g
        self.c = classification
        self.found = []

    def report(self, kind, elements, detail=""):
        self.found.append(Violation(kind, tuple(elements), detail))

    def interior_vertices(self):
        return [v for v in range(self.g.vertex_count) if self.g.is_interior(v)]

    # base checklist

    def low_degree(self):
        for v in self.interior_vertices():
            if self.g.degree(v) <= 3:
                self.report(INTERIOR_LOW_DEGREE, (vertex_key(v),), "degree {}".format(self.g.degree(v)))

    def separating_triangles(self):
        for cycle in find_separating_3cycles(self.g):
            self.report(
                SEPARATING_TRIANGLE,
                tuple(vertex_key(v) for v in cycle.vertices),
                "separating 3-cycle {}".format(list(cycle.vertices)),
            )

    def non_cycle_faces(self):
        for face in self.g.bounded_faces():
            if face.degree <= 6 and not face.boundary_is_cycle:
                self.report(NON_CYCLE_FACE, (face_key(face.id),), "boundary walk {}".format(list(face.vertices)))

    def _exception_pairs(self, kind: PatternKind, outer=None):
        pairs = set()
        keys = {canonical_cycle(face.vertices): face.id for face in self.g.bounded_faces()}
        pattern = ConfigPattern(kind)
        for match in find_matches(self.g, pattern):
            mapping = match.mapping
            if outer is not None and frozenset(mapping[label] for label in outer) != self.g.outer_vertices:
                continue
            anchored = [
                keys.get(canonical_cycle([mapping[label] for label in face]))
                for face in _anchors(kind)
            ]
            if None not in anchored:
                pairs.add(frozenset(anchored))
        return pairs

    def face_pairs(self):
        seen = set()
        allowed = None
        for u, w in self.g.edges():
            left, right = self.g.edge_faces(u, w)
            if left.id == right.id or self.g.outer_face in (left.id, right.id):
                continue
            pair = frozenset((left.id, right.id))
            if pair in seen:
                continue
            seen.add(pair)
            if left.degree > 5 or right.degree > 5:
                continue
            if not (left.boundary_is_cycle and right.boundary_is_cycle):
                continue
            shared = left.incident_vertices & right.incident_vertices
            if len(shared) == 2:
                continue
            degrees = sorted((left.degree, right.degree))
            if degrees in ([4, 5], [5, 5]):
                if allowed is None:
                    allowed = self._exception_pairs(PatternKind.F, outer=F_OUTER)
                    allowed |= self._exception_pairs(PatternKind.H)
                if pair in allowed:
                    continue
            self.report(
                FACE_PAIR_SHAPE,
                tuple(face_key(f) for f in sorted(pair)),
                "{}-face and {}-face share {} vertices".format(degrees[0], degrees[1], len(shared)),
            )

    def vertex_patterns(self):
        for v in self.interior_vertices():
            degrees = self.c.face_degrees(v)
            for pattern in FORBIDDEN_VERTEX_PATTERNS:
                if matches_cyclic(degrees, pattern):
                    self.report(
                        VERTEX_FACE_PATTERN,
                        (vertex_key(v),),
                        "consecutive faces of degrees {}".format(pattern),
                    )
                    break

    def wheel_neighbours(self):
        for hub in self.c.hubs:
            wedges = {face.id for face in self.g.incident_faces(hub)}
            rim = self.g.rotation(hub)
            for i, a in enumerate(rim):
                b = rim[(i + 1) % len(rim)]
                for face in self.g.edge_faces(a, b):
                    if face.id in wedges:
                        continue
                    if face.degree <= 6:
                        self.report(
                            WHEEL_SHORT_NEIGHBOUR,
                            (vertex_key(hub), face_key(face.id)),
                            "wheel rim edge {}-{} borders a {}-face".format(a, b, face.degree),
                        )

    # reducible configurations

    def faces_4444(self):
        for face in self.g.bounded_faces():
            if self.c.is_inner(face.id, 4) and all(self.g.degree(v) == 4 for v in face.vertices):
                self.report(REDUCIBLE_4444_FACE, (face_key(face.id),))

    def two_faces(self):
        for v in self.interior_vertices():
            if self.g.degree(v) > 5:
                continue
            faces = self.g.incident_faces(v)
            for i, f1 in enumerate(faces):
                f2 = faces[(i + 1) % len(faces)]
                if f1.id == f2.id:
                    continue
                if not all(self.c.is_inner(f.id) and f.degree <= 5 for f in (f1, f2)):
                    continue
                others = (f1.incident_vertices | f2.incident_vertices) - {v}
                if not any(self.g.degree(w) >= 5 for w in others):
                    self.report(
                        TWO_FACE_LOW_DEGREE,
                        (vertex_key(v), face_key(f1.id), face_key(f2.id)),
                        "no 5+-vertex besides v on two consecutive inner 5--faces",
                    )

    def flaws(self):
        for v in self.interior_vertices():
            if not self.c.is_flaw(v):
                continue
            faces = self.g.incident_faces(v)
            poor_fives = {f.id for f in faces if f.degree == 5 and self.c.richness(f.id) == POOR}
            if len(poor_fives) > 1:
                self.report(FLAW_VERTEX, (vertex_key(v),), "incident to {} poor 5-faces".format(len(poor_fives)))
            for f in faces:
                if f.degree == 3 and self.c.richness(f.id) != SEMI_RICH:
                    self.report(
                        FLAW_VERTEX,
                        (vertex_key(v), face_key(f.id)),
                        "incident 3-face is {}".format(self.c.richness(f.id)),
                    )

    def five_vertices(self):
        for v in self.interior_vertices():
            if self.g.degree(v) != 5:
                continue
            faces = self.g.incident_faces(v)
            if not all(self.c.is_inner(f.id) and f.degree <= 5 for f in faces):
                continue
            rich = sum(1 for f in faces if self.c.richness(f.id) == RICH)
            if rich < 3:
                self.report(FIVE_VERTEX_RICH, (vertex_key(v),), "only {} rich faces".format(rich))

    def six_vertices(self):
        for v in self.interior_vertices():
            if self.g.degree(v) != 6:
                continue
            faces = self.g.incident_faces(v)
            n = len(faces)
            for direction in (1, -1):
                for i in range(n):
                    window = [faces[(i + direction * j) % n] for j in range(4)]
                    if [f.degree for f in window] != [5, 3, 5, 3]:
                        continue
                    others = set().union(*(f.incident_vertices for f in window)) - {v}
                    if not any(self.g.degree(w) >= 5 for w in others):
                        self.report(
                            SIX_VERTEX_5353,
                            (vertex_key(v),) + tuple(face_key(f.id) for f in window),
                            "no 5+-vertex besides v on consecutive (5,3,5,3) faces",
                        )
                        return

    def wheel_degrees(self):
        for hub in self.c.hubs:
            rim = [self.g.degree(w) for w in self.g.rotation(hub)]
            if all(d <= 5 for d in rim) and rim.count(5) < 3:
                self.report(
                    WHEEL_NEIGHBOUR_DEGREES,
                    (vertex_key(hub),),
                    "rim degrees {}".format(rim),
                )

    def h_degrees(self):
        for match in find_matches(self.g, ConfigPattern(PatternKind.H)):
            if match.image & self.g.outer_vertices:
                continue
            big = [v for v in match.image if self.g.degree(v) >= 5]
            if not big or (len(big) == 1 and self.g.degree(big[0]) == 5):
                self.report(
                    H_DEGREE,
                    tuple(vertex_key(v) for v in sorted(match.image)),
                    "H with {} vertices of degree 5+".format(len(big)),
                )

    def run(self):
        for check in (
            self.low_degree,
            self.separating_triangles,
            self.non_cycle_faces,
            self.face_pairs,
            self.vertex_patterns,
            self.wheel_neighbours,
            self.faces_4444,
            self.two_faces,
            self.flaws,
            self.five_vertices,
            self.six_vertices,
            self.wheel_degrees,
            self.h_degrees,
        ):
            check()
        return StructuralReport(tuple(self.found))


def _anchors(kind: PatternKind):
    return F_ANCHORS if kind is PatternKind.F else H_ANCHORS


def structural_scan(g: PlaneGraph, classification: Classification = None) -> StructuralReport:
    if g.outer_triangle is None:
        raise MissingOuterFace("structural_scan")
    classification = classification or Classification(g, overlap="merge")
    report = _Scanner(g, classification).run()
    logger.debug("%s: %d structural violations", g, len(report.violations))
    return report
