"""
Named configurations and their occurrences in host graphs.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from networkx.algorithms.isomorphism import GraphMatcher

from .conf import get_setting
from .cycles import EmbeddedCycle, canonical_cycle, enumerate_cycles
from .exceptions import BadParameters, LimitExceeded
from .plane_graph import PlaneGraph, find_face, from_named_rotation

logger = logging.getLogger(__name__)


class PatternKind(str, Enum):
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    W5 = "W5"
    F = "F"
    H = "H"


ARITY = {PatternKind.C2: 2, PatternKind.C3: 3, PatternKind.C4: 4}
WHEEL_HUB = "h"
WHEEL_RIM = ("r", "s", "u", "v")

# clockwise rotations; the outer face of F is tuy, the outer face of H is rswv
F_ROTATION = {
    "y": ["t", "u"],
    "u": ["y", "v", "t"],
    "t": ["u", "s", "w", "y"],
    "v": ["w", "s", "u"],
    "s": ["v", "t"],
    "w": ["v", "t"],
}
F_OUTER = ("t", "u", "y")
F_ANCHORS = (("s", "t", "u", "v"), ("u", "v", "w", "t", "y"))

H_ROTATION = {
    "s": ["w", "y", "t", "r"],
    "u": ["t", "y", "v"],
    "v": ["r", "u", "w"],
    "r": ["s", "v"],
    "w": ["s", "v"],
    "t": ["s", "u"],
    "y": ["s", "u"],
}
H_OUTER = ("r", "s", "w", "v")
H_ANCHORS = (("r", "s", "t", "u", "v"), ("u", "v", "w", "s", "y"))

FORBIDDEN_NAMES = ("C(3,3,4)", "C(3,3,5)", "C(3,4,3)", "C(3,4,4)", "C(4,3,5)")
WHEEL_WITH_CYCLE = "W5+6-cycle"

_NAME_RE = re.compile(r"^C([234])?\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")


@dataclass(frozen=True)
class ConfigPattern:
    kind: PatternKind
    parameters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", PatternKind(self.kind))
        object.__setattr__(self, "parameters", tuple(int(p) for p in self.parameters))

    @property
    def name(self) -> str:
        if self.kind in ARITY:
            return "C({})".format(",".join(map(str, self.parameters)))
        return self.kind.value

    @property
    def face_anchored(self) -> bool:
        return self.kind in (PatternKind.W5, PatternKind.F, PatternKind.H)

    def __str__(self):
        return self.name


def parse_pattern(name: str) -> ConfigPattern:
    """
    Accepts ``C(3,3,4)``, ``C3(3,3,4)``, ``W5``, ``F`` and ``H``.
    """
    text = name.strip()
    if text.upper() in ("W5", "F", "H"):
        return ConfigPattern(PatternKind(text.upper()))
    match = _NAME_RE.match(text)
    if match is None:
        raise BadParameters(name, (), "unknown configuration name")

    parameters = tuple(int(p) for p in match.group(2).split(","))
    if not 2 <= len(parameters) <= 4:
        raise BadParameters(text, parameters, "a fan takes two to four parameters")
    if match.group(1) and int(match.group(1)) != len(parameters):
        raise BadParameters(text, parameters, "arity does not match the name")
    return ConfigPattern(PatternKind("C{}".format(len(parameters))), parameters)


def chord_endpoints(parameters: Sequence[int]) -> Tuple[int, ...]:
    """
    1-based positions ``a`` of the chords ``x1 x_a`` of a fan.
    """
    ends = [parameters[0]]
    for length in parameters[1:-1]:
        ends.append(ends[-1] + length - 2)
    return tuple(ends)


def fan_length(parameters: Sequence[int]) -> int:
    return sum(parameters) - 2 * (len(parameters) - 1)


def fan_labels(parameters: Sequence[int]) -> Tuple[str, ...]:
    return tuple("x{}".format(i) for i in range(1, fan_length(parameters) + 1))


def _check(p: ConfigPattern):
    if p.kind in ARITY:
        if len(p.parameters) != ARITY[p.kind]:
            raise BadParameters(p.kind.value, p.parameters, "expected {} parameters".format(ARITY[p.kind]))
        if any(length < 3 for length in p.parameters):
            raise BadParameters(p.kind.value, p.parameters, "every cycle length must be at least 3")
    elif p.parameters:
        raise BadParameters(p.kind.value, p.parameters, "takes no parameters")


def _build_fan(parameters) -> PlaneGraph:
    n = fan_length(parameters)
    adjacency = {i: {(i - 1) % n, (i + 1) % n} for i in range(n)}
    for end in chord_endpoints(parameters):
        adjacency[0].add(end - 1)
        adjacency[end - 1].add(0)

    # convex placement, vertices clockwise
    labels = fan_labels(parameters)
    rotation = {
        labels[i]: [labels[j] for j in sorted(neighbors, key=lambda j: (j - i) % n)]
        for i, neighbors in adjacency.items()
    }
    g = from_named_rotation(rotation)
    return g.with_outer_face(find_face(g, range(n)).id)


def wheel_rotation(hub=WHEEL_HUB, rim=WHEEL_RIM) -> Dict[str, List[str]]:
    rotation = {hub: list(rim)}
    for i, v in enumerate(rim):
        rotation[v] = [rim[(i + 1) % len(rim)], hub, rim[i - 1]]
    return rotation


def build_wheel(hub=WHEEL_HUB, rim=WHEEL_RIM) -> PlaneGraph:
    g = from_named_rotation(wheel_rotation(hub, rim))
    return g.with_outer_face(find_face(g, [g.vertex(v) for v in rim]).id)


def build_pattern(p: ConfigPattern) -> PlaneGraph:
    """
    The configuration drawn with its chords inside the outer cycle.
    """
    _check(p)
    if p.kind in ARITY:
        return _build_fan(p.parameters)
    if p.kind is PatternKind.W5:
        return build_wheel()

    rotation, outer = (F_ROTATION, F_OUTER) if p.kind is PatternKind.F else (H_ROTATION, H_OUTER)
    g = from_named_rotation(rotation)
    return g.with_outer_face(find_face(g, [g.vertex(v) for v in outer]).id)


def anchored_faces(p: ConfigPattern) -> Tuple[Tuple[str, ...], ...]:
    """
    Faces, by pattern label, that must be faces of the host as well.
    """
    if p.kind is PatternKind.W5:
        return tuple(
            (WHEEL_HUB, WHEEL_RIM[i], WHEEL_RIM[(i + 1) % 4]) for i in range(4)
        )
    if p.kind is PatternKind.F:
        return F_ANCHORS
    if p.kind is PatternKind.H:
        return H_ANCHORS
    return ()


@dataclass(frozen=True)
class ConfigMatch:
    pattern: ConfigPattern
    vertex_map: Tuple[Tuple[str, int], ...]
    face_constraints_met: bool

    @property
    def mapping(self) -> Dict[str, int]:
        return dict(self.vertex_map)

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(v for _, v in self.vertex_map)

    def to_json(self):
        return {
            "pattern": self.pattern.name,
            "vertex_map": {label: v for label, v in self.vertex_map},
            "face_constraints_met": self.face_constraints_met,
        }


def _host_face_keys(g: PlaneGraph, inner_only: bool) -> FrozenSet[Tuple[int, ...]]:
    outer = g.outer_vertices
    keys = set()
    for face in g.bounded_faces():
        if not face.boundary_is_cycle:
            continue
        if inner_only and face.incident_vertices & outer:
            continue
        keys.add(canonical_cycle(face.vertices))
    return frozenset(keys)


def _anchors_met(anchors, host_to_pattern, face_keys) -> bool:
    pattern_to_host = {label: v for v, label in host_to_pattern.items()}
    for face in anchors:
        if canonical_cycle([pattern_to_host[label] for label in face]) not in face_keys:
            return False
    return True


def find_matches(
    g: PlaneGraph,
    p: ConfigPattern,
    enforce_faces: bool = True,
    cap: int = None,
) -> List[ConfigMatch]:
    """
    Occurrences of ``p`` in ``g`` up to pattern automorphism.

    For face-anchored patterns an occurrence whose anchored faces are not
    faces of ``g`` is dropped, or kept with ``face_constraints_met=False``
    when ``enforce_faces`` is off. Wheel wedges must be inner faces when the
    outer triangle is designated.
    """
    cap = cap or get_setting("MATCH_CAP")
    pattern_graph = build_pattern(p)
    labels = pattern_graph.labels
    anchors = anchored_faces(p)
    inner_only = p.kind is PatternKind.W5 and g.outer_triangle is not None
    face_keys = _host_face_keys(g, inner_only) if anchors else frozenset()

    matcher = GraphMatcher(g.to_networkx(), pattern_graph.to_networkx())
    found = {}
    raw = 0
    for mapping in matcher.subgraph_monomorphisms_iter():
        raw += 1
        if raw > cap:
            raise LimitExceeded("match", cap)

        host_to_pattern = {v: labels[w] for v, w in mapping.items()}
        met = _anchors_met(anchors, host_to_pattern, face_keys) if anchors else True
        key = (
            frozenset(mapping),
            frozenset(
                frozenset((a, b))
                for a, b in itertools.combinations(mapping, 2)
                if pattern_graph.has_edge(mapping[a], mapping[b])
            ),
        )
        previous = found.get(key)
        if previous is None or (met and not previous[1]):
            found[key] = (host_to_pattern, met)

    matches = []
    for host_to_pattern, met in found.values():
        if enforce_faces and not met:
            continue
        vertex_map = tuple(sorted(((label, v) for v, label in host_to_pattern.items()), key=lambda item: labels.index(item[0])))
        matches.append(ConfigMatch(pattern=p, vertex_map=vertex_map, face_constraints_met=met))

    matches.sort(key=lambda m: [v for _, v in m.vertex_map])
    logger.debug("%s: %d matches of %s (%d raw)", g, len(matches), p.name, raw)
    return matches


def count_raw_matches(g: PlaneGraph, p: ConfigPattern) -> int:
    matcher = GraphMatcher(g.to_networkx(), build_pattern(p).to_networkx())
    return sum(1 for _ in matcher.subgraph_monomorphisms_iter())


def brute_force_matches(g: PlaneGraph, p: ConfigPattern) -> List[FrozenSet]:
    """
    Distinct (vertex image, edge image) pairs of injective edge-preserving
    maps, found by trying every injection.
    """
    pattern_graph = build_pattern(p)
    k = pattern_graph.vertex_count
    pattern_edges = pattern_graph.edges()
    images = set()
    for image in itertools.permutations(range(g.vertex_count), k):
        if all(g.has_edge(image[a], image[b]) for a, b in pattern_edges):
            images.add(
                (
                    frozenset(image),
                    frozenset(frozenset((image[a], image[b])) for a, b in pattern_edges),
                )
            )
    return sorted(images, key=lambda item: (sorted(item[0]), sorted(sorted(e) for e in item[1])))


def match_key(m: ConfigMatch, p: Optional[ConfigPattern] = None):
    """
    The (vertex image, edge image) pair of a match, comparable with
    :func:`brute_force_matches` entries.
    """
    pattern_graph = build_pattern(p or m.pattern)
    mapping = m.mapping
    edges = frozenset(
        frozenset((mapping[pattern_graph.label(a)], mapping[pattern_graph.label(b)]))
        for a, b in pattern_graph.edges()
    )
    return (m.image, edges)


def match_edges(m: ConfigMatch) -> FrozenSet[FrozenSet[int]]:
    return match_key(m)[1]


@dataclass(frozen=True)
class ForbiddenHit:
    name: str
    match: ConfigMatch
    cycle: Optional[EmbeddedCycle] = None

    def to_json(self):
        data = {"name": self.name, "match": self.match.to_json()}
        if self.cycle is not None:
            data["cycle"] = self.cycle.to_json()
        return data


def wheel_cycle_hits(g: PlaneGraph) -> List[ForbiddenHit]:
    """
    Wheels (as plain subgraphs) sharing exactly one edge with a cycle of
    length at most 6; one hit per wheel, with the first such cycle.
    """
    wheels = find_matches(g, ConfigPattern(PatternKind.W5), enforce_faces=False)
    if not wheels:
        return []
    cycles = enumerate_cycles(g, 6)
    hits = []
    for wheel in wheels:
        edges = match_edges(wheel)
        for cycle in cycles:
            if len(cycle.edge_set & edges) == 1:
                hits.append(ForbiddenHit(WHEEL_WITH_CYCLE, wheel, cycle))
                break
    return hits


def forbidden_scan(g: PlaneGraph) -> List[ForbiddenHit]:
    hits = []
    for name in FORBIDDEN_NAMES:
        pattern = parse_pattern(name)
        hits.extend(ForbiddenHit(name, m) for m in find_matches(g, pattern))
    hits.extend(wheel_cycle_hits(g))
    return hits
