"""
Corpus generators.

Specs are JSON documents::

    {"generator": "random_planar", "parameters": {"n": 30, "seed": 7}, "filter": "in_family_A"}
"""
import itertools
import json
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .catalog import ARITY, ConfigPattern, PatternKind, build_pattern, parse_pattern
from .conf import get_setting
from .cycles import find_family_a_witness
from .exceptions import BadParameters, BadSpec
from .plane_graph import PlaneGraph, build_from_rotation, designate_outer

logger = logging.getLogger(__name__)

PATTERN_FAMILY = "pattern_family"
RANDOM_PLANAR = "random_planar"
EXHAUSTIVE_SMALL = "exhaustive_small"
GENERATORS = (PATTERN_FAMILY, RANDOM_PLANAR, EXHAUSTIVE_SMALL)

FILTER_NONE = "none"
FILTER_FAMILY_A = "in_family_A"
FILTERS = (FILTER_NONE, FILTER_FAMILY_A)

ATLAS_MAX_VERTICES = 7


@dataclass(frozen=True)
class CorpusSpec:
    generator: str
    parameters: Dict = field(default_factory=dict)
    filter: str = FILTER_NONE

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise BadSpec("unknown generator {!r}; expected one of {}".format(self.generator, ", ".join(GENERATORS)))
        if self.filter not in FILTERS:
            raise BadSpec("unknown filter {!r}; expected one of {}".format(self.filter, ", ".join(FILTERS)))
        if not isinstance(self.parameters, dict):
            raise BadSpec("parameters must be an object")

    @classmethod
    def from_json(cls, data) -> "CorpusSpec":
        if not isinstance(data, dict) or "generator" not in data:
            raise BadSpec("a corpus spec is an object with a 'generator' key")
        unknown = set(data) - {"generator", "parameters", "filter"}
        if unknown:
            raise BadSpec("unknown keys {}".format(sorted(unknown)))
        return cls(data["generator"], data.get("parameters") or {}, data.get("filter") or FILTER_NONE)

    @classmethod
    def load(cls, path) -> "CorpusSpec":
        try:
            with open(path, encoding="utf-8") as fp:
                data = json.load(fp)
        except (OSError, ValueError) as exc:
            raise BadSpec("cannot read {}: {}".format(path, exc))
        return cls.from_json(data)

    def to_json(self):
        return {"generator": self.generator, "parameters": dict(self.parameters), "filter": self.filter}


def _int_param(parameters, name, default=None, low=None, high=None) -> int:
    value = parameters.get(name, default)
    if value is None:
        raise BadSpec("missing parameter {!r}".format(name))
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise BadSpec("parameter {!r} must be an integer".format(name))
    if low is not None and value < low:
        raise BadSpec("parameter {!r} must be at least {}".format(name, low))
    if high is not None and value > high:
        raise BadSpec("parameter {!r} must be at most {}".format(name, high))
    return value


def first_triangle(g: PlaneGraph) -> PlaneGraph:
    """
    Designate the first traced 3-face bounded by a cycle, if any.
    """
    for face in g.faces:
        if face.degree == 3 and face.boundary_is_cycle:
            return g.with_outer_face(face.id)
    return g


# Pattern families

def pattern_family(kind: str, low: int = 3, high: int = 5, names=None) -> List[PlaneGraph]:
    """
    Configurations of ``kind`` with every cycle length in ``low..high``, or
    the explicitly ``names``-ed ones.
    """
    if names:
        patterns = [parse_pattern(name) for name in names]
    else:
        try:
            kind = PatternKind(kind)
        except ValueError:
            raise BadSpec("unknown pattern kind {!r}".format(kind))
        if kind in ARITY:
            if not 3 <= low <= high:
                raise BadSpec("need 3 <= low <= high")
            patterns = [
                ConfigPattern(kind, parameters)
                for parameters in itertools.product(range(low, high + 1), repeat=ARITY[kind])
            ]
        else:
            patterns = [ConfigPattern(kind)]
    try:
        return [build_pattern(p) for p in patterns]
    except BadParameters as exc:
        raise BadSpec(str(exc))


# Random triangulations

class _Triangulation:
    """
    Stacked triangulation on vertices 0..n-1 with outer triangle 0, 1, 2.
    Bounded faces are kept as walks.
    """

    def __init__(self):
        self.rotation = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
        self.faces = [(0, 1, 2)]

    def stack(self, face_index: int):
        a, b, c = self.faces.pop(face_index)
        x = len(self.rotation)
        for vertex, after in ((a, b), (b, c), (c, a)):
            row = self.rotation[vertex]
            row.insert(row.index(after) + 1, x)
        self.rotation[x] = [a, b, c]
        self.faces.extend([(a, b, x), (b, c, x), (c, a, x)])

    def _face_with(self, u, v) -> Optional[int]:
        for index, face in enumerate(self.faces):
            for i in range(3):
                if face[i] == u and face[(i + 1) % 3] == v:
                    return index
        return None

    def flip(self, rng: random.Random) -> bool:
        index = rng.randrange(len(self.faces))
        face = self.faces[index]
        i = rng.randrange(3)
        u, v, a = face[i], face[(i + 1) % 3], face[(i + 2) % 3]
        other = self._face_with(v, u)
        if other is None:
            return False
        b = next(w for w in self.faces[other] if w not in (u, v))
        if a == b or b in self.rotation[a] or len(self.rotation[u]) <= 3 or len(self.rotation[v]) <= 3:
            return False

        self.rotation[u].remove(v)
        self.rotation[v].remove(u)
        row = self.rotation[a]
        row.insert(row.index(u) + 1, b)
        row = self.rotation[b]
        row.insert(row.index(v) + 1, a)
        for j in sorted((index, other), reverse=True):
            self.faces.pop(j)
        self.faces.extend([(u, b, a), (v, a, b)])
        return True


def random_planar(
    n: int,
    seed: int = 0,
    flips: int = None,
    deletions: int = 0,
    rng: random.Random = None,
) -> PlaneGraph:
    """
    Seeded stacked triangulation on ``n`` vertices, mixed by random edge
    flips and thinned by edge deletions that keep the graph connected and
    the outer triangle 0, 1, 2 in place.
    """
    if n < 3:
        raise BadSpec("random_planar needs n >= 3")
    rng = rng or random.Random(seed)
    t = _Triangulation()
    while len(t.rotation) < n:
        t.stack(rng.randrange(len(t.faces)))
    for _ in range(n if flips is None else flips):
        t.flip(rng)

    rotation = t.rotation
    if deletions:
        outer = {frozenset(e) for e in ((0, 1), (1, 2), (2, 0))}
        graph = nx.Graph((v, w) for v, row in rotation.items() for w in row)
        candidates = sorted(tuple(sorted(e)) for e in graph.edges if frozenset(e) not in outer)
        rng.shuffle(candidates)
        removed = 0
        for u, v in candidates:
            if removed >= deletions:
                break
            graph.remove_edge(u, v)
            if nx.is_connected(graph):
                rotation[u].remove(v)
                rotation[v].remove(u)
                removed += 1
            else:
                graph.add_edge(u, v)

    g = build_from_rotation({v: rotation[v] for v in range(n)})
    return designate_outer(g, (0, 1, 2))


# Exhaustive small graphs

def _bfs_code(rotation: Mapping[int, Sequence[int]], root: int, first: int) -> Tuple[int, ...]:
    number = {root: 0}
    queue = deque([(root, first)])
    code = []
    while queue:
        v, start = queue.popleft()
        row = list(rotation[v])
        i = row.index(start)
        for w in row[i:] + row[:i]:
            if w not in number:
                number[w] = len(number)
                queue.append((w, v))
            code.append(number[w])
        code.append(-1)
    return tuple(code)


def embedding_code(rotation: Mapping[int, Sequence[int]]) -> Tuple[int, ...]:
    """
    Canonical code of a connected plane graph: the least breadth-first
    numbering over every starting dart in both orientations. Isomorphic and
    mirrored embeddings share a code.
    """
    codes = [
        _bfs_code(oriented, v, w)
        for oriented in (rotation, {v: tuple(reversed(row)) for v, row in rotation.items()})
        for v, row in oriented.items()
        for w in row
    ]
    return min(codes) if codes else ()


def _corners(rotation: Dict[int, List[int]]) -> List[List[Tuple[int, int]]]:
    """
    Corners of every face as (vertex, insertion index) in walk order.
    """
    seen = set()
    faces = []
    for v, row in rotation.items():
        for w in row:
            if (v, w) in seen:
                continue
            corners = []
            a, b = v, w
            while (a, b) not in seen:
                seen.add((a, b))
                i = rotation[b].index(a)
                corners.append((b, i))
                a, b = b, rotation[b][i - 1]
            faces.append(corners)
    return faces


def _edge_order(graph: nx.Graph) -> List[Tuple[int, int]]:
    # vertex by vertex in BFS order, each with its edges back to placed vertices
    root = min(graph.nodes)
    placed = [root]
    order = []
    for _, v in nx.bfs_edges(graph, root):
        back = [u for u in placed if graph.has_edge(u, v)]
        order.extend((u, v) for u in back)
        placed.append(v)
    return order


def _insert(rotation, u, i, w, j=None):
    grown = {v: list(row) for v, row in rotation.items()}
    grown[u].insert(i, w)
    if j is None:
        grown[w] = [u]
    else:
        grown[w].insert(j, u)
    return grown


def _grow(rotation, edges, k):
    if k == len(edges):
        yield rotation
        return
    u, w = edges[k]
    if w not in rotation:
        for i in range(max(len(rotation[u]), 1)):
            yield from _grow(_insert(rotation, u, i, w), edges, k + 1)
        return
    for corners in _corners(rotation):
        at_u = [i for v, i in corners if v == u]
        at_w = [j for v, j in corners if v == w]
        for i in at_u:
            for j in at_w:
                yield from _grow(_insert(rotation, u, i, w, j), edges, k + 1)


def _three_connected(graph: nx.Graph) -> bool:
    return min(d for _, d in graph.degree) >= 3 and nx.node_connectivity(graph) >= 3


def plane_embeddings(graph: nx.Graph) -> List[Dict[int, List[int]]]:
    """
    Clockwise rotation systems of a connected planar graph, one per class of
    isomorphic or mirrored embeddings.

    3-connected graphs have a single class. Otherwise every rotation system is
    grown edge by edge, a new edge going into a corner pair of a common face.
    """
    if graph.number_of_nodes() <= 3 or _three_connected(graph):
        planar, embedding = nx.check_planarity(graph)
        if not planar:
            return []
        data = embedding.get_data()
        return [{v: list(data.get(v, [])) for v in sorted(graph.nodes)}]

    seen = set()
    result = []
    for rotation in _grow({min(graph.nodes): []}, _edge_order(graph), 0):
        code = embedding_code(rotation)
        if code not in seen:
            seen.add(code)
            result.append({v: rotation[v] for v in sorted(rotation)})
    return result


def _connected_planar(graph: nx.Graph) -> bool:
    return (
        graph.number_of_nodes() > 0
        and nx.is_connected(graph)
        and nx.check_planarity(graph)[0]
    )


def _atlas(max_vertices: int) -> Dict[int, List[nx.Graph]]:
    by_size = {}
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n > max_vertices:
            break
        if _connected_planar(graph):
            by_size.setdefault(n, []).append(nx.convert_node_labels_to_integers(graph))
    return by_size


def _extend(graphs: List[nx.Graph]) -> List[nx.Graph]:
    """
    Connected planar graphs with one more vertex, one per isomorphism class.
    """
    buckets: Dict[str, List[nx.Graph]] = {}
    result = []
    for graph in graphs:
        n = graph.number_of_nodes()
        for size in range(1, n + 1):
            for neighbours in itertools.combinations(range(n), size):
                bigger = graph.copy()
                bigger.add_edges_from((n, w) for w in neighbours)
                if not nx.check_planarity(bigger)[0]:
                    continue
                key = nx.weisfeiler_lehman_graph_hash(bigger)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(bigger, other) for other in bucket):
                    continue
                bucket.append(bigger)
                result.append(bigger)
    return result


def exhaustive_graphs(max_vertices: int, min_vertices: int = 1) -> Iterator[nx.Graph]:
    """
    Connected planar graphs on min..max vertices, one per isomorphism class.
    """
    by_size = _atlas(min(max_vertices, ATLAS_MAX_VERTICES))
    for n in range(min_vertices, min(max_vertices, ATLAS_MAX_VERTICES) + 1):
        yield from by_size.get(n, [])
    previous = by_size.get(ATLAS_MAX_VERTICES, [])
    for n in range(ATLAS_MAX_VERTICES + 1, max_vertices + 1):
        previous = _extend(previous)
        logger.info("exhaustive corpus: %d graphs on %d vertices", len(previous), n)
        if n >= min_vertices:
            yield from previous


def exhaustive_small(max_vertices: int, min_vertices: int = 1) -> List[PlaneGraph]:
    cap = get_setting("EXHAUSTIVE_MAX_VERTICES")
    if not 1 <= max_vertices <= cap:
        raise BadSpec("exhaustive_small takes 1..{} vertices".format(cap))
    return [
        first_triangle(build_from_rotation(rotation))
        for graph in exhaustive_graphs(max_vertices, min_vertices)
        for rotation in plane_embeddings(graph)
    ]


# Dispatch

def _generate(spec: CorpusSpec) -> List[PlaneGraph]:
    p = spec.parameters
    if spec.generator == PATTERN_FAMILY:
        return pattern_family(
            p.get("kind", "C2"),
            low=_int_param(p, "low", 3, low=3),
            high=_int_param(p, "high", 5, low=3),
            names=p.get("names"),
        )
    if spec.generator == RANDOM_PLANAR:
        count = _int_param(p, "count", 1, low=1)
        rng = random.Random(_int_param(p, "seed", 0))
        n = _int_param(p, "n", low=3)
        flips = p.get("flips")
        deletions = _int_param(p, "deletions", 0, low=0)
        return [
            random_planar(n, flips=None if flips is None else int(flips), deletions=deletions, rng=rng)
            for _ in range(count)
        ]
    return exhaustive_small(
        _int_param(p, "n", low=1),
        min_vertices=_int_param(p, "min_n", 1, low=1),
    )


def generate(spec: CorpusSpec) -> List[PlaneGraph]:
    graphs = _generate(spec)
    if spec.filter == FILTER_FAMILY_A:
        graphs = [g for g in graphs if find_family_a_witness(g) is None]
    logger.info("%s corpus: %d graphs", spec.generator, len(graphs))
    return graphs


def corpus_family(family: str, params: Tuple[str, ...], seed: int = 0) -> CorpusSpec:
    """
    Spec for the ``dlab gen`` families: a pattern name, "random N [DELETIONS]"
    or "exhaustive N".
    """
    family = family.strip()
    if family == "random":
        if not params:
            raise BadSpec("random needs a vertex count")
        parameters = {"n": params[0], "seed": seed}
        if len(params) > 1:
            parameters["deletions"] = params[1]
        return CorpusSpec(RANDOM_PLANAR, parameters)
    if family == "exhaustive":
        if not params:
            raise BadSpec("exhaustive needs a vertex count")
        return CorpusSpec(EXHAUSTIVE_SMALL, {"n": params[0]})
    if family in ("W5", "F", "H"):
        return CorpusSpec(PATTERN_FAMILY, {"kind": family})
    if family in ("C2", "C3", "C4"):
        parameters = {"kind": family}
        if params:
            parameters["low"] = params[0]
            parameters["high"] = params[-1]
        return CorpusSpec(PATTERN_FAMILY, parameters)
    return CorpusSpec(PATTERN_FAMILY, {"names": [family] + list(params)})
