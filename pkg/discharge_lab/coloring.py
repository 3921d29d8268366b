"""
List colouring: an exact solver and exhaustive reducibility checks.

An assignment of lists is determined, up to renaming colours, by the
multiset of its colour supports (the set of vertices whose list holds a
given colour). Exhaustive checks enumerate those multisets instead of
concrete palettes.
"""
import itertools
import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .catalog import build_wheel
from .conf import get_setting
from .cycles import in_family_a
from .exceptions import BadParameters, MissingOuterFace, PinConflict, SearchBudgetExceeded
from .formats import graph_id, write_lists, write_plg
from .helpers import artifact_dir, dump_artifact
from .plane_graph import PlaneGraph

logger = logging.getLogger(__name__)


def adjacency(g) -> Dict[int, FrozenSet[int]]:
    """
    Neighbour sets of a PlaneGraph or a networkx graph.
    """
    if isinstance(g, PlaneGraph):
        return {v: frozenset(g.rotation(v)) for v in range(g.vertex_count)}
    return {v: frozenset(g.neighbors(v)) for v in g.nodes}


class ListAssignment(Mapping):
    def __init__(self, lists: Mapping):
        self._lists = {v: frozenset(colors) for v, colors in lists.items()}

    def __getitem__(self, v) -> FrozenSet[int]:
        return self._lists[v]

    def __iter__(self):
        return iter(sorted(self._lists))

    def __len__(self):
        return len(self._lists)

    def __repr__(self):
        return "<ListAssignment {}>".format({v: sorted(c) for v, c in sorted(self._lists.items())})

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._lists) == {v: frozenset(c) for v, c in other.items()}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._lists.items()))

    def sizes(self) -> Dict[int, int]:
        return {v: len(colors) for v, colors in self._lists.items()}

    def is_k_assignment(self, k: int) -> bool:
        return all(len(colors) == k for colors in self._lists.values())

    def palette(self) -> FrozenSet[int]:
        return frozenset().union(*self._lists.values()) if self._lists else frozenset()

    def to_text(self, pins: Optional[Mapping] = None) -> str:
        return write_lists(self._lists, pins)

    def to_json(self):
        return {str(v): sorted(colors) for v, colors in sorted(self._lists.items())}


class Coloring(Mapping):
    def __init__(self, colors: Mapping):
        self._colors = dict(colors)

    def __getitem__(self, v) -> int:
        return self._colors[v]

    def __iter__(self):
        return iter(sorted(self._colors))

    def __len__(self):
        return len(self._colors)

    def __repr__(self):
        return "<Coloring {}>".format(dict(sorted(self._colors.items())))

    def is_proper(self, g) -> bool:
        adj = adjacency(g)
        return all(
            self._colors[v] != self._colors[w]
            for v in self._colors
            for w in adj[v]
            if w in self._colors
        )

    def within(self, lists: Mapping) -> bool:
        return all(color in lists[v] for v, color in self._colors.items())

    def to_json(self):
        return {str(v): color for v, color in sorted(self._colors.items())}


@dataclass(frozen=True)
class SizeProfile:
    bounds: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for v, bound in self.bounds:
            if bound < 1:
                raise BadParameters("SizeProfile", (v, bound), "bounds must be at least 1")

    @classmethod
    def from_mapping(cls, bounds: Mapping, g: PlaneGraph = None) -> "SizeProfile":
        """
        Build from ``vertex -> bound``; vertex names are resolved through ``g``.
        """
        items = ((g.vertex(v) if g is not None else v, int(b)) for v, b in bounds.items())
        return cls(tuple(sorted(items)))

    @classmethod
    def uniform(cls, g: PlaneGraph, bound: int) -> "SizeProfile":
        return cls(tuple((v, bound) for v in range(g.vertex_count)))

    def __getitem__(self, v) -> int:
        return dict(self.bounds)[v]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.bounds)

    def to_json(self):
        return {str(v): b for v, b in self.bounds}


# Solving

def _check_pins(adj, lists, pins):
    for v, color in pins.items():
        if v not in adj:
            raise PinConflict(v, color, "not a vertex of the graph")
        if color not in lists[v]:
            raise PinConflict(v, color, "colour is not in the list")
        for w in adj[v]:
            if pins.get(w) == color:
                raise PinConflict(v, color, "neighbour {} has the same colour".format(w))


def _lists_for(adj, lists) -> Dict[int, FrozenSet[int]]:
    missing = sorted(v for v in adj if v not in lists)
    if missing:
        raise BadParameters("ListAssignment", tuple(missing), "vertices without a list")
    return {v: frozenset(lists[v]) for v in adj}


def solve(g, lists: Mapping, pins: Mapping = None, node_cap: int = None) -> Optional[Coloring]:
    """
    A proper colouring from the lists extending ``pins``, or None when none
    exists. The search is complete.
    """
    adj = adjacency(g)
    lists = _lists_for(adj, lists)
    pins = dict(pins or {})
    _check_pins(adj, lists, pins)
    node_cap = node_cap or get_setting("SEARCH_NODE_CAP")

    domains = {v: ({pins[v]} if v in pins else set(lists[v])) for v in adj}
    for v, color in pins.items():
        for w in adj[v]:
            if w not in pins:
                domains[w].discard(color)
    if any(not domain for domain in domains.values()):
        return None

    assigned = dict(pins)
    nodes = [0]

    def search(domains):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise SearchBudgetExceeded(nodes[0], node_cap)
        free = [v for v in domains if v not in assigned]
        if not free:
            return True
        v = min(free, key=lambda x: (len(domains[x]), x))
        for color in sorted(domains[v]):
            touched = [w for w in adj[v] if w not in assigned and color in domains[w]]
            if any(len(domains[w]) == 1 for w in touched):
                continue
            child = dict(domains)
            for w in touched:
                child[w] = domains[w] - {color}
            child[v] = {color}
            assigned[v] = color
            if search(child):
                return True
            del assigned[v]
        return False

    if not search(domains):
        return None
    return Coloring(assigned)


def brute_force_solve(g, lists: Mapping, pins: Mapping = None) -> Optional[Coloring]:
    """
    First proper colouring in product order over all choice functions.
    """
    adj = adjacency(g)
    lists = _lists_for(adj, lists)
    pins = dict(pins or {})
    _check_pins(adj, lists, pins)
    vertices = sorted(adj)
    choices = [[pins[v]] if v in pins else sorted(lists[v]) for v in vertices]
    for combo in itertools.product(*choices):
        coloring = dict(zip(vertices, combo))
        if all(coloring[v] != coloring[w] for v in vertices for w in adj[v]):
            return Coloring(coloring)
    return None


def residual(g, part: Iterable[int], phi: Mapping, lists: Mapping) -> ListAssignment:
    """
    Lists on ``part`` minus the colours ``phi`` uses on outside neighbours.
    """
    adj = adjacency(g)
    part = set(part)
    return ListAssignment(
        {
            v: frozenset(lists[v]) - {phi[w] for w in adj[v] if w not in part and w in phi}
            for v in sorted(part)
        }
    )


# Assignments up to renaming

Support = Tuple[int, ...]


def supports_of(lists: Mapping) -> List[Support]:
    by_color = {}
    for v, colors in lists.items():
        for color in colors:
            by_color.setdefault(color, []).append(v)
    return [tuple(sorted(vs)) for _, vs in sorted(by_color.items())]


def assignment_descriptor(lists: Mapping, graph=None) -> Tuple[Support, ...]:
    """
    Renaming-invariant form of an assignment: its sorted colour supports.
    With ``graph`` each support is split into its connected pieces.
    """
    supports = supports_of(lists)
    if graph is not None:
        adj = adjacency(graph)
        pieces = []
        for support in supports:
            sub = nx.Graph()
            sub.add_nodes_from(support)
            sub.add_edges_from((v, w) for v in support for w in adj[v] if w in sub)
            pieces.extend(tuple(sorted(c)) for c in nx.connected_components(sub))
        supports = pieces
    return tuple(sorted(supports))


def lists_from_supports(supports: Sequence[Support]) -> ListAssignment:
    lists = {}
    for color, support in enumerate(supports, start=1):
        for v in support:
            lists.setdefault(v, set()).add(color)
    return ListAssignment(lists)


def connected_supports(adj: Mapping, vertices: Sequence[int], min_size: int = 1) -> List[Support]:
    """
    Vertex sets of ``vertices`` inducing connected subgraphs.
    """
    vertices = sorted(vertices)
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from((v, w) for v in vertices for w in adj[v] if w in graph)
    found = []
    for mask in range(1, 1 << len(vertices)):
        subset = tuple(v for i, v in enumerate(vertices) if mask >> i & 1)
        if len(subset) >= min_size and nx.is_connected(graph.subgraph(subset)):
            found.append(subset)
    found.sort(key=lambda s: (len(s), s))
    return found


def support_multisets(
    demand: Mapping[int, int],
    candidates: Sequence[Support],
    max_supports: int = None,
    budget: "_Budget" = None,
) -> Iterator[Tuple[Support, ...]]:
    """
    Every multiset of candidate supports covering each vertex ``v`` exactly
    ``demand[v]`` times, each multiset once.
    """
    containing = {}
    for support in sorted(candidates):
        for v in support:
            containing.setdefault(v, []).append(support)
    remaining = dict(demand)
    chosen = []

    def walk(pivot, floor):
        if budget is not None:
            budget.tick()
        open_ = [v for v in sorted(remaining) if remaining[v] > 0]
        if not open_:
            yield tuple(chosen)
            return
        if max_supports is not None and len(chosen) >= max_supports:
            return
        v = open_[0]
        if v != pivot:
            floor = None
        for support in containing.get(v, ()):
            if floor is not None and support < floor:
                continue
            if any(remaining[w] == 0 for w in support):
                continue
            for w in support:
                remaining[w] -= 1
            chosen.append(support)
            yield from walk(v, support)
            chosen.pop()
            for w in support:
                remaining[w] += 1

    yield from walk(None, None)


class _Budget:
    def __init__(self, cap: int = None):
        self.cap = cap or get_setting("SEARCH_NODE_CAP")
        self.nodes = 0

    def tick(self, count: int = 1):
        self.nodes += count
        if self.nodes > self.cap:
            raise SearchBudgetExceeded(self.nodes, self.cap)


# Cycles with 2-lists

def _dihedral_images(n: int):
    for shift in range(n):
        yield lambda v, s=shift: (v + s) % n
        yield lambda v, s=shift: (s - v) % n


def canonical_cycle_descriptor(n: int, supports: Sequence[Support]) -> Tuple[Support, ...]:
    return min(
        tuple(sorted(tuple(sorted(image(v) for v in support)) for support in supports))
        for image in _dihedral_images(n)
    )


@dataclass(frozen=True)
class Lemma21Result:
    n: int
    classes: int
    failing: Tuple[Tuple[Support, ...], ...]
    counterexample: Optional[ListAssignment]

    @property
    def verified(self) -> bool:
        return self.counterexample is None

    def to_json(self):
        return {
            "n": self.n,
            "classes": self.classes,
            "failing": [[list(s) for s in d] for d in self.failing],
            "verified": self.verified,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
        }


def cycle_two_assignments(n: int, budget: _Budget = None) -> Iterator[Tuple[Support, ...]]:
    """
    Every 2-assignment of the n-cycle up to renaming colours.
    """
    vertices = list(range(n))
    candidates = [
        tuple(v for i, v in enumerate(vertices) if mask >> i & 1) for mask in range(1, 1 << n)
    ]
    return support_multisets({v: 2 for v in vertices}, candidates, budget=budget)


def lemma21_oracle(n: int, node_cap: int = None) -> Lemma21Result:
    """
    Check on every 2-assignment of C_n, up to renaming and symmetry, that it is
    colourable exactly when n is even or the lists are not all equal.
    """
    if not 3 <= n <= 8:
        raise BadParameters("lemma21_oracle", (n,), "n must lie in 3..8")
    budget = _Budget(node_cap)
    cycle = nx.cycle_graph(n)
    everyone = tuple(range(n))
    seen = set()
    failing = []
    counterexample = None
    for supports in cycle_two_assignments(n, budget):
        key = canonical_cycle_descriptor(n, supports)
        if key in seen:
            continue
        seen.add(key)
        lists = lists_from_supports(key)
        colorable = solve(cycle, lists, node_cap=budget.cap) is not None
        all_equal = list(key) == [everyone, everyone]
        if not colorable:
            failing.append(key)
        if colorable != (n % 2 == 0 or not all_equal) and counterexample is None:
            counterexample = lists
    logger.debug("C%d: %d classes of 2-assignments, %d not colourable", n, len(seen), len(failing))
    return Lemma21Result(n=n, classes=len(seen), failing=tuple(failing), counterexample=counterexample)


# Reducibility

@dataclass(frozen=True)
class ReducibilityResult:
    verified: bool
    counterexample: Optional[ListAssignment] = None
    classes_checked: int = 0

    def to_json(self):
        return {
            "verified": self.verified,
            "classes_checked": self.classes_checked,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
        }


class _Reducer:
    def __init__(self, adj, bounds, palette_cap, budget):
        self.adj = adj
        self.bounds = bounds
        self.palette_cap = palette_cap
        self.budget = budget
        self.memo = {}
        self.classes = 0

    def lift(self, lists: Dict[int, FrozenSet[int]], v: int) -> Dict[int, FrozenSet[int]]:
        top = max((max(c) for c in lists.values() if c), default=0)
        lifted = dict(lists)
        lifted[v] = frozenset(range(top + 1, top + 1 + self.bounds[v]))
        return lifted

    def verify(self, part: FrozenSet[int]) -> Optional[Dict[int, FrozenSet[int]]]:
        """
        None when every assignment on ``part`` is colourable, else a failing one.
        """
        if part in self.memo:
            return self.memo[part]
        result = self._verify(part)
        self.memo[part] = result
        return result

    def _verify(self, part):
        if not part:
            return None
        degree = {v: len(self.adj[v] & part) for v in part}
        for v in sorted(part):
            if self.bounds[v] > degree[v]:
                failing = self.verify(part - {v})
                return None if failing is None else self.lift(failing, v)

        for v in sorted(part):
            failing = self.verify(part - {v})
            if failing is not None:
                return self.lift(failing, v)

        sub = {v: self.adj[v] & part for v in part}
        candidates = connected_supports(sub, sorted(part), min_size=2)
        demand = {v: self.bounds[v] for v in part}
        for supports in support_multisets(demand, candidates, self.palette_cap, self.budget):
            self.classes += 1
            lists = lists_from_supports(supports)
            if solve(sub, lists, node_cap=self.budget.cap) is None:
                return dict(lists)
        return None


def verify_reducible(
    config,
    profile: SizeProfile,
    palette_cap: int = None,
    node_cap: int = None,
) -> ReducibilityResult:
    """
    Whether every assignment with ``|L(v)| = profile[v]`` colours ``config``.

    Assignments are taken up to renaming; ``palette_cap`` limits the number
    of distinct colours in the assignments considered.
    """
    adj = adjacency(config)
    bounds = profile.as_dict()
    missing = sorted(v for v in adj if v not in bounds)
    if missing:
        raise BadParameters("SizeProfile", tuple(missing), "vertices without a bound")
    reducer = _Reducer(adj, bounds, palette_cap, _Budget(node_cap))
    failing = reducer.verify(frozenset(adj))
    if failing is not None:
        failing = {v: frozenset(c) for v, c in failing.items()}
        return ReducibilityResult(False, ListAssignment(failing), reducer.classes)
    return ReducibilityResult(True, None, reducer.classes)


W5_HUB = "v"
W5_RIM = ("w", "x", "y", "z")
W5_PROFILE = {"v": 4, "w": 3, "x": 3, "y": 2, "z": 2}


def w5_graph() -> PlaneGraph:
    return build_wheel(W5_HUB, W5_RIM)


def verify_w5_reduction(profile: Mapping = None, node_cap: int = None) -> ReducibilityResult:
    """
    Reducibility of the wheel with hub v and rim w, x, y, z. ``profile``
    maps those names to list sizes and defaults to v:4, w:3, x:3, y:2, z:2.
    """
    g = w5_graph()
    bounds = dict(W5_PROFILE)
    bounds.update(profile or {})
    return verify_reducible(g, SizeProfile.from_mapping(bounds, g), node_cap=node_cap)


# Whole graphs

def extend_precolored_triangle(
    g: PlaneGraph,
    lists: Mapping,
    phi0: Mapping,
    family_a: bool = None,
) -> Optional[Coloring]:
    """
    Extend a colouring of the outer triangle. A failure on a graph of the
    class is written to ARTIFACT_DIR and logged as critical.
    """
    if g.outer_triangle is None:
        raise MissingOuterFace("extend_precolored_triangle")
    for v in g.outer_vertices:
        if v not in phi0:
            raise PinConflict(v, None, "outer vertex is not precoloured")
    for v in phi0:
        if v not in g.outer_vertices:
            raise PinConflict(v, phi0[v], "not an outer vertex")

    coloring = solve(g, lists, pins=phi0)
    if coloring is not None:
        return coloring

    if family_a is None:
        family_a = in_family_a(g) is True
    if family_a:
        name = graph_id(g)
        data = {
            "graph_id": name,
            "lists": ListAssignment(lists).to_json(),
            "precoloring": {str(v): c for v, c in sorted(phi0.items())},
        }
        directory = artifact_dir()
        if directory:
            dump_artifact(directory, name, write_plg(g), data)
        logger.critical("precoloured triangle does not extend on class graph %s: %s", name, data)
    return None


def random_assignment(g, k: int = 4, palette: int = None, rng: random.Random = None) -> ListAssignment:
    """
    Seeded random k-assignment from colours ``1..palette`` (default 2k).
    """
    rng = rng or random.Random(0)
    palette = palette or 2 * k
    colors = list(range(1, palette + 1))
    return ListAssignment({v: frozenset(rng.sample(colors, k)) for v in sorted(adjacency(g))})


def random_precoloring(g: PlaneGraph, lists: Mapping, rng: random.Random = None) -> Optional[Coloring]:
    """
    A random proper colouring of the outer triangle from the lists, or None.
    """
    rng = rng or random.Random(0)
    triangle = g.outer_triangle
    if triangle is None:
        raise MissingOuterFace("random_precoloring")
    vertices = triangle.vertices
    proper = [
        combo
        for combo in itertools.product(*(sorted(lists[v]) for v in vertices))
        if len(set(combo)) == 3
    ]
    if not proper:
        return None
    return Coloring(dict(zip(vertices, rng.choice(proper))))
