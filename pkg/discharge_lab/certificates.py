"""
Greedy counting certificates for reducible configurations.

A certificate colours the configuration vertex by vertex. Each vertex keeps
a lower bound on its remaining list (its profile bound minus the coloured
neighbours that could have taken one of its colours) and an upper bound
(its profile bound). A step is valid when the lower bound is positive.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .catalog import (
    H_ROTATION,
    ConfigPattern,
    PatternKind,
    build_pattern,
    chord_endpoints,
    fan_labels,
    parse_pattern,
)
from .coloring import W5_HUB, W5_PROFILE, W5_RIM, SizeProfile, w5_graph
from .exceptions import MalformedCertificate, UnknownVertex
from .plane_graph import PlaneGraph, from_named_rotation


@dataclass(frozen=True)
class Save:
    """
    Colour the vertex with a colour outside the lists of ``protects``.
    """
    protects: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "protects", tuple(self.protects))


@dataclass(frozen=True)
class CoverSplit:
    """
    Two-case colouring of a vertex whose list is at least as long as the
    lists of ``cover`` together and longer than the list of ``guard``.
    Either some colour misses both covered lists (branch "free") or the list
    is their disjoint union and a colour outside the guard's list lies in
    exactly one of them (branch named by that covered vertex).
    """
    cover: Tuple[str, str]
    guard: str
    branches: Tuple[Tuple[str, "ReducibilityCertificate"], ...]

    def __post_init__(self):
        object.__setattr__(self, "cover", tuple(self.cover))
        branches = self.branches.items() if isinstance(self.branches, dict) else self.branches
        object.__setattr__(self, "branches", tuple(branches))


Move = Union[Save, CoverSplit]


@dataclass(frozen=True)
class ReducibilityCertificate:
    order: Tuple[str, ...]
    special_moves: Tuple[Tuple[str, Move], ...] = ()
    finish_cycle: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        moves = self.special_moves.items() if isinstance(self.special_moves, dict) else self.special_moves
        object.__setattr__(self, "special_moves", tuple(moves))
        if self.finish_cycle is not None:
            object.__setattr__(self, "finish_cycle", tuple(self.finish_cycle))


@dataclass(frozen=True)
class TraceStep:
    branch: str
    vertex: str
    move: str
    slack: int

    def to_json(self):
        return {"branch": self.branch, "vertex": self.vertex, "move": self.move, "slack": self.slack}


@dataclass
class _State:
    lower: Dict[int, int]
    upper: Dict[int, int]
    colored: set = field(default_factory=set)

    def copy(self) -> "_State":
        return _State(dict(self.lower), dict(self.upper), set(self.colored))


class _Checker:
    def __init__(self, config: PlaneGraph, profile: SizeProfile):
        self.g = config
        self.profile = profile.as_dict()
        missing = [v for v in range(config.vertex_count) if v not in self.profile]
        if missing:
            raise MalformedCertificate("profile misses vertices {}".format(missing))
        self.trace: List[TraceStep] = []

    def resolve(self, name) -> int:
        try:
            return self.g.vertex(name)
        except UnknownVertex:
            raise MalformedCertificate("unknown vertex {!r}".format(name))

    def color(self, state: _State, x: int, protects=()):
        for w in self.g.rotation(x):
            if w not in state.colored and w not in protects:
                state.lower[w] -= 1
        state.colored.add(x)

    def step(self, branch, name, move, slack) -> bool:
        self.trace.append(TraceStep(branch, name, move, slack))
        return slack >= 0

    def protected(self, state, x, names):
        result = []
        for name in names:
            p = self.resolve(name)
            if p in state.colored or not self.g.has_edge(x, p):
                raise MalformedCertificate("{} cannot protect {}".format(self.g.label(x), name))
            result.append(p)
        return result

    def run(self, cert: ReducibilityCertificate, state: _State, branch: str = "") -> bool:
        moves = dict(cert.special_moves)
        stray = set(moves) - set(cert.order)
        if stray:
            raise MalformedCertificate("moves for vertices outside the order: {}".format(sorted(stray)))

        for i, name in enumerate(cert.order):
            x = self.resolve(name)
            if x in state.colored:
                raise MalformedCertificate("{} is coloured twice".format(name))
            move = moves.get(name)

            if isinstance(move, CoverSplit):
                if i != len(cert.order) - 1:
                    raise MalformedCertificate("a split must be the last step of its order")
                return self.split(state, x, name, move, branch)

            if isinstance(move, Save):
                protects = self.protected(state, x, move.protects)
                slack = state.lower[x] - sum(state.upper[p] for p in protects) - 1
                label = "save({})".format(",".join(move.protects))
            else:
                protects = []
                slack = state.lower[x] - 1
                label = "greedy"
            if not self.step(branch, name, label, slack):
                return False
            self.color(state, x, protects)

        return self.finish(cert, state, branch)

    def split(self, state, x, name, move: CoverSplit, branch) -> bool:
        y, z = self.protected(state, x, move.cover)
        (w,) = self.protected(state, x, (move.guard,))
        slack = min(
            state.lower[x] - state.upper[y] - state.upper[z],
            state.lower[x] - state.upper[w] - 1,
        )
        if not self.step(branch, name, "split", slack):
            return False

        y_name, z_name = move.cover
        protects = {"free": (y, z), y_name: (z, w), z_name: (y, w)}
        branches = dict(move.branches)
        if set(branches) != set(protects):
            raise MalformedCertificate(
                "split branches must be {}".format(sorted(protects))
            )
        ok = True
        for key in ("free", y_name, z_name):
            child = state.copy()
            self.color(child, x, protects[key])
            ok = self.run(branches[key], child, "{}/{}".format(branch, key) if branch else key) and ok
        return ok

    def finish(self, cert, state, branch) -> bool:
        remaining = {v for v in range(self.g.vertex_count) if v not in state.colored}
        if cert.finish_cycle is None:
            if remaining:
                names = sorted(self.g.label(v) for v in remaining)
                raise MalformedCertificate("order leaves {} uncoloured".format(names))
            return True

        cycle = [self.resolve(name) for name in cert.finish_cycle]
        if set(cycle) != remaining or len(cycle) != len(remaining):
            raise MalformedCertificate("finishing cycle must be exactly the uncoloured vertices")
        n = len(cycle)
        edges = {frozenset((cycle[i], cycle[(i + 1) % n])) for i in range(n)}
        induced = {frozenset((a, b)) for a in cycle for b in self.g.rotation(a) if b in remaining}
        if n < 3 or induced != edges:
            raise MalformedCertificate("{} is not an induced cycle".format(list(cert.finish_cycle)))
        slack = min(state.lower[v] for v in cycle) - 2
        if n % 2:
            slack = min(slack, -1)
        return self.step(branch, "+".join(cert.finish_cycle), "even-cycle", slack)


def trace_certificate(
    config: PlaneGraph, profile: SizeProfile, cert: ReducibilityCertificate
) -> Tuple[bool, List[TraceStep]]:
    """
    Run the counting argument; returns the verdict and the slack of every
    step taken. A step with negative slack stops its branch.
    """
    checker = _Checker(config, profile)
    bounds = checker.profile
    state = _State(lower=dict(bounds), upper=dict(bounds))
    ok = checker.run(cert, state)
    return ok, checker.trace


def check_certificate(config: PlaneGraph, profile: SizeProfile, cert: ReducibilityCertificate) -> bool:
    return trace_certificate(config, profile, cert)[0]


# Named certificates

def fan_profile(pattern: ConfigPattern) -> SizeProfile:
    """
    Hub 3, chord endpoints 3, every other vertex 2.
    """
    g = build_pattern(pattern)
    labels = fan_labels(pattern.parameters)
    threes = {labels[0]} | {labels[a - 1] for a in chord_endpoints(pattern.parameters)}
    return SizeProfile.from_mapping({label: 3 if label in threes else 2 for label in labels}, g)


def fan_certificate(pattern: ConfigPattern) -> Tuple[PlaneGraph, SizeProfile, ReducibilityCertificate]:
    if pattern.kind not in (PatternKind.C2, PatternKind.C3, PatternKind.C4):
        raise MalformedCertificate("{} is not a fan".format(pattern.name))
    labels = fan_labels(pattern.parameters)
    cert = ReducibilityCertificate(
        order=labels,
        special_moves={labels[0]: Save((labels[-1],))},
    )
    return build_pattern(pattern), fan_profile(pattern), cert


H_PROFILE = {"s": 4, "u": 3, "v": 2, "r": 2, "w": 2, "t": 2, "y": 2}


def h_certificate() -> Tuple[PlaneGraph, SizeProfile, ReducibilityCertificate]:
    g = from_named_rotation(H_ROTATION)
    cert = ReducibilityCertificate(
        order=("u", "v", "r", "w", "t", "s", "y"),
        special_moves={"u": Save(("y",))},
    )
    return g, SizeProfile.from_mapping(H_PROFILE, g), cert


def w5_certificate() -> Tuple[PlaneGraph, SizeProfile, ReducibilityCertificate]:
    w, x, y, z = W5_RIM
    g = w5_graph()
    cert = ReducibilityCertificate(
        order=(W5_HUB,),
        special_moves={
            W5_HUB: CoverSplit(
                cover=(y, z),
                guard=w,
                branches={
                    "free": ReducibilityCertificate(order=(), finish_cycle=(w, x, y, z)),
                    y: ReducibilityCertificate(order=(y, x, z, w)),
                    z: ReducibilityCertificate(order=(z, y, x, w)),
                },
            )
        },
    )
    return g, SizeProfile.from_mapping(W5_PROFILE, g), cert


def named_certificate(name: str):
    """
    (config, profile, certificate) for "H", "W5" or a fan name.
    """
    pattern = parse_pattern(name)
    if pattern.kind is PatternKind.H:
        return h_certificate()
    if pattern.kind is PatternKind.W5:
        return w5_certificate()
    return fan_certificate(pattern)
