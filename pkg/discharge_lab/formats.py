"""
Flat-file formats.

PLG::

    # comment
    V 4
    R 0: 1 2 3
    R 1: 2 0 3
    ...
    O 0 1 2

List files::

    0: 1 2 3 4
    1: 1 2 3 4
    P 0 1
"""
import hashlib
from typing import Dict, Optional, Tuple

from .exceptions import PlgSyntaxError
from .plane_graph import PlaneGraph, build_from_rotation, designate_outer

LABEL_PREFIX = "# label "


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise PlgSyntaxError(lineno, "expected an integer, got {!r}".format(token))


def read_plg(text: str) -> PlaneGraph:
    vertex_count = None
    v_lineno = None
    rotation = {}
    outer = None
    labels = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(LABEL_PREFIX):
            parts = line[len(LABEL_PREFIX):].split(None, 1)
            if len(parts) == 2:
                labels[_int(parts[0], lineno)] = parts[1].strip()
            continue
        if not line or line.startswith("#"):
            continue

        tag, _, rest = line.partition(" ")
        if tag == "V":
            if vertex_count is not None:
                raise PlgSyntaxError(lineno, "duplicate V line")
            vertex_count = _int(rest.strip(), lineno)
            v_lineno = lineno
            if vertex_count < 1:
                raise PlgSyntaxError(lineno, "vertex count must be positive")
        elif tag == "R":
            head, sep, tail = rest.partition(":")
            if not sep:
                raise PlgSyntaxError(lineno, "R line needs ':'")
            v = _int(head.strip(), lineno)
            if v in rotation:
                raise PlgSyntaxError(lineno, "duplicate rotation for vertex {}".format(v))
            rotation[v] = ([_int(token, lineno) for token in tail.split()], lineno)
        elif tag == "O":
            if outer is not None:
                raise PlgSyntaxError(lineno, "duplicate O line")
            outer = ([_int(token, lineno) for token in rest.split()], lineno)
        else:
            raise PlgSyntaxError(lineno, "unknown directive {!r}".format(tag))

    if vertex_count is None:
        raise PlgSyntaxError(0, "missing V line")

    for v, (neighbors, lineno) in rotation.items():
        for w in [v] + neighbors:
            if not 0 <= w < vertex_count:
                raise PlgSyntaxError(lineno, "vertex {} out of range".format(w))
    missing = sorted(set(range(vertex_count)) - set(rotation))
    if missing:
        raise PlgSyntaxError(v_lineno, "no rotation for vertices {}".format(missing))

    g = build_from_rotation({v: rotation[v][0] for v in range(vertex_count)})
    if labels:
        g = PlaneGraph(
            [g.rotation(v) for v in range(vertex_count)],
            [labels.get(v, str(v)) for v in range(vertex_count)],
        )
    if outer is not None:
        triple, lineno = outer
        for w in triple:
            if not 0 <= w < vertex_count:
                raise PlgSyntaxError(lineno, "vertex {} out of range".format(w))
        g = designate_outer(g, triple)
    return g


def write_plg(g: PlaneGraph, labels: bool = True) -> str:
    lines = ["V {}".format(g.vertex_count)]
    if labels and g.labels != tuple(str(v) for v in range(g.vertex_count)):
        for v, label in enumerate(g.labels):
            lines.append("{}{} {}".format(LABEL_PREFIX, v, label))
    for v in range(g.vertex_count):
        lines.append("R {}: {}".format(v, " ".join(map(str, g.rotation(v)))).rstrip())
    triangle = g.outer_triangle
    if triangle is not None:
        lines.append("O {} {} {}".format(*triangle.vertices))
    return "\n".join(lines) + "\n"


def graph_id(g: PlaneGraph) -> str:
    """
    Content hash of the label-free PLG form.
    """
    return hashlib.sha256(write_plg(g, labels=False).encode("utf-8")).hexdigest()[:16]


def read_lists(text: str) -> Tuple[Dict[int, frozenset], Dict[int, int]]:
    """
    Parse a list file into ``(lists, pins)``.
    """
    lists = {}
    pins = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if line.startswith("P "):
            tokens = line.split()
            if len(tokens) != 3:
                raise PlgSyntaxError(lineno, "P line needs a vertex and a colour")
            pins[_int(tokens[1], lineno)] = _int(tokens[2], lineno)
            continue

        head, sep, tail = line.partition(":")
        if not sep:
            raise PlgSyntaxError(lineno, "list line needs ':'")
        v = _int(head.strip(), lineno)
        if v in lists:
            raise PlgSyntaxError(lineno, "duplicate list for vertex {}".format(v))
        lists[v] = frozenset(_int(token, lineno) for token in tail.split())
    return lists, pins


def write_lists(lists, pins: Optional[Dict[int, int]] = None) -> str:
    lines = [
        "{}: {}".format(v, " ".join(map(str, sorted(colors))))
        for v, colors in sorted(dict(lists).items())
    ]
    for v, color in sorted((pins or {}).items()):
        lines.append("P {} {}".format(v, color))
    return "\n".join(lines) + "\n"
