"""
Discharging engine.

Every vertex starts with ``2d(v) - 6`` and every face with ``d(f) - 6``; the
total is -12 on any connected plane graph. Rules R1-R7 move charge using the
classifications of the untouched graph, R8 then evens out charge within each
cluster of 3-faces. All amounts are exact fractions.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .classify import (
    BAD,
    EXTREME,
    POOR,
    RICH,
    WHEEL,
    WORSE,
    WORST,
    Classification,
    degree_pattern,
    face_key,
    vertex_key,
)
from .exceptions import AmbiguousRule, ChargeSumMismatch, MissingOuterFace, UnclassifiableElement
from .helpers import format_fraction
from .plane_graph import FaceRecord, PlaneGraph
from .structural import (
    FACE_PAIR_SHAPE,
    FIVE_VERTEX_RICH,
    FLAW_VERTEX,
    H_DEGREE,
    INTERIOR_LOW_DEGREE,
    NON_CYCLE_FACE,
    REDUCIBLE_4444_FACE,
    SEPARATING_TRIANGLE,
    SIX_VERTEX_5353,
    TWO_FACE_LOW_DEGREE,
    VERTEX_FACE_PATTERN,
    WHEEL_NEIGHBOUR_DEGREES,
    WHEEL_SHORT_NEIGHBOUR,
    StructuralReport,
    structural_scan,
)

logger = logging.getLogger(__name__)

TOTAL = Fraction(-12)

RULE_AMOUNTS = {
    "R1.1": {Fraction(9, 10), Fraction(1)},
    "R1.2": {Fraction(6, 5), Fraction(1)},
    "R2.1": {Fraction(1, 2), Fraction(1), Fraction(2, 3)},
    "R2.2": {Fraction(1), Fraction(5, 4), Fraction(3, 2)},
    "R2.3": {Fraction(1), Fraction(3, 2)},
    "R3.1": {Fraction(1, 3)},
    "R3.2": {Fraction(1), Fraction(2, 3)},
    "R4.1": {Fraction(1, 5), Fraction(1, 3)},
    "R4.2": {Fraction(1), Fraction(2, 3)},
    "R5": {Fraction(1, 8)},
    "R7": {Fraction(5, 2), Fraction(2), Fraction(1, 2)},
}

BASE_DEPENDENCIES = (INTERIOR_LOW_DEGREE, SEPARATING_TRIANGLE, NON_CYCLE_FACE)
CASE_DEPENDENCIES = {
    "1": (VERTEX_FACE_PATTERN, FLAW_VERTEX, WHEEL_NEIGHBOUR_DEGREES),
    "2": (VERTEX_FACE_PATTERN, TWO_FACE_LOW_DEGREE),
    "3": (VERTEX_FACE_PATTERN, TWO_FACE_LOW_DEGREE),
    "4": (VERTEX_FACE_PATTERN, TWO_FACE_LOW_DEGREE, FIVE_VERTEX_RICH, FACE_PAIR_SHAPE),
    "5": (VERTEX_FACE_PATTERN,),
    "6": (VERTEX_FACE_PATTERN, SIX_VERTEX_5353),
    "7": (VERTEX_FACE_PATTERN,),
    "8": (FLAW_VERTEX, TWO_FACE_LOW_DEGREE),
    "9": (VERTEX_FACE_PATTERN, WHEEL_SHORT_NEIGHBOUR, WHEEL_NEIGHBOUR_DEGREES),
    "10": (REDUCIBLE_4444_FACE, TWO_FACE_LOW_DEGREE),
    "11": (FLAW_VERTEX, TWO_FACE_LOW_DEGREE, FACE_PAIR_SHAPE, H_DEGREE),
    "12": (),
    "13": (FACE_PAIR_SHAPE,),
    "14": (FACE_PAIR_SHAPE,),
}


def mu_vertex(g: PlaneGraph, v: int) -> Fraction:
    return Fraction(2 * g.degree(v) - 6)


def mu_face(face: FaceRecord) -> Fraction:
    return Fraction(face.degree - 6)


@dataclass(frozen=True)
class Transfer:
    source: str
    sink: str
    amount: Fraction
    rule: str
    justification: str = ""

    def to_json(self):
        return {
            "source": self.source,
            "sink": self.sink,
            "amount": format_fraction(self.amount),
            "rule": self.rule,
            "justification": self.justification,
        }


class ChargeLedger:
    def __init__(self, initial: Dict[str, Fraction], transfers: Iterable[Transfer] = ()):
        self.initial = dict(initial)
        self.transfers = list(transfers)

    def __repr__(self):
        return "<ChargeLedger elements={} transfers={}>".format(len(self.initial), len(self.transfers))

    def add(self, source: str, sink: str, amount, rule: str, justification: str = ""):
        self.transfers.append(Transfer(source, sink, Fraction(amount), rule, justification))

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(self.initial, self.transfers)

    @property
    def final(self) -> Dict[str, Fraction]:
        result = dict(self.initial)
        for t in self.transfers:
            result[t.source] -= t.amount
            result[t.sink] += t.amount
        return result

    def total(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))

    def prefix_totals(self):
        """
        Charge sum after each transfer, starting with the initial sum.
        """
        current = dict(self.initial)
        total = sum(current.values(), Fraction(0))
        yield total
        for t in self.transfers:
            current[t.source] -= t.amount
            current[t.sink] += t.amount
            yield sum(current.values(), Fraction(0))

    def by_rule(self, rule: str) -> List[Transfer]:
        return [t for t in self.transfers if t.rule == rule]

    def into(self, element: str) -> List[Transfer]:
        return [t for t in self.transfers if t.sink == element]

    def to_json(self):
        final = self.final
        return {
            "initial": {k: format_fraction(v) for k, v in sorted(self.initial.items(), key=_element_order)},
            "transfers": [t.to_json() for t in self.transfers],
            "final": {k: format_fraction(v) for k, v in sorted(final.items(), key=_element_order)},
            "total": format_fraction(self.total()),
        }


def _element_order(item):
    key = item[0] if isinstance(item, tuple) else item
    return (key[0] != "v", int(key[1:]))


def check_total(ledger: ChargeLedger, stage: str):
    total = ledger.total()
    if total != TOTAL:
        raise ChargeSumMismatch(total, stage)


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    if g.outer_triangle is None:
        raise MissingOuterFace("initial_charges")
    initial = {vertex_key(v): mu_vertex(g, v) for v in range(g.vertex_count)}
    initial.update({face_key(face.id): mu_face(face) for face in g.faces})
    ledger = ChargeLedger(initial)
    check_total(ledger, "initial charges")
    return ledger


def is_trivial(g: PlaneGraph) -> bool:
    """
    True when nothing lies inside the outer triangle. The only bounded face is
    then the inside of C0 itself and R7 has no recipients.
    """
    return not any(g.is_interior(v) for v in range(g.vertex_count))


def _pick(rule: str, source: str, sink: str, clauses: Sequence[Tuple[str, bool, Fraction]], default=None):
    """
    The amount of the single matching clause, ``default`` when none match.
    """
    matched = [clause for clause in clauses if clause[1]]
    if len(matched) > 1:
        raise AmbiguousRule(rule, source, sink, [name for name, _, _ in matched])
    if matched:
        return matched[0][0], matched[0][2]
    return default


class _Engine:
    def __init__(self, g: PlaneGraph, ledger: ChargeLedger, c: Classification):
        self.g = g
        self.c = c
        self.ledger = ledger
        self.outer = g.outer_face
        self.outer_edges = g.face(self.outer).edges

    def give(self, source, sink, amount, rule, justification):
        if amount:
            self.ledger.add(source, sink, amount, rule, justification)

    def vertex_gift(self, v: int, face: FaceRecord):
        """
        (rule, justification, amount) for R1-R4 on an inner face, or None.
        """
        g, c = self.g, self.c
        d = g.degree(v)
        if d < 4:
            return None
        source, sink = vertex_key(v), face_key(face.id)
        if face.degree == 3 and not c.adjacent_to_triangle(face.id):
            if d == 4:
                rule = "R1.1"
                picked = _pick(rule, source, sink, [("flaw 4-vertex", c.is_flaw(v), Fraction(9, 10))])
            else:
                rule = "R1.2"
                picked = _pick(rule, source, sink, [("(4,4,5+)-face", degree_pattern(g, face, 2), Fraction(6, 5))])
            return (rule,) + (picked or ("isolated 3-face", Fraction(1)))

        if face.degree == 3:
            cluster = c.cluster_of_face.get(face.id)
            role = c.role(v, face.id)
            where = " in {} {}".format(cluster.kind, cluster.id) if cluster else ""
            if d == 4:
                if c.is_hub(v):
                    return "R2.1", "hub of wheel" + where, Fraction(1, 2)
                rule = "R2.1"
                clauses = [("worst face" + where, role == WORST, Fraction(2, 3))]
                default = ("{} face{}".format(role, where), Fraction(1))
            elif d == 5:
                rule = "R2.2"
                clauses = [
                    ("worse face" + where, role == WORSE, Fraction(5, 4)),
                    ("bad face" + where, role == BAD, Fraction(3, 2)),
                ]
                default = ("{} face{}".format(role, where), Fraction(1))
            else:
                rule = "R2.3"
                clauses = [("{} face{}".format(role, where), role in (BAD, WORSE), Fraction(3, 2))]
                default = ("{} face{}".format(role, where), Fraction(1))
            return (rule,) + _pick(rule, source, sink, clauses, default)

        if face.degree == 4:
            if d == 4:
                return "R3.1", "4-vertex on inner 4-face", Fraction(1, 3)
            rule = "R3.2"
            picked = _pick(
                rule,
                source,
                sink,
                [
                    ("(4,4,4,5+)-face", degree_pattern(g, face, 3), Fraction(1)),
                    ("rich 4-face", c.richness(face.id) == RICH, Fraction(2, 3)),
                ],
            )
            return (rule,) + picked if picked else None

        if face.degree == 5:
            if d == 4:
                rule = "R4.1"
                picked = _pick(
                    rule,
                    source,
                    sink,
                    [
                        ("flaw 4-vertex on poor 5-face", c.is_flaw(v) and c.richness(face.id) == POOR, Fraction(1, 5)),
                        ("4-vertex with at most one 3-face", c.triangle_count(v) <= 1, Fraction(1, 3)),
                    ],
                )
                return (rule,) + picked if picked else None
            rule = "R4.2"
            pattern = degree_pattern(g, face, 4)
            across = [other for other in c.across(face.id)]
            all_triangles = all(other.degree == 3 for other in across)
            big_neighbour = any(other.degree >= 4 and other.id != face.id for other in across)
            big = c.face_classes[face.id].big_vertices
            picked = _pick(
                rule,
                source,
                sink,
                [
                    ("(4,4,4,4,5+)-face surrounded by 3-faces", pattern and all_triangles, Fraction(1)),
                    ("(4,4,4,4,5+)-face next to a 4+-face", pattern and big_neighbour, Fraction(2, 3)),
                    ("rich 5-face with {} 5+-vertices".format(big), c.richness(face.id) == RICH, Fraction(1, big or 1)),
                ],
            )
            return (rule,) + picked if picked else None
        return None

    def r1_to_r4(self):
        for face in self.g.faces:
            if not self.c.is_inner(face.id) or face.degree > 5:
                continue
            for v in sorted(face.incident_vertices):
                gift = self.vertex_gift(v, face)
                if gift is not None:
                    rule, justification, amount = gift
                    self.give(vertex_key(v), face_key(face.id), amount, rule, justification)

    def wedge_triangle(self, face: FaceRecord) -> bool:
        return any(
            self.g.degree(v) == 4 and self.c.triangle_count(v) == 4 for v in face.incident_vertices
        )

    def r5(self):
        for face in self.g.faces:
            if face.id == self.outer or face.degree < 7:
                continue
            for other in self.c.across(face.id):
                if self.c.is_inner(other.id, 3) and self.wedge_triangle(other):
                    self.give(face_key(face.id), face_key(other.id), Fraction(1, 8), "R5", "7+-face next to a wheel 3-face")

    def r6(self):
        d = face_key(self.outer)
        for v in sorted(self.g.outer_vertices):
            self.ledger.add(vertex_key(v), d, mu_vertex(self.g, v), "R6", "outer vertex to unbounded face")

    def r7(self):
        if is_trivial(self.g):
            return
        d = face_key(self.outer)
        for face in self.g.faces:
            if self.c.position(face.id) != EXTREME:
                continue
            sink = face_key(face.id)
            if face.degree == 3:
                if face.edges & self.outer_edges:
                    self.give(d, sink, Fraction(5, 2), "R7", "extreme 3-face sharing an edge with the outer triangle")
                else:
                    self.give(d, sink, Fraction(2), "R7", "extreme 3-face sharing a vertex with the outer triangle")
                for x in sorted(face.incident_vertices - self.g.outer_vertices):
                    self.give(vertex_key(x), sink, Fraction(1, 2), "R7", "interior vertex of an extreme 3-face")
            elif face.degree in (4, 5):
                self.give(d, sink, Fraction(2), "R7", "extreme {}-face".format(face.degree))

    def run(self):
        self.r1_to_r4()
        self.r5()
        self.r6()
        self.r7()
        check_total(self.ledger, "R1-R7")
        redistribute(self.g, self.ledger, self.c)
        check_total(self.ledger, "R8")
        return self.ledger


def redistribute(g: PlaneGraph, ledger: ChargeLedger, classification: Classification = None) -> ChargeLedger:
    """
    R8: level the charge of the 3-faces in each cluster, moving charge from
    faces above the mean to faces below it in face-id order.
    """
    c = classification or Classification(g)
    final = ledger.final
    for cluster in c.clusters:
        keys = [face_key(f) for f in cluster.faces]
        target = sum((final[k] for k in keys), Fraction(0)) / len(keys)
        donors = [[k, final[k] - target] for k in keys if final[k] > target]
        receivers = [[k, target - final[k]] for k in keys if final[k] < target]
        i = 0
        for receiver in receivers:
            while receiver[1] > 0:
                donor = donors[i]
                amount = min(donor[1], receiver[1])
                ledger.add(donor[0], receiver[0], amount, "R8", "equalise {} {}".format(cluster.kind, cluster.id))
                donor[1] -= amount
                receiver[1] -= amount
                if donor[1] == 0:
                    i += 1
    return ledger


def apply_rules(
    g: PlaneGraph,
    ledger: ChargeLedger = None,
    overlap: str = None,
    classification: Classification = None,
) -> ChargeLedger:
    ledger = ledger.copy() if ledger is not None else initial_charges(g)
    c = classification or Classification(g, overlap=overlap)
    ledger = _Engine(g, ledger, c).run()
    logger.debug("%s: %d transfers", g, len(ledger.transfers))
    return ledger


# Verdicts

@dataclass(frozen=True)
class CaseVerdict:
    element: str
    case_id: str
    final_charge: Fraction
    nonnegative: bool
    lemma_dependency: Tuple[str, ...]
    violations: Tuple = ()

    def to_json(self):
        data = {
            "element": self.element,
            "case": self.case_id,
            "final_charge": format_fraction(self.final_charge),
            "nonnegative": self.nonnegative,
            "depends_on": list(self.lemma_dependency),
        }
        if self.violations:
            data["violations"] = [v.to_json() for v in self.violations]
        return data


@dataclass(frozen=True)
class VerdictSummary:
    verdicts: Tuple[CaseVerdict, ...]
    unclassifiable: Tuple[UnclassifiableElement, ...] = field(default_factory=tuple)
    trivial: bool = False

    @property
    def negatives(self) -> List[CaseVerdict]:
        if self.trivial:
            return []
        return [v for v in self.verdicts if not v.nonnegative]

    @property
    def unexplained(self) -> List[CaseVerdict]:
        """
        Negative elements that no structural violation accounts for.
        """
        return [v for v in self.negatives if not v.violations]

    def case_of(self, element: str) -> Optional[str]:
        for verdict in self.verdicts:
            if verdict.element == element:
                return verdict.case_id
        return None

    def to_json(self):
        return {
            "verdicts": [v.to_json() for v in self.verdicts],
            "negatives": [v.element for v in self.negatives],
            "unexplained": [v.element for v in self.unexplained],
            "unclassifiable": [{"element": e.element, "reason": e.reason} for e in self.unclassifiable],
            "trivial": self.trivial,
        }


def _consecutive_triangles(g: PlaneGraph, v: int) -> bool:
    faces = g.incident_faces(v)
    n = len(faces)
    return any(faces[i].degree == 3 and faces[(i + 1) % n].degree == 3 for i in range(n))


def vertex_case(g: PlaneGraph, c: Classification, v: int) -> str:
    if not g.is_interior(v):
        return "14.boundary"
    d = g.degree(v)
    if d < 4:
        raise UnclassifiableElement(vertex_key(v), "interior vertex of degree {}".format(d))

    faces = g.incident_faces(v)
    adj3 = any(face.degree == 3 and c.adjacent_to_triangle(face.id) for face in faces)
    consecutive = _consecutive_triangles(g, v)
    triangles = c.triangle_count(v)
    big_faces = sum(1 for face in faces if face.degree >= 6)

    if d == 4:
        if adj3:
            return "1.1.1" if consecutive else "1.1.2"
        return "1.2" if triangles <= 1 else "1.3"
    if d == 5:
        if adj3:
            return "2.1" if consecutive else "2.2"
        if big_faces >= 2:
            return "3.1"
        if big_faces == 1:
            return "3.2" if triangles <= 1 else "3.3"
        if triangles == 0:
            return "4.1"
        if triangles == 1:
            fours = sum(1 for face in faces if face.degree == 4)
            return "4.2.{}".format(min(fours, 2) + 1)
        return "4.3"
    if d == 6:
        if adj3:
            return "5.1" if consecutive else "5.2"
        if big_faces:
            return "6.1"
        return "6.2.{}".format(min(triangles, 3) + 1)
    return "7.1" if adj3 else "7.2"


def _trio_case(g: PlaneGraph, c: Classification, face: FaceRecord) -> str:
    roles = {v: c.role(v, face.id) for v in face.incident_vertices}
    worst = [v for v, role in roles.items() if role == WORST]
    worse = [v for v, role in roles.items() if role == WORSE]
    if any(g.degree(v) >= 5 for v in worst):
        return "9.2.1"
    if all(g.degree(v) == 4 for v in worse):
        return "9.2.2"
    if any(g.degree(v) >= 6 for v in worse):
        return "9.2.4"
    return "9.2.3"


def face_case(g: PlaneGraph, c: Classification, face: FaceRecord) -> str:
    if face.id == g.outer_face:
        return "14"
    if face.degree <= 2:
        raise UnclassifiableElement(face_key(face.id), "face of degree {}".format(face.degree))
    if face.degree >= 6:
        return "12"
    if is_trivial(g):
        return "trivial"

    if c.position(face.id) == EXTREME:
        if face.degree == 3:
            return "13.2" if face.edges & g.face(g.outer_face).edges else "13.1"
        return "13.3"

    if face.degree == 3:
        if not c.adjacent_to_triangle(face.id):
            return "8"
        cluster = c.cluster_of_face.get(face.id)
        if cluster is None:
            return "9.1"
        if cluster.kind == WHEEL:
            wheel = set(cluster.centers) | set(g.rotation(cluster.centers[0]))
            big = sum(1 for v in wheel if g.degree(v) >= 6)
            return "9.3.{}".format(min(big, 2) + 1)
        return _trio_case(g, c, face)
    if face.degree == 4:
        return "10"

    richness = c.richness(face.id)
    if richness == POOR:
        return "11.1"
    if richness == RICH:
        return "11.3"
    if degree_pattern(g, face, 4):
        if all(other.degree == 3 for other in c.across(face.id)):
            return "11.2.2"
        return "11.2.1"
    raise UnclassifiableElement(face_key(face.id), "semi-rich 5-face with a vertex of degree below 4")


def _dependencies(case_id: str) -> Tuple[str, ...]:
    head = case_id.split(".")[0]
    return BASE_DEPENDENCIES + CASE_DEPENDENCIES.get(head, ())


def _surroundings(g: PlaneGraph, element: str) -> set:
    index = int(element[1:])
    if element[0] == "v":
        near = {vertex_key(w) for w in g.rotation(index)}
        near |= {face_key(face.id) for face in g.incident_faces(index)}
    else:
        face = g.face(index)
        near = {vertex_key(v) for v in face.incident_vertices}
        for v in face.incident_vertices:
            near |= {face_key(other.id) for other in g.incident_faces(v)}
    return near | {element}


def _annotate(g: PlaneGraph, report: StructuralReport, element: str, dependencies) -> Tuple:
    found = report.near(_surroundings(g, element))
    if not found:
        found = [v for v in report.violations if v.kind in dependencies]
    if not found:
        found = list(report.violations)
    return tuple(found)


def verdicts(
    g: PlaneGraph,
    ledger: ChargeLedger,
    report: StructuralReport = None,
    classification: Classification = None,
    strict: bool = False,
) -> VerdictSummary:
    """
    Case of every vertex and face with its final charge. Negative elements
    are annotated with the structural violations that break their case.
    """
    c = classification or Classification(g, overlap="merge")
    report = report if report is not None else structural_scan(g, c)
    final = ledger.final
    result = []
    unclassifiable = []

    elements = [(vertex_key(v), lambda v=v: vertex_case(g, c, v)) for v in range(g.vertex_count)]
    elements += [(face_key(face.id), lambda face=face: face_case(g, c, face)) for face in g.faces]
    for element, case in elements:
        charge = final[element]
        try:
            case_id = case()
        except UnclassifiableElement as exc:
            if strict:
                raise
            unclassifiable.append(exc)
            case_id = "unclassified"
        dependencies = _dependencies(case_id)
        violations = () if charge >= 0 else _annotate(g, report, element, dependencies)
        result.append(
            CaseVerdict(
                element=element,
                case_id=case_id,
                final_charge=charge,
                nonnegative=charge >= 0,
                lemma_dependency=dependencies,
                violations=violations,
            )
        )

    summary = VerdictSummary(tuple(result), tuple(unclassifiable), trivial=is_trivial(g))
    if summary.unexplained:
        logger.warning(
            "%s: negative charge without a structural explanation at %s",
            g,
            ", ".join(v.element for v in summary.unexplained),
        )
    return summary


# Outer face

@dataclass(frozen=True)
class OuterFaceAccounting:
    f3_edge: int
    f_other: int
    boundary_edges: int
    mu_star_d: Fraction
    literal_value: Fraction
    printed_value: Fraction

    @property
    def positive(self) -> bool:
        return self.mu_star_d > 0

    @property
    def f3_bound_ok(self) -> bool:
        return self.f3_edge <= 3

    @property
    def edge_slack(self) -> int:
        return self.boundary_edges - self.f3_edge - self.f_other

    @property
    def consistent(self) -> bool:
        return self.mu_star_d == self.literal_value

    def to_json(self):
        return {
            "f3_edge": self.f3_edge,
            "f_other": self.f_other,
            "boundary_edges": self.boundary_edges,
            "edge_slack": self.edge_slack,
            "mu_star_d": format_fraction(self.mu_star_d),
            "literal_value": format_fraction(self.literal_value),
            "printed_value": format_fraction(self.printed_value),
            "positive": self.positive,
            "f3_bound_ok": self.f3_bound_ok,
        }


def outer_face_accounting(g: PlaneGraph, ledger: ChargeLedger, classification: Classification = None) -> OuterFaceAccounting:
    if g.outer_triangle is None:
        raise MissingOuterFace("outer_face_accounting")
    c = classification or Classification(g, overlap="merge")
    outer_edges = g.face(g.outer_face).edges
    c0 = g.outer_vertices

    f3_edge = 0
    f3_any_edge = 0
    f_other = 0
    for face in ([] if is_trivial(g) else g.bounded_faces()):
        if c.position(face.id) != EXTREME:
            continue
        if face.degree == 3:
            shared = len(face.edges & outer_edges)
            if shared:
                f3_any_edge += 1
            if shared == 1:
                f3_edge += 1
            if not shared and len(face.incident_vertices & c0) == 1:
                f_other += 1
        elif face.degree in (4, 5):
            f_other += 1

    boundary = sum(1 for u, w in g.edges() if (u in c0) != (w in c0))
    literal = 2 * boundary - 9 - Fraction(5, 2) * f3_any_edge - 2 * f_other
    printed = 3 - Fraction(2, 5) * f3_edge + 2 * (boundary - f3_edge - f_other)
    return OuterFaceAccounting(
        f3_edge=f3_edge,
        f_other=f_other,
        boundary_edges=boundary,
        mu_star_d=ledger.final[face_key(g.outer_face)],
        literal_value=Fraction(literal),
        printed_value=Fraction(printed),
    )


# Audit and rendering

def audit_amounts(ledger: ChargeLedger, g: PlaneGraph) -> List[Transfer]:
    """
    Transfers whose amount is not one of their rule's constants.
    """
    bad = []
    r8_net = {}
    for t in ledger.transfers:
        if t.rule == "R6":
            ok = t.amount == mu_vertex(g, int(t.source[1:]))
        elif t.rule == "R8":
            ok = t.amount > 0 and t.source.startswith("f") and t.sink.startswith("f")
            r8_net[t.source] = r8_net.get(t.source, 0) - t.amount
            r8_net[t.sink] = r8_net.get(t.sink, 0) + t.amount
        elif t.rule == "R4.2":
            ok = t.amount in RULE_AMOUNTS["R4.2"] or (
                t.amount.numerator == 1 and t.amount.denominator >= 2
            )
        else:
            ok = t.amount in RULE_AMOUNTS.get(t.rule, ())
        if not ok:
            bad.append(t)
    if r8_net and sum(r8_net.values(), Fraction(0)) != 0:
        bad.extend(ledger.by_rule("R8"))
    return bad


def render_ledger(ledger: ChargeLedger) -> str:
    lines = [
        "{} {} -> {} : {} [{}]".format(t.rule, t.source, t.sink, format_fraction(t.amount), t.justification)
        for t in ledger.transfers
    ]
    final = ledger.final
    lines.append("")
    lines.extend(
        "{} {} -> {}".format(k, format_fraction(ledger.initial[k]), format_fraction(final[k]))
        for k in sorted(final, key=_element_order)
    )
    lines.append("total {}".format(format_fraction(ledger.total())))
    return "\n".join(lines) + "\n"
