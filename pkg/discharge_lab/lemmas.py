"""
Per-graph checks run by lemma campaigns.

Each check returns the places where the statement fails on one graph
(empty when it holds). A failure on a graph that also meets the lemma's
preconditions is a counterexample; any other failure is an expected hit
and is reported with the preconditions the graph misses.
"""
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .catalog import forbidden_scan
from .classify import Classification, OVERLAP_MERGE
from .coloring import extend_precolored_triangle, random_assignment, random_precoloring
from .cycles import find_family_a_witness, six_cycle_chord_check
from .discharging import TOTAL, apply_rules, initial_charges
from .exceptions import ChargeSumMismatch, UnknownLemma
from .helpers import format_fraction
from .plane_graph import PlaneGraph
from .structural import (
    BASE_KINDS,
    FIVE_VERTEX_RICH,
    FLAW_VERTEX,
    SIX_VERTEX_5353,
    TWO_FACE_LOW_DEGREE,
    WHEEL_NEIGHBOUR_DEGREES,
    structural_scan,
)

logger = logging.getLogger(__name__)

IN_FAMILY_A = "in_family_A"
OUTER_TRIANGLE = "outer_triangle"
BASE_CLEAN = "base_checklist"


@dataclass(frozen=True)
class Lemma:
    name: str
    check: Callable[[PlaneGraph, Dict], List]
    requires: Tuple[str, ...]
    description: str = ""


def _forbidden(g: PlaneGraph, options) -> List:
    return [hit.to_json() for hit in forbidden_scan(g)]


def _six_cycles(g: PlaneGraph, options) -> List:
    return [
        {"cycle": cycle.to_json(), "chords": [chord.to_json() for chord in chords]}
        for cycle, chords in six_cycle_chord_check(g)
    ]


def _violations_of(kind: str):
    def check(g: PlaneGraph, options) -> List:
        report = structural_scan(g)
        return [v.to_json() for v in report.by_kind(kind)]

    return check


def _extension(g: PlaneGraph, options) -> List:
    rng = random.Random(options.get("seed", 0))
    failures = []
    for trial in range(int(options.get("trials", 10))):
        lists = random_assignment(g, rng=rng)
        phi0 = random_precoloring(g, lists, rng=rng)
        if phi0 is None:
            continue
        if extend_precolored_triangle(g, lists, phi0, family_a=True) is None:
            failures.append({"trial": trial, "lists": lists.to_json(), "precoloring": phi0.to_json()})
    return failures


def _conservation(g: PlaneGraph, options) -> List:
    try:
        ledger = apply_rules(g, initial_charges(g), classification=Classification(g, overlap=OVERLAP_MERGE))
    except ChargeSumMismatch as exc:
        return [{"stage": exc.stage, "total": format_fraction(exc.total)}]
    if ledger.total() != TOTAL:
        return [{"stage": "final", "total": format_fraction(ledger.total())}]
    return []


LEMMAS = {
    lemma.name: lemma
    for lemma in (
        Lemma("L2.2", _forbidden, (IN_FAMILY_A,), "no forbidden configuration"),
        Lemma("L2.3", _six_cycles, (IN_FAMILY_A,), "a 6-cycle with a triangular chord has exactly one chord"),
        Lemma(
            "C3.6(flaw)", _violations_of(FLAW_VERTEX),
            (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN), "flaw vertices meet one poor 5-face",
        ),
        Lemma(
            "C3.9(2faces)", _violations_of(TWO_FACE_LOW_DEGREE),
            (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN), "consecutive 5- faces carry a 5+ vertex",
        ),
        Lemma(
            "C3.10-rich", _violations_of(FIVE_VERTEX_RICH),
            (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN), "5-vertices meet three rich faces",
        ),
        Lemma(
            "C3.12", _violations_of(SIX_VERTEX_5353),
            (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN), "no bare (5,3,5,3) at a 6-vertex",
        ),
        Lemma(
            "C3.13(W5)", _violations_of(WHEEL_NEIGHBOUR_DEGREES),
            (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN), "W5 rims carry three 5-vertices",
        ),
        Lemma("T3.1", _extension, (OUTER_TRIANGLE, IN_FAMILY_A), "precoloured triangles extend"),
        Lemma("conservation", _conservation, (OUTER_TRIANGLE,), "charge sum stays -12"),
    )
}


def get_lemma(name: str) -> Lemma:
    try:
        return LEMMAS[name]
    except KeyError:
        raise UnknownLemma(name, LEMMAS)


def missing_preconditions(g: PlaneGraph, requires) -> List[str]:
    missing = []
    if OUTER_TRIANGLE in requires and g.outer_triangle is None:
        missing.append(OUTER_TRIANGLE)
    if IN_FAMILY_A in requires and find_family_a_witness(g) is not None:
        missing.append(IN_FAMILY_A)
    if BASE_CLEAN in requires and OUTER_TRIANGLE not in missing:
        kinds = structural_scan(g).kinds()
        missing.extend("{}:{}".format(BASE_CLEAN, kind) for kind in kinds if kind in BASE_KINDS)
    return missing


def check_graph(name: str, g: PlaneGraph, options: Optional[Dict] = None) -> Dict:
    """
    Outcome of one lemma on one graph: its failures, the preconditions the
    graph misses and whether the failures make a counterexample.
    """
    lemma = get_lemma(name)
    options = options or {}
    missing = missing_preconditions(g, lemma.requires)
    if OUTER_TRIANGLE in missing:
        return {"skipped": True, "missing": missing, "failures": [], "counterexample": False}

    failures = lemma.check(g, options)
    counterexample = bool(failures) and not missing
    if counterexample:
        logger.error("%s fails on %s: %s", name, g, failures)
    return {"skipped": False, "missing": missing, "failures": failures, "counterexample": counterexample}
