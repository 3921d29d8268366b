"""
Per-graph pipelines assembled into JSON reports.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

from . import __version__
from .catalog import forbidden_scan
from .classify import Classification
from .coloring import extend_precolored_triangle, random_assignment, random_precoloring, solve
from .cycles import find_family_a_witness
from .discharging import (
    apply_rules,
    audit_amounts,
    outer_face_accounting,
    render_ledger,
    verdicts,
)
from .exceptions import DischargeLabError, MissingOuterFace
from .formats import graph_id
from .helpers import dumps
from .plane_graph import PlaneGraph
from .structural import structural_scan

logger = logging.getLogger(__name__)

MEMBERSHIP = "membership"
FORBIDDEN = "forbidden"
STRUCTURAL = "structural"
DISCHARGE = "discharge"
COLOR = "color"
STAGES = (MEMBERSHIP, FORBIDDEN, STRUCTURAL, DISCHARGE, COLOR)
OUTER_STAGES = (STRUCTURAL, DISCHARGE)


@dataclass
class Report:
    graph_id: str
    sections: Dict[str, object] = field(default_factory=dict)
    errors: Dict[str, Dict[str, str]] = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self):
        return {
            "graph_id": self.graph_id,
            "tool_version": self.tool_version,
            "sections": self.sections,
            "errors": self.errors,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def discharge_section(g: PlaneGraph, classification: Classification = None) -> Dict:
    c = classification or Classification(g)
    ledger = apply_rules(g, classification=c)
    summary = verdicts(g, ledger, classification=c)
    return {
        "ledger": ledger.to_json(),
        "ledger_text": render_ledger(ledger),
        "verdicts": summary.to_json(),
        "outer_face": outer_face_accounting(g, ledger, classification=c).to_json(),
        "audit": [t.to_json() for t in audit_amounts(ledger, g)],
    }


class _Pipeline:
    def __init__(self, g: PlaneGraph, trials: int, seed: int):
        self.g = g
        self.trials = trials
        self.seed = seed
        self._classification = None

    @property
    def classification(self) -> Classification:
        if self._classification is None:
            self._classification = Classification(self.g)
        return self._classification

    def membership(self):
        witness = find_family_a_witness(self.g)
        return {"in_family_A": witness is None, "witness": witness}

    def forbidden(self):
        return {"hits": [hit.to_json() for hit in forbidden_scan(self.g)]}

    def structural(self):
        return structural_scan(self.g).to_json()

    def discharge(self):
        return discharge_section(self.g, self.classification)

    def color(self):
        rng = random.Random(self.seed)
        outcomes = []
        for trial in range(self.trials):
            lists = random_assignment(self.g, rng=rng)
            entry = {"trial": trial, "lists": lists.to_json()}
            precoloring = random_precoloring(self.g, lists, rng=rng) if self.g.outer_triangle else None
            if precoloring is not None:
                entry["precoloring"] = precoloring.to_json()
                coloring = extend_precolored_triangle(self.g, lists, precoloring)
            else:
                coloring = solve(self.g, lists)
            entry["colorable"] = coloring is not None
            entry["coloring"] = coloring
            outcomes.append(entry)
        return {
            "seed": self.seed,
            "trials": outcomes,
            "failures": [entry["trial"] for entry in outcomes if not entry["colorable"]],
        }

    def stage(self, name) -> Callable:
        return getattr(self, name)


def run_pipeline(
    g: PlaneGraph,
    stages: Iterable[str] = STAGES,
    trials: int = 1,
    seed: int = 0,
) -> Report:
    """
    Run the requested stages; an error in one stage is recorded in the report
    and does not stop the others.
    """
    stages = list(stages)
    unknown = [name for name in stages if name not in STAGES]
    if unknown:
        raise ValueError("unknown stages: {}".format(", ".join(unknown)))

    pipeline = _Pipeline(g, trials, seed)
    report = Report(graph_id=graph_id(g))
    for name in STAGES:
        if name not in stages:
            continue
        if name in OUTER_STAGES and g.outer_triangle is None:
            report.errors[name] = _error(MissingOuterFace(name))
            continue
        try:
            report.sections[name] = pipeline.stage(name)()
        except DischargeLabError as exc:
            logger.exception("stage %s failed on %s", name, report.graph_id)
            report.errors[name] = _error(exc)
    return report


def _error(exc: Exception) -> Dict[str, str]:
    return {"error": type(exc).__name__, "message": str(exc)}


def findings(report: Report) -> List[str]:
    """
    What makes a report non-clean: falsified membership, forbidden hits,
    structural violations, negative charges and failed colouring trials.
    """
    found = []
    sections = report.sections
    if MEMBERSHIP in sections and not sections[MEMBERSHIP]["in_family_A"]:
        found.append(MEMBERSHIP)
    if sections.get(FORBIDDEN, {}).get("hits"):
        found.append(FORBIDDEN)
    if STRUCTURAL in sections and not sections[STRUCTURAL]["clean"]:
        found.append(STRUCTURAL)
    if DISCHARGE in sections and sections[DISCHARGE]["verdicts"]["negatives"]:
        found.append(DISCHARGE)
    if sections.get(COLOR, {}).get("failures"):
        found.append(COLOR)
    return found


def first_stage_error(report: Report) -> Optional[str]:
    for name in STAGES:
        if name in report.errors:
            return name
    return None
