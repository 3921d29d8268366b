"""
Lemma campaigns: one lemma checked over a generated corpus.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from rq.job import JobStatus

from . import __version__
from .corpus import CorpusSpec, generate
from .exceptions import DischargeLabError
from .formats import graph_id, write_plg
from .helpers import artifact_dir, dump_artifact, dumps
from .jobs import scan_graph
from .lemmas import check_graph, get_lemma

logger = logging.getLogger(__name__)

POLL_INTERVAL = 0.5
DONE = (JobStatus.FINISHED, JobStatus.FAILED, JobStatus.STOPPED, JobStatus.CANCELED)


@dataclass
class CampaignReport:
    lemma: str
    spec: CorpusSpec
    outcomes: Dict[str, Dict] = field(default_factory=dict)
    errors: Dict[str, Dict[str, str]] = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def hits(self) -> List[str]:
        return sorted(k for k, v in self.outcomes.items() if v["failures"])

    @property
    def counterexamples(self) -> List[str]:
        return sorted(k for k, v in self.outcomes.items() if v["counterexample"])

    @property
    def skipped(self) -> List[str]:
        return sorted(k for k, v in self.outcomes.items() if v["skipped"])

    def to_json(self):
        return {
            "lemma": self.lemma,
            "corpus": self.spec.to_json(),
            "tool_version": self.tool_version,
            "graphs": len(self.outcomes) + len(self.errors),
            "hits": self.hits,
            "counterexamples": self.counterexamples,
            "skipped": self.skipped,
            "outcomes": self.outcomes,
            "errors": self.errors,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def _run_local(name, graphs, options, report):
    for key, g in graphs.items():
        try:
            report.outcomes[key] = check_graph(name, g, options)
        except DischargeLabError as exc:
            logger.exception("%s failed on %s", name, key)
            report.errors[key] = {"error": type(exc).__name__, "message": str(exc)}


def _wait(job, poll_interval: float = POLL_INTERVAL):
    status = job.get_status()
    while status not in DONE:
        time.sleep(poll_interval)
        status = job.get_status()
    return status


def _run_queued(name, graphs, options, report):
    jobs = {key: scan_graph.delay(name, write_plg(g), options) for key, g in graphs.items()}
    for key, job in jobs.items():
        status = _wait(job)
        if status != JobStatus.FINISHED:
            logger.error("%s job %s %s on %s", name, job.id, status, key)
            report.errors[key] = {"error": "JobFailed", "message": job.exc_info or ""}
        else:
            outcome = dict(job.result)
            outcome.pop("graph_id", None)
            report.outcomes[key] = outcome


def lemma_campaign(
    name: str,
    spec: CorpusSpec,
    out_dir: Optional[str] = None,
    enqueue: bool = False,
    options: Optional[Dict] = None,
) -> CampaignReport:
    """
    Check ``name`` on every graph of the corpus. Graphs where the statement
    fails are written to ``out_dir`` (or ARTIFACT_DIR) as PLG plus JSON.

    With ``enqueue`` every graph becomes a job on the ``DLAB["QUEUE"]``
    queue and results are gathered as the workers finish them.
    """
    get_lemma(name)
    graphs = {}
    for g in generate(spec):
        graphs.setdefault(graph_id(g), g)
    graphs = dict(sorted(graphs.items()))

    report = CampaignReport(lemma=name, spec=spec)
    if enqueue:
        _run_queued(name, graphs, options, report)
    else:
        _run_local(name, graphs, options, report)
    report.outcomes = dict(sorted(report.outcomes.items()))
    report.errors = dict(sorted(report.errors.items()))

    directory = artifact_dir(out_dir)
    if directory:
        for key in report.hits:
            dump_artifact(directory, key, write_plg(graphs[key]), {"lemma": name, **report.outcomes[key]})

    logger.info(
        "%s over %d graphs: %d hits, %d counterexamples",
        name, len(graphs), len(report.hits), len(report.counterexamples),
    )
    return report
