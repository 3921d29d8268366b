import logging
import os

from django.core.management.base import BaseCommand, CommandError

from ...campaigns import lemma_campaign
from ...catalog import forbidden_scan
from ...certificates import named_certificate, trace_certificate
from ...classify import Classification
from ...coloring import SizeProfile, extend_precolored_triangle, solve, verify_reducible
from ...corpus import CorpusSpec, corpus_family, generate
from ...cycles import find_family_a_witness
from ...exceptions import (
    AmbiguousRule,
    BadParameters,
    ChargeSumMismatch,
    DischargeLabError,
)
from ...formats import graph_id, read_lists, read_plg, write_plg
from ...helpers import dumps
from ...reports import DISCHARGE, Report, discharge_section
from ...structural import structural_scan

logger = logging.getLogger(__name__)

CLEAN = 0
FINDING = 1
USAGE = 2
INTERNAL = 3

INTERNAL_ERRORS = (ChargeSumMismatch, AmbiguousRule)


def _read(path) -> str:
    try:
        with open(path, encoding="utf-8") as fp:
            return fp.read()
    except OSError as exc:
        raise CommandError("cannot read {}: {}".format(path, exc.strerror), returncode=USAGE)


def parse_profile(text: str, g) -> SizeProfile:
    """
    ``"3"`` for a uniform bound, or ``"s:4,u:3,*:2"`` with ``*`` as the
    bound of every vertex not named.
    """
    text = text.strip()
    if text.isdigit():
        return SizeProfile.uniform(g, int(text))
    bounds = {}
    default = None
    for item in text.split(","):
        name, sep, value = item.partition(":")
        if not sep or not value.strip().isdigit():
            raise BadParameters("profile", (item,), "expected name:bound")
        if name.strip() == "*":
            default = int(value)
        else:
            bounds[g.vertex(name.strip())] = int(value)
    for v in range(g.vertex_count):
        if v not in bounds:
            if default is None:
                raise BadParameters("profile", (g.label(v),), "no bound for vertex")
            bounds[v] = default
    return SizeProfile.from_mapping(bounds)


def parse_pin(text: str):
    vertex, sep, color = text.partition("=")
    if not sep:
        raise CommandError("pins are written v=c, got {!r}".format(text), returncode=USAGE)
    try:
        return int(vertex), int(color)
    except ValueError:
        raise CommandError("pins are written v=c, got {!r}".format(text), returncode=USAGE)


class Command(BaseCommand):
    help = "Plane graph discharging and list-colouring checks."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        sub = actions.add_parser("faces", help="face table")
        sub.add_argument("graph")

        sub = actions.add_parser("membership", help="class membership and witness")
        sub.add_argument("graph")

        sub = actions.add_parser("forbidden", help="forbidden configuration scan")
        sub.add_argument("graph")

        sub = actions.add_parser("structural", help="structural checklist")
        sub.add_argument("graph")

        sub = actions.add_parser("discharge", help="charges, transfers and verdicts")
        sub.add_argument("graph")
        sub.add_argument("--ledger", action="store_true", help="print the transfer ledger")
        sub.add_argument("--json", dest="json_path", help="write the JSON report here")
        sub.add_argument("--overlap", choices=("error", "merge"), help="cluster overlap policy")

        sub = actions.add_parser("color", help="solve or extend a list colouring")
        sub.add_argument("graph")
        sub.add_argument("--lists", required=True)
        sub.add_argument("--pin", action="append", default=[], help="v=c")

        sub = actions.add_parser("reducible", help="exhaustive reducibility check")
        sub.add_argument("target", help="configuration name or PLG file")
        sub.add_argument("--profile", help='"3" or "s:4,u:3,*:2"')
        sub.add_argument("--palette-cap", type=int)

        sub = actions.add_parser("lemma", help="lemma campaign over a corpus")
        sub.add_argument("lemma")
        sub.add_argument("--corpus", required=True, help="corpus spec file")
        sub.add_argument("--out", help="directory for hits")
        sub.add_argument("--enqueue", action="store_true", help="run graphs as RQ jobs")
        sub.add_argument("--trials", type=int, default=10)
        sub.add_argument("--seed", type=int, default=0)

        sub = actions.add_parser("gen", help="corpus generation")
        sub.add_argument("family")
        sub.add_argument("params", nargs="*")
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--out", required=True)

    def handle(self, *args, **options):
        action = options["action"]
        try:
            code = getattr(self, "handle_{}".format(action))(**options)
        except CommandError:
            raise
        except INTERNAL_ERRORS as exc:
            raise CommandError("{}: {}".format(type(exc).__name__, exc), returncode=INTERNAL)
        except DischargeLabError as exc:
            raise CommandError("{}: {}".format(type(exc).__name__, exc), returncode=USAGE)
        except Exception as exc:
            logger.exception("dlab %s failed", action)
            raise CommandError("internal error: {}".format(exc), returncode=INTERNAL)
        if code:
            raise CommandError("{}: findings reported".format(action), returncode=code)

    def graph(self, path):
        return read_plg(_read(path))

    def emit(self, data):
        self.stdout.write(dumps(data))

    def handle_faces(self, graph, **options):
        g = self.graph(graph)
        for face in g.faces:
            marker = " outer" if face.id == g.outer_face else ""
            self.stdout.write(
                "f{} degree {} : {}{}".format(face.id, face.degree, " ".join(map(str, face.vertices)), marker)
            )
        return CLEAN

    def handle_membership(self, graph, **options):
        witness = find_family_a_witness(self.graph(graph))
        self.emit({"in_family_A": witness is None, "witness": witness})
        return CLEAN if witness is None else FINDING

    def handle_forbidden(self, graph, **options):
        hits = forbidden_scan(self.graph(graph))
        self.emit({"hits": hits})
        return FINDING if hits else CLEAN

    def handle_structural(self, graph, **options):
        report = structural_scan(self.graph(graph))
        self.emit(report)
        return CLEAN if report.clean else FINDING

    def handle_discharge(self, graph, ledger, json_path, overlap, **options):
        g = self.graph(graph)
        section = discharge_section(g, Classification(g, overlap=overlap))
        if ledger:
            self.stdout.write(section["ledger_text"], ending="")
        summary = section["verdicts"]
        for verdict in summary["verdicts"]:
            if not verdict["nonnegative"]:
                self.stdout.write("{element} case {case} : {final_charge}".format(**verdict))
        self.stdout.write("total {}".format(section["ledger"]["total"]))

        if json_path:
            report = Report(graph_id=graph_id(g), sections={DISCHARGE: section})
            with open(json_path, "w", encoding="utf-8") as fp:
                fp.write(report.dumps())
                fp.write("\n")
        return FINDING if summary["negatives"] else CLEAN

    def handle_color(self, graph, lists, pin, **options):
        g = self.graph(graph)
        assignment, pins = read_lists(_read(lists))
        pins.update(parse_pin(text) for text in pin)

        if g.outer_triangle is not None and set(pins) == set(g.outer_vertices):
            coloring = extend_precolored_triangle(g, assignment, pins)
        else:
            coloring = solve(g, assignment, pins=pins)
        self.emit({"colorable": coloring is not None, "coloring": coloring})
        return CLEAN if coloring is not None else FINDING

    def handle_reducible(self, target, profile, palette_cap, **options):
        certificate = size_profile = None
        if os.path.exists(target):
            config = self.graph(target)
        else:
            config, size_profile, certificate = named_certificate(target)
        if profile is not None:
            size_profile = parse_profile(profile, config)
            certificate = None
        if size_profile is None:
            raise CommandError("--profile is required for {}".format(target), returncode=USAGE)

        result = verify_reducible(config, size_profile, palette_cap=palette_cap)
        data = {"target": target, "profile": size_profile, "result": result}
        if certificate is not None:
            ok, trace = trace_certificate(config, size_profile, certificate)
            data["certificate"] = {"ok": ok, "trace": trace}
        self.emit(data)
        return CLEAN if result.verified else FINDING

    def handle_lemma(self, lemma, corpus, out, enqueue, trials, seed, **options):
        spec = CorpusSpec.load(corpus)
        report = lemma_campaign(
            lemma, spec, out_dir=out, enqueue=enqueue, options={"trials": trials, "seed": seed}
        )
        self.stdout.write(report.dumps())
        return FINDING if report.counterexamples else CLEAN

    def handle_gen(self, family, params, seed, out, **options):
        spec = corpus_family(family, tuple(params), seed=seed)
        graphs = generate(spec)
        os.makedirs(out, exist_ok=True)
        names = []
        for g in graphs:
            name = graph_id(g)
            with open(os.path.join(out, "{}.plg".format(name)), "w", encoding="utf-8") as fp:
                fp.write(write_plg(g))
            names.append(name)
        with open(os.path.join(out, "corpus.json"), "w", encoding="utf-8") as fp:
            fp.write(dumps({"spec": spec, "graphs": names}))
            fp.write("\n")
        self.stdout.write("{} graphs written to {}".format(len(names), out))
        return CLEAN
