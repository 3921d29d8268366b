import json
import logging

import pytest

from discharge_lab import __version__
from discharge_lab.formats import graph_id
from discharge_lab.reports import (
    COLOR,
    DISCHARGE,
    FORBIDDEN,
    MEMBERSHIP,
    STAGES,
    STRUCTURAL,
    discharge_section,
    findings,
    first_stage_error,
    run_pipeline,
)

from .graphs import icosahedron, k4, octahedron, square, triangle


class TestRunPipeline:
    def test_k4(self):
        g = k4()
        report = run_pipeline(g)
        assert report.ok
        assert report.graph_id == graph_id(g)
        assert list(report.sections) == list(STAGES)
        assert report.sections[MEMBERSHIP]["in_family_A"]
        assert report.sections[FORBIDDEN] == {"hits": []}
        assert findings(report) == [STRUCTURAL, DISCHARGE]

    def test_triangle(self):
        report = run_pipeline(triangle(), trials=3)
        assert findings(report) == []
        assert report.sections[STRUCTURAL]["clean"]
        assert report.sections[DISCHARGE]["ledger"]["total"] == "-12"
        assert report.sections[DISCHARGE]["verdicts"]["trivial"]
        assert report.sections[DISCHARGE]["outer_face"]["mu_star_d"] == "-9"
        assert len(report.sections[COLOR]["trials"]) == 3
        assert report.sections[COLOR]["failures"] == []

    def test_without_outer_face(self):
        report = run_pipeline(square())
        assert set(report.errors) == {STRUCTURAL, DISCHARGE}
        assert report.errors[DISCHARGE]["error"] == "MissingOuterFace"
        assert {MEMBERSHIP, FORBIDDEN, COLOR} <= set(report.sections)
        assert first_stage_error(report) == STRUCTURAL

    def test_stage_errors_are_isolated(self, caplog):
        with caplog.at_level(logging.ERROR, logger="discharge_lab"):
            report = run_pipeline(icosahedron(), stages=[STRUCTURAL, DISCHARGE])
        assert STRUCTURAL in report.sections
        assert report.errors[DISCHARGE]["error"] == "OverlappingCluster"
        assert "stage discharge failed" in caplog.text

    def test_selected_stages(self):
        report = run_pipeline(octahedron(), stages=[MEMBERSHIP])
        assert list(report.sections) == [MEMBERSHIP]
        assert findings(report) == [MEMBERSHIP]

    def test_unknown_stage(self):
        with pytest.raises(ValueError):
            run_pipeline(k4(), stages=["paint"])

    def test_seeded_trials(self):
        first = run_pipeline(octahedron(), stages=[COLOR], trials=2, seed=9)
        second = run_pipeline(octahedron(), stages=[COLOR], trials=2, seed=9)
        assert first.dumps() == second.dumps()


class TestReportJson:
    def test_dumps(self):
        data = json.loads(run_pipeline(k4()).dumps())
        assert data["tool_version"] == __version__
        assert data["errors"] == {}
        assert data["sections"][DISCHARGE]["ledger"]["total"] == "-12"

    def test_witness_is_serialised(self):
        data = json.loads(run_pipeline(octahedron(), stages=[MEMBERSHIP]).dumps())
        assert sorted(data["sections"][MEMBERSHIP]["witness"]["cycles"]) == ["3", "4", "5", "6"]


class TestDischargeSection:
    def test_k4(self):
        section = discharge_section(k4())
        assert section["audit"] == []
        assert section["outer_face"]["mu_star_d"] == "-21/2"
        assert section["ledger_text"].endswith("total -12\n")
        assert "v3" in section["verdicts"]["negatives"]
