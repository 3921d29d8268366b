import pytest

from discharge_lab.catalog import build_pattern, parse_pattern
from discharge_lab.exceptions import UnknownLemma
from discharge_lab.lemmas import (
    BASE_CLEAN,
    IN_FAMILY_A,
    LEMMAS,
    OUTER_TRIANGLE,
    check_graph,
    get_lemma,
    missing_preconditions,
)

from .graphs import k4, octahedron, square, wheel_host


class TestRegistry:
    def test_names(self):
        assert set(LEMMAS) == {
            "L2.2", "L2.3", "C3.6(flaw)", "C3.9(2faces)", "C3.10-rich",
            "C3.12", "C3.13(W5)", "T3.1", "conservation",
        }

    def test_unknown(self):
        with pytest.raises(UnknownLemma) as exc:
            get_lemma("L9.9")
        assert "conservation" in exc.value.known


class TestPreconditions:
    def test_k4(self):
        missing = missing_preconditions(k4(), (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN))
        assert missing == ["base_checklist:interior-low-degree"]

    def test_octahedron(self):
        assert missing_preconditions(octahedron(), (OUTER_TRIANGLE, IN_FAMILY_A, BASE_CLEAN)) == [IN_FAMILY_A]

    def test_no_outer_face(self):
        assert missing_preconditions(square(), (OUTER_TRIANGLE, BASE_CLEAN)) == [OUTER_TRIANGLE]


class TestCheckGraph:
    def test_conservation(self):
        outcome = check_graph("conservation", wheel_host())
        assert outcome == {"skipped": False, "missing": [], "failures": [], "counterexample": False}

    def test_skipped_without_outer_face(self):
        outcome = check_graph("conservation", square())
        assert outcome["skipped"]
        assert outcome["missing"] == [OUTER_TRIANGLE]

    def test_forbidden_hit_outside_the_class(self):
        outcome = check_graph("L2.2", build_pattern(parse_pattern("C(3,3,4)")))
        assert outcome["failures"]
        assert outcome["missing"] == [IN_FAMILY_A]
        assert not outcome["counterexample"]

    def test_six_cycles_outside_the_class(self):
        outcome = check_graph("L2.3", octahedron())
        assert outcome["failures"]
        assert not outcome["counterexample"]

    def test_extension(self):
        outcome = check_graph("T3.1", k4(), {"trials": 4, "seed": 2})
        assert outcome["failures"] == []
        assert not outcome["skipped"]

    def test_wheel_degrees(self):
        outcome = check_graph("C3.13(W5)", wheel_host())
        assert outcome["failures"] == []
        assert "base_checklist:wheel-short-neighbour" in outcome["missing"]
