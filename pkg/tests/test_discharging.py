from fractions import Fraction

import pytest

from discharge_lab.classify import OVERLAP_MERGE, Classification, face_key
from discharge_lab.discharging import (
    RULE_AMOUNTS,
    TOTAL,
    ChargeLedger,
    _pick,
    apply_rules,
    audit_amounts,
    face_case,
    initial_charges,
    is_trivial,
    outer_face_accounting,
    render_ledger,
    verdicts,
    vertex_case,
)
from discharge_lab.exceptions import (
    AmbiguousRule,
    ChargeSumMismatch,
    MissingOuterFace,
    OverlappingCluster,
    UnclassifiableElement,
)
from discharge_lab.helpers import format_fraction, parse_fraction
from discharge_lab.plane_graph import find_face

from .graphs import (
    flaw_host,
    icosahedron,
    k4,
    octahedron,
    pentagon_host,
    poor_pentagon_host,
    separated,
    square,
    square_host,
    triangle,
    wheel_host,
)


def outer_key(g):
    return face_key(g.outer_face)


def named_face(g, *names):
    return find_face(g, [g.vertex(name) for name in names])


def gifts(ledger, key):
    return sorted((t.rule, t.amount) for t in ledger.into(key))


class TestInitialCharges:
    def test_k4(self):
        ledger = initial_charges(k4())
        assert ledger.initial["v0"] == 0
        assert all(ledger.initial[face_key(face.id)] == -3 for face in k4().faces)
        assert ledger.total() == TOTAL

    def test_needs_outer_triangle(self):
        with pytest.raises(MissingOuterFace):
            initial_charges(square())


class TestLedger:
    def test_final_and_prefix_totals(self):
        ledger = ChargeLedger({"v0": Fraction(2), "f0": Fraction(-2)})
        ledger.add("v0", "f0", Fraction(1, 2), "R1.1", "test")
        assert ledger.final == {"v0": Fraction(3, 2), "f0": Fraction(-3, 2)}
        assert list(ledger.prefix_totals()) == [0, 0]
        assert [t.rule for t in ledger.by_rule("R1.1")] == ["R1.1"]
        assert ledger.into("f0")[0].amount == Fraction(1, 2)

    def test_json(self):
        ledger = ChargeLedger({"v1": Fraction(2), "f0": Fraction(-2)})
        ledger.add("v1", "f0", Fraction(6, 5), "R1.2")
        data = ledger.to_json()
        assert data["transfers"][0]["amount"] == "6/5"
        assert data["final"] == {"v1": "4/5", "f0": "-4/5"}
        assert data["total"] == "0"


class TestApplyRules:
    def test_k4(self):
        g = k4()
        ledger = apply_rules(g)
        final = ledger.final
        assert final[outer_key(g)] == Fraction(-21, 2)
        assert final["v3"] == Fraction(-3, 2)
        assert all(final["v{}".format(v)] == 0 for v in (0, 1, 2))
        assert all(final[face_key(face.id)] == 0 for face in g.bounded_faces())
        assert {t.amount for t in ledger.by_rule("R7")} == {Fraction(5, 2), Fraction(1, 2)}

    def test_octahedron(self):
        g = octahedron()
        final = apply_rules(g).final
        assert final[outer_key(g)] == Fraction(-21, 2)
        assert [final["v{}".format(v)] for v in range(6)] == [0, 0, 0] + [Fraction(-1, 2)] * 3
        assert all(final[face_key(face.id)] == 0 for face in g.bounded_faces())

    def test_wheel_hub_pays_half(self):
        g = wheel_host()
        ledger = apply_rules(g)
        hub_gifts = [t for t in ledger.transfers if t.source == "v7"]
        assert len(hub_gifts) == 4
        assert {(t.rule, t.amount) for t in hub_gifts} == {("R2.1", Fraction(1, 2))}

    def test_outer_vertices_empty_into_the_outer_face(self):
        g = octahedron()
        ledger = apply_rules(g)
        r6 = ledger.by_rule("R6")
        assert [t.source for t in r6] == ["v0", "v1", "v2"]
        assert all(t.sink == outer_key(g) and t.amount == 2 for t in r6)

    @pytest.mark.parametrize("factory", [triangle, k4, octahedron, wheel_host, separated])
    def test_conservation(self, factory):
        g = factory()
        ledger = apply_rules(g)
        assert ledger.total() == TOTAL
        assert all(total == TOTAL for total in ledger.prefix_totals())

    def test_overlapping_clusters(self):
        with pytest.raises(OverlappingCluster):
            apply_rules(icosahedron(), overlap="error")
        assert apply_rules(icosahedron(), overlap=OVERLAP_MERGE).total() == TOTAL

    def test_merged_clusters_are_levelled(self):
        g = icosahedron()
        ledger = apply_rules(g, overlap=OVERLAP_MERGE)
        assert all(t.amount > 0 for t in ledger.by_rule("R8"))

    def test_mismatch_is_raised(self):
        g = k4()
        ledger = initial_charges(g)
        ledger.initial["v0"] += 1
        with pytest.raises(ChargeSumMismatch):
            apply_rules(g, ledger)

    def test_triangle_has_no_r7_recipients(self):
        g = triangle()
        ledger = apply_rules(g)
        (inside,) = g.bounded_faces()
        assert is_trivial(g)
        assert ledger.by_rule("R7") == []
        assert [t.amount for t in ledger.by_rule("R6")] == [Fraction(-2)] * 3
        assert ledger.final[outer_key(g)] == -9
        assert ledger.final[face_key(inside.id)] == -3
        assert ledger.total() == TOTAL

    def test_wheel_cluster_is_levelled(self):
        g = wheel_host()
        ledger = apply_rules(g)
        short = {face_key(named_face(g, 7, 3, 4).id), face_key(named_face(g, 7, 4, 5).id)}
        full = {face_key(named_face(g, 7, 5, 6).id), face_key(named_face(g, 7, 6, 3).id)}
        # the rim 4-vertex pays 1 where the rim 5-vertices pay 5/4
        before = ChargeLedger(ledger.initial, [t for t in ledger.transfers if t.rule != "R8"])
        assert {before.final[k] for k in short} == {Fraction(-1, 4)}
        assert {before.final[k] for k in full} == {Fraction(0)}

        r8 = ledger.by_rule("R8")
        assert len(r8) == 2
        assert all(t.amount == Fraction(1, 8) for t in r8)
        assert {t.source for t in r8} == full
        assert {t.sink for t in r8} == short
        assert {ledger.final[k] for k in short | full} == {Fraction(-1, 8)}


class TestPick:
    def test_single_clause(self):
        clauses = [("a", False, Fraction(1)), ("b", True, Fraction(2))]
        assert _pick("R2.2", "v1", "f2", clauses) == ("b", Fraction(2))

    def test_default(self):
        assert _pick("R2.2", "v1", "f2", [("a", False, Fraction(1))], ("good face", 1)) == ("good face", 1)
        assert _pick("R3.2", "v1", "f2", []) is None

    def test_ambiguous(self):
        clauses = [("worse face", True, Fraction(5, 4)), ("bad face", True, Fraction(3, 2))]
        with pytest.raises(AmbiguousRule) as exc:
            _pick("R2.2", "v1", "f2", clauses)
        assert exc.value.clauses == ("worse face", "bad face")
        assert (exc.value.rule, exc.value.source, exc.value.sink) == ("R2.2", "v1", "f2")


class TestCaseInstances:
    def test_8_isolated_triangle_with_two_flaws(self):
        g = flaw_host()
        c = Classification(g)
        assert c.is_flaw(g.vertex("u")) and c.is_flaw(g.vertex("w"))
        assert g.degree(g.vertex("x")) == 5
        ledger = apply_rules(g)
        key = face_key(named_face(g, "x", "u", "w").id)
        assert verdicts(g, ledger).case_of(key) == "8"
        assert gifts(ledger, key) == [("R1.1", Fraction(9, 10)), ("R1.1", Fraction(9, 10)), ("R1.2", Fraction(6, 5))]
        assert ledger.final[key] == 0

    def test_10_4445_face(self):
        g = square_host()
        ledger = apply_rules(g)
        key = face_key(named_face(g, "a0", "a1", "a2", "a3").id)
        assert verdicts(g, ledger).case_of(key) == "10"
        assert gifts(ledger, key) == [("R3.1", Fraction(1, 3))] * 3 + [("R3.2", Fraction(1))]
        assert ledger.final[key] == 0

    def test_11_1_poor_5_face(self):
        g = poor_pentagon_host()
        ledger = apply_rules(g)
        key = face_key(named_face(g, "a0", "a1", "a2", "a3", "a4").id)
        assert verdicts(g, ledger).case_of(key) == "11.1"
        assert gifts(ledger, key) == [("R4.1", Fraction(1, 3))] * 5
        assert ledger.final[key] == Fraction(2, 3)

    def test_11_2_1_next_to_a_4_face(self):
        g = pentagon_host(quad_side=True)
        ledger = apply_rules(g)
        face = named_face(g, "a0", "a1", "a2", "a3", "a4")
        key = face_key(face.id)
        assert sorted(other.degree for other in Classification(g).across(face.id)) == [3, 3, 3, 3, 4]
        assert verdicts(g, ledger).case_of(key) == "11.2.1"
        assert gifts(ledger, key) == [("R4.1", Fraction(1, 3)), ("R4.1", Fraction(1, 3)), ("R4.2", Fraction(2, 3))]
        assert ledger.final[key] == Fraction(1, 3)

    def test_11_2_2_surrounded_by_3_faces(self):
        g = pentagon_host()
        ledger = apply_rules(g)
        face = named_face(g, "a0", "a1", "a2", "a3", "a4")
        key = face_key(face.id)
        assert [other.degree for other in Classification(g).across(face.id)] == [3] * 5
        assert verdicts(g, ledger).case_of(key) == "11.2.2"
        assert gifts(ledger, key) == [("R4.2", Fraction(1))]
        assert ledger.final[key] == 0

    def test_13_1_extreme_triangle_on_one_outer_vertex(self):
        g = octahedron()
        ledger = apply_rules(g)
        key = face_key(named_face(g, 0, 3, 4).id)
        assert verdicts(g, ledger).case_of(key) == "13.1"
        assert sorted((t.source, t.amount) for t in ledger.into(key)) == [
            (outer_key(g), Fraction(2)),
            ("v3", Fraction(1, 2)),
            ("v4", Fraction(1, 2)),
        ]
        assert ledger.final[key] == 0

    def test_13_2_extreme_triangle_on_an_outer_edge(self):
        g = k4()
        ledger = apply_rules(g)
        key = face_key(named_face(g, 0, 1, 3).id)
        assert verdicts(g, ledger).case_of(key) == "13.2"
        assert gifts(ledger, key) == [("R7", Fraction(1, 2)), ("R7", Fraction(5, 2))]
        assert ledger.final[key] == 0

    def test_face_case_direct(self):
        g = pentagon_host()
        c = Classification(g)
        assert face_case(g, c, named_face(g, "a0", "a1", "a2", "a3", "a4")) == "11.2.2"
        assert face_case(g, c, g.face(g.outer_face)) == "14"


class TestVertexCase:
    def test_flaw_host(self):
        g = flaw_host()
        c = Classification(g)
        assert vertex_case(g, c, g.vertex("u")) == "1.3"
        assert vertex_case(g, c, g.vertex("x")) == "2.1"
        assert vertex_case(g, c, g.vertex("t1")) == "14.boundary"

    def test_square_host(self):
        g = square_host()
        c = Classification(g)
        assert vertex_case(g, c, g.vertex("a0")) == "2.1"
        assert vertex_case(g, c, g.vertex("a1")) == "1.1.2"

    def test_poor_pentagon_host(self):
        g = poor_pentagon_host()
        c = Classification(g)
        assert {vertex_case(g, c, g.vertex("a{}".format(i))) for i in range(5)} == {"1.1.2"}

    def test_low_degree(self):
        g = k4()
        with pytest.raises(UnclassifiableElement):
            vertex_case(g, Classification(g), 3)


class TestRuleAmounts:
    def test_amounts_are_listed(self):
        assert Fraction(9, 10) in RULE_AMOUNTS["R1.1"]
        assert Fraction(5, 2) in RULE_AMOUNTS["R7"]

    @pytest.mark.parametrize("factory", [k4, octahedron, wheel_host])
    def test_audit(self, factory):
        g = factory()
        assert audit_amounts(apply_rules(g), g) == []

    def test_audit_flags_odd_amounts(self):
        g = k4()
        ledger = apply_rules(g)
        ledger.add("v3", "f0", Fraction(1, 7), "R1.1")
        assert [t.amount for t in audit_amounts(ledger, g)] == [Fraction(1, 7)]


class TestVerdicts:
    def test_k4(self):
        g = k4()
        summary = verdicts(g, apply_rules(g))
        data = summary.to_json()
        assert set(data) == {"verdicts", "negatives", "unexplained", "unclassifiable", "trivial"}
        assert set(data["negatives"]) == {"v3", outer_key(g)}
        assert [item["element"] for item in data["unclassifiable"]] == ["v3"]
        assert summary.case_of("v0") == "14.boundary"
        assert summary.case_of(outer_key(g)) == "14"
        face = g.bounded_faces()[0]
        assert summary.case_of(face_key(face.id)) == "13.2"

    def test_negative_vertex_is_explained(self):
        g = k4()
        summary = verdicts(g, apply_rules(g))
        (v3,) = [v for v in summary.verdicts if v.element == "v3"]
        assert not v3.nonnegative
        assert [violation.kind for violation in v3.violations] == ["interior-low-degree"]
        assert "v3" not in [v.element for v in summary.unexplained]

    def test_strict(self):
        g = k4()
        with pytest.raises(UnclassifiableElement):
            verdicts(g, apply_rules(g), strict=True)

    def test_octahedron_cases(self):
        g = octahedron()
        summary = verdicts(g, apply_rules(g))
        assert summary.case_of("v3") == "1.1.1"
        inner = next(face for face in g.bounded_faces() if set(face.vertices) == {3, 4, 5})
        assert summary.case_of(face_key(inner.id)) == "9.1"
        assert {v.element for v in summary.negatives} == {"v3", "v4", "v5", outer_key(g)}

    def test_triangle_is_trivially_clean(self):
        g = triangle()
        summary = verdicts(g, apply_rules(g))
        (inside,) = g.bounded_faces()
        assert summary.trivial
        assert summary.negatives == []
        assert summary.case_of(face_key(inside.id)) == "trivial"
        assert {summary.case_of("v{}".format(v)) for v in range(3)} == {"14.boundary"}
        assert summary.to_json()["negatives"] == []


class TestOuterFace:
    def test_k4(self):
        g = k4()
        accounting = outer_face_accounting(g, apply_rules(g))
        assert accounting.f3_edge == 3
        assert accounting.f_other == 0
        assert accounting.boundary_edges == 3
        assert accounting.mu_star_d == Fraction(-21, 2)
        assert accounting.consistent
        assert not accounting.positive
        assert accounting.printed_value == Fraction(9, 5)

    def test_octahedron(self):
        g = octahedron()
        accounting = outer_face_accounting(g, apply_rules(g))
        assert (accounting.f3_edge, accounting.f_other, accounting.boundary_edges) == (3, 3, 6)
        assert accounting.consistent
        assert accounting.to_json()["mu_star_d"] == "-21/2"

    def test_triangle(self):
        g = triangle()
        accounting = outer_face_accounting(g, apply_rules(g))
        assert (accounting.f3_edge, accounting.f_other, accounting.boundary_edges) == (0, 0, 0)
        assert accounting.mu_star_d == -9
        assert accounting.consistent


class TestRendering:
    def test_render(self):
        text = render_ledger(apply_rules(k4()))
        assert text.endswith("total -12\n")
        assert "R7 f" in text

    def test_fractions(self):
        assert format_fraction(Fraction(-21, 2)) == "-21/2"
        assert format_fraction(4) == "4"
        assert parse_fraction("6/5") == Fraction(6, 5)
