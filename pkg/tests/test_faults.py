"""Signature tables, probe simulation, and decoding."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seppaths import (
    Diagnosis,
    ProbeReport,
    TargetSet,
    decode,
    edge_system,
    incidence,
    make_system,
    signature_table,
    simulate_probes,
    vertex_system,
)
from seppaths.errors import NotCovering, NotSeparating, UnknownElement


@pytest.fixture
def p3_table(p3):
    fs = make_system(p3, [(0, 1), (1, 2)])
    return fs, signature_table(fs, TargetSet.edges(p3))


class TestSignatureTable:
    def test_p3_edges(self, p3_table):
        _, table = p3_table
        assert table == {(0, 1): frozenset({0}), (1, 2): frozenset({1})}

    def test_depth2_edge_system(self, depth2):
        fs = edge_system(depth2)
        table = signature_table(fs, TargetSet.edges(depth2))
        assert len(table) == 6
        assert len(set(table.values())) == 6
        assert all(table.values())

    def test_not_separating(self, p4):
        fs = make_system(p4, [(0, 1, 2, 3)])
        with pytest.raises(NotSeparating, match=r"NotSeparated\(0,1\)"):
            signature_table(fs, TargetSet.vertices(p4))

    def test_not_covering(self, p4):
        # signatures {0}, {0,1}, {1}, {} are distinct, but vertex 3 is bare
        fs = make_system(p4, [(0, 1), (1, 2)])
        with pytest.raises(NotCovering, match=r"NotCovered\(3\)"):
            signature_table(fs, TargetSet.vertices(p4))


class TestSimulate:
    def test_edge_fault(self, p3_table):
        fs, _ = p3_table
        assert simulate_probes(fs, (0, 1)).outcomes == (False, True)

    def test_no_fault(self, p3_table):
        fs, _ = p3_table
        assert simulate_probes(fs, None).outcomes == (True, True)

    def test_vertex_fault_matches_incidence(self, double_star):
        fs = vertex_system(double_star)
        report = simulate_probes(fs, 0)
        assert report.failed == incidence(fs, 0)

    def test_unknown_fault(self, p3_table):
        fs, _ = p3_table
        with pytest.raises(UnknownElement):
            simulate_probes(fs, 9)


class TestDecode:
    def test_identified(self, p3_table):
        _, table = p3_table
        diag = decode(table, ProbeReport((False, True)))
        assert diag.kind == Diagnosis.IDENTIFIED
        assert diag.element == (0, 1)

    def test_no_fault(self, p3_table):
        _, table = p3_table
        assert decode(table, ProbeReport((True, True))).kind == Diagnosis.NO_FAULT

    def test_inconsistent(self, p3_table):
        _, table = p3_table
        diag = decode(table, ProbeReport((False, False)))
        assert diag.kind == Diagnosis.INCONSISTENT
        assert diag.failed == {0, 1}

    def test_round_trip_double_star_vertices(self, double_star):
        fs = vertex_system(double_star)
        table = signature_table(fs, TargetSet.vertices(double_star))
        for v in double_star.vertices:
            diag = decode(table, simulate_probes(fs, v))
            assert diag.kind == Diagnosis.IDENTIFIED and diag.element == v

    @settings(max_examples=80, deadline=None)
    @given(st.tuples(*[st.booleans()] * 4))
    def test_never_identifies_without_exact_signature(self, outcomes):
        from seppaths import parse_tree
        from conftest import DEPTH2_TEXT

        depth2 = parse_tree(DEPTH2_TEXT)
        fs = edge_system(depth2)
        table = signature_table(fs, TargetSet.edges(depth2))
        diag = decode(table, ProbeReport(outcomes))
        if diag.kind == Diagnosis.IDENTIFIED:
            assert table[diag.element] == diag.failed
        elif diag.kind == Diagnosis.NO_FAULT:
            assert not diag.failed
        else:
            assert diag.failed not in set(table.values())
