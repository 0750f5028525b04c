"""Tests for the redundancy bound, greedy certificate and structure checks."""

import pytest

from lrckit.bounds import (
    analyze_code,
    check_structure,
    detect_canonical,
    greedy_certificate,
    guarded_section,
    is_optimal,
    parity_locality_floor,
    redundancy_bound,
    verify_parity_floor,
    verify_row_subcodes,
)
from lrckit.code_model import LinearCode, field_for_order
from lrckit.config import Budgets
from lrckit.constructions import (
    build_canonical_d4,
    build_optimal_general,
    build_pyramid,
    build_uniform_locality,
)
from lrckit.exceptions import (
    BudgetExceededError,
    NotApplicableError,
    NotSystematicError,
    ParameterError,
)

BIG_Q = 65537


@pytest.fixture(scope="module")
def pyramid():
    return build_pyramid(4, 2, 4, 7)


@pytest.fixture(scope="module")
def canonical_d4():
    return build_canonical_d4(4, 2, 5)


@pytest.fixture(scope="module")
def optimal_general():
    return build_optimal_general(6, 3, 4, BIG_Q, seed=0)


@pytest.fixture(scope="module")
def uniform():
    return build_uniform_locality(8, 4, 3, 4, BIG_Q, seed=0)


class TestRedundancyBound:
    def test_values(self):
        assert redundancy_bound(4, 2, 4) == 4
        assert redundancy_bound(7, 7, 2) == 1
        assert redundancy_bound(5, 2, 3) == 4

    def test_rejects_zero(self):
        with pytest.raises(ParameterError):
            redundancy_bound(4, 0, 4)


class TestIsOptimal:
    def test_pyramid(self, pyramid):
        assert is_optimal(pyramid, 2)

    def test_extra_parity_is_not_optimal(self, pyramid):
        padded = LinearCode(pyramid.field, pyramid.points + (pyramid.points[-1],))
        assert not is_optimal(padded, 2)

    def test_locality_too_small(self, pyramid):
        assert not is_optimal(pyramid, 1)

    def test_uniform(self, uniform):
        assert is_optimal(uniform, 3)


class TestGreedyCertificate:
    """Test the set-growing certificate of the bound."""

    def test_pyramid(self, pyramid):
        trace = greedy_certificate(pyramid, 2)
        assert len(trace.steps) == 2
        assert trace.final_set == (0, 1, 2, 4)
        assert trace.final_rank == 3
        assert trace.required_size == 4
        assert trace.certified
        assert trace.case == 2
        assert trace.distance_ceiling == 4
        assert trace.steps[1].truncated

    def test_repetition_runs_no_steps(self):
        code = LinearCode(field_for_order(2), [(1,), (1,), (1,)])
        trace = greedy_certificate(code, 1)
        assert trace.steps == ()
        assert trace.final_set == ()
        assert trace.required_size == 0
        assert trace.certified

    def test_uniform(self, uniform):
        trace = greedy_certificate(uniform, 3)
        assert trace.certified
        assert len(trace.final_set) >= 4

    def test_locality_too_large(self, pyramid):
        with pytest.raises(NotApplicableError):
            greedy_certificate(pyramid, 1)


class TestStructure:
    def test_canonical_d4(self, canonical_d4):
        report = check_structure(canonical_d4, 2)
        assert report.applicable
        assert report.holds
        assert report.edges == ((0, 1, 4), (2, 3, 5))
        assert report.isolated == (6, 7)

    def test_optimal_general(self, optimal_general):
        report = check_structure(optimal_general, 3)
        assert report.holds
        assert len(report.edges) == 2
        assert all(len(e) == 4 for e in report.edges)
        assert len(report.isolated) == 2

    def test_large_distance_skips_edge_count(self):
        report = check_structure(build_pyramid(4, 2, 5, 11), 2)
        assert report.applicable
        assert any("d < r + 3" in u for u in report.unmet)
        assert report.edges
        counts = [c for c in report.clauses if c.name == "k/r edges"]
        assert not counts[0].applicable

    def test_not_applicable_is_not_failure(self):
        identity = LinearCode(field_for_order(2), [(1, 0), (0, 1)])
        report = check_structure(identity, 1)
        assert not report.applicable
        assert not report.holds


class TestCanonical:
    """Test canonical partition detection and the parity-locality floor."""

    def test_canonical_d4(self, canonical_d4):
        detection = detect_canonical(canonical_d4, 2)
        assert detection.canonical
        partition = detection.partition
        assert partition.information == (0, 1, 2, 3)
        assert partition.local_parities == (4, 5)
        assert partition.global_parities == (6, 7)
        assert partition.local_supports == ((0, 1), (2, 3))

    def test_optimal_general(self, optimal_general):
        detection = detect_canonical(optimal_general, 3)
        assert detection.canonical
        assert len(detection.partition.global_parities) == 2

    def test_identity_is_not_applicable(self):
        units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        identity = LinearCode(field_for_order(2), units)
        with pytest.raises(NotApplicableError):
            detect_canonical(identity, 2)

    def test_needs_systematic_code(self):
        code = LinearCode(field_for_order(2), [(1, 1), (0, 1), (1, 1)])
        with pytest.raises(NotSystematicError):
            detect_canonical(code, 1)

    def test_floor_values(self):
        assert parity_locality_floor(4, 2, 4) == 3
        assert parity_locality_floor(6, 3, 4) == 5
        assert parity_locality_floor(6, 3, 3) == 6

    def test_floor_preconditions(self):
        with pytest.raises(NotApplicableError):
            parity_locality_floor(6, 3, 6)
        with pytest.raises(NotApplicableError):
            parity_locality_floor(4, 3, 4)

    def test_floor_attained_by_d4(self, canonical_d4):
        report = verify_parity_floor(canonical_d4, 2)
        assert report.holds
        assert report.attained
        assert set(report.global_parities.values()) == {3}

    def test_floor_attained_by_optimal_general(self, optimal_general):
        report = verify_parity_floor(optimal_general, 3)
        assert report.holds
        assert set(report.global_parities.values()) == {5}

    def test_floor_holds_for_pyramid(self, pyramid):
        report = verify_parity_floor(pyramid, 2)
        assert report.holds
        assert all(v >= 3 for v in report.global_parities.values())

    def test_row_subcodes_are_mds(self, canonical_d4):
        report = verify_row_subcodes(canonical_d4, 2)
        assert report.holds
        supports = [g.code_support for g in report.groups]
        assert supports == [(0, 1, 4, 6, 7), (2, 3, 5, 6, 7)]


class TestAnalyzeCode:
    def test_full_report(self, canonical_d4):
        report = analyze_code(canonical_d4)
        assert report.distance == 4
        assert report.r == 2
        assert report.bound == 4
        assert report.optimal
        assert report.greedy.certified
        assert report.structure.holds
        assert report.canonical.canonical
        assert report.parity_floor.holds
        assert report.row_subcodes.holds
        assert report.notes == {}

    def test_identity_skips_bound_checks(self):
        identity = LinearCode(field_for_order(2), [(1, 0), (0, 1)])
        report = analyze_code(identity)
        assert not report.optimal
        assert report.bound is None
        assert "locality" in report.notes

    def test_weights(self, pyramid):
        report = analyze_code(pyramid, weights=True)
        assert report.weights[0] == 1
        assert sum(report.weights) == 7**4

    def test_budget_note(self, pyramid):
        report = analyze_code(pyramid, budgets=Budgets(hypergraph_subsets=10))
        assert "hypergraph" in report.notes
        assert report.greedy is None


class TestGuardedSection:
    def test_records_skip(self):
        notes = {}

        def refuse():
            raise BudgetExceededError("span_vectors", 10, 1)

        assert guarded_section(notes, "supports", refuse) is None
        assert "span_vectors" in notes["supports"]

    def test_passes_value(self):
        notes = {}
        assert guarded_section(notes, "x", lambda: 3) == 3
        assert notes == {}
