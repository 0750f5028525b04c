"""Tests for linear codes: encoding, distance, locality and hypergraphs."""

import math

import pytest

from lrckit.code_model import (
    LinearCode,
    certify_locality,
    distance_by_enumeration,
    distance_by_subset_rank,
    distance_checks,
    dual_basis,
    encode,
    field_for_order,
    has_locality_via_hypergraph,
    information_locality_via_hypergraph,
    locality,
    locality_profile,
    min_distance,
    recovery_hypergraph,
    support_graph_of,
    verify_edge,
    weight_distribution,
)
from lrckit.config import Budgets
from lrckit.constructions import build_canonical_d4, build_pyramid
from lrckit.exceptions import BudgetExceededError, DimensionError, ParameterError
from lrckit.models import HyperEdge


@pytest.fixture
def identity():
    return LinearCode(field_for_order(2), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def repetition():
    return LinearCode(field_for_order(2), [(1,), (1,), (1,)])


@pytest.fixture
def single_parity():
    return LinearCode(field_for_order(5), [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


@pytest.fixture
def hamming():
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    parities = [(1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)]
    return LinearCode(field_for_order(2), units + parities)


class TestLinearCode:
    """Test code construction and validation."""

    def test_dimensions(self, single_parity):
        assert (single_parity.n, single_parity.k, single_parity.q) == (4, 3, 5)
        assert single_parity.generator.shape == (3, 4)

    def test_columns_must_span(self):
        with pytest.raises(ParameterError, match="dimension"):
            LinearCode(field_for_order(2), [(1, 0), (1, 0)])

    def test_ragged_columns(self):
        with pytest.raises(DimensionError):
            LinearCode(field_for_order(2), [(1, 0), (1,)])

    def test_systematic_info_checked(self):
        with pytest.raises(ParameterError, match="unit vector"):
            LinearCode(
                field_for_order(2), [(1, 0), (1, 1), (0, 1)], systematic_info=[0, 1]
            )

    def test_unit_positions_found(self, hamming):
        assert hamming.unit_positions() == (0, 1, 2, 3)
        assert hamming.missing_units() == []

    def test_with_metadata_keeps_columns(self, repetition):
        tagged = repetition.with_metadata(construction="repetition")
        assert tagged == repetition
        assert tagged.metadata["construction"] == "repetition"
        assert repetition.metadata == {}

    def test_generator_is_read_only(self, repetition):
        with pytest.raises(ValueError):
            repetition.generator[0, 0] = 0


class TestEncode:
    def test_identity(self, identity):
        assert encode(identity, [1, 0, 1]) == (1, 0, 1)

    def test_repetition(self, repetition):
        assert encode(repetition, [1]) == (1, 1, 1)

    def test_single_parity(self, single_parity):
        assert encode(single_parity, [1, 2, 3]) == (1, 2, 3, 1)

    def test_wrong_length(self, single_parity):
        with pytest.raises(DimensionError):
            encode(single_parity, [1, 2])


class TestDistance:
    def test_repetition(self, repetition):
        assert min_distance(repetition) == 3

    def test_hamming(self, hamming):
        assert min_distance(hamming) == 3
        assert distance_checks(hamming) == {"subset-rank": 3, "enumeration": 3}

    def test_pyramid(self):
        code = build_pyramid(4, 2, 4, 7)
        assert distance_by_subset_rank(code) == 4
        assert distance_by_enumeration(code) == 4

    def test_identity(self, identity):
        assert min_distance(identity, method="subset-rank") == 1

    def test_hamming_weight_distribution(self, hamming):
        assert weight_distribution(hamming) == [1, 0, 0, 7, 7, 0, 0, 1]

    def test_unknown_method(self, hamming):
        with pytest.raises(ParameterError):
            min_distance(hamming, method="guess")

    def test_budget_exceeded(self, hamming):
        tight = Budgets(distance_subsets=4, distance_codewords=4)
        with pytest.raises(BudgetExceededError):
            min_distance(hamming, budgets=tight)


class TestLocality:
    """Test per-coordinate locality and profiles."""

    def test_repetition(self, repetition):
        assert locality(repetition, 0) == 1

    def test_single_parity(self, single_parity):
        assert locality(single_parity, 3) == 3
        assert locality(single_parity, 0) == 3

    def test_canonical_d4_global_parity(self):
        code = build_canonical_d4(4, 2, 5)
        assert locality(code, code.n - 2) == 3

    def test_identity_is_infinite(self, identity):
        assert math.isinf(locality(identity, 0))

    def test_zero_column(self):
        code = LinearCode(field_for_order(2), [(1,), (0,)])
        cert = certify_locality(code, 1)
        assert cert.locality == 0
        assert cert.repair_set == ()

    def test_certificate_rebuilds_column(self, single_parity):
        cert = certify_locality(single_parity, 3)
        assert cert.repair_set == (0, 1, 2)
        assert cert.coefficients == (1, 1, 1)

    def test_restricted_candidates(self, single_parity):
        cert = certify_locality(single_parity, 0, candidates=[1, 2])
        assert math.isinf(cert.locality)
        assert cert.repair_set is None

    def test_coordinate_out_of_range(self, single_parity):
        with pytest.raises(ParameterError):
            locality(single_parity, 4)

    def test_pyramid_profile(self):
        profile = locality_profile(build_pyramid(4, 2, 4, 7))
        assert profile.localities[:6] == (2, 2, 2, 2, 2, 2)
        assert all(3 <= v <= 4 for v in profile.localities[6:])
        assert profile.information_locality == 2
        assert profile.overall == max(profile.localities)

    def test_profile_independent_of_workers(self):
        code = build_canonical_d4(4, 2, 5)
        assert locality_profile(code, workers=3) == locality_profile(code)

    def test_identity_information_locality(self, identity):
        assert math.isinf(locality_profile(identity).information_locality)

    def test_profile_budget(self, single_parity):
        with pytest.raises(BudgetExceededError):
            locality_profile(single_parity, Budgets(locality_rank_checks=2))


class TestRecoveryHypergraph:
    """Test H_r and the hypergraph characterizations."""

    def test_repetition(self, repetition):
        graph = recovery_hypergraph(repetition, 1)
        assert [e.indices for e in graph.edges] == [(0, 1), (0, 2), (1, 2)]
        assert all(e.coefficients == (1, 1) for e in graph.edges)

    def test_identity_has_no_edges(self, identity):
        graph = recovery_hypergraph(identity, 2)
        assert graph.edges == ()
        assert graph.isolated == (0, 1, 2)

    def test_canonical_d4(self):
        code = build_canonical_d4(4, 2, 5)
        graph = recovery_hypergraph(code, 2)
        assert [e.indices for e in graph.edges] == [(0, 1, 4), (2, 3, 5)]
        assert graph.isolated == (6, 7)
        assert all(verify_edge(code, e) for e in graph.edges)

    def test_verify_edge_rejects_bad_coefficients(self, repetition):
        edge = HyperEdge(indices=(0, 1), coefficients=(1, 0))
        assert not verify_edge(repetition, edge)

    def test_locality_characterization(self, single_parity):
        assert has_locality_via_hypergraph(single_parity, 3)
        assert not has_locality_via_hypergraph(single_parity, 2)

    def test_information_locality_characterization(self):
        code = build_pyramid(4, 2, 4, 7)
        assert information_locality_via_hypergraph(code, 2)
        assert not information_locality_via_hypergraph(code, 1)

    def test_budget(self, hamming):
        with pytest.raises(BudgetExceededError):
            recovery_hypergraph(hamming, 3, Budgets(hypergraph_subsets=10))

    def test_negative_r(self, hamming):
        with pytest.raises(ParameterError):
            recovery_hypergraph(hamming, -1)


class TestDualAndSupportGraph:
    def test_identity_dual_is_empty(self, identity):
        assert dual_basis(identity) == []

    def test_repetition_dual(self, repetition):
        assert dual_basis(repetition) == [(1, 1, 0), (1, 0, 1)]

    def test_single_parity_dual(self, single_parity):
        assert dual_basis(single_parity) == [(4, 4, 4, 1)]

    def test_support_graph(self, single_parity):
        graph, info, parities = support_graph_of(single_parity)
        assert info == (0, 1, 2)
        assert parities == (3,)
        assert graph.neighborhoods == ((0, 1, 2),)

    def test_support_graph_needs_units(self):
        code = LinearCode(field_for_order(2), [(1, 1), (0, 1), (1, 1)])
        with pytest.raises(ParameterError, match="systematic"):
            support_graph_of(code)
