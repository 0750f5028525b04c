"""Property-based tests over randomly drawn fields, codes and support graphs."""

import math

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from lrckit.bounds import greedy_certificate, redundancy_bound
from lrckit.code_model import (
    LinearCode,
    distance_by_enumeration,
    distance_by_subset_rank,
    field_for_order,
    locality_profile,
    weight_distribution,
)
from lrckit.field_algebra import MatrixGF, kernel_basis, make_field, rank, solve
from lrckit.gpc import hall_equivalence_sweep, sample_gpc, support_graph_from_spec
from lrckit.utils import unit_vector

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]
CODE_ORDERS = (2, 3, 5, 7)
RELAXED = [HealthCheck.too_slow]


@st.composite
def field_elements(draw, count):
    p, m = draw(st.sampled_from(FIELDS))
    spec = make_field(p, m)
    entry = st.integers(0, spec.order - 1)
    values = draw(st.lists(entry, min_size=count, max_size=count))
    return [spec.element(v) for v in values]


@st.composite
def matrices(draw):
    p, m = draw(st.sampled_from(FIELDS))
    spec = make_field(p, m)
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    entry = st.integers(0, spec.order - 1)
    row = st.lists(entry, min_size=cols, max_size=cols)
    values = draw(st.lists(row, min_size=rows, max_size=rows))
    x = draw(st.lists(entry, min_size=cols, max_size=cols))
    return MatrixGF(spec, values), x


@st.composite
def codes(draw):
    """Systematic codes [I_k | P] with random parity columns."""
    q = draw(st.sampled_from(CODE_ORDERS))
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k, 12))
    entry = st.integers(0, q - 1)
    column = st.lists(entry, min_size=k, max_size=k)
    parities = draw(st.lists(column, min_size=n - k, max_size=n - k))
    units = [unit_vector(k, i) for i in range(k)]
    return LinearCode(field_for_order(q), units + parities, systematic_info=range(k))


@st.composite
def support_graphs(draw):
    k = draw(st.integers(1, 3))
    h = draw(st.integers(1, 2))
    neighborhoods = [
        draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=k, unique=True))
        for _ in range(h)
    ]
    text = ";".join(",".join(str(i) for i in sorted(nb)) for nb in neighborhoods)
    return support_graph_from_spec(text, k=k)


class TestFieldProperties:
    @settings(deadline=None)
    @given(field_elements(3))
    def test_ring_laws(self, elements):
        a, b, c = elements
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a - a == 0

    @settings(deadline=None)
    @given(field_elements(2))
    def test_division_inverts_multiplication(self, elements):
        a, b = elements
        assume(b.value != 0)
        assert (a * b) / b == a


class TestLinearAlgebraProperties:
    @settings(deadline=None)
    @given(matrices())
    def test_rank_nullity(self, case):
        matrix, _ = case
        assert rank(matrix) + len(kernel_basis(matrix)) == matrix.cols

    @settings(deadline=None)
    @given(matrices())
    def test_solve_consistent_system(self, case):
        matrix, x = case
        rhs = matrix @ x
        solution = solve(matrix, rhs)
        assert solution is not None
        assert matrix @ solution == rhs


def _check_code(code):
    d = distance_by_subset_rank(code)
    assert distance_by_enumeration(code) == d
    weights = weight_distribution(code)
    assert sum(weights) == code.q**code.k
    assert min(w for w in range(1, code.n + 1) if weights[w]) == d

    r = locality_profile(code).information_locality
    if math.isinf(r):
        return
    assert code.n - code.k >= redundancy_bound(code.k, r, d)
    trace = greedy_certificate(code, r)
    assert trace.certified
    assert trace.distance_ceiling >= d


class TestCodeProperties:
    """Distance agreement, the redundancy bound and its greedy certificate."""

    @settings(
        max_examples=60, deadline=None, derandomize=True, suppress_health_check=RELAXED
    )
    @given(codes())
    def test_random_codes(self, code):
        _check_code(code)

    @pytest.mark.slow
    @settings(
        max_examples=1000,
        deadline=None,
        derandomize=True,
        suppress_health_check=RELAXED,
    )
    @given(codes())
    def test_random_codes_extended(self, code):
        _check_code(code)


class TestHallProperties:
    @settings(max_examples=20, deadline=None)
    @given(support_graphs(), st.integers(0, 1000))
    def test_decodable_exactly_when_hall_holds(self, graph, seed):
        gcode = sample_gpc(graph, 65537, seed=seed)
        report = hall_equivalence_sweep(gcode, seed=seed)
        assert report.agree
