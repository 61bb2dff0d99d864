from fractions import Fraction

from hypothesis import given, strategies as st

from torivan.feasibility import feasible, feasible_point


def test_simple_system():
    assert feasible_point([[1, 1], [1, -1]], [1, 0]) == [Fraction(1, 2), Fraction(1, 2)]


def test_negative_rhs_with_positive_row_is_infeasible():
    assert not feasible([[1, 1]], [-1])
    assert feasible_point([[1, 1]], [-1]) is None


def test_negative_rhs_is_flipped():
    assert feasible([[-1, -1]], [-1])


def test_empty_system():
    assert feasible([], [])
    assert feasible_point([], []) == []


def test_redundant_rows():
    rows = [[1, 2, 0], [2, 4, 0], [0, 0, 1]]
    x = feasible_point(rows, [3, 6, 5])
    assert x is not None
    assert all(v >= 0 for v in x)
    assert [sum(a * v for a, v in zip(row, x)) for row in rows] == [3, 6, 5]


def test_inconsistent_rows():
    assert not feasible([[1, 0], [1, 0]], [1, 2])


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_constructed_solutions_are_found(rows, x):
    rhs = [sum(a * v for a, v in zip(row, x)) for row in rows]
    point = feasible_point(rows, rhs)
    assert point is not None
    assert all(v >= 0 for v in point)
    assert [sum(a * v for a, v in zip(row, point)) for row in rows] == rhs
