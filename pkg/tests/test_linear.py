from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_games.linear import (
    nonnegative_feasibility,
    rank,
    residual,
    solve_linear_system,
    vertex_enumeration_feasible,
    verify_farkas,
    verify_inconsistency,
)


@st.composite
def systems(draw, max_rows=4, max_cols=6, lo=-3, hi=3):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    A = [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(lo, hi)) for _ in range(m)]
    return A, b


def test_trivial_feasible():
    res = nonnegative_feasibility([[1, 1]], [1])
    assert res.feasible and sum(res.x) == 1 and min(res.x) >= 0


def test_trivial_infeasible_certificate():
    res = nonnegative_feasibility([[1, 1]], [-1])
    assert not res.feasible
    assert verify_farkas([[1, 1]], [-1], res.certificate)


def test_farkas_check_rejects_a_bad_vector():
    assert not verify_farkas([[1, -1]], [1], [Fraction(1)])
    assert not verify_farkas([[1, 1]], [1], [Fraction(1)])


def test_exact_rationals():
    res = nonnegative_feasibility([[3, 0], [0, 7]], [1, 2])
    assert res.x == (Fraction(1, 3), Fraction(2, 7))


@settings(max_examples=300, deadline=None)
@given(systems())
def test_simplex_agrees_with_vertex_enumeration(system):
    A, b = system
    res = nonnegative_feasibility(A, b)
    oracle = vertex_enumeration_feasible(A, b)
    assert res.feasible == (oracle is not None)
    if res.feasible:
        assert min(res.x) >= 0
        assert not any(residual(A, res.x, b))
        assert not any(residual(A, oracle, b)) and min(oracle) >= 0
    else:
        assert verify_farkas(A, b, res.certificate)


@settings(max_examples=100, deadline=None)
@given(systems(max_rows=5, max_cols=8, lo=0, hi=1))
def test_zero_one_systems(system):
    A, b = system
    res = nonnegative_feasibility(A, b)
    assert res.feasible == (vertex_enumeration_feasible(A, b) is not None)
    if not res.feasible:
        assert verify_farkas(A, b, res.certificate)


@settings(max_examples=300, deadline=None)
@given(systems())
def test_gaussian_elimination(system):
    A, b = system
    res = solve_linear_system(A, b)
    augmented = [row + [bi] for row, bi in zip(A, b)]
    # Rouche-Capelli as the oracle
    assert res.feasible == (rank(A) == rank(augmented))
    if res.feasible:
        assert not any(residual(A, res.x, b))
    else:
        assert verify_inconsistency(A, b, res.certificate)


def test_inconsistency_check_rejects_a_bad_vector():
    assert not verify_inconsistency([[1], [1]], [0, 1], [Fraction(1), Fraction(1)])
    assert verify_inconsistency([[1], [1]], [0, 1], [Fraction(1), Fraction(-1)])


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
