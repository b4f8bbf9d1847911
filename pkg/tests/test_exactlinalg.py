from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from etqft.errors import PreconditionError, ShapeError
from etqft.exactlinalg import (
    RationalMatrix,
    compose,
    direct_sum,
    hstack,
    inverse,
    kernel_basis,
    kron,
    left_inverse,
    mat,
    pullback,
    rank,
    rref,
    solve,
    to_fraction,
    vstack,
)
from oracles import from_sympy, sym_rank, to_sympy
from strategies import matrices


def test_entries_are_exact():
    m = mat([["1/3", 2], [Fraction(-1, 2), "0"]])
    assert m[0, 0] == Fraction(1, 3)
    assert m[1, 0] == Fraction(-1, 2)
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_ragged_rows_rejected():
    with pytest.raises(ShapeError):
        mat([[1, 2], [3]])


def test_compose_shape_error():
    with pytest.raises(ShapeError):
        compose(mat([[1, 2]]), mat([[1, 2]]))


def test_small_products():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert compose(a, b) == mat([[2, 1], [4, 3]])
    assert kron(mat([[1], [2]]), mat([[1, 1]])) == mat([[1, 1], [2, 2]])
    assert direct_sum(mat([[2]]), mat([[3]])) == mat([[2, 0], [0, 3]])


def test_permutation_sends_basis_vectors():
    p = RationalMatrix.permutation([2, 0, 1])
    assert p.col(0) == [0, 0, 1]
    assert p.col(1) == [1, 0, 0]


@given(matrices(max_rows=5, max_cols=5))
def test_rref_matches_sympy(m):
    if m.rows == 0 or m.cols == 0:
        assert rank(m) == 0
        return
    expected, pivots = to_sympy(m).rref()
    r, ours = rref(m)
    assert ours == tuple(pivots)
    assert r.tolist() == from_sympy(expected)


@given(matrices(max_rows=5, max_cols=5))
def test_kernel_is_a_basis_of_the_null_space(m):
    k = kernel_basis(m)
    assert k.rows == m.cols
    assert k.cols == m.cols - sym_rank(m)
    assert compose(m, k).is_zero()
    assert rank(k) == k.cols


@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
def test_rank_of_product_bounded(a, b):
    if a.cols != b.rows:
        return
    assert rank(compose(a, b)) <= min(rank(a), rank(b))


@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_inverse(m):
    if sym_rank(m) < m.rows:
        with pytest.raises(PreconditionError):
            inverse(m)
        return
    inv = inverse(m)
    assert compose(inv, m) == RationalMatrix.identity(m.rows)
    assert compose(m, inv) == RationalMatrix.identity(m.rows)


@given(matrices(max_rows=5, max_cols=3))
def test_left_inverse(m):
    if sym_rank(m) < m.cols:
        with pytest.raises(PreconditionError):
            left_inverse(m)
        return
    assert compose(left_inverse(m), m) == RationalMatrix.identity(m.cols)


@given(matrices(max_rows=4, max_cols=4), st.data())
def test_solve_consistent_and_inconsistent(a, data):
    x = data.draw(matrices(rows=a.cols, cols=2))
    b = compose(a, x)
    sol = solve(a, b)
    assert sol is not None and compose(a, sol) == b
    c = data.draw(matrices(rows=a.rows, cols=1))
    sol = solve(a, c)
    consistent = sym_rank(hstack(a, c)) == sym_rank(a)
    assert (sol is not None) == consistent
    if sol is not None:
        assert compose(a, sol) == c


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3),
       matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_kron_mixed_product(a, b, c, d):
    if a.cols != c.rows or b.cols != d.rows:
        return
    assert compose(kron(a, b), kron(c, d)) == kron(compose(a, c), compose(b, d))


@given(matrices())
def test_json_roundtrip(m):
    assert RationalMatrix.from_json(m.to_json()) == m


def test_from_json_rejects_malformed():
    with pytest.raises(ShapeError):
        RationalMatrix.from_json({"rows": 2, "cols": 1, "entries": [["1"]]})
    with pytest.raises(ShapeError):
        RationalMatrix.from_json({"rows": 1, "entries": [["1"]]})


@given(st.integers(0, 3).flatmap(
    lambda c0: st.integers(0, 4).flatmap(
        lambda c1: st.tuples(matrices(rows=c0, cols=c1), matrices(rows=c0, cols=c1)))))
def test_pullback_is_the_fibre_product(st_pair):
    s, t = st_pair
    pb = pullback(s, t)
    assert compose(s, pb.p) == compose(t, pb.q)
    # dimension of {(g, f) : s g = t f}
    assert pb.dim == 2 * s.cols - sym_rank(hstack(s, -t))
    assert rank(vstack(pb.p, pb.q)) == pb.dim
    assert compose(pb.coords, pb.embed) == RationalMatrix.identity(pb.dim)
