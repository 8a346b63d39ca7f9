"""Exact linear algebra and polynomial substrate."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darbouxlie.exactmath import (MissingVariable, Poly, RatMatrix,
                                  ideal_membership, kernel_basis,
                                  normalize_poly, poly_eval, rank, rref,
                                  solve)

x = Poly.var


def test_rref_identity():
    m = RatMatrix.identity(3)
    red, pivots = rref(m)
    assert red == m
    assert pivots == [0, 1, 2]


def test_rref_zero():
    m = RatMatrix.zero(2, 4)
    red, pivots = rref(m)
    assert red == m
    assert pivots == []


def test_rref_rank_one():
    red, pivots = rref(RatMatrix([[2, 4], [1, 2]]))
    assert red == RatMatrix([[1, 2], [0, 0]])
    assert pivots == [0]


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(4)) == []


def test_kernel_zero_full():
    ker = kernel_basis(RatMatrix.zero(2, 3))
    assert len(ker) == 3


def test_kernel_plane():
    ker = kernel_basis(RatMatrix([[1, 1, 0]]))
    assert len(ker) == 2
    for v in ker:
        assert v[0] + v[1] == 0


def test_poly_eval_examples():
    assert poly_eval(x(2) * x(3), {2: 1, 3: 0}) == 0
    assert poly_eval(x(4) ** 2, {4: 3}) == 9
    p = 2 * x(0) * x(5) + 3 * x(2) * x(3)
    assert poly_eval(p, {0: 1, 5: 1, 2: 2, 3: 1}) == 8


def test_poly_eval_missing_variable():
    with pytest.raises(MissingVariable):
        poly_eval(x(0) + x(3), {0: 1})


def test_ideal_membership_trivial():
    f1, f2, f3 = x(2) * x(3), x(2) * x(5), x(4) ** 2
    cofs = ideal_membership(f1, [f1, f2, f3], 0)
    assert cofs == [Poly.const(1), Poly.zero(), Poly.zero()]


def test_ideal_membership_infeasible():
    assert ideal_membership(x(4) ** 2, [x(2) * x(3)], 2) is None


def test_ideal_membership_combination():
    target = 2 * x(2) * x(3) + x(4) ** 2
    cofs = ideal_membership(target, [x(2) * x(3), x(4) ** 2], 0)
    assert cofs == [Poly.const(2), Poly.const(1)]


def test_ideal_membership_nonconstant_cofactor():
    # x5^2 = x5 * x5 needs a degree-1 cofactor
    assert ideal_membership(x(4) ** 2, [x(4)], 0) is None
    cofs = ideal_membership(x(4) ** 2, [x(4)], 1)
    assert cofs is not None and cofs[0] == x(4)


small_rats = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))


def polys(max_terms=4):
    mono = st.lists(st.tuples(st.integers(0, 3), st.integers(1, 2)),
                    max_size=2).map(
        lambda ps: tuple(sorted(dict(ps).items())))
    term = st.tuples(mono, small_rats)
    return st.lists(term, max_size=max_terms).map(Poly)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_distributivity(p, q, r):
    assert (p + q) * r == p * r + q * r


@settings(max_examples=60, deadline=None)
@given(polys())
def test_canonical_zero(p):
    assert (p - p).terms == {}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_rats, min_size=4, max_size=4),
                min_size=1, max_size=5))
def test_rref_idempotent_and_kernel(rows):
    m = RatMatrix(rows)
    red, pivots = rref(m)
    again, pivots2 = rref(red)
    assert again == red and pivots == pivots2
    assert rank(red) == rank(m) == len(pivots)
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert all(c == 0 for c in m.matvec(v))


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3), polys(max_terms=3))
def test_ideal_membership_roundtrip(g1, g2):
    target = g1 * 2 - g2
    cofs = ideal_membership(target, [g1, g2], 0)
    if cofs is not None:
        total = Poly.zero()
        for c, g in zip(cofs, [g1, g2]):
            total = total + c * g
        assert total == target


def test_solve_consistency():
    m = RatMatrix([[1, 2], [3, 4]])
    sol = solve(m, [5, 6])
    assert sol is not None
    assert list(m.matvec(sol)) == [Fraction(5), Fraction(6)]
    assert solve(RatMatrix([[1, 1], [1, 1]]), [0, 1]) is None


def test_normalize_poly():
    p = Fraction(2, 3) * x(0) - Fraction(4, 3) * x(1)
    n = normalize_poly(p)
    assert n == x(0) - 2 * x(1)
