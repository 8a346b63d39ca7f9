"""Derivation algebras, lifts, fundamental fields, orbit dimensions."""

import random
from fractions import Fraction

from darbouxlie.derivations import (derivation_basis, field_matrix_at,
                                    fundamental_fields, lift, orbit_dim,
                                    rank_at, vf_apply)
from darbouxlie.exactmath import Poly, RatMatrix, rank, span_contains
from darbouxlie.grassmann import MultiVector, blades, wedge
from darbouxlie.liealg import FAMILIES, abelian, catalog

x = Poly.var

EXPECTED_DER_DIM = {
    "s1": 6, "s2": 6, "s3": 6, "s4": 6, "s5": 6, "s6": 5, "s7": 5,
    "s8": 5, "s9": 5, "s10": 5, "s11": 5, "s12": 4, "n1": 7,
}

PARAMS = {
    "s3": dict(alpha=Fraction(1, 2), beta=Fraction(1, 3)),
    "s4": dict(alpha=Fraction(3)),
    "s5": dict(alpha=Fraction(1), beta=Fraction(-1, 2)),
    "s8": dict(alpha=Fraction(1, 2)),
    "s9": dict(alpha=Fraction(2)),
}


def test_derivation_dimensions():
    for fam, dim in EXPECTED_DER_DIM.items():
        g = catalog(fam, **PARAMS.get(fam, {}))
        assert len(derivation_basis(g)) == dim, fam
    # enlarged special members
    assert len(derivation_basis(catalog("s8", alpha=1))) == 7
    assert len(derivation_basis(catalog("s3", alpha=1, beta=1))) == 12


def test_derivations_satisfy_leibniz():
    from darbouxlie.liealg import bracket
    for fam in ("s1", "s6", "s12", "n1"):
        g = catalog(fam)
        for d in derivation_basis(g):
            for i in range(4):
                for j in range(i + 1, 4):
                    ei = [1 if k == i else 0 for k in range(4)]
                    ej = [1 if k == j else 0 for k in range(4)]
                    lhs = d.matvec(bracket(g, ei, ej))
                    rhs = [a + b for a, b in zip(
                        bracket(g, d.col(i), ej), bracket(g, ei, d.col(j)))]
                    assert list(lhs) == rhs


def test_abelian_derivations():
    assert len(derivation_basis(abelian(3))) == 9


def test_inner_derivations_in_span():
    for fam in FAMILIES:
        g = catalog(fam, **PARAMS.get(fam, {}))
        basis = [d.flat() for d in derivation_basis(g)]
        for i in range(4):
            v = [1 if k == i else 0 for k in range(4)]
            assert span_contains(basis, g.ad(v).flat()), fam


def test_derivation_closure_under_commutator():
    for fam in FAMILIES:
        g = catalog(fam, **PARAMS.get(fam, {}))
        ders = derivation_basis(g)
        basis = [d.flat() for d in ders]
        for a in ders:
            for b in ders:
                assert span_contains(basis, a.commutator(b).flat()), fam


def test_lift_identity_and_zero():
    d = RatMatrix.identity(4)
    X = lift(d, 2)
    assert X.matrix == RatMatrix.identity(6).scale(2)
    assert lift(RatMatrix.zero(4, 4), 2).matrix.is_zero()


def test_lift_paper_field_s1():
    # the derivation with a single diagonal parameter lifts to the field
    # 2 x1 d1 + x2 d2 + x3 d3 + x4 d4 + x5 d5
    d = RatMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    X = lift(d, 2)
    diag = [X.matrix[i, i] for i in range(6)]
    assert diag == [2, 1, 1, 1, 1, 0]
    assert all(X.matrix[i, j] == 0 for i in range(6) for j in range(6)
               if i != j)


def test_lift_leibniz_randomized():
    rng = random.Random(13)
    for _ in range(25):
        d = RatMatrix([[rng.randint(-2, 2) for _ in range(4)]
                       for _ in range(4)])
        X = lift(d, 2)
        u = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        w = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        uw = wedge(MultiVector.vector(4, u), MultiVector.vector(4, w))
        lhs = MultiVector.from_coords(4, 2, X.at(uw.coords()))
        rhs = wedge(MultiVector.vector(4, d.matvec(u)),
                    MultiVector.vector(4, w)) + \
            wedge(MultiVector.vector(4, u),
                  MultiVector.vector(4, d.matvec(w)))
        assert lhs == rhs


def test_fundamental_fields_span_displayed_s1():
    g = catalog("s1")
    fields = fundamental_fields(g, 2)
    assert len(fields) == 6
    displayed = [
        {(0, 0): 2, (1, 1): 1, (2, 2): 1, (3, 3): 1, (4, 4): 1},
        {(1, 3): 1, (2, 4): 1},
        {(0, 4): -1, (1, 5): -1},
        {(0, 2): 1, (3, 5): -1},
        {(1, 1): 1, (3, 3): 1, (5, 5): 1},
        {(1, 2): 1, (3, 4): 1},
    ]
    want = []
    for entries in displayed:
        m = [[Fraction(0)] * 6 for _ in range(6)]
        for (i, j), c in entries.items():
            m[i][j] = Fraction(c)
        want.append(RatMatrix(m).flat())
    got = [X.matrix.flat() for X in fields]
    from darbouxlie.exactmath import row_space_equal
    assert row_space_equal(RatMatrix(want), RatMatrix(got))


def test_orbit_dims_s1():
    g = catalog("s1")
    assert orbit_dim(g, MultiVector.blade(4, [0, 1])) == 1
    w = MultiVector.blade(4, [0, 1]) + MultiVector.blade(4, [2, 3])
    assert orbit_dim(g, w) == 4
    assert orbit_dim(g, MultiVector.zero(4, 2)) == 0


def test_vf_apply():
    g = catalog("s1")
    fields = fundamental_fields(g, 2)
    # X with matrix diag(2,1,1,1,1,0) acts on x3 x4 as multiplication by 2
    d = RatMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert vf_apply(lift(d, 2), x(2) * x(3)) == 2 * x(2) * x(3)
    # the paper's X5 = x2 d2 + x4 d4 + x6 d6 kills x5^2
    X5 = next(X for X in fields
              if X.matrix[1, 1] == 1 and X.matrix[3, 3] == 1
              and X.matrix[5, 5] == 1)
    assert vf_apply(X5, x(4) ** 2).is_zero()
    # Euler identity: the identity field scales degree-d by d
    euler = lift(RatMatrix.identity(4), 2)
    assert euler.matrix == RatMatrix.identity(6).scale(2)
    f = 3 * x(0) * x(5) - x(2) * x(3)
    assert vf_apply(euler, f) == 4 * f  # Euler scales deg 2 by 2, doubled


def test_rank_at_matches_field_matrix():
    g = catalog("s1")
    fields = fundamental_fields(g, 2)
    p = [0, 0, 0, 0, 0, 1]
    assert rank(field_matrix_at(fields, p)) == rank_at(fields, p) == 3


def test_fundamental_fields_abelian_full_gl_image():
    # oracle: lift each elementary matrix separately and compare spans
    g = abelian(4)
    fields = fundamental_fields(g, 2)
    elementary = []
    for i in range(4):
        for j in range(4):
            m = [[1 if (r, c) == (i, j) else 0 for c in range(4)]
                 for r in range(4)]
            elementary.append(lift(RatMatrix(m), 2).matrix.flat())
    got = [X.matrix.flat() for X in fields]
    from darbouxlie.exactmath import row_space_equal
    assert row_space_equal(RatMatrix(elementary), RatMatrix(got))
    assert rank(RatMatrix(got)) == 16
