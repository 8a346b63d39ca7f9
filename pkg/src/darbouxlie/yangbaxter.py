"""Yang-Baxter machinery: the symbolic [r, r], the CYBE/mCYBE polynomial
systems, solution tests, cocommutators, the quotient by invariant bivectors,
and the necessary-condition checks for equivalence of r-matrices.

Membership in the mCYBE is always decided on the evaluated 3-vector
([r, r] annihilated by every ad_{e_i}), independently of the polynomial
system route; the two routes agreeing is a tested invariant, not an
assumption.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .derivations import derivation_basis, orbit_dim
from .exactmath import (Poly, RatMatrix, normalize_poly, rank, rref,
                        span_contains, rat)
from .grassmann import (MultiVector, SymMultiVector, ad_action, apply_linear,
                        blades, generic_bivector, invariants, schouten)
from .liealg import DimensionMismatch, LieAlgebra, bracket

#: an r-matrix: coordinates on Λ²g in blade order, or the bivector itself
RMatrix = Union[Sequence, MultiVector]


class NotAnAutomorphism(ValueError):
    pass


def as_bivector(g: LieAlgebra, r: RMatrix) -> MultiVector:
    if isinstance(r, MultiVector):
        if r.dim != g.dim or r.degree != 2:
            raise DimensionMismatch("not a bivector over this algebra")
        return r
    coords = [rat(x) for x in r]
    return MultiVector.from_coords(g.dim, 2, coords)


@dataclass
class YbSystem:
    """The polynomial content of [r, r] for a fixed algebra.

    cybe: normalized coefficient polynomials of [r, r] in blade order.
    mcybe: canonical components of [r, r] after projecting out (Λ³g)^g.
    inv3: basis of (Λ³g)^g.
    reduced: span-reduced display form of the mCYBE system (pure powers and
    positive sums of squares split into their linear generators).
    """

    cybe: list[Poly]
    mcybe: list[Poly]
    inv3: list[MultiVector]
    reduced: list[Poly] = field(default_factory=list)


def _coefficients(w: SymMultiVector) -> list[Poly]:
    return [w.terms.get(b, Poly.zero()) for b in blades(w.dim, w.degree)]


def _project_out(coords: list[Poly], inv: list[MultiVector]) -> list[Poly]:
    """Canonical components after eliminating the pivot coordinates of the
    invariant span (deterministic complement: the non-pivot coordinates)."""
    if not inv:
        return list(coords)
    red, pivots = rref(RatMatrix([v.coords() for v in inv]))
    out = list(coords)
    for prow, pc in enumerate(pivots):
        factor = out[pc]
        for j in range(len(out)):
            if j == pc:
                continue
            if red[prow, j]:
                out[j] = out[j] - factor * red[prow, j]
        out[pc] = Poly.zero()
    return [out[j] for j in range(len(out)) if j not in pivots]


def reduce_system(polys: Sequence[Poly]) -> list[Poly]:
    """Real-locus display reduction of a quadratic system: whenever the span
    contains c*x_i^k or a positive combination of squares of variables, those
    variables vanish on the real locus and are split off as linear
    generators.  Returns a normalized generating list with the same real
    locus (matches the hand-simplified systems in the classification)."""
    work = [normalize_poly(p) for p in polys if not p.is_zero()]
    killed: list[int] = []
    changed = True
    while changed:
        changed = False
        basis = _span_basis(work)
        for p in basis:
            vs = _pure_square_vars(p)
            if vs and not all(v in killed for v in vs):
                for v in vs:
                    if v not in killed:
                        killed.append(v)
                elim = {v: Poly.zero() for v in killed}
                work = [normalize_poly(q.subs(elim)) for q in work]
                work = [q for q in work if not q.is_zero()]
                changed = True
                break
    gens = [Poly.var(v) for v in sorted(killed)] + _span_basis(work)
    gens = [normalize_poly(p) for p in gens if not p.is_zero()]
    return sorted(gens, key=lambda p: (p.degree(), p.text()))


def _span_basis(polys: Sequence[Poly]) -> list[Poly]:
    """RREF basis of the Q-span of the polynomials (graded-lex columns)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    from .exactmath import mono_key
    support = sorted({m for p in polys for m in p.terms}, key=mono_key,
                     reverse=True)
    col = {m: i for i, m in enumerate(support)}
    mat = RatMatrix([[p.terms.get(m, Fraction(0)) for m in support]
                     for p in polys])
    red, pivots = rref(mat)
    out = []
    for i in range(len(pivots)):
        out.append(normalize_poly(
            Poly({support[j]: red[i, j] for j in range(len(support))
                  if red[i, j]})))
    return out


def _pure_square_vars(p: Poly) -> list[int]:
    """If p = sum_i c_i x_i^2 with all c_i of one sign (or p = c x_i^k),
    the variables forced to zero on the real locus; else []."""
    vs = []
    sign = 0
    for m, c in p.terms.items():
        if len(m) != 1:
            return []
        v, e = m[0]
        if e < 2 or e % 2:
            return []
        s = 1 if c > 0 else -1
        if sign and s != sign:
            return []
        sign = s
        vs.append(v)
    return vs


def yb_system(g: LieAlgebra) -> YbSystem:
    """[r, r] as polynomials: the CYBE components, the mCYBE components in
    the quotient by (Λ³g)^g, and a reduced display system."""
    r = generic_bivector(g)
    rr = schouten(g, r, r)
    cybe = [normalize_poly(p) for p in _coefficients(rr)]
    inv3 = invariants(g, 3)
    mcybe = [normalize_poly(p)
             for p in _project_out(_coefficients(rr), inv3)]
    mcybe = [p for p in mcybe if not p.is_zero()] or [Poly.zero()]
    cybe_nz = [p for p in cybe if not p.is_zero()]
    return YbSystem(cybe=cybe, mcybe=mcybe, inv3=inv3,
                    reduced=reduce_system([p for p in mcybe
                                           if not p.is_zero()] or cybe_nz))


def is_mcybe_solution(g: LieAlgebra, r: RMatrix) -> bool:
    """True iff [r, r] is g-invariant (checked directly on the 3-vector)."""
    rr = schouten(g, as_bivector(g, r), as_bivector(g, r))
    basis = [[1 if k == i else 0 for k in range(g.dim)] for i in range(g.dim)]
    return all(ad_action(g, v, rr).is_zero() for v in basis)


def is_cybe_solution(g: LieAlgebra, r: RMatrix) -> bool:
    """True iff [r, r] = 0 exactly."""
    rv = as_bivector(g, r)
    return schouten(g, rv, rv).is_zero()


def cocommutator(g: LieAlgebra, r: RMatrix, v: Sequence) -> MultiVector:
    """delta_r(v) = [v, r].  Well-defined for any bivector; warns when r is
    not an mCYBE solution, where the co-Jacobi property fails."""
    rv = as_bivector(g, r)
    if not is_mcybe_solution(g, rv):
        warnings.warn("cocommutator of a non-mCYBE bivector: the induced "
                      "bracket on the dual fails co-Jacobi", stacklevel=2)
    return ad_action(g, v, rv)


def cocycle_defect(g: LieAlgebra, r: RMatrix, i: int, j: int) -> MultiVector:
    """delta([e_i,e_j]) - [e_i, delta(e_j)] - [delta(e_i), e_j]; zero for
    every basis pair iff delta_r is a 1-cocycle."""
    rv = as_bivector(g, r)
    ei = [1 if k == i else 0 for k in range(g.dim)]
    ej = [1 if k == j else 0 for k in range(g.dim)]
    d_i = ad_action(g, ei, rv)
    d_j = ad_action(g, ej, rv)
    lhs = ad_action(g, bracket(g, ei, ej), rv)
    # [e_i, delta(e_j)] + [delta(e_i), e_j]; the Schouten bracket of a
    # bivector with a vector picks up the graded-symmetry sign
    t1 = schouten(g, MultiVector.vector(g.dim, ei), d_j)
    t2 = schouten(g, d_i, MultiVector.vector(g.dim, ej))
    return lhs - t1 - t2


def quotient_class(g: LieAlgebra, r: RMatrix) -> tuple[Fraction, ...]:
    """Coordinates of r in Λ²g / (Λ²g)^g, in the deterministic complement
    basis given by the non-pivot blade coordinates of the invariant span."""
    coords = list(as_bivector(g, r).coords())
    inv = invariants(g, 2)
    if not inv:
        return tuple(coords)
    red, pivots = rref(RatMatrix([v.coords() for v in inv]))
    for prow, pc in enumerate(pivots):
        factor = coords[pc]
        if factor:
            for j in range(len(coords)):
                coords[j] -= factor * red[prow, j]
    return tuple(coords[j] for j in range(len(coords)) if j not in pivots)


def is_automorphism(g: LieAlgebra, T: RatMatrix) -> bool:
    """Exact bracket preservation T[v,w] = [Tv, Tw] on basis pairs, plus
    invertibility."""
    if T.rows != g.dim or T.cols != g.dim:
        return False
    if rank(T) != g.dim:
        return False
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = T.matvec(g.c[i][j])
            rhs = bracket(g, T.col(i), T.col(j))
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def same_coboundary(g: LieAlgebra, r1: RMatrix, r2: RMatrix,
                    T: RatMatrix) -> bool:
    """Whether (Λ²T) r1 and r2 induce the same cocommutator, i.e. agree in
    Λ²g/(Λ²g)^g.  T must preserve brackets exactly."""
    if not is_automorphism(g, T):
        raise NotAnAutomorphism("T does not preserve the Lie bracket")
    moved = apply_linear(T, as_bivector(g, r1))
    return quotient_class(g, moved) == quotient_class(g, r2)


def bilinear_matrix(g: LieAlgebra, r: RMatrix) -> RatMatrix:
    """r as an antisymmetric bilinear form on g*."""
    rv = as_bivector(g, r)
    n = g.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for mask, c in rv.terms.items():
        i, j = (k for k in range(n) if mask & (1 << k))
        m[i][j] = c
        m[j][i] = -c
    return RatMatrix(m)


@dataclass
class NecessaryReport:
    rank1: int
    rank2: int
    rr1_zero: bool
    rr2_zero: bool
    rr1_invariant: bool
    rr2_invariant: bool
    orbit_dim1: int
    orbit_dim2: int
    provably_inequivalent: bool
    reasons: list[str]


def necessary_checks(g: LieAlgebra, r1: RMatrix, r2: RMatrix) -> NecessaryReport:
    """Machine-checkable necessary conditions for equivalence of two
    r-matrices: equal bilinear ranks, matching [r,r] vanishing/invariance,
    and equal orbit dimensions.  Any failure proves inequivalence."""
    b1, b2 = as_bivector(g, r1), as_bivector(g, r2)
    k1, k2 = rank(bilinear_matrix(g, b1)), rank(bilinear_matrix(g, b2))
    assert k1 % 2 == 0 and k2 % 2 == 0, "antisymmetric rank must be even"
    rr1 = schouten(g, b1, b1)
    rr2 = schouten(g, b2, b2)
    inv_coords = [v.coords() for v in invariants(g, 3)]
    inv1 = span_contains(inv_coords, rr1.coords())
    inv2 = span_contains(inv_coords, rr2.coords())
    ders = derivation_basis(g)
    d1, d2 = orbit_dim(g, b1, ders), orbit_dim(g, b2, ders)
    reasons = []
    if k1 != k2:
        reasons.append(f"bilinear ranks differ: {k1} vs {k2}")
    if rr1.is_zero() != rr2.is_zero():
        reasons.append("[r1,r1] and [r2,r2] do not vanish together")
    if inv1 != inv2:
        reasons.append("[r,r] invariance differs")
    if d1 != d2:
        reasons.append(f"orbit dimensions differ: {d1} vs {d2}")
    return NecessaryReport(
        rank1=k1, rank2=k2, rr1_zero=rr1.is_zero(), rr2_zero=rr2.is_zero(),
        rr1_invariant=inv1, rr2_invariant=inv2,
        orbit_dim1=d1, orbit_dim2=d2,
        provably_inequivalent=bool(reasons), reasons=reasons)
