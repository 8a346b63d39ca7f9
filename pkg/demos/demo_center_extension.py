#!/usr/bin/env python3
"""Faithful matrix representations by a grading extension.

For an algebra with nontrivial center the adjoint representation is not
faithful; adjoining a grading element e with [e, e_i] = alpha_i e_i fixes
that whenever the linear system alpha_i + alpha_j = alpha_k (over nonzero
structure constants) admits a solution nonvanishing on the center.
Run with:  python demos/demo_center_extension.py
"""

from darbouxlie import build_rep, catalog, center, from_brackets, solve_grading

g = catalog("s1")
print(f"== {g.name}: center spanned by {center(g)[0]}")
sol = solve_grading(g)
print(f"grading vector alpha = {tuple(str(a) for a in sol.alphas)}")
rep = build_rep(g, sol)
for i, m in enumerate(rep.matrices, 1):
    print(f"R_e{i}:")
    for row in m.entries:
        print("   ", " ".join(f"{str(e):>2s}" for e in row))
print("commutation fidelity and faithfulness re-verified during build.")

print("\n== a six-dimensional algebra where the method must fail")
br = {(1, 2): [1, 0, 0, 0, 0, 0], (4, 0): [1, 0, 0, 0, 0, 0],
      (4, 1): [0, 1, 0, 0, 0, 0], (5, 0): [1, 0, 0, 0, 0, 0],
      (5, 2): [0, 0, 1, 0, 0, 0], (5, 4): [0, 0, 0, 1, 0, 0]}
g6 = from_brackets(6, br, name="g6")
print(f"center: {center(g6)[0]}")
print(f"solve_grading -> {solve_grading(g6)}   "
      "(the grading equations force alpha = 0 on the center)")
