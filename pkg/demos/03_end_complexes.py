"""The differential graded structure on multilinear maps of complexes.

Fix a finite cochain complex over every edge of a graph.  Multilinear
maps following the profile-loops then carry a differential (commutator
with the complexes' own differentials, with sliding signs) and partial
compositions (with one sign from moving the inner map past earlier
arguments).  Everything is checked exhaustively on small populations.
"""

from fractions import Fraction

from fcmc import (
    EndX,
    check_end_dg,
    compose_end,
    hat_d,
    make_complex,
    make_graph,
    multimap,
)

g = make_graph(["v"], [("e", "v", "v")])
cx = make_complex([("x", 0), ("y", 1)], {"x": {"y": 1}})
X = EndX(g, {"e": cx})
print("complex over e: x in degree 0, y in degree 1, d(x) = y")

# A degree-0 unary map that rescales x; its differential measures the
# failure to commute with d.
f = multimap(X, ("e",), "e", 0, {("x",): {"x": Fraction(1, 3)}})
df = hat_d(X, f)
print("\nf(x) = x/3, f(y) = 0")
print("(d^ f)(x) =", df.apply(("x",)), " -- d(f(x)) - f(d(x)) = y/3 - 0")

# An odd-degree map composed into slot 2 picks up the sign of sliding
# it past the first argument; in slot 1 there is nothing to slide past.
xi1 = multimap(X, ("e", "e"), "e", -1, {("y", "y"): {"y": 1}})
xi2 = multimap(X, ("e",), "e", 1, {("x",): {"y": 1}})
comp2 = compose_end(X, xi1, 2, xi2)
comp1 = compose_end(X, xi1, 1, xi2)
print("\nxi1(y,y) = y (degree -1), xi2(x) = y (degree 1)")
print("(xi1 o_2 xi2)(y,x) =", comp2.apply(("y", "x")),
      " -- xi2 slides past y (odd), sign -1")
print("(xi1 o_1 xi2)(x,y) =", comp1.apply(("x", "y")),
      " -- nothing to slide past, sign +1")

# The full law audit: differential squares to zero, Leibniz for both
# compositions, unit laws, and the two associativity identities with
# their graded signs, over every basis-supported map of arity <= 2.
rep = check_end_dg(X, arity_bound=2)
print("\nexhaustive audit:", rep.summary())

# A richer fixture with two basis elements in the same degree and a
# fractional differential entry.
cx3 = make_complex([("x", 0), ("y", 1), ("z", 1)],
                   {"x": {"y": Fraction(1, 2), "z": -1}})
rep3 = check_end_dg(EndX(g, {"e": cx3}), arity_bound=1)
print("dimension-3 fixture (arity <= 1):", rep3.summary())
