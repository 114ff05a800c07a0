"""Finitely generated abelian groups, computed exactly.

Everything else in the package sits on this layer: a module carrier is
Z^n modulo a relation lattice, and its structure is read off a Smith
normal form.
"""
from sesquiads import intlin, smodule as sm
from sesquiads import randomized as rd
from sesquiads.intlin import mat

m = mat([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
u, d, v = intlin.smith_normal_form(m)
print("relation matrix\n", m)
print("diagonal form", [d[i, i] for i in range(3)])
assert (u @ m @ v == d).all()

g = intlin.FgModule(3, m)
print("Z^3 / columns  =", g.describe())

z12 = intlin.FgModule(1, mat([[12]]))
print("subgroups of Z/12:", len(intlin.enumerate_subgroups(z12)))

# tensor products need the ring action, so build the factors as modules over F1 (ring Z)
f1 = rd.f1()
a = sm.make_module(f1, 1, [[0], [1]], [[4]])
b = sm.make_module(f1, 1, [[0], [1]], [[6]])
print("Z/4 (x) Z/6 =", sm.tensor(a, b).carrier.describe())
