"""Sesquiad modules: when mono and epi do not make an iso, and what tensoring does.

A module is a point set S inside an R_A-module M_S that it generates.
Morphisms are judged both on points and on the carriers.
"""
from sesquiads import smodule as sm
from sesquiads import randomized as rd
from sesquiads.intlin import mat

f1 = rd.f1()


def cyclic(points, n=0):
    return sm.make_module(f1, 1, [[p] for p in points], [[n]] if n else ())


# ({0,1}, Z) -> ({0,1,2}, Z): bijective on carriers, but 2 has no preimage point
f = sm.ModuleHom(cyclic([0, 1]), cyclic([0, 1, 2]), mat([[1]]))
print("inclusion", sm.classify(f), "full:", sm.is_full(f))

# Z/6 -> Z/3 on {0,1,2}: injective on points but not on carriers
g = sm.ModuleHom(cyclic([0, 1, 2], 6), cyclic([0, 1, 2], 3), mat([[1]]))
c = sm.classify(g)
print("reduction: carrier-injective", c.mono, "point-injective", c.point_injective,
      "strong", sm.is_strong(g))

# quotients: the kernel of S -> S/U is the full closure of U
t = cyclic([0, 1, 2, 3, 4, 6])
_, proj = sm.quotient(t, [(2,)])
print("kernel of S -> S/<2>:", sm.kernel_points(proj))

# tensoring a strong map with F = ({0,-2,3}, Z) loses fullness
double = sm.ModuleHom(cyclic([0, 1]), cyclic([0, 1, 2]), mat([[2]]))
F = cyclic([0, -2, 3])
h = sm.tensor_hom(sm.identity(F), double)
print(f"1 (x) (1 -> 2): image {sorted(h.image_points())},"
      f" closure {sm.full_closure(h.target, h.image_points())},"
      f" strong {sm.is_strong(h)} though the map itself is strong: {sm.is_strong(double)}")

# flatness: torsion breaks it over Z; over Z/4 the ideal (2) is the witness
print("Z/3 over Z:", sm.is_flat(cyclic([0, 1], 3)).status.value)
half = sm.make_module(rd.z4_ring(), 1, [[0], [1]], [[2]])
r = sm.is_flat(half)
print("Z/2 over Z/4:", r.status.value, "witness ideal", r.witness)
