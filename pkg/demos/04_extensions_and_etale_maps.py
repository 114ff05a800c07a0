"""Field-like extensions: separability, unramified and etale morphisms."""
from sesquiads import intlin, scheme as sc, sesquiad as sq
from sesquiads import randomized as rd

f2 = sq.ring_sesquiad(intlin.ZAlgebra.zmod(2))


def over_f2(coeffs):
    """F2 -> F2[b]/(coeffs), the map on {0, 1}."""
    b = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient(coeffs, 2))
    return sq.hom(f2, b, [b.element_at((0, 0)), b.element_at((1, 0))])


# Both extensions have a single prime with residue F2 on both sides, so the
# residue test calls both unramified; the stalkwise column tells them apart.
f4, dual = over_f2([1, 1, 1]), over_f2([0, 0, 1])
for name, h in (("F4 = F2[b]/(b^2+b+1)", f4), ("F2[b]/(b^2)", dual)):
    b = h.target.element_at((0, 1))
    sep = sq.is_separable(h, b)
    print(f"{name}: b is {sep.status.value}, witness {sep.witness}")
    print("   unramified", sc.is_unramified(h)["unramified"],
          " etale", sc.is_etale(h)["etale"],
          " stalkwise separable", sc.is_unramified(h)["stalkwise_separable"])

# a surjection Z/4 -> Z/2 is not flat, hence not etale
z4 = rd.z4_ring()
z2 = sq.ring_sesquiad(intlin.ZAlgebra.zmod(2))
h = sq.hom(z4, z2, [z2.element_at((x % 2,)) for x in range(4)])
print("Z/4 -> Z/2:", sc.is_etale(h)["flat"])

# units and closedness up to a degree
f5 = rd.f5_signs()
print("units of {0,1,-1} in F5:", sq.unit_inclusions(f5))
closed, witness = sq.is_algebraically_closed_upto(f4.target, 2)
print("F4 algebraically closed in degree 2:", closed, "rootless", witness)
