"""Sesquiads, their congruences, prime spectra and residue sesquiads.

A sesquiad is a commutative monoid with zero whose partial addition is
inherited from a ring.  Its prime congruences form a finite poset.
"""
from sesquiads import intlin, scheme as sc, sesquiad as sq
from sesquiads import randomized as rd

f1 = rd.f1()
print("F1 has", len(sq.congruence_lattice(f1)), "congruences;",
      "spectrum:", [c.label() for c in sq.spec_c(f1)])

# {0, 1, e} with e^2 = e and no addition: three primes, the diagonal below the other two
e = rd.idempotent()
for c in sq.congruence_lattice(e):
    print(f"  {c.label():10s} prime={sq.is_prime(c)!s:5s} maximal={sq.is_maximal(c)}")
scheme = sc.spec_scheme(e)
print("dimension of spec:", scheme.space.dimension())

# localizing at a prime and comparing the two residue constructions
for c in sq.spec_c(e):
    loc = sq.localize(e, c)
    print(f"  at {c.label():8s} local sesquiad has {len(loc.local)} elements,"
          f" residue has {len(loc.residue)}")

# {0, 1} inside Z/4 has only the two trivial congruences, so it is simple
z4pair = sq.from_pair(intlin.ZAlgebra.zmod(4), [(0,), (1,)])
print("({0,1}, Z/4) simple:", sq.is_simple(z4pair))

# roots: a simple sesquiad never has more roots than the degree
f5 = rd.f5_signs()
polys = [p for d in (1, 2, 3) for p in sq.polynomials(f5, d)]
excess = sum(len(sq.poly_roots(p)) > p.degree for p in polys)
print(f"{{0,1,-1}} in F5: {excess} of {len(polys)} polynomials of degree <= 3 exceed the bound")
