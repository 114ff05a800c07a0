import pytest

from sesquiads import intlin, sesquiad as sq
from sesquiads import randomized as rd
from sesquiads.intlin import vec

import oracles
from conftest import corpus_sesquiads, small_monoid_sesquiads

SMALL = small_monoid_sesquiads(4)


ALL = list(corpus_sesquiads().items()) + [(f"monoid{i}", a) for i, a in enumerate(SMALL)]


@pytest.mark.parametrize("name, a", ALL, ids=[n for n, _ in ALL])
def test_congruence_lattice_matches_brute_force(name, a):
    assert {c.classes for c in sq.congruence_lattice(a)} == oracles.saturated_congruences(a)


@pytest.mark.parametrize("name, a", ALL, ids=[n for n, _ in ALL])
def test_simplicity_and_maximality(name, a):
    assert sq.is_simple(a) == oracles.simple_by_oracle(a)
    for c in sq.congruence_lattice(a):
        if sq.is_maximal(c):
            assert sq.is_prime(c)
            assert sq.is_simple(sq.quotient(a, c)[0])


@pytest.mark.parametrize("name, a", ALL, ids=[n for n, _ in ALL])
def test_residue_constructions_agree_at_every_prime(name, a):
    for c in sq.spec_c(a):
        loc = sq.localize(a, c)
        iso = loc.iso
        assert sorted(iso.map) == list(range(len(loc.residue_alt)))
        for x in range(len(loc.residue)):
            for y in range(len(loc.residue)):
                assert iso.map[loc.residue.table[x][y]] == loc.residue_alt.table[iso.map[x]][iso.map[y]]
        assert sq.is_integral(loc.residue)


@pytest.mark.parametrize("name", ["F2pair", "F5signs", "Z4", "fields:F4", "fields:D"])
def test_local_ring_is_the_annihilator_quotient(name):
    a = corpus_sesquiads()[name]
    for c in sq.spec_c(a):
        local, _ = sq.local_sesquiad(a, c)
        assert local.ring.module.order() == oracles.annihilator_quotient_order(a, c)


def test_spectrum_of_f1_is_the_diagonal():
    f1 = rd.f1()
    (only,) = sq.spec_c(f1)
    assert only.is_diagonal()


def test_idempotent_spectrum_has_three_points():
    e = rd.idempotent()
    primes = sq.spec_c(e)
    assert len(primes) == 3
    diag = [c for c in primes if c.is_diagonal()]
    assert len(diag) == 1
    assert all(diag[0].refines(c) for c in primes)


def test_two_element_z4_pair_is_simple():
    z4 = intlin.ZAlgebra.zmod(4)
    a = sq.from_pair(z4, [(0,), (1,)], universal=False)
    assert sq.is_simple(a)
    assert sq.is_maximal(sq.diagonal(a))


def test_witness_pairs_generate_every_congruence():
    for name, a in corpus_sesquiads().items():
        for c in sq.congruence_lattice(a):
            pairs = sq.is_finitely_generated_witness(c)
            assert sq.congruence_generated(a, pairs) == c


@pytest.mark.parametrize("name, a", list(corpus_sesquiads().items()))
def test_saturation_is_idempotent_and_sound(name, a):
    b, horizon = sq.saturate(a)
    c, _ = sq.saturate(b)
    assert b.table == c.table and sq.is_isomorphism(sq.hom(b, c, list(range(len(b)))))
    for f in b.facts:
        total = sum(k * vec(b.vector(x)) for k, x in zip(f.coefficients, f.arguments))
        assert b.ring.canonical(total) == b.vector(f.result)


def test_homomorphisms_compose_and_reject_bad_maps():
    f2 = rd.f2_pair()
    f4 = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient([1, 1, 1], 2))
    i = sq.hom(f2, f4, [f4.zero, f4.one])
    assert i.then(sq.identity(f4)).map == i.map
    with pytest.raises(sq.NotMultiplicative):
        sq.hom(rd.f5_signs(), rd.f5_signs(), [0, 1, 0])  # (-1)(-1) = 1 but 0 * 0 = 0
    with pytest.raises(sq.NoRingExtension):
        sq.hom(f2, rd.f1(), [0, 1])  # 1 + 1 = 0 cannot hold in Z


def test_separability_of_extensions():
    f2 = sq.ring_sesquiad(intlin.ZAlgebra.zmod(2))
    f4 = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient([1, 1, 1], 2))
    dual = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient([0, 0, 1], 2))
    i = sq.hom(f2, f4, [f4.element_at((0, 0)), f4.element_at((1, 0))])
    j = sq.hom(f2, dual, [dual.element_at((0, 0)), dual.element_at((1, 0))])
    b4, bd = f4.element_at((0, 1)), dual.element_at((0, 1))
    r = sq.is_separable(i, b4)
    assert r.status is sq.Separability.SEPARABLE and r.conclusive
    r = sq.is_separable(j, bd)
    assert r.status is sq.Separability.INSEPARABLE and r.conclusive
    assert str(r.witness) == "X^2"


def test_transcendental_elements_are_flagged_with_the_cap():
    z = rd.f1()
    # X inside Z[X]/(X^3) first becomes algebraic at degree 3
    ring = intlin.ZAlgebra.poly_quotient([0, 0, 0, 1])
    b = sq.from_pair(ring, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    h = sq.hom(z, b, [b.zero, b.one])
    r = sq.is_separable(h, b.index("(0,1,0)"), degree_cap=2)
    assert r.status is sq.Separability.NOT_ALGEBRAIC_UP_TO_CAP and not r.conclusive and r.cap == 2
    r = sq.is_separable(h, b.index("(0,1,0)"), degree_cap=3)
    # X^3 = (T - X)(T^2 + X T + X^2) and the cofactor at X is 3 X^2 != 0
    assert r.status is sq.Separability.SEPARABLE and str(r.witness) == "X^3"


@pytest.mark.parametrize("name, a", [(n, a) for n, a in corpus_sesquiads().items()
                                     if sq.is_simple(a)])
def test_root_bound_for_simple_sesquiads(name, a):
    for d in range(1, 4):
        for p in sq.polynomials(a, d):
            roots = sq.poly_roots(p)
            assert roots == oracles.brute_roots(p)
            assert len(roots) <= d


def test_polynomial_division_by_a_root():
    f5 = sq.ring_sesquiad(intlin.ZAlgebra.zmod(5))
    p = sq.polynomial(f5, ["4", "0", "1"])  # X^2 - 1
    assert sorted(f5.names[x] for x in sq.poly_roots(p)) == ["1", "4"]
    q = sq.poly_divide(p, f5.vector("1"))
    assert [f5.element_at(v) for v in q] == [f5.index("1"), f5.index("1")]
    with pytest.raises(sq.NotARoot):
        sq.poly_divide(p, f5.vector("2"))


def test_units_and_algebraic_closedness():
    f4 = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient([1, 1, 1], 2))
    info = sq.unit_inclusions(f4)
    assert not info["first_strict"] and not info["second_strict"]
    signs = rd.f5_signs()
    info = sq.unit_inclusions(signs)
    assert info["second_strict"]  # 2 is a unit of F5 outside {0, 1, -1}
    closed, witness = sq.is_algebraically_closed_upto(f4, 2)
    assert not closed and not sq.poly_roots(witness)
    closed, witness = sq.is_algebraically_closed_upto(rd.f1(), 1)
    assert not closed and str(witness) == "X + 1"
    with pytest.raises(sq.NotSimple):
        sq.unit_inclusions(rd.idempotent())


def test_full_subsesquiads():
    f2 = rd.f2_pair()
    f4 = sq.ring_sesquiad(intlin.ZAlgebra.poly_quotient([1, 1, 1], 2))
    i = sq.hom(f2, f4, [f4.zero, f4.one])
    assert sq.is_full_subsesquiad(i)
    signs = rd.f5_signs()
    f5 = sq.ring_sesquiad(intlin.ZAlgebra.zmod(5))
    j = sq.hom(signs, f5, [f5.index("0"), f5.index("1"), f5.index("4")])
    assert not sq.is_full_subsesquiad(j)


def test_pullback_of_a_prime_is_prime():
    e = rd.idempotent()
    for c in sq.spec_c(e):
        assert sq.pullback(sq.identity(e), c) == c


def test_bounds_are_enforced():
    big = sq.ring_sesquiad(intlin.ZAlgebra.zmod(9))
    with pytest.raises(sq.BoundExceeded):
        sq.congruence_lattice(big, bound=8)
