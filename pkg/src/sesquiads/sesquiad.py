"""Finite sesquiads: a commutative monoid with zero sitting inside a ring.

A sesquiad is stored as its multiplication table together with the ring
``ring`` (a finite-rank Z-algebra) and the embedding of the elements into
it.  ``build`` computes the universal ring from a list of addition facts;
``from_pair`` takes the ring as given.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import intlin
from .intlin import (Subgroup, ZAlgebra, columns, eye, hstack, ideal_generated,
                     is_unit, member, reduce_vector, vec)


class SesquiadError(Exception):
    pass


class NotAMonoid(SesquiadError):
    pass


class NotEmbeddable(SesquiadError):
    pass


class NotMultiplicative(SesquiadError):
    pass


class NoRingExtension(SesquiadError):
    pass


class BoundExceeded(SesquiadError):
    pass


class NotPrime(SesquiadError):
    pass


class NotARoot(SesquiadError):
    pass


class CapTooLarge(SesquiadError):
    pass


class NotSimple(SesquiadError):
    pass


class NotInjective(SesquiadError):
    pass


class InternalInconsistency(AssertionError):
    """Two independent computations of the same fact disagree."""


PRIME_FLAG = "prime (imported definition: integral quotient monoid)"
DEFAULT_SPEC_BOUND = 8


@dataclass(frozen=True)
class AdditionFact:
    """``sum(k_j * a_j) = result`` holds in the ring."""
    coefficients: tuple
    arguments: tuple
    result: str

    def __str__(self):
        terms = " + ".join(f"{k}*{a}" for k, a in zip(self.coefficients, self.arguments))
        return f"{terms} = {self.result}"


class Sesquiad:
    __slots__ = ("names", "table", "zero", "one", "facts", "ring", "embed",
                 "universal", "_index", "_lookup")

    def __init__(self, names, table, facts, ring, embed, universal=True):
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        self.facts = tuple(facts)
        self.ring = ring
        self.embed = tuple(ring.canonical(v) for v in embed)
        self.universal = universal
        self._index = {n: i for i, n in enumerate(self.names)}
        self.zero, self.one = _zero_and_one(self.table)
        self._lookup = {}
        for i, v in enumerate(self.embed):
            if v in self._lookup:
                raise NotEmbeddable(
                    f"{self.names[self._lookup[v]]} and {self.names[i]} coincide in the ring")
            self._lookup[v] = i

    def __repr__(self):
        return f"Sesquiad({list(self.names)}, ring={self.ring.module.describe()})"

    def __len__(self):
        return len(self.names)

    def index(self, a):
        if isinstance(a, (int, np.integer)):
            return int(a)
        try:
            return self._index[a]
        except KeyError:
            raise SesquiadError(f"unknown element {a!r}") from None

    def mul(self, a, b):
        return self.table[self.index(a)][self.index(b)]

    def vector(self, a):
        return self.embed[self.index(a)]

    def element_at(self, v):
        """Index of the element whose ring image is ``v``, or None."""
        return self._lookup.get(self.ring.canonical(v))

    def is_zero(self):
        return self.zero == self.one

    def nonzero(self):
        return [i for i in range(len(self)) if i != self.zero]

    def act_matrix(self, a):
        return self.ring.mult_matrix(vec(self.vector(a)))

    def power(self, a, n):
        out = self.one
        for _ in range(n):
            out = self.table[out][a]
        return out

    def same_as(self, other):
        return (self.names == other.names and self.table == other.table
                and self.embed == other.embed and self.ring.module.same_as(other.ring.module))

    @classmethod
    def zero_sesquiad(cls):
        ring = ZAlgebra.present(1, [[[1]]], [1], intlin.mat([[1]]))[0]
        return cls(["0"], [[0]], [], ring, [()])


def _zero_and_one(table):
    n = len(table)
    one = next((e for e in range(n) if all(table[e][x] == x for x in range(n))), None)
    zero = next((z for z in range(n) if all(table[z][x] == z for x in range(n))), None)
    if one is None or zero is None:
        raise NotAMonoid("table has no identity or no absorbing zero")
    return zero, one


def check_monoid(table):
    n = len(table)
    for i in range(n):
        if len(table[i]) != n:
            raise NotAMonoid(f"row {i} has {len(table[i])} entries, expected {n}")
        for j in range(n):
            if not 0 <= table[i][j] < n:
                raise NotAMonoid(f"entry ({i},{j}) is not an element")
            if table[i][j] != table[j][i]:
                raise NotAMonoid(f"not commutative at ({i},{j})")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise NotAMonoid(f"not associative at ({i},{j},{k})")
    _zero_and_one(table)


def _as_table(elements, mult):
    index = {n: i for i, n in enumerate(elements)}
    table = []
    for row in mult:
        table.append([index[x] if not isinstance(x, int) else x for x in row])
    return table


def build(elements, mult, facts=()):
    """Sesquiad with universal ring ``Z[A] / (Z 0_A + fact relations)``."""
    names = [str(e) for e in elements]
    table = _as_table(names, mult)
    check_monoid(table)
    n = len(names)
    index = {x: i for i, x in enumerate(names)}
    zero, one = _zero_and_one(table)
    facts = [f if isinstance(f, AdditionFact) else AdditionFact(*f) for f in facts]
    rels = []
    e0 = [0] * n
    e0[zero] = 1
    rels.append(e0)
    for f in facts:
        try:
            args = [index[str(a)] for a in f.arguments]
            res = index[str(f.result)]
        except KeyError as exc:
            raise SesquiadError(f"fact {f} mentions unknown element {exc}") from None
        if len(args) != len(f.coefficients):
            raise SesquiadError(f"fact {f}: coefficient/argument length mismatch")
        for b in range(n):
            r = [0] * n
            for k, a in zip(f.coefficients, args):
                r[table[b][a]] += k
            r[table[b][res]] -= 1
            rels.append(r)
    mult_vecs = [[[int(table[i][j] == k) for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [int(k == one) for k in range(n)]
    ring, fwd, _ = ZAlgebra.present(n, mult_vecs, unit, columns(rels, n))
    embed = [ring.canonical(fwd[:, i]) for i in range(n)]
    return Sesquiad(names, table, facts, ring, embed, universal=True)


def _ring_name(ring, v):
    if ring.dim == 1:
        return str(v[0])
    return "(" + ",".join(str(x) for x in v) + ")"


def from_pair(ring, vectors, names=None, facts=(), universal=False):
    """The sesquiad ``(A, ring)`` for a multiplicatively closed set ``A``."""
    vectors = [ring.canonical(v) for v in vectors]
    if names is None:
        names = [_ring_name(ring, v) for v in vectors]
    lookup = {v: i for i, v in enumerate(vectors)}
    if len(lookup) != len(vectors):
        raise NotEmbeddable("repeated ring element")
    table = []
    for x in vectors:
        row = []
        for y in vectors:
            p = ring.mul(x, y)
            if p not in lookup:
                raise NotAMonoid("subset is not closed under multiplication")
            row.append(lookup[p])
        table.append(row)
    if ring.zero() not in lookup or ring.one() not in lookup:
        raise NotAMonoid("subset must contain 0 and 1")
    span = Subgroup(ring.module, vectors)
    for i in range(ring.dim):
        e = [int(i == j) for j in range(ring.dim)]
        if not member(span, e):
            raise SesquiadError("elements do not generate the ring")
    return Sesquiad(names, table, facts, ring, vectors, universal=universal)


def ring_sesquiad(ring, names=None):
    """``(R, R)`` for a finite ring; its universal ring is R itself."""
    elems = sorted(ring.elements())
    if names is not None:
        names = [names.get(v, _ring_name(ring, v)) if isinstance(names, dict) else names[i]
                 for i, v in enumerate(elems)]
    return from_pair(ring, elems, names=names, universal=True)


def trivial_addition(elements, mult):
    return build(elements, mult, ())


# -- saturation -------------------------------------------------------------

@dataclass(frozen=True)
class SaturationHorizon:
    coefficient_bound: int
    arity: int
    modular: bool

    def as_dict(self):
        return {"coefficient_bound": self.coefficient_bound, "arity": self.arity,
                "modular": self.modular}


def saturation_horizon(a, coefficient_bound=2, arity=3):
    exps = a.ring.module.invariant_factors()
    if exps and 0 not in exps:
        # coefficients only matter modulo the additive exponent
        e = exps[-1]
        return SaturationHorizon(e // 2, min(arity, max(1, len(a) - 1)), True)
    return SaturationHorizon(coefficient_bound, min(arity, max(1, len(a) - 1)), False)


def true_facts(a, horizon):
    """All nontrivial facts within ``horizon`` that hold in ``a.ring``."""
    nz = a.nonzero()
    exp = None
    if horizon.modular:
        exp = a.ring.module.invariant_factors()[-1]
    coeffs = [k for k in range(-horizon.coefficient_bound, horizon.coefficient_bound + 1) if k]
    if exp is not None:
        coeffs = [k for k in coeffs if k % exp and not (exp % 2 == 0 and k == -exp // 2)]
    out = []
    for r in range(1, horizon.arity + 1):
        for args in itertools.combinations(nz, r):
            for ks in itertools.product(coeffs, repeat=r):
                s = vec([0] * a.ring.dim)
                for k, x in zip(ks, args):
                    s = s + k * vec(a.embed[x])
                res = a.element_at(s)
                if res is None:
                    continue
                if r == 1 and ks[0] == 1:
                    continue
                out.append(AdditionFact(tuple(ks), tuple(a.names[x] for x in args), a.names[res]))
    return out


def saturate(a, coefficient_bound=2, arity=3, max_rounds=8):
    """Recompute the addition from the ring and rebuild to a fixpoint.

    Returns ``(sesquiad, horizon)``; the horizon records the completeness
    bound of the fact search.
    """
    current = a
    for _ in range(max_rounds):
        horizon = saturation_horizon(current, coefficient_bound, arity)
        nxt = build(current.names, current.table, true_facts(current, horizon))
        h = hom_or_none(nxt, current, list(range(len(a))))
        if h is not None and is_isomorphism(h):
            return nxt, horizon
        current = nxt
    raise InternalInconsistency("saturation did not reach a fixpoint")


# -- homomorphisms ----------------------------------------------------------

class SesquiadHom:
    __slots__ = ("source", "target", "map", "ring_map")

    def __init__(self, source, target, mapping, ring_map):
        self.source = source
        self.target = target
        self.map = tuple(mapping)
        self.ring_map = ring_map

    def __repr__(self):
        pairs = ", ".join(f"{self.source.names[i]}->{self.target.names[j]}"
                          for i, j in enumerate(self.map))
        return f"SesquiadHom({pairs})"

    def __call__(self, a):
        return self.map[self.source.index(a)]

    def ring_apply(self, v):
        return self.target.ring.canonical(self.ring_map @ vec(v))

    def is_injective(self):
        return (len(set(self.map)) == len(self.map)
                and intlin.is_injective(self.ring_map, self.source.ring.module,
                                        self.target.ring.module))

    def then(self, other):
        mapping = [other.map[j] for j in self.map]
        return SesquiadHom(self.source, other.target, mapping, other.ring_map @ self.ring_map)


def hom(source, target, mapping):
    """Check a map of elements and extend it to the rings."""
    if isinstance(mapping, dict):
        mapping = [target.index(mapping[n]) for n in source.names]
    else:
        mapping = [target.index(x) for x in mapping]
    if len(mapping) != len(source):
        raise SesquiadError("map must be defined on every element")
    if mapping[source.one] != target.one or mapping[source.zero] != target.zero:
        raise NotMultiplicative("map must send 0 to 0 and 1 to 1")
    for i in range(len(source)):
        for j in range(len(source)):
            if mapping[source.table[i][j]] != target.table[mapping[i]][mapping[j]]:
                raise NotMultiplicative(
                    f"f({source.names[i]}*{source.names[j]}) != f({source.names[i]})*f({source.names[j]})")
    phi = intlin.extend_linear(source.ring.module, list(source.embed), target.ring.module,
                               [target.embed[j] for j in mapping])
    if phi is None:
        raise NoRingExtension("an addition relation of the source fails in the target")
    return SesquiadHom(source, target, mapping, phi)


def hom_or_none(source, target, mapping):
    try:
        return hom(source, target, mapping)
    except SesquiadError:
        return None


def identity(a):
    return hom(a, a, list(range(len(a))))


def is_isomorphism(h):
    return (h.is_injective() and len(set(h.map)) == len(h.target)
            and intlin.is_surjective(h.ring_map, h.source.ring.module, h.target.ring.module))


# -- congruences ------------------------------------------------------------

class Congruence:
    """A saturated congruence: classes are the fibres of ``A -> R_A / ideal``."""

    __slots__ = ("base", "classes", "ideal", "_cls")

    def __init__(self, base, classes, ideal):
        self.base = base
        self.classes = tuple(sorted(tuple(sorted(c)) for c in classes))
        self.ideal = ideal
        self._cls = {}
        for k, c in enumerate(self.classes):
            for x in c:
                self._cls[x] = k

    def __repr__(self):
        parts = ["{" + ",".join(self.base.names[x] for x in c) + "}" for c in self.classes]
        return "Congruence(" + " ".join(parts) + ")"

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def class_of(self, a):
        return self._cls[self.base.index(a)]

    def related(self, a, b):
        return self.class_of(a) == self.class_of(b)

    def is_diagonal(self):
        return all(len(c) == 1 for c in self.classes)

    def is_total(self):
        return len(self.classes) == 1

    def zero_class(self):
        return self.classes[self.class_of(self.base.zero)]

    def refines(self, other):
        """True when every class of self lies in a class of other."""
        return all(len({other.class_of(x) for x in c}) == 1 for c in self.classes)

    def label(self):
        return "|".join(",".join(self.base.names[x] for x in c) for c in self.classes)


def _congruence_from_ideal(a, ideal):
    fibres = {}
    for i, v in enumerate(a.embed):
        fibres.setdefault(reduce_vector(ideal.basis, v), []).append(i)
    return Congruence(a, fibres.values(), ideal)


def congruence_generated(a, pairs=()):
    diffs = [vec(a.vector(x)) - vec(a.vector(y)) for x, y in pairs]
    return _congruence_from_ideal(a, ideal_generated(a.ring, diffs))


def diagonal(a):
    return congruence_generated(a, ())


def is_multiplicative_partition(a, blocks):
    cls = {}
    for k, b in enumerate(blocks):
        for x in b:
            cls[x] = k
    n = len(a)
    for x in range(n):
        for y in range(n):
            if cls[x] == cls[y]:
                for z in range(n):
                    if cls[a.table[x][z]] != cls[a.table[y][z]]:
                        return False
    return True


def set_partitions(n):
    """All partitions of range(n), via restricted growth strings."""
    if n == 0:
        yield []
        return

    def rec(i, rgs, m):
        if i == n:
            blocks = [[] for _ in range(m)]
            for x, b in enumerate(rgs):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(m + 1):
            yield from rec(i + 1, rgs + [b], max(m, b + 1))

    yield from rec(1, [0], 1)


def congruence_lattice(a, bound=DEFAULT_SPEC_BOUND):
    """Every saturated congruence, by enumerating compatible partitions."""
    if len(a) > bound:
        raise BoundExceeded(f"|A| = {len(a)} exceeds the enumeration bound {bound}")
    found = {}
    for blocks in set_partitions(len(a)):
        if not is_multiplicative_partition(a, blocks):
            continue
        pairs = [(b[0], x) for b in blocks for x in b[1:]]
        c = congruence_generated(a, pairs)
        found.setdefault(c.classes, c)
    return [found[k] for k in sorted(found, key=lambda cl: (-len(cl), cl))]


def is_finitely_generated_witness(c):
    """Pairs generating ``c``; their ideal is checked against ``c.ideal``."""
    a = c.base
    pairs = []
    current = ideal_generated(a.ring, [])
    for cl in c.classes:
        for x in cl[1:]:
            d = vec(a.embed[x]) - vec(a.embed[cl[0]])
            if not member(current, d):
                pairs.append((a.names[cl[0]], a.names[x]))
                current = congruence_generated(a, pairs).ideal
    if current != c.ideal:
        raise InternalInconsistency("witness pairs do not generate the congruence ideal")
    return pairs


def quotient(a, c):
    """``A/C`` with ring ``R_A / I(C)`` and the projection."""
    ring, proj = a.ring.quotient(list(c.ideal.generators))
    reps = [cl[0] for cl in c.classes]
    vectors = [ring.canonical(proj @ vec(a.embed[r])) for r in reps]
    names = [a.names[r] for r in reps]
    facts = []
    for f in a.facts:
        facts.append(AdditionFact(f.coefficients,
                                  tuple(names[c.class_of(x)] for x in f.arguments),
                                  names[c.class_of(f.result)]))
    q = from_pair(ring, vectors, names, facts, universal=a.universal)
    mapping = [c.class_of(x) for x in range(len(a))]
    return q, SesquiadHom(a, q, mapping, proj)


def is_integral(a):
    """Nonzero and without zero divisors among elements."""
    if a.is_zero():
        return False
    nz = a.nonzero()
    return all(a.table[x][y] != a.zero for x in nz for y in nz)


def is_prime(c):
    a = c.base
    if c.related(a.zero, a.one):
        return False
    z = c.class_of(a.zero)
    for x in range(len(a)):
        for y in range(len(a)):
            if c.class_of(a.table[x][y]) == z and c.class_of(x) != z and c.class_of(y) != z:
                return False
    return True


def spec_c(a, bound=DEFAULT_SPEC_BOUND):
    """Prime congruences, sorted canonically."""
    return [c for c in congruence_lattice(a, bound) if is_prime(c)]


def _differences_are_units(a):
    n = len(a)
    for x in range(n):
        for y in range(x + 1, n):
            if not is_unit(a.ring, vec(a.embed[x]) - vec(a.embed[y])):
                return False
    return True


def is_simple(a, bound=DEFAULT_SPEC_BOUND):
    """Every congruence with 0 and 1 apart is the diagonal; A must be nonzero.

    The brute-force lattice answer is compared with the unit test on
    differences of elements; they must agree.
    """
    if a.is_zero():
        return False
    brute = all(c.is_diagonal() or c.related(a.zero, a.one) for c in congruence_lattice(a, bound))
    fast = _differences_are_units(a)
    if brute != fast:
        raise InternalInconsistency(f"simplicity: lattice says {brute}, unit test says {fast}")
    return brute


def is_maximal(c, bound=DEFAULT_SPEC_BOUND):
    a = c.base
    q, _ = quotient(a, c)
    by_quotient = is_simple(q, bound)
    if c.related(a.zero, a.one):
        in_lattice = False
    else:
        in_lattice = not any(d != c and c.refines(d) and not d.related(a.zero, a.one)
                             for d in congruence_lattice(a, bound))
    if by_quotient != in_lattice:
        raise InternalInconsistency("maximality: quotient test and lattice test disagree")
    return by_quotient


def pullback(h, c):
    """``h^* C`` on the source of ``h``."""
    src = h.source
    pairs = [(x, y) for x in range(len(src)) for y in range(x + 1, len(src))
             if c.related(h.map[x], h.map[y])]
    return congruence_generated(src, pairs)


# -- localisation -----------------------------------------------------------

def localizing_idempotent(a, s):
    """An idempotent power of the product of the elements of ``s``."""
    t = a.one
    for x in s:
        t = a.table[t][x]
    u = t
    while a.table[u][u] != u:
        u = a.table[u][t]
    return u


def _local_ring(a, c):
    s = [x for x in range(len(a)) if not c.related(x, a.zero)]
    u = localizing_idempotent(a, s)
    one_minus_u = vec(a.ring.one()) - vec(a.embed[u])
    return s, u, one_minus_u


def _image_sesquiad(a, ring, proj):
    """Image of A in a quotient ring, with the induced map."""
    fibres = {}
    for i, v in enumerate(a.embed):
        fibres.setdefault(ring.canonical(proj @ vec(v)), []).append(i)
    order = sorted(fibres.values())
    vectors = [ring.canonical(proj @ vec(a.embed[f[0]])) for f in order]
    names = [a.names[f[0]] for f in order]
    pos = {}
    for k, f in enumerate(order):
        for x in f:
            pos[x] = k
    img = from_pair(ring, vectors, names, universal=False)
    return img, SesquiadHom(a, img, [pos[x] for x in range(len(a))], proj)


def local_sesquiad(a, c):
    """``A_C``: invert every element outside the zero class of ``c``.

    The multiplicative set is finite, so inverting it amounts to killing
    ``(1 - u)`` for an idempotent power ``u`` of the product of its elements.
    """
    if not is_prime(c):
        raise NotPrime(f"{c} is not prime")
    _, _, one_minus_u = _local_ring(a, c)
    ring, proj = a.ring.quotient([one_minus_u])
    return _image_sesquiad(a, ring, proj)


@dataclass
class Localization:
    local: Sesquiad
    to_local: SesquiadHom
    residue: Sesquiad
    residue_alt: Sesquiad
    iso: SesquiadHom
    congruence: Congruence
    to_residue: SesquiadHom


def localize(a, c):
    """``A_E`` and the residue sesquiad computed as ``A_E/E`` and ``(A/E)_Delta``.

    The isomorphism between the two residue constructions is built and checked.
    """
    local, to_local = local_sesquiad(a, c)
    _, _, one_minus_u = _local_ring(a, c)
    gens = [one_minus_u] + [vec(g) for g in c.ideal.generators]
    res_ring, res_proj = a.ring.quotient(gens)
    # E_E on A_E: fibres of A_E -> S^-1 R / S^-1 I(E)
    local_to_res = intlin.extend_linear(local.ring.module, list(local.embed), res_ring.module,
                                        [res_ring.canonical(res_proj @ vec(a.embed[_first(to_local, k)]))
                                         for k in range(len(local))])
    if local_to_res is None:
        raise InternalInconsistency("residue map is not well defined on the local ring")
    pairs = []
    for x in range(len(local)):
        for y in range(x + 1, len(local)):
            if res_ring.canonical(local_to_res @ (vec(local.embed[x]) - vec(local.embed[y]))) == res_ring.zero():
                pairs.append((x, y))
    e_local = congruence_generated(local, pairs)
    residue, to_residue = quotient(local, e_local)

    quot, qmap = quotient(a, c)
    alt, alt_map = local_sesquiad(quot, diagonal(quot))

    # a in kappa_1 corresponds to a in kappa_2
    via1 = [e_local.class_of(to_local.map[x]) for x in range(len(a))]
    via2 = [alt_map.map[qmap.map[x]] for x in range(len(a))]
    mapping = {}
    for x in range(len(a)):
        k = residue.index(local.names[e_local.classes[via1[x]][0]])
        if mapping.setdefault(k, via2[x]) != via2[x]:
            raise InternalInconsistency("residue isomorphism is not well defined")
    if len(mapping) != len(residue) or len(set(mapping.values())) != len(alt):
        raise InternalInconsistency("residue constructions have different elements")
    iso = hom(residue, alt, [mapping[k] for k in range(len(residue))])
    back = hom(alt, residue, {alt.names[v]: residue.names[k] for k, v in mapping.items()})
    if not (is_isomorphism(iso) and is_isomorphism(back)):
        raise InternalInconsistency("residue constructions are not isomorphic")
    return Localization(local, to_local, residue, alt, iso, c, to_residue)


def _first(h, k):
    return next(x for x in range(len(h.source)) if h.map[x] == k)


def residue_sesquiad(a, c):
    return localize(a, c).residue


# -- polynomials ------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Coefficients are element indices of the base sesquiad, constant first."""
    base: Sesquiad = field(compare=False, repr=False)
    coefficients: tuple

    @property
    def degree(self):
        z = self.base.zero
        nz = [i for i, c in enumerate(self.coefficients) if c != z]
        return nz[-1] if nz else -1

    def __str__(self):
        names = self.base.names
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == self.base.zero:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            coef = names[c]
            if mono and c == self.base.one:
                terms.append(mono)
            elif mono:
                terms.append(f"{coef}*{mono}")
            else:
                terms.append(coef)
        return " + ".join(reversed(terms)) if terms else "0"


def polynomial(a, coefficients):
    return Polynomial(a, tuple(a.index(c) for c in coefficients))


def _coefficient_vectors(p, h):
    if h is None:
        return [p.base.embed[c] for c in p.coefficients], p.base.ring
    return [h.target.embed[h.map[c]] for c in p.coefficients], h.target.ring


def poly_eval(p, x, h=None):
    """``p(x)`` in the ring of ``h.target`` (or of the base)."""
    coeffs, ring = _coefficient_vectors(p, h)
    out = vec(ring.zero())
    for c in reversed(coeffs):
        out = vec(ring.mul(out, x)) + vec(c)
    return ring.canonical(out)


def poly_roots(p):
    a = p.base
    return [x for x in range(len(a)) if not any(poly_eval(p, a.embed[x]))]


def poly_divide(p, b, h=None):
    """``q`` with ``p(X) = (X - b) q(X)``; coefficients are ring vectors."""
    coeffs, ring = _coefficient_vectors(p, h)
    n = p.degree
    if n < 1:
        raise NotARoot("division needs a nonconstant polynomial")
    q = [None] * n
    carry = vec(ring.zero())
    for k in range(n, 0, -1):
        carry = vec(ring.mul(carry, b)) + vec(coeffs[k])
        q[k - 1] = ring.canonical(carry)
    rem = ring.canonical(vec(ring.mul(carry, b)) + vec(coeffs[0]))
    if any(rem):
        raise NotARoot("b is not a root of p")
    return q


def eval_ring_poly(ring, coeffs, x):
    out = vec(ring.zero())
    for c in reversed(coeffs):
        out = vec(ring.mul(out, x)) + vec(c)
    return ring.canonical(out)


def polynomials(a, degree):
    """All polynomials over ``a`` of exactly the given degree."""
    for lead in a.nonzero():
        for rest in itertools.product(range(len(a)), repeat=degree):
            yield Polynomial(a, tuple(rest) + (lead,))


class Separability(enum.Enum):
    SEPARABLE = "separable"
    INSEPARABLE = "inseparable"
    NOT_ALGEBRAIC_UP_TO_CAP = "not_algebraic_up_to_cap"


@dataclass
class SeparabilityResult:
    status: Separability
    witness: Polynomial | None
    conclusive: bool
    cap: int


def is_separable(ext, b, degree_cap=3, limit=200_000):
    """Search polynomials over the source up to ``degree_cap`` annihilating ``b``."""
    a = ext.source
    total = sum((len(a) - 1) * len(a) ** d for d in range(1, degree_cap + 1))
    if total > limit:
        raise CapTooLarge(f"{total} polynomials exceed the search limit {limit}")
    bv = ext.target.vector(b)
    ring = ext.target.ring
    annihilator = None
    for d in range(1, degree_cap + 1):
        for p in polynomials(a, d):
            if any(poly_eval(p, bv, ext)):
                continue
            q = poly_divide(p, bv, ext)
            if any(eval_ring_poly(ring, q, bv)):
                return SeparabilityResult(Separability.SEPARABLE, p, True, degree_cap)
            if annihilator is None:
                annihilator = p
    if annihilator is None:
        return SeparabilityResult(Separability.NOT_ALGEBRAIC_UP_TO_CAP, None, False, degree_cap)
    return SeparabilityResult(Separability.INSEPARABLE, annihilator, ring.is_finite(), degree_cap)


def is_algebraically_closed_upto(a, d):
    """Returns ``(closed, first polynomial without a root)``."""
    for deg in range(1, d + 1):
        for p in polynomials(a, deg):
            if not poly_roots(p):
                return False, p
    return True, None


# -- sub-sesquiads, morphism classes, units ---------------------------------

def is_full_subsesquiad(inc):
    if not inc.is_injective():
        raise NotInjective("inclusion must be injective on elements and rings")
    sub = intlin.image_subgroup(inc.ring_map, inc.source.ring.module, inc.target.ring.module)
    image = set(inc.map)
    b = inc.target
    return all(y in image for y in range(len(b)) if member(sub, b.embed[y]))


def morphism_class(h):
    """Finiteness data for ``R_A -> R_B`` (always finite at finite rank)."""
    ra, rb = h.source.ring, h.target.ring
    scalars = [h.ring_apply(tuple(int(i == j) for j in range(ra.dim))) for i in range(ra.dim)]

    def span(ws):
        gens = []
        for w in ws:
            for s in scalars:
                gens.append(rb.mul(s, w))
            gens.append(w)
        return Subgroup(rb.module, gens)

    witness = [rb.one()]
    current = span(witness)
    for i in range(rb.dim):
        e = tuple(int(i == j) for j in range(rb.dim))
        if not member(current, e):
            witness.append(e)
            current = span(witness)
    ker_mod, incl = intlin.kernel_of(h.ring_map, ra.module, rb.module)
    kernel = [ra.canonical(incl[:, j]) for j in range(incl.shape[1])]
    return {"finite": True, "finite_type": True, "finitely_presented": True,
            "module_generators": [list(w) for w in witness],
            "kernel_generators": [list(k) for k in kernel]}


def units_of(a):
    """Elements with an inverse inside A."""
    return [x for x in range(len(a)) if any(a.table[x][y] == a.one for y in range(len(a)))]


def unit_inclusions(a, search=2):
    """Check ``A^x <= A - {0} <= R_A^x`` for simple A, and report strictness."""
    if not is_simple(a):
        raise NotSimple("unit inclusions are stated for simple sesquiads")
    ax = units_of(a)
    nz = a.nonzero()
    ring_units_in_a = [x for x in nz if is_unit(a.ring, a.embed[x])]
    if set(ax) - set(nz) or set(nz) != set(ring_units_in_a):
        raise InternalInconsistency("unit inclusions fail")
    outside = None
    if a.ring.is_finite():
        cands = a.ring.elements()
    else:
        cands = [a.ring.canonical(v) for v in
                 itertools.product(range(-search, search + 1), repeat=a.ring.dim)]
    for v in sorted(cands):
        if a.element_at(v) is None and is_unit(a.ring, v):
            outside = v
            break
    return {
        "units_of_A": [a.names[x] for x in ax],
        "nonzero": [a.names[x] for x in nz],
        "first_strict": set(ax) != set(nz),
        "second_strict": outside is not None,
        "ring_unit_outside_A": None if outside is None else list(outside),
        "ring_units_searched_exhaustively": a.ring.is_finite(),
    }
