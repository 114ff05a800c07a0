"""Finite spaces, module sheaves on them, and congruence schemes of finite sesquiads.

A finite T0 space is a poset.  Open sets are the down-sets, so the
smallest open around ``x`` is ``U_x = {y : y <= x}`` and a sheaf is a
functor with restrictions ``F_x -> F_y`` for ``y <= x``.  Sections over an
open set are compatible tuples (the limit over the open set).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import intlin, sesquiad as sq, smodule as sm
from .intlin import FgModule, Subgroup, block_diag, extend_linear, member, vec, zeros
from .sesquiad import InternalInconsistency


class SchemeError(Exception):
    pass


class NotAPoset(SchemeError):
    pass


class NotASheaf(SchemeError):
    pass


class TooManySections(SchemeError):
    pass


SECTION_LIMIT = 200_000


# -- finite spaces ----------------------------------------------------------

class FiniteSpace:
    """Points with a partial order; ``leq(y, x)`` means ``y`` lies in ``U_x``."""

    def __init__(self, points, relations=()):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise NotAPoset("repeated point")
        pos = {p: i for i, p in enumerate(self.points)}
        n = len(self.points)
        le = [[i == j for j in range(n)] for i in range(n)]
        for y, x in relations:
            le[pos[y]][pos[x]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise NotAPoset(f"{self.points[i]} and {self.points[j]} are equivalent")
        self._pos = pos
        self._le = le

    def __repr__(self):
        return f"FiniteSpace({list(self.points)}, {self.covers()})"

    def __len__(self):
        return len(self.points)

    def leq(self, y, x):
        return self._le[self._pos[y]][self._pos[x]]

    def lt(self, y, x):
        return y != x and self.leq(y, x)

    def down(self, x):
        """``U_x``, in canonical point order."""
        return [y for y in self.points if self.leq(y, x)]

    def below(self, x):
        return [y for y in self.points if self.lt(y, x)]

    def relations(self):
        return [(y, x) for x in self.points for y in self.points if self.lt(y, x)]

    def covers(self):
        """Pairs ``(y, x)`` with ``y < x`` and nothing strictly between."""
        rel = self.relations()
        return [(y, x) for y, x in rel
                if not any(self.lt(y, z) and self.lt(z, x) for z in self.points)]

    def linear_extension(self, subset=None):
        """Subset listed so that every point follows everything below it."""
        todo = list(self.points if subset is None else subset)
        out = []
        while todo:
            nxt = next(x for x in todo if not any(self.lt(y, x) for y in todo))
            out.append(nxt)
            todo.remove(nxt)
        return out

    def is_open(self, u):
        u = set(u)
        return all(y in u for x in u for y in self.down(x))

    def opens(self):
        """All open sets (down-sets), as tuples in canonical order."""
        out = []
        for mask in range(1 << len(self.points)):
            u = [p for i, p in enumerate(self.points) if mask >> i & 1]
            if self.is_open(u):
                out.append(tuple(u))
        return out

    def chains(self, length):
        """Strict chains ``x_0 > x_1 > ... > x_length``."""
        out = []

        def grow(ch):
            if len(ch) == length + 1:
                out.append(tuple(ch))
                return
            for y in self.points:
                if self.lt(y, ch[-1]):
                    grow(ch + [y])

        for x in self.points:
            grow([x])
        return out

    def dimension(self):
        """Length of the longest strict chain (-1 for the empty space)."""
        if not self.points:
            return -1
        d = 0
        while self.chains(d + 1):
            d += 1
        return d


def point_space(name="*"):
    return FiniteSpace([name])


def sierpinski():
    """Open point ``o`` and closed point ``c`` with ``o <= c``."""
    return FiniteSpace(["o", "c"], [("o", "c")])


def pseudocircle():
    """Two open points ``a, b`` below two closed points ``c, d``."""
    return FiniteSpace(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def chain_space(n):
    return FiniteSpace([f"p{i}" for i in range(n)], [(f"p{i}", f"p{i + 1}") for i in range(n - 1)])


def all_posets(n):
    """All partial orders on ``n`` points, one per isomorphism class."""
    names = [f"p{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        key = min(tuple(sorted((perm[i], perm[j]) for i, j in rel))
                  for perm in itertools.permutations(range(n)))
        if key in seen:
            continue
        seen.add(key)
        out.append(FiniteSpace(names, [(names[i], names[j]) for i, j in key]))
    return out


# -- module sheaves ---------------------------------------------------------

def induced_matrix(source, target, images):
    """Carrier matrix sending ``source.points[k]`` to ``images[k]``."""
    if source.carrier.rank == 0:
        return zeros(target.carrier.rank, 0)
    m = extend_linear(source.carrier, source.points, target.carrier, images)
    if m is None:
        raise NotASheaf("point map has no linear extension")
    return m


def _apply(mat_, module, p):
    if module.carrier.rank == 0:
        return ()
    return module.carrier.canonical(mat_ @ vec(p))


class ModuleSheaf:
    """Stalks ``F_x`` with restriction matrices ``res[(x, y)]`` for ``y < x``.

    ``structure[(x, y)]`` optionally gives the sesquiad map between the
    stalk bases; without it all stalks share one base and restrictions
    must be equivariant.
    """

    def __init__(self, space, stalks, res, structure=None, check=True):
        self.space = space
        self.stalks = dict(stalks)
        self.res = dict(res)
        self.structure = structure
        for y, x in space.relations():
            if (x, y) not in self.res:
                self.res[(x, y)] = self._compose_path(x, y)
        if check:
            self.validate()

    def _compose_path(self, x, y):
        for z in self.space.points:
            if self.space.lt(z, x) and self.space.leq(y, z) and (x, z) in self.res:
                inner = self.res[(x, z)]
                return inner if z == y else self._restriction(z, y) @ inner
        raise NotASheaf(f"no restriction from {x} to {y}")

    def _restriction(self, x, y):
        if x == y:
            return intlin.eye(self.stalks[x].carrier.rank)
        if (x, y) not in self.res:
            self.res[(x, y)] = self._compose_path(x, y)
        return self.res[(x, y)]

    def restriction(self, x, y):
        return self._restriction(x, y)

    def restrict_point(self, x, y, p):
        return _apply(self._restriction(x, y), self.stalks[y], p)

    def base(self, x):
        return self.stalks[x].base

    def validate(self):
        sp = self.space
        for (x, y), m in self.res.items():
            s, t = self.stalks[x], self.stalks[y]
            if m.shape != (t.carrier.rank, s.carrier.rank):
                raise NotASheaf(f"restriction {x}->{y} has the wrong shape")
            if not intlin.is_well_defined(m, s.carrier, t.carrier):
                raise NotASheaf(f"restriction {x}->{y} ignores relations")
            for p in s.points:
                if not t.has_point(_apply(m, t, p)):
                    raise NotASheaf(f"restriction {x}->{y} does not preserve points")
            smap = None if self.structure is None else self.structure[(x, y)]
            for a in range(len(s.base)):
                b = a if smap is None else smap.map[a]
                for p in s.points:
                    if _apply(m, t, s.act(a, p)) != t.act(b, _apply(m, t, p)):
                        raise NotASheaf(f"restriction {x}->{y} is not compatible with the action")
        for x in sp.points:
            for y in sp.below(x):
                for z in sp.below(y):
                    d = self._restriction(y, z) @ self._restriction(x, y) - self._restriction(x, z)
                    if not all(self.stalks[z].carrier.is_zero(d[:, j]) for j in range(d.shape[1])):
                        raise NotASheaf(f"restrictions {x}->{y}->{z} are not functorial")

    def sections(self, u=None):
        return Sections(self, self.space.points if u is None else u)

    def global_sections(self):
        return self.sections()


class Sections:
    """``F(U)``: compatible point tuples inside the product of stalk carriers."""

    def __init__(self, sheaf, u):
        sp = sheaf.space
        self.sheaf = sheaf
        self.opens = tuple(p for p in sp.points if p in set(u))
        if not sp.is_open(self.opens):
            raise SchemeError(f"{self.opens} is not open")
        self.offsets = {}
        off = 0
        for x in self.opens:
            self.offsets[x] = off
            off += sheaf.stalks[x].carrier.rank
        mods = [sheaf.stalks[x].carrier for x in self.opens]
        self.ambient = FgModule(off, block_diag([m.relations for m in mods]) if mods
                                else zeros(0, 0))
        self.points = self._enumerate()
        self.span = Subgroup(self.ambient, self.points)

    def _enumerate(self):
        sh, sp = self.sheaf, self.sheaf.space
        order = sp.linear_extension(self.opens)
        # fill from the top: a point above constrains everything below it
        order = list(reversed(order))
        found = []

        def rec(k, chosen):
            if len(found) > SECTION_LIMIT:
                raise TooManySections("section enumeration exceeded its limit")
            if k == len(order):
                found.append(chosen.copy())
                return
            y = order[k]
            forced = None
            for x, p in chosen.items():
                if sp.lt(y, x):
                    q = sh.restrict_point(x, y, p)
                    if forced is None:
                        forced = q
                    elif forced != q:
                        return
            cands = [forced] if forced is not None else sh.stalks[y].points
            for p in cands:
                chosen[y] = p
                rec(k + 1, chosen)
                del chosen[y]

        rec(0, {})
        return sorted(self.pack(c) for c in found)

    def pack(self, tup):
        out = []
        for x in self.opens:
            out.extend(tup[x])
        return tuple(int(v) for v in out)

    def component(self, s, x):
        o = self.offsets[x]
        return tuple(s[o:o + self.sheaf.stalks[x].carrier.rank])

    def __len__(self):
        return len(self.points)


def constant_sheaf(space, module):
    """Every stalk ``module``, identity restrictions."""
    stalks = {x: module for x in space.points}
    n = module.carrier.rank
    res = {(x, y): intlin.eye(n) for y, x in space.covers()}
    return ModuleSheaf(space, stalks, res)


def skyscraper(space, x, module):
    """``module`` at every point above ``x``, zero elsewhere."""
    z = sm.zero_module(module.base)
    stalks = {p: module if space.leq(x, p) else z for p in space.points}
    res = {}
    for y, p in space.covers():
        n, m = stalks[p].carrier.rank, stalks[y].carrier.rank
        res[(p, y)] = intlin.eye(n) if n and m else zeros(m, n)
    return ModuleSheaf(space, stalks, res)


# -- sheaf morphisms --------------------------------------------------------

class SheafHom:
    def __init__(self, source, target, maps, check=True):
        if source.space is not target.space:
            raise SchemeError("sheaves live on different spaces")
        self.source = source
        self.target = target
        self.maps = {x: m for x, m in maps.items()}
        self.stalk_homs = {x: sm.ModuleHom(source.stalks[x], target.stalks[x], self.maps[x],
                                           check=check)
                           for x in source.space.points}
        if check:
            self._check_natural()

    def _check_natural(self):
        s, t = self.source, self.target
        for y, x in s.space.relations():
            d = t.restriction(x, y) @ self.maps[x] - self.maps[y] @ s.restriction(x, y)
            if not all(t.stalks[y].carrier.is_zero(d[:, j]) for j in range(d.shape[1])):
                raise NotASheaf(f"morphism does not commute with restriction {x}->{y}")

    def on_sections(self, u, src_sections=None, tgt_sections=None):
        """``phi_U`` as (matrix, source sections, target sections)."""
        fs = src_sections or self.source.sections(u)
        gs = tgt_sections or self.target.sections(u)
        m = block_diag([self.maps[x] for x in fs.opens]) if fs.opens else zeros(0, 0)
        return m, fs, gs


def sheaf_identity(f):
    return SheafHom(f, f, {x: intlin.eye(f.stalks[x].carrier.rank) for x in f.space.points})


def pointwise_hom(source, target, homs):
    """Sheaf morphism from a dict of stalk ModuleHoms."""
    return SheafHom(source, target, {x: h.matrix for x, h in homs.items()})


def _full_on(m, fs, gs):
    images = {gs.ambient.canonical(m @ vec(p)) if gs.ambient.rank else () for p in fs.points}
    span = Subgroup(gs.ambient, list(images))
    return all(t in images for t in gs.points if member(span, t))


@dataclass
class FullnessReport:
    on_opens: dict
    on_stalks: dict

    @property
    def global_value(self):
        return all(self.on_opens.values())

    @property
    def stalk_value(self):
        return all(self.on_stalks.values())


def fullness_report(phi):
    """Fullness of ``phi_U`` for every open ``U`` and of every stalk map."""
    on_opens = {}
    for u in phi.source.space.opens():
        m, fs, gs = phi.on_sections(u)
        on_opens[u] = _full_on(m, fs, gs)
    on_stalks = {x: sm.is_full(h) for x, h in phi.stalk_homs.items()}
    return FullnessReport(on_opens, on_stalks)


def is_full_sheaf(phi):
    """Fullness over all opens, cross-checked against fullness of all stalks."""
    r = fullness_report(phi)
    if r.global_value != r.stalk_value:
        bad = [u for u, v in r.on_opens.items() if not v]
        raise InternalInconsistency(
            f"sheaf fullness: opens say {r.global_value} (failing {bad}), stalks say {r.stalk_value}")
    return r.global_value


# -- kernels, cokernels, products -------------------------------------------

def _induced_sheaf(space, stalks, old, maps_to_old, lift):
    """Restrictions on new stalks induced from the old sheaf through point maps."""
    res = {}
    for y, x in space.covers():
        images = [lift(y, old.restrict_point(x, y, maps_to_old(x, p))) for p in stalks[x].points]
        res[(x, y)] = induced_matrix(stalks[x], stalks[y], images)
    return res


def sheaf_kernel(phi):
    """Pointwise kernels with the induced restrictions, and the inclusion."""
    sp = phi.source.space
    parts = {x: sm.kernel(phi.stalk_homs[x]) for x in sp.points}
    stalks = {x: parts[x][0] for x in sp.points}
    back = {x: {parts[x][1](k): k for k in stalks[x].points} for x in sp.points}
    res = _induced_sheaf(sp, stalks, phi.source, lambda x, p: parts[x][1](p),
                         lambda y, q: back[y][q])
    k = ModuleSheaf(sp, stalks, res)
    return k, SheafHom(k, phi.source, {x: parts[x][1].matrix for x in sp.points})


def sheaf_cokernel(phi):
    """Pointwise cokernels; on a finite space this is already a sheaf."""
    sp = phi.source.space
    parts = {x: sm.cokernel(phi.stalk_homs[x]) for x in sp.points}
    stalks = {x: parts[x][0] for x in sp.points}
    tgt = phi.target
    res = {}
    for y, x in sp.covers():
        q_x, q_y = parts[x][1], parts[y][1]
        mapping = {}
        for t in tgt.stalks[x].points:
            mapping[q_x(t)] = q_y(tgt.restrict_point(x, y, t))
        res[(x, y)] = induced_matrix(stalks[x], stalks[y], [mapping[p] for p in stalks[x].points])
    c = ModuleSheaf(sp, stalks, res)
    return c, SheafHom(tgt, c, {x: parts[x][1].matrix for x in sp.points})


def presheaf_cokernel_sections(phi, u):
    """``G(U)`` modulo the span of ``phi_U(F(U))``, before sheafification.

    Returns the quotient group and the image of the points of ``G(U)``.
    """
    m, fs, gs = phi.on_sections(u)
    amb = gs.ambient
    nonzero = [p for p in gs.points if any(p)]
    if not nonzero:
        return FgModule(0), [()]
    carrier, incl = intlin.submodule(amb, nonzero)
    big = intlin.hstack([incl, amb.relations], amb.rank)

    def coords(v):
        return carrier.canonical(intlin.solve(big, v)[:carrier.rank])

    images = [coords(amb.canonical(m @ vec(p))) for p in fs.points]
    q, proj = intlin.quotient(carrier, Subgroup(carrier, images), check_action=False)
    pts = {q.canonical(proj @ vec(coords(p))) if q.rank else () for p in gs.points}
    return q, sorted(pts)


def sheaf_product(f, g):
    sp = f.space
    stalks, res = {}, {}
    for x in sp.points:
        stalks[x] = sm.product(f.stalks[x], g.stalks[x])[0]
    for y, x in sp.covers():
        res[(x, y)] = block_diag([f.restriction(x, y), g.restriction(x, y)])
    return ModuleSheaf(sp, stalks, res)


def sheaf_direct_sum(f, g):
    return sheaf_product(f, g)


# -- congruence schemes -----------------------------------------------------

@dataclass
class CongruenceScheme:
    """``spec_c`` of a finite sesquiad with its stalks ``A_E``."""

    base: sq.Sesquiad
    space: FiniteSpace
    primes: dict
    stalks: dict
    to_stalk: dict
    structure: dict
    localizations: dict = field(default_factory=dict)

    def global_sesquiad(self):
        """Compatible tuples of stalk elements (the limit), and whether A maps onto them."""
        sp = self.space
        order = list(reversed(sp.linear_extension()))
        tuples = []

        def rec(k, chosen):
            if k == len(order):
                tuples.append(tuple(chosen[x] for x in sp.points))
                return
            y = order[k]
            forced = {self.structure[(x, y)].map[e] for x, e in chosen.items() if sp.lt(y, x)}
            if len(forced) > 1:
                return
            for e in (forced or range(len(self.stalks[y]))):
                chosen[y] = e
                rec(k + 1, chosen)
                del chosen[y]

        rec(0, {})
        from_a = {tuple(self.to_stalk[x].map[a] for x in sp.points) for a in range(len(self.base))}
        return sorted(tuples), set(tuples) == from_a


def _label(c):
    return c.label()


def spec_scheme(a, bound=sq.DEFAULT_SPEC_BOUND):
    primes = sq.spec_c(a, bound)
    labels = [_label(c) for c in primes]
    rel = [(_label(d), _label(c)) for c in primes for d in primes if d != c and d.refines(c)]
    space = FiniteSpace(labels, rel)
    stalks, to_stalk, locs = {}, {}, {}
    for c in primes:
        loc = sq.localize(a, c)
        locs[_label(c)] = loc
        stalks[_label(c)] = loc.local
        to_stalk[_label(c)] = loc.to_local
    structure = {}
    for y, x in space.relations():
        src, tgt = to_stalk[x], to_stalk[y]
        mapping = {}
        for e in range(len(a)):
            k = src.map[e]
            if mapping.setdefault(k, tgt.map[e]) != tgt.map[e]:
                raise InternalInconsistency(f"stalk map {x}->{y} is not well defined")
        structure[(x, y)] = sq.hom(stalks[x], stalks[y], [mapping[k] for k in range(len(stalks[x]))])
    for y, x in space.relations():
        for z in space.below(y):
            if structure[(x, y)].then(structure[(y, z)]).map != structure[(x, z)].map:
                raise InternalInconsistency("stalk maps are not functorial")
    return CongruenceScheme(a, space, {_label(c): c for c in primes}, stalks, to_stalk,
                            structure, locs)


def localize_module(scheme, m, x):
    """``m`` at the point ``x``: ``M / (1 - u) M`` with the image points."""
    a = scheme.base
    c = scheme.primes[x]
    s = [e for e in range(len(a)) if not c.related(e, a.zero)]
    u = sq.localizing_idempotent(a, s)
    n = m.carrier.rank
    um = m.element_matrix(u)
    kill = [(intlin.eye(n) - um)[:, j] for j in range(n)]
    q, proj = intlin.quotient(m.carrier, Subgroup(m.carrier, kill), check_action=False)
    local = scheme.stalks[x]
    to = scheme.to_stalk[x]
    acts = {}
    for e in range(len(a)):
        acts.setdefault(to.map[e], _descend(proj, m.element_matrix(e), q))
    action = sm.basis_action(local, q.rank, acts) if q.rank else [zeros(0, 0)] * local.ring.dim
    carrier = FgModule(q.rank, q.relations, action)
    pts = [carrier.canonical(proj @ vec(p)) if q.rank else () for p in m.points]
    return sm.SesquiadModule(local, carrier, pts), proj


def _descend(proj, mat_, q):
    """Matrix on ``q`` induced by ``mat_`` through the projection ``proj``."""
    if q.rank == 0:
        return zeros(0, 0)
    lift = []
    big = intlin.hstack([proj, q.relations], q.rank)
    for i in range(q.rank):
        e = [int(i == j) for j in range(q.rank)]
        x = intlin.solve(big, e)
        lift.append(x[:proj.shape[1]])
    cols = [q.canonical(proj @ (mat_ @ v)) for v in lift]
    return intlin.columns(cols, q.rank)


def module_sheaf_from(scheme, m):
    """The sheaf of localizations of a module over the base sesquiad."""
    sp = scheme.space
    stalks, projs = {}, {}
    for x in sp.points:
        stalks[x], projs[x] = localize_module(scheme, m, x)
    res = {}
    for y, x in sp.relations():
        images = {}
        for p in m.points:
            px = stalks[x].carrier.canonical(projs[x] @ vec(p)) if stalks[x].carrier.rank else ()
            py = stalks[y].carrier.canonical(projs[y] @ vec(p)) if stalks[y].carrier.rank else ()
            if images.setdefault(px, py) != py:
                raise InternalInconsistency("localization restriction is not well defined")
        res[(x, y)] = induced_matrix(stalks[x], stalks[y], [images[p] for p in stalks[x].points])
    return ModuleSheaf(sp, stalks, res, structure=scheme.structure)


# -- unramified and etale morphisms -----------------------------------------

def algebra_as_module(h):
    """``R_B`` as a module over A through ``h``, with the elements of B as points."""
    a, b = h.source, h.target
    rb = b.ring
    action = [rb.mult_matrix(h.ring_apply([int(i == j) for j in range(a.ring.dim)]))
              for i in range(a.ring.dim)]
    carrier = FgModule(rb.dim, rb.module.relations, action)
    return sm.SesquiadModule(a, carrier, list(b.embed))


def _residue_map(h, e_b):
    """``kappa(h*E) -> kappa(E)`` through ``A/h*E -> B/E``."""
    a, b = h.source, h.target
    e_a = sq.pullback(h, e_b)
    if not sq.is_prime(e_a):
        raise InternalInconsistency("pullback of a prime is not prime")
    ka, kb = sq.localize(a, e_a), sq.localize(b, e_b)
    la, lb = ka.local, kb.local
    mapping = {}
    for x in range(len(a)):
        ra = ka.to_residue.map[ka.to_local.map[x]]
        rb = kb.to_residue.map[kb.to_local.map[h.map[x]]]
        if mapping.setdefault(ra, rb) != rb:
            raise InternalInconsistency("residue map is not well defined")
    res_hom = sq.hom(ka.residue, kb.residue, [mapping[k] for k in range(len(ka.residue))])
    mapping = {}
    for x in range(len(a)):
        mapping.setdefault(ka.to_local.map[x], kb.to_local.map[h.map[x]])
    local_hom = sq.hom(la, lb, [mapping[k] for k in range(len(la))])
    return e_a, res_hom, local_hom


def _separability_over(ext, cap):
    results = {}
    for bidx in range(len(ext.target)):
        results[ext.target.names[bidx]] = sq.is_separable(ext, bidx, degree_cap=cap)
    return results


def _aggregate(results):
    """Only algebraic elements matter; elements with no annihilator up to the
    cap are treated as transcendental (the cap is echoed in reports)."""
    value = True
    for r in results.values():
        if r.status is sq.Separability.INSEPARABLE:
            if r.conclusive:
                return False
            value = None
    return value


def is_unramified(h, bound=sq.DEFAULT_SPEC_BOUND, cap=3):
    """Finite presentation plus finite separable injective residue extensions.

    ``value`` is True, False, or None when the separability search was
    inconclusive.  The stalk diagnostic repeats the separability search on
    the local sesquiads, which sees nilpotent directions the residues lose.
    """
    mc = sq.morphism_class(h)
    points = []
    value = mc["finitely_presented"]
    stalk_value = True
    for e_b in sq.spec_c(h.target, bound):
        e_a, res_hom, local_hom = _residue_map(h, e_b)
        injective = res_hom.is_injective()
        sep = _separability_over(res_hom, cap) if injective else {}
        verdict = _aggregate(sep) if injective else False
        stalk_sep = _separability_over(local_hom, cap) if local_hom.is_injective() else {}
        stalk_verdict = _aggregate(stalk_sep) if stalk_sep else False
        points.append({
            "prime": e_b.label(),
            "below": e_a.label(),
            "residue_injective": injective,
            "residue_separable": verdict,
            "separability": {k: r.status.value for k, r in sorted(sep.items())},
            "stalk_separable": stalk_verdict,
            "stalk_separability": {k: r.status.value for k, r in sorted(stalk_sep.items())},
        })
        if verdict is False or value is False:
            value = False
        elif verdict is None and value is True:
            value = None
        if stalk_verdict is not True:
            stalk_value = stalk_verdict if stalk_value is True else stalk_value
    return {"unramified": value, "finitely_presented": mc["finitely_presented"],
            "points": points, "stalkwise_separable": stalk_value}


def is_etale(h, bound=sq.DEFAULT_SPEC_BOUND, cap=3, ideal_limit=256):
    flat = sm.is_flat(algebra_as_module(h), limit=ideal_limit)
    unr = is_unramified(h, bound, cap)
    flat_value = {sm.Flatness.FLAT: True, sm.Flatness.NOT_FLAT: False}.get(flat.status)
    if flat_value is False or unr["unramified"] is False:
        value = False
    elif flat_value is None or unr["unramified"] is None:
        value = None
    else:
        value = True
    return {"etale": value, "flat": flat.status.value, "flat_route": flat.route,
            "flat_witness": flat.witness, **unr}


def locally_finite_presentation(homs):
    """Every affine piece finitely presented; reports the witnesses."""
    reports = [sq.morphism_class(h) for h in homs]
    return all(r["finitely_presented"] for r in reports), reports


# -- DOT export -------------------------------------------------------------

def _dot_id(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(space, annotations=None, name="spec"):
    """Stable DOT text: nodes sorted by label, edges along covering relations."""
    lines = [f"digraph {name} {{"]
    for p in sorted(space.points, key=str):
        label = _dot_id(p) if annotations is None else \
            _dot_id(p)[:-1] + "\\n" + _dot_id(annotations[p])[1:]
        lines.append(f"  {_dot_id(p)} [label={label}];")
    for y, x in sorted(space.covers(), key=lambda e: (str(e[0]), str(e[1]))):
        lines.append(f"  {_dot_id(y)} -> {_dot_id(x)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def scheme_dot(scheme):
    notes = {x: f"{len(scheme.stalks[x])} elements, ring {scheme.stalks[x].ring.module.describe()}"
             for x in scheme.space.points}
    return export_dot(scheme.space, notes)
