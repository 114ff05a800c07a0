"""Seeded random modules, homomorphisms and sheaves for property checks."""
from __future__ import annotations

import itertools
import logging
import random

from . import intlin, scheme as sc, sesquiad as sq, smodule as sm
from .intlin import vec

log = logging.getLogger(__name__)


def rng_for(seed):
    log.info("random instances from seed %s", seed)
    return random.Random(seed)


# -- test sesquiads ---------------------------------------------------------

def f1():
    return sq.build(["0", "1"], [[0, 0], [0, 1]])


def f2_pair():
    """``({0,1}, F_2)``."""
    return sq.build(["0", "1"], [[0, 0], [0, 1]], [sq.AdditionFact((1, 1), ("1", "1"), "0")])


def f5_signs():
    """``{0, 1, -1}`` inside F_5."""
    return sq.build(["0", "1", "-1"], [[0, 0, 0], [0, 1, 2], [0, 2, 1]],
                    [sq.AdditionFact((1, 1), ("1", "-1"), "0"),
                     sq.AdditionFact((5,), ("1",), "0")])


def z4_ring():
    return sq.ring_sesquiad(intlin.ZAlgebra.zmod(4))


def idempotent():
    """``{0, 1, e}`` with ``e^2 = e`` and no addition."""
    return sq.build(["0", "1", "e"], [[0, 0, 0], [0, 1, 2], [0, 2, 2]])


def test_sesquiads():
    return {"F1": f1(), "F2pair": f2_pair(), "F5signs": f5_signs(), "Z4": z4_ring(),
            "idem": idempotent()}


# -- modules ----------------------------------------------------------------

def _small_vector(rng, n, bound=2):
    return [rng.randint(-bound, bound) for _ in range(n)]


def _block(a, k, j, v):
    d = a.ring.dim
    out = [0] * (k * d)
    out[j * d:(j + 1) * d] = list(v)
    return out


def random_carrier_relations(rng, a, k, finite=False):
    """Relation vectors of an R-submodule of ``R^k``."""
    d = a.ring.dim
    rels = []
    gens = rng.randint(0, 2) if not finite else rng.randint(1, 2)
    acts = a.ring.module.action
    for _ in range(gens):
        v = _small_vector(rng, k * d, 3)
        rels.append(v)
        for act in acts:
            rels.append(list(intlin.block_diag([act] * k) @ vec(v)))
    ring_rel = a.ring.module.relations
    for j in range(k):
        for c in range(ring_rel.shape[1]):
            rels.append(_block(a, k, j, ring_rel[:, c]))
    if finite:
        n = rng.choice([2, 3, 4])
        rels += [[n * int(i == j) for j in range(k * d)] for i in range(k * d)]
    return rels


def random_module(rng, a, max_rank=2, extra_points=2, finite=False, max_order=None):
    """``R^k / rel`` with points the A-closure of generators and a few extras.

    With ``max_order`` the carrier is redrawn until its order is at most that.
    """
    for _ in range(50):
        k = rng.randint(1, max_rank if a.ring.dim == 1 else 1)
        rels = random_carrier_relations(rng, a, k, finite)
        gens = [_block(a, k, j, a.ring.one()) for j in range(k)]
        gens += [_small_vector(rng, k * a.ring.dim) for _ in range(rng.randint(0, extra_points))]
        acts = [intlin.block_diag([m] * k) for m in a.ring.module.action]
        carrier, fwd, _ = intlin.present(k * a.ring.dim, intlin.columns(rels, k * a.ring.dim)
                                         if rels else None, acts) \
            if rels else intlin.present(k * a.ring.dim, intlin.zeros(k * a.ring.dim, 0), acts)
        if max_order is not None:
            order = carrier.order()
            if order is None or order > max_order:
                continue
        g = [carrier.canonical(fwd @ vec(v)) if carrier.rank else () for v in gens]
        pts = sm._a_closure(a, carrier, g)
        m = sm.SesquiadModule(a, carrier, pts)
        m.generators = g
        return m
    return sm.free_module(a, 1)


def full_random_module(rng, a, max_order=16):
    """A module whose points are its whole (finite) carrier."""
    m = random_module(rng, a, finite=True, max_order=max_order)
    if m.carrier.order() is None:
        m = random_module(rng, a, finite=True, max_order=max_order)
    return sm.full_module(a, m.carrier)


def _generators(m):
    return getattr(m, "generators", None) or [p for p in m.points if any(p)]


def random_linear_hom(rng, s, t_template, tries=30):
    """A homomorphism from ``s`` into a module on ``t_template``'s carrier."""
    a = s.base
    gens = _generators(s)
    for _ in range(tries):
        images = [rng.choice(t_template.points) if rng.random() < 0.6
                  else t_template.carrier.canonical(_small_vector(rng, t_template.carrier.rank))
                  for _ in gens]
        pairs = {}
        ok = True
        for gpt, img in zip(gens, images):
            for e in range(len(a)):
                p = s.act(e, gpt)
                q = t_template.act(e, img) if t_template.carrier.rank else ()
                if pairs.setdefault(p, q) != q:
                    ok = False
        if not ok or s.carrier.rank == 0:
            continue
        m = intlin.extend_linear(s.carrier, list(pairs), t_template.carrier,
                                 [pairs[p] for p in pairs]) if _spans(s, pairs) else None
        if m is None:
            continue
        imgs = [t_template.carrier.canonical(m @ vec(p)) if t_template.carrier.rank else ()
                for p in s.points]
        t = sm.SesquiadModule(a, t_template.carrier,
                              list(t_template.points) + imgs)
        t.generators = _generators(t_template)
        try:
            return sm.ModuleHom(s, t, m)
        except sm.ModuleError:
            continue
    return sm.zero_hom(s, t_template)


def _spans(s, pairs):
    span = intlin.Subgroup(s.carrier, list(pairs))
    return all(intlin.member(span, [int(i == j) for j in range(s.carrier.rank)])
               for i in range(s.carrier.rank))


def random_submodule_points(rng, s, count=None):
    """A-closure of a few random points of ``s``."""
    pts = [p for p in s.points if any(p)]
    if not pts:
        return [s.zero()]
    k = count if count is not None else rng.randint(0, min(2, len(pts)))
    chosen = rng.sample(pts, k)
    return sm._a_closure(s.base, s.carrier, chosen)


def random_hom(rng, a, **kw):
    """A random homomorphism of one of several shapes."""
    s = random_module(rng, a, **kw)
    kind = rng.choice(["linear", "quotient", "inclusion", "enlarge", "compose"])
    if kind == "quotient":
        return sm.quotient(s, random_submodule_points(rng, s))[1]
    if kind == "inclusion":
        u, incl = sm.submodule(s, random_submodule_points(rng, s, 1 if len(s) > 1 else 0))
        return incl
    if kind == "enlarge":
        extra = [s.carrier.canonical(_small_vector(rng, s.carrier.rank)) for _ in range(2)] \
            if s.carrier.rank else []
        t = sm.with_points(s, list(s.points) + extra)
        return sm.ModuleHom(s, t, intlin.eye(s.carrier.rank))
    t = random_module(rng, a, **kw)
    f = random_linear_hom(rng, s, t)
    if kind == "compose":
        q, proj = sm.quotient(f.target, random_submodule_points(rng, f.target))
        return f.then(proj)
    return f


def random_sequence(rng, a, **kw):
    """``0 -> U -> S -> S/U -> 0`` for a full submodule U (strong exact)."""
    s = random_module(rng, a, **kw)
    u, incl = sm.submodule(s, sm.full_closure(s, random_submodule_points(rng, s)))
    q, proj = sm.quotient(s, u.points and [incl(p) for p in u.points])
    return incl, proj


# -- enumerating homomorphisms ----------------------------------------------

def generating_points(m):
    """A small set of points whose span is the carrier."""
    chosen = []
    span = intlin.Subgroup(m.carrier, [])
    for p in m.points:
        if not intlin.member(span, p):
            chosen.append(p)
            span = intlin.Subgroup(m.carrier, chosen)
    return chosen


def all_homs(w, s, limit=4096):
    """Every homomorphism ``w -> s`` (by images of generating points)."""
    gens = generating_points(w)
    out = []
    if len(s.points) ** len(gens) > limit:
        raise sq.BoundExceeded("too many candidate homomorphisms")
    for imgs in itertools.product(s.points, repeat=len(gens)):
        try:
            out.append(sm.hom_from_images(w, s, dict(zip(gens, imgs))))
        except (sm.ModuleError, intlin.IntLinError):
            continue
    if not out:
        out.append(sm.zero_hom(w, s))
    return out


# -- sheaves ----------------------------------------------------------------

def random_sheaf(rng, space, a, finite=False):
    """Stalks are quotients of one module; restrictions are the projections.

    Each point ``x`` gets ``M / U_x`` with ``U_x`` growing towards smaller
    points, so restrictions along ``y <= x`` are the induced quotient maps.
    """
    m = random_module(rng, a, finite=finite, max_order=16 if finite else None)
    subs = {}
    for x in space.linear_extension()[::-1]:
        above = [subs[z] for z in space.points if z in subs and space.lt(x, z)]
        base_pts = sorted(set().union(*above)) if above else []
        extra = random_submodule_points(rng, m, rng.randint(0, 1))
        subs[x] = sm.full_closure(m, sm._a_closure(a, m.carrier, base_pts + extra))
    stalks, projs = {}, {}
    for x in space.points:
        stalks[x], projs[x] = sm.quotient(m, subs[x])
    res = {}
    for y, x in space.covers():
        images = {}
        for p in m.points:
            images.setdefault(projs[x](p), projs[y](p))
        res[(x, y)] = sc.induced_matrix(stalks[x], stalks[y],
                                        [images[p] for p in stalks[x].points])
    return sc.ModuleSheaf(space, stalks, res)


def random_sheaf_hom(rng, space, a):
    """Either a quotient-by-submodule map or an enlargement of point sets."""
    f = random_sheaf(rng, space, a)
    kind = rng.choice(["enlarge", "project", "identity"])
    if kind == "identity":
        return sc.sheaf_identity(f)
    if kind == "project":
        # quotient each stalk by a compatible family: push a random point down
        x = rng.choice(space.points)
        pts = random_submodule_points(rng, f.stalks[x], 1)
        fam = {y: pts if y == x else [] for y in space.points}
        for y in space.below(x):
            fam[y] = [f.restrict_point(x, y, p) for p in pts]
        stalks, projs = {}, {}
        for y in space.points:
            stalks[y], projs[y] = sm.quotient(f.stalks[y], sm._a_closure(
                a, f.stalks[y].carrier, fam[y]))
        res = {}
        for y, z in space.covers():
            images = {}
            for p in f.stalks[z].points:
                images.setdefault(projs[z](p), projs[y](f.restrict_point(z, y, p)))
            try:
                res[(z, y)] = sc.induced_matrix(stalks[z], stalks[y],
                                                [images[p] for p in stalks[z].points])
            except sc.NotASheaf:
                return sc.sheaf_identity(f)
        try:
            g = sc.ModuleSheaf(space, stalks, res)
            return sc.SheafHom(f, g, {y: projs[y].matrix for y in space.points})
        except (sc.NotASheaf, sm.ModuleError):
            return sc.sheaf_identity(f)
    # enlarge: same carriers, more points, compatible with restrictions
    stalks = dict(f.stalks)
    for x in space.linear_extension()[::-1]:
        s = stalks[x]
        if s.carrier.rank and rng.random() < 0.6:
            extra = s.carrier.canonical(_small_vector(rng, s.carrier.rank))
            new = sm.with_points(s, list(s.points) + [extra])
            stalks[x] = new
            for y in space.below(x):
                img = f.restrict_point(x, y, extra)
                stalks[y] = sm.with_points(stalks[y], list(stalks[y].points) + [img])
    g = sc.ModuleSheaf(space, stalks, f.res)
    return sc.SheafHom(f, g, {x: intlin.eye(f.stalks[x].carrier.rank) for x in space.points})
