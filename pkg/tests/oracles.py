"""Brute-force oracles over finite families of test objects.

Homomorphisms are enumerated by images of generating points, and
congruences by set partitions, so every quantifier here ranges over an
explicit finite set.
"""
import itertools

from sesquiads import intlin, smodule as sm
from sesquiads import randomized as rd
from sesquiads import sesquiad as sq
from sesquiads.intlin import vec


def homs(w, s, limit=4096):
    try:
        return rd.all_homs(w, s, limit)
    except sq.BoundExceeded:
        return None


def probes_into(s):
    """Test objects W for maps W -> s: the free module of rank one, s itself, its kernel points."""
    out = [sm.free_module(s.base, 1), s]
    return out


def probes_out_of(t, f=None):
    """Test objects W for maps t -> W: quotients of t, the zero module, t itself."""
    out = [t, sm.zero_module(t.base)]
    if f is not None:
        out.append(sm.cokernel(f)[0])
    for p in t.points:
        if any(p):
            out.append(sm.quotient(t, sm._a_closure(t.base, t.carrier, [p]))[0])
    return out


def categorical_mono(f, limit=4096):
    """Left cancellation against every hom from the probe objects; None if too many."""
    for w in probes_into(f.source):
        hs = homs(w, f.source, limit)
        if hs is None:
            return None
        seen = {}
        for g in hs:
            key = tuple(g.then(f).point_map)
            if key in seen and seen[key].point_map != g.point_map:
                return False
            seen[key] = g
    return True


def categorical_epi(f, limit=4096):
    for w in probes_out_of(f.target, f):
        hs = homs(f.target, w, limit)
        if hs is None:
            return None
        seen = {}
        for g in hs:
            key = tuple(f.then(g).point_map)
            if key in seen and seen[key].point_map != g.point_map:
                return False
            seen[key] = g
    return True


def categorical_iso(f, limit=4096):
    hs = homs(f.target, f.source, limit)
    if hs is None:
        return None
    ids = sm.identity(f.source), sm.identity(f.target)
    return any(f.then(g).same_as(ids[0]) and g.then(f).same_as(ids[1]) for g in hs)


def kernel_universal(f, limit=4096):
    """Every g: W -> S with f g = 0 factors uniquely through the kernel."""
    k, incl = sm.kernel(f)
    for w in probes_into(f.source):
        hs = homs(w, f.source, limit)
        ks = homs(w, k, limit)
        if hs is None or ks is None:
            return None
        for g in hs:
            if not g.then(f).is_zero():
                continue
            lifts = [h for h in ks if h.then(incl).same_as(g)]
            if len(lifts) != 1:
                return False
    return True


def cokernel_universal(f, limit=4096):
    """Every g: T -> W with g f = 0 factors uniquely through the cokernel."""
    c, proj = sm.cokernel(f)
    for w in probes_out_of(f.target):
        hs = homs(f.target, w, limit)
        cs = homs(c, w, limit)
        if hs is None or cs is None:
            return None
        for g in hs:
            if not f.then(g).is_zero():
                continue
            desc = [h for h in cs if proj.then(h).same_as(g)]
            if len(desc) != 1:
                return False
    return True


def all_point_subsets_stable(t):
    """Every A-stable subset of the points containing zero."""
    nonzero = [p for p in t.points if any(p)]
    out = []
    for r in range(len(nonzero) + 1):
        for chosen in itertools.combinations(nonzero, r):
            pts = set(chosen) | {t.zero()}
            if all(t.act(a, p) in pts for a in range(len(t.base)) for p in pts):
                out.append(sorted(pts))
    return out


# -- sesquiads ----------------------------------------------------------------

def partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def saturated_congruences(a):
    """Brute force: multiplicative partitions that are fibres of A -> R_A / I."""
    out = set()
    for blocks in partitions(list(range(len(a)))):
        cls = {x: k for k, b in enumerate(blocks) for x in b}
        if any(cls[a.table[x][z]] != cls[a.table[y][z]]
               for x in range(len(a)) for y in range(len(a)) if cls[x] == cls[y]
               for z in range(len(a))):
            continue
        diffs = [tuple(vec(a.embed[b[0]]) - vec(a.embed[x])) for b in blocks for x in b[1:]]
        ideal = intlin.ideal_generated(a.ring, diffs)
        if all((cls[x] == cls[y]) == intlin.member(ideal, tuple(vec(a.embed[x]) - vec(a.embed[y])))
               for x in range(len(a)) for y in range(len(a))):
            out.add(tuple(sorted(tuple(sorted(b)) for b in blocks)))
    return out


def simple_by_oracle(a):
    if a.is_zero():
        return False
    return all(len(c) == len(a) or any(0 in b and a.one in b for b in c)
               for c in saturated_congruences(a))


def annihilator_quotient_order(a, c):
    """|R / K| with K = {r : s r = 0 for some s built from elements outside the zero class}."""
    ring = a.ring
    s_elems = [x for x in range(len(a)) if not c.related(x, a.zero)]
    closure = {ring.one()}
    changed = True
    while changed:
        changed = False
        for v in list(closure):
            for x in s_elems:
                w = ring.mul(v, a.embed[x])
                if w not in closure:
                    closure.add(w)
                    changed = True
    kernel = [r for r in ring.elements() if any(not any(ring.mul(s, r)) for s in closure)]
    return len(ring.elements()) // len(kernel)


def brute_roots(p):
    a = p.base
    return [x for x in range(len(a))
            if not any(a.ring.canonical(sum(vec(a.embed[a.table[c][a.power(x, i)]])
                                             for i, c in enumerate(p.coefficients))))]
