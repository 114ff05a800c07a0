"""Cohomology of module sheaves on finite spaces.

A sheaf is first ascended to its carrier sheaf of abelian groups.  That
sheaf is resolved by Godement sheaves ``G(K)_x = prod_{y <= x} K_y`` and
the global sections complex is reduced with Smith normal forms.  An
independent computation of the higher limits over the poset (cochains on
strict chains) serves as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import intlin
from .intlin import FgModule, Subgroup, block_diag, columns, hstack, member, solve, vec, zeros
from .scheme import ModuleSheaf
from .sesquiad import InternalInconsistency


class NotFlabby(Exception):
    pass


MODEL_NOTE = ("degree 0 keeps the section point set; higher degrees carry the full module "
              "on the computed group; X_Z is the same finite space with the ring sheaf")


class CarrierSheaf:
    """Abelian groups ``K_x`` with restriction matrices for every ``y < x``."""

    def __init__(self, space, modules, res, check=True):
        self.space = space
        self.modules = {x: FgModule(m.rank, m.relations) for x, m in modules.items()}
        self.res = dict(res)
        if check:
            self.validate()

    def restriction(self, x, y):
        if x == y:
            return intlin.eye(self.modules[x].rank)
        return self.res[(x, y)]

    def validate(self):
        sp = self.space
        for y, x in sp.relations():
            m = self.res[(x, y)]
            if m.shape != (self.modules[y].rank, self.modules[x].rank):
                raise InternalInconsistency(f"restriction {x}->{y} has the wrong shape")
            if not intlin.is_well_defined(m, self.modules[x], self.modules[y]):
                raise InternalInconsistency(f"restriction {x}->{y} ignores relations")
            for z in sp.below(y):
                d = self.res[(y, z)] @ m - self.res[(x, z)]
                if not all(self.modules[z].is_zero(d[:, j]) for j in range(d.shape[1])):
                    raise InternalInconsistency(f"restrictions {x}->{y}->{z} do not compose")

    def direct_sum(self, other):
        mods = {x: intlin.direct_sum(self.modules[x], other.modules[x]) for x in self.space.points}
        res = {k: block_diag([self.res[k], other.res[k]]) for k in self.res}
        return CarrierSheaf(self.space, mods, res)


def ascend(f):
    """Carrier sheaf of a module sheaf: stalk carriers and restriction matrices."""
    if isinstance(f, CarrierSheaf):
        return f
    res = {(x, y): f.restriction(x, y) for y, x in f.space.relations()}
    return CarrierSheaf(f.space, {x: f.stalks[x].carrier for x in f.space.points}, res)


def _product(mods):
    return FgModule(sum(m.rank for m in mods),
                    block_diag([m.relations for m in mods]) if mods else zeros(0, 0))


def _offsets(space, subset, modules):
    off, out = 0, {}
    for y in space.points:
        if y in subset:
            out[y] = off
            off += modules[y].rank
    return out, off


def limit(k, subset=None):
    """``lim`` of ``k`` over an open subset: kernel of the compatibility map.

    Returns ``(module, inclusion into the product, offsets)``.
    """
    sp = k.space
    subset = list(sp.points if subset is None else subset)
    offs, total = _offsets(sp, subset, k.modules)
    prod_mod = _product([k.modules[y] for y in sp.points if y in subset])
    rows, tmods = [], []
    for y, x in sp.relations():
        if x in subset and y in subset:
            r = zeros(k.modules[y].rank, total)
            r[:, offs[x]:offs[x] + k.modules[x].rank] = k.res[(x, y)]
            r[:, offs[y]:offs[y] + k.modules[y].rank] -= intlin.eye(k.modules[y].rank)
            rows.append(r)
            tmods.append(k.modules[y])
    if not rows or total == 0:
        gens = [[int(i == j) for j in range(total)] for i in range(total)]
        if not gens:
            return FgModule(0), zeros(0, 0), offs
        sub, incl = intlin.submodule(prod_mod, gens)
        return sub, incl, offs
    phi = _vstack(rows, total)
    tgt = _product(tmods)
    sub, incl = intlin.kernel_of(phi, prod_mod, tgt)
    return sub, incl, offs


def _vstack(mats, ncols):
    nrows = sum(m.shape[0] for m in mats)
    out = zeros(nrows, ncols)
    r = 0
    for m in mats:
        out[r:r + m.shape[0], :] = m
        r += m.shape[0]
    return out


def is_flabby(k):
    """Every ``K_x -> lim_{y < x} K_y`` is onto."""
    k = ascend(k)
    sp = k.space
    for x in sp.points:
        below = sp.below(x)
        if not below:
            continue
        lim_mod, incl, offs = limit(k, below)
        total = sum(k.modules[y].rank for y in below)
        prod_mod = _product([k.modules[y] for y in sp.points if y in below])
        stacked = zeros(total, k.modules[x].rank)
        for y in below:
            stacked[offs[y]:offs[y] + k.modules[y].rank, :] = k.res[(x, y)]
        img = Subgroup(prod_mod, [stacked[:, j] for j in range(stacked.shape[1])])
        if not all(member(img, incl[:, j]) for j in range(incl.shape[1])):
            return False
    return True


# -- Godement resolution ----------------------------------------------------

@dataclass
class GodementStage:
    sheaf: CarrierSheaf
    godement: CarrierSheaf
    quotient: CarrierSheaf
    proj: dict
    offsets: dict


def _godement_sheaf(k):
    sp = k.space
    mods, offs = {}, {}
    for x in sp.points:
        below = sp.down(x)
        offs[x], _ = _offsets(sp, below, k.modules)
        mods[x] = _product([k.modules[y] for y in sp.points if y in below])
    res = {}
    for z, x in sp.relations():
        m = zeros(mods[z].rank, mods[x].rank)
        for y in sp.down(z):
            n = k.modules[y].rank
            m[offs[z][y]:offs[z][y] + n, offs[x][y]:offs[x][y] + n] = intlin.eye(n)
        res[(x, z)] = m
    return CarrierSheaf(sp, mods, res, check=False), offs


def godement_step(k):
    """``K -> G(K) -> Q`` with ``Q`` the pointwise cokernel."""
    sp = k.space
    g, offs = _godement_sheaf(k)
    qmods, proj = {}, {}
    for x in sp.points:
        eta = zeros(g.modules[x].rank, k.modules[x].rank)
        for y in sp.down(x):
            eta[offs[x][y]:offs[x][y] + k.modules[y].rank, :] = k.restriction(x, y)
        sub = Subgroup(g.modules[x], [eta[:, j] for j in range(eta.shape[1])])
        q, p = intlin.quotient(g.modules[x], sub, check_action=False)
        qmods[x], proj[x] = q, p
    qres = {}
    for z, x in sp.relations():
        qres[(x, z)] = _descend(proj[x], proj[z] @ g.res[(x, z)], qmods[x], qmods[z])
    q = CarrierSheaf(sp, qmods, qres)
    return GodementStage(k, g, q, proj, offs)


def _descend(proj_src, mat_, q_src, q_tgt):
    """Matrix ``q_src -> q_tgt`` induced by ``mat_`` defined on the cover of ``q_src``."""
    if q_src.rank == 0:
        return zeros(q_tgt.rank, 0)
    big = hstack([proj_src, q_src.relations], q_src.rank)
    cols = []
    for i in range(q_src.rank):
        x = solve(big, [int(i == j) for j in range(q_src.rank)])
        lift = x[:proj_src.shape[1]]
        cols.append(q_tgt.canonical(mat_ @ lift) if q_tgt.rank else ())
    return columns(cols, q_tgt.rank) if q_tgt.rank else zeros(0, q_src.rank)


def godement(k, length=None):
    """Godement stages ``K^0 = K, K^{p+1} = G(K^p) / K^p``; each G is checked flabby."""
    k = ascend(k)
    if length is None:
        length = max(k.space.dimension(), 0) + 2
    stages = []
    cur = k
    for _ in range(length):
        st = godement_step(cur)
        if not is_flabby(st.godement):
            raise InternalInconsistency("a Godement sheaf is not flabby")
        stages.append(st)
        cur = st.quotient
    return stages


def godement_complex(k, length=None):
    """Global sections of the Godement resolution as ``(groups, differentials)``."""
    stages = godement(k, length)
    sp = ascend(k).space
    groups = [_product([st.sheaf.modules[y] for y in sp.points]) for st in stages]
    diffs = []
    for p in range(len(stages) - 1):
        st, nxt = stages[p], stages[p + 1]
        src_off, _ = _offsets(sp, sp.points, st.sheaf.modules)
        tgt_off, _ = _offsets(sp, sp.points, nxt.sheaf.modules)
        d = zeros(groups[p + 1].rank, groups[p].rank)
        for x in sp.points:
            qx = st.proj[x]
            rows = slice(tgt_off[x], tgt_off[x] + nxt.sheaf.modules[x].rank)
            for y in sp.down(x):
                n = st.sheaf.modules[y].rank
                d[rows, src_off[y]:src_off[y] + n] = \
                    qx[:, st.offsets[x][y]:st.offsets[x][y] + n]
        diffs.append(d)
    _check_complex(groups, diffs)
    return groups, diffs


def _check_complex(groups, diffs):
    for p in range(len(diffs) - 1):
        dd = diffs[p + 1] @ diffs[p]
        if not all(groups[p + 2].is_zero(dd[:, j]) for j in range(dd.shape[1])):
            raise InternalInconsistency(f"d o d != 0 in degree {p}")


def complex_cohomology(groups, diffs, p):
    """``ker d^p / im d^{p-1}`` as an FgModule."""
    c = groups[p]
    if p < len(diffs):
        z, zi = intlin.kernel_of(diffs[p], c, groups[p + 1])
    else:
        z, zi = intlin.submodule(c, [[int(i == j) for j in range(c.rank)] for i in range(c.rank)]) \
            if c.rank else (FgModule(0), zeros(0, 0))
    if z.rank == 0:
        return FgModule(0)
    images = []
    if p > 0:
        d = diffs[p - 1]
        big = hstack([zi, c.relations], c.rank)
        for j in range(d.shape[1]):
            x = solve(big, d[:, j])
            if x is None:
                raise InternalInconsistency("image of d is not inside the kernel")
            images.append(x[:z.rank])
    h, _ = intlin.quotient(z, Subgroup(z, images), check_action=False)
    return h


# -- higher limits ----------------------------------------------------------

def chain_complex(k, top):
    """Cochains ``prod_{x_0 > ... > x_p} K(x_p)`` for ``p <= top``."""
    k = ascend(k)
    sp = k.space
    chains = [sp.chains(p) for p in range(top + 1)]
    groups = [_product([k.modules[c[-1]] for c in cs]) for cs in chains]
    offs = []
    for cs in chains:
        o, off = {}, 0
        for c in cs:
            o[c] = off
            off += k.modules[c[-1]].rank
        offs.append(o)
    diffs = []
    for p in range(top):
        d = zeros(groups[p + 1].rank, groups[p].rank)
        for c in chains[p + 1]:
            n_out = k.modules[c[-1]].rank
            r0 = offs[p + 1][c]
            for i in range(p + 2):
                face = c[:i] + c[i + 1:]
                sign = -1 if i % 2 else 1
                src = face[-1]
                block = k.restriction(c[p], c[p + 1]) if i == p + 1 else intlin.eye(n_out)
                c0 = offs[p][face]
                d[r0:r0 + n_out, c0:c0 + k.modules[src].rank] += sign * block
        diffs.append(d)
    _check_complex(groups, diffs)
    return groups, diffs


def higher_limits(k, top=None):
    k = ascend(k)
    if top is None:
        top = max(k.space.dimension(), 0) + 1
    groups, diffs = chain_complex(k, top + 1)
    return [complex_cohomology(groups, diffs, p) for p in range(top + 1)]


# -- cohomology of module sheaves -------------------------------------------

@dataclass
class CohomologyResult:
    degree: int
    invariant_factors: list
    points: list | None
    full_module: bool

    def is_zero(self):
        return not self.invariant_factors

    def describe(self):
        parts = ["Z" if x == 0 else f"Z/{x}" for x in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def cohomology(f, top=None, check_oracle=True):
    """``H^0 .. H^top`` (default ``dim X + 1``), vanishing above the dimension asserted."""
    k = ascend(f)
    dim = k.space.dimension()
    if top is None:
        top = max(dim, 0) + 1
    groups, diffs = godement_complex(k, top + 2)
    hs = [complex_cohomology(groups, diffs, p) for p in range(top + 1)]
    for p, h in enumerate(hs):
        if p > dim and not h.is_trivial():
            raise InternalInconsistency(f"H^{p} = {h.describe()} above the dimension {dim}")
    lim_mod, _, _ = limit(k)
    if hs and hs[0].invariant_factors() != lim_mod.invariant_factors():
        raise InternalInconsistency("H^0 differs from the global sections")
    if check_oracle:
        oracle = higher_limits(k, top)
        for p, (h, o) in enumerate(zip(hs, oracle)):
            if h.invariant_factors() != o.invariant_factors():
                raise InternalInconsistency(
                    f"H^{p}: resolution gives {h.describe()}, higher limits give {o.describe()}")
    out = []
    for p, h in enumerate(hs):
        pts = None
        if p == 0 and isinstance(f, ModuleSheaf):
            pts = list(f.global_sections().points)
        out.append(CohomologyResult(p, h.invariant_factors(), pts, p > 0))
    return out


def base_change_compare(f, top=None):
    """Degreewise comparison of the sesquiad-level groups with those of the ascended sheaf.

    In degree 0 the sesquiad side is the group generated by the compatible
    point tuples, sitting inside the limit of the carriers.  Higher
    degrees carry the full module on the ascended group, so the map is the
    identity there.
    """
    k = ascend(f)
    results = cohomology(f, top, check_oracle=False)
    report = []
    lim_mod, incl, _ = limit(k)
    secs = f.global_sections()
    amb = secs.ambient
    big = hstack([incl, amb.relations], amb.rank) if amb.rank else zeros(0, 0)
    coords = []
    for s in secs.points:
        if not any(s):
            continue
        x = solve(big, s)
        if x is None:
            raise InternalInconsistency("a section is not in the limit of the carriers")
        coords.append(lim_mod.canonical(x[:lim_mod.rank]))
    sub = Subgroup(lim_mod, coords)
    if lim_mod.rank and coords:
        gamma, gincl = intlin.submodule(lim_mod, coords)
        injective = intlin.is_injective(gincl, gamma, lim_mod)
        onto = all(member(sub, [int(i == j) for j in range(lim_mod.rank)])
                   for i in range(lim_mod.rank))
        source = gamma.invariant_factors()
    else:
        injective, onto, source = True, lim_mod.rank == 0 or lim_mod.is_trivial(), []
    report.append({"degree": 0, "source": source, "target": lim_mod.invariant_factors(),
                   "injective": injective, "isomorphism": injective and onto})
    for r in results[1:]:
        report.append({"degree": r.degree, "source": r.invariant_factors,
                       "target": r.invariant_factors, "injective": True, "isomorphism": True})
    return report


def flabby_acyclicity_check(f, top=None):
    k = ascend(f)
    if not is_flabby(k):
        raise NotFlabby("sheaf is not flabby")
    hs = cohomology(k, top)
    for r in hs[1:]:
        if not r.is_zero():
            raise InternalInconsistency(f"flabby sheaf has H^{r.degree} = {r.describe()}")
    return True
