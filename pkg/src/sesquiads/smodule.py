"""Modules over a sesquiad: a generating, A-stable point set S in an R_A-module.

Points are canonical coordinate tuples in the (pruned) carrier.  A
homomorphism is stored by its carrier matrix ``M_f``; the point map is
read off from it.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import intlin
from .intlin import (FgModule, Subgroup, block_diag, columns, extend_linear, hstack,
                     kron, member, present, solve, vec, zeros)
from .sesquiad import InternalInconsistency, SesquiadError


class ModuleError(Exception):
    pass


class NotAModule(ModuleError):
    pass


class NotEquivariant(ModuleError):
    pass


class NoLinearExtension(ModuleError):
    pass


class NotASubmodule(ModuleError):
    pass


class BaseMismatch(ModuleError):
    pass


class NotBilinear(ModuleError):
    pass


class NotComposable(ModuleError):
    pass


class SesquiadModule:
    """The pair ``(S, M_S)`` over ``base``."""

    def __init__(self, base, carrier, points, check=True):
        self.base = base
        self.carrier = carrier
        self._elem = {}
        self.presentation = None
        pts = {carrier.canonical(p) for p in points}
        pts.add((0,) * carrier.rank)
        self.points = tuple(sorted(pts))
        self._pos = {p: i for i, p in enumerate(self.points)}
        self.tensor_info = None
        if check:
            self.validate()

    def __repr__(self):
        return f"SesquiadModule({len(self.points)} points in {self.carrier.describe()})"

    def __len__(self):
        return len(self.points)

    def validate(self):
        c = self.carrier
        if c.action is None or len(c.action) != self.base.ring.dim:
            raise NotAModule("carrier needs one action matrix per ring basis element")
        _check_action(self.base.ring, c)
        for a in range(len(self.base)):
            for p in self.points:
                if self.act(a, p) not in self._pos:
                    raise NotAModule(f"{self.base.names[a]} * {p} leaves the point set")
        span = Subgroup(c, self.points)
        for i in range(c.rank):
            if not member(span, [int(i == j) for j in range(c.rank)]):
                raise NotAModule("points do not generate the carrier")

    def element_matrix(self, a):
        """Matrix of the element ``a`` of A acting on the carrier."""
        if a not in self._elem:
            acc = zeros(self.carrier.rank, self.carrier.rank)
            for x, m in zip(self.base.embed[a], self.carrier.action):
                if x:
                    acc = acc + int(x) * m
            self._elem[a] = acc
        return self._elem[a]

    def act(self, a, p):
        if not self.carrier.rank:
            return ()
        return self.carrier.canonical(self.element_matrix(a) @ vec(p))

    def index(self, p):
        return self._pos[self.carrier.canonical(p)]

    def has_point(self, p):
        return self.carrier.canonical(p) in self._pos

    def zero(self):
        return (0,) * self.carrier.rank

    def span(self, pts=None):
        return Subgroup(self.carrier, self.points if pts is None else pts)

    def is_zero(self):
        return self.carrier.rank == 0

    def is_full_module(self):
        """``S = M_S``; only decidable for finite carriers."""
        order = self.carrier.order()
        return order is not None and order == len(self.points)

    def same_as(self, other):
        return self.carrier.same_as(other.carrier) and self.points == other.points


def _check_action(ring, m):
    acts = m.action
    n = m.rank

    def zero_mod(mat_):
        return all(m.is_zero(mat_[:, j]) for j in range(mat_.shape[1]))

    unit = zeros(n, n)
    for i, x in enumerate(ring.unit):
        unit = unit + x * acts[i]
    if not zero_mod(unit - intlin.eye(n)):
        raise NotAModule("ring unit does not act as the identity")
    for col in range(ring.module.relations.shape[1]):
        r = ring.module.relations[:, col]
        acc = zeros(n, n)
        for i, x in enumerate(r):
            acc = acc + x * acts[i]
        if not zero_mod(acc):
            raise NotAModule("action does not respect the ring relations")
    for i in range(ring.dim):
        for j in range(ring.dim):
            acc = zeros(n, n)
            for k, x in enumerate(ring.mult[i][j]):
                acc = acc + x * acts[k]
            if not zero_mod(acts[i] @ acts[j] - acc):
                raise NotAModule("action is not multiplicative")
    for a in acts:
        for col in range(m.relations.shape[1]):
            if not m.is_zero(a @ m.relations[:, col]):
                raise NotAModule("action does not preserve the relations")


def basis_action(base, rank, element_action=None):
    """Action matrices per ring basis element from matrices per sesquiad element.

    With no explicit matrices, a cyclic ring acts by integer scalars.
    """
    ring = base.ring
    if element_action is None:
        if ring.dim == 0:
            return []
        if ring.dim == 1:
            return [intlin.eye(rank)]
        raise ModuleError("this ring is not cyclic; give action matrices for the elements")
    acts = {base.index(k): intlin.mat(v) if not isinstance(v, np.ndarray) else v
            for k, v in element_action.items()}
    acts.setdefault(base.one, intlin.eye(rank))
    acts.setdefault(base.zero, zeros(rank, rank))
    known = sorted(acts)
    big = hstack([columns([base.embed[a] for a in known], ring.dim), ring.module.relations],
                 ring.dim)
    out = []
    for i in range(ring.dim):
        x = solve(big, [int(i == j) for j in range(ring.dim)])
        if x is None:
            raise ModuleError("element actions given do not span the ring")
        acc = zeros(rank, rank)
        for k, a in enumerate(known):
            acc = acc + x[k] * acts[a]
        out.append(acc)
    return out


def make_module(base, rank, points, relations=(), element_action=None, close=False):
    """Module with carrier ``Z^rank / relations``; relations are vectors."""
    acts = basis_action(base, rank, element_action)
    rel = columns(relations, rank)
    carrier, fwd, _bwd = present(rank, rel, acts)
    pts = [carrier.canonical(fwd @ vec(p)) for p in points]
    if close:
        pts = _a_closure(base, carrier, pts)
    out = SesquiadModule(base, carrier, pts)
    out.presentation = (fwd, _bwd)
    return out


def _a_closure(base, carrier, pts):
    probe = SesquiadModule(base, carrier, [], check=False)
    out = {carrier.canonical(p) for p in pts}
    out.add((0,) * carrier.rank)
    for a in range(len(base)):
        out |= {probe.act(a, p) for p in list(out)}
    return sorted(out)


def with_points(m, points, close=True):
    """Same carrier, another point set (closed under A when asked)."""
    pts = _a_closure(m.base, m.carrier, points) if close else points
    return SesquiadModule(m.base, m.carrier, pts)


def zero_module(base):
    return SesquiadModule(base, FgModule(0, None, [zeros(0, 0)] * base.ring.dim), [])


def to_carrier(m, v):
    """Coordinates of the defining presentation to carrier coordinates."""
    if m.presentation is None:
        return m.carrier.canonical(v)
    return m.carrier.canonical(m.presentation[0] @ vec(v)) if m.carrier.rank else ()


def matrix_to_carriers(source, target, mat_):
    """A matrix between defining presentations, moved to the carriers."""
    left = target.presentation[0] if target.presentation else intlin.eye(target.carrier.rank)
    right = source.presentation[1] if source.presentation else intlin.eye(source.carrier.rank)
    return left @ mat_ @ right


def hom_from_images(source, target, images):
    """The homomorphism determined by images of generating points.

    ``images`` maps source points to target points, both in carrier
    coordinates; the listed points must generate the source carrier.
    """
    gens = list(images)
    if source.carrier.rank == 0:
        return ModuleHom(source, target, zeros(target.carrier.rank, 0))
    try:
        m = extend_linear(source.carrier, gens, target.carrier, [images[g] for g in gens])
    except intlin.IntLinError:
        raise NoLinearExtension("listed points do not generate the source") from None
    if m is None:
        raise NoLinearExtension("the listed images admit no linear extension")
    return ModuleHom(source, target, m)


def free_module(base, n):
    """``n`` copies of ``(A, R_A)``."""
    r = base.ring
    carrier = FgModule(n * r.dim, block_diag([r.module.relations] * n),
                       [block_diag([a] * n) for a in r.module.action])
    pts = []
    for j in range(n):
        for a in range(len(base)):
            v = [0] * (n * r.dim)
            v[j * r.dim:(j + 1) * r.dim] = base.embed[a]
            pts.append(v)
    return SesquiadModule(base, carrier, pts)


def full_module(base, carrier):
    """``(M, M)`` for a finite carrier."""
    return SesquiadModule(base, carrier, carrier.elements())


# -- homomorphisms ----------------------------------------------------------

class ModuleHom:
    def __init__(self, source, target, matrix, check=True):
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self._validate()
        self.point_map = tuple(target.index(self._image(p)) for p in source.points)

    def __repr__(self):
        return f"ModuleHom({self.source!r} -> {self.target!r})"

    def _image(self, p):
        return self.target.carrier.canonical(self.matrix @ vec(p)) if self.target.carrier.rank \
            else ()

    def _validate(self):
        s, t = self.source, self.target
        if self.matrix.shape != (t.carrier.rank, s.carrier.rank):
            raise ModuleError("matrix shape does not match the carriers")
        if not intlin.is_well_defined(self.matrix, s.carrier, t.carrier):
            raise NoLinearExtension("matrix does not respect the source relations")
        for p in s.points:
            if not t.has_point(self._image(p)):
                raise NotAModule(f"point {p} is not sent to a point")
        for i, (x, y) in enumerate(zip(s.carrier.action, t.carrier.action)):
            d = self.matrix @ x - y @ self.matrix
            if not all(t.carrier.is_zero(d[:, j]) for j in range(d.shape[1])):
                raise NotEquivariant("carrier map is not R_A-linear")

    def __call__(self, p):
        return self.target.points[self.point_map[self.source.index(p)]]

    def image_points(self):
        return sorted({self.target.points[j] for j in self.point_map})

    def then(self, other):
        if not self.target.same_as(other.source):
            raise NotComposable("target and source differ")
        return ModuleHom(self.source, other.target, other.matrix @ self.matrix, check=False)

    def is_zero(self):
        return all(not any(p) for p in self.image_points())

    def same_as(self, other):
        return (self.source.same_as(other.source) and self.target.same_as(other.target)
                and self.point_map == other.point_map)


def make_hom(source, target, point_map):
    """Extend a map of points to an R_A-linear carrier map.

    ``point_map`` is a dict from source points to target points, or a list
    aligned with ``source.points``.
    """
    if source.base is not target.base and not source.base.same_as(target.base):
        raise BaseMismatch("modules over different sesquiads")
    if isinstance(point_map, dict):
        images = {source.carrier.canonical(k): target.carrier.canonical(v)
                  for k, v in point_map.items()}
        images = [images[p] for p in source.points]
    else:
        images = [target.carrier.canonical(v) for v in point_map]
    for p, q in zip(source.points, images):
        if not target.has_point(q):
            raise NotAModule(f"{q} is not a point of the target")
    pos = {p: q for p, q in zip(source.points, images)}
    for a in range(len(source.base)):
        for p in source.points:
            if pos[source.act(a, p)] != target.act(a, pos[p]):
                raise NotEquivariant(f"f({source.base.names[a]}*{p}) != {source.base.names[a]}*f({p})")
    if source.carrier.rank == 0:
        return ModuleHom(source, target, zeros(target.carrier.rank, 0))
    m = extend_linear(source.carrier, source.points, target.carrier, images)
    if m is None:
        raise NoLinearExtension("the point map has no linear extension")
    return ModuleHom(source, target, m)


def identity(s):
    return ModuleHom(s, s, intlin.eye(s.carrier.rank), check=False)


def zero_hom(s, t):
    return ModuleHom(s, t, zeros(t.carrier.rank, s.carrier.rank), check=False)


@dataclass(frozen=True)
class Classification:
    mono: bool
    epi: bool
    iso: bool
    point_injective: bool
    point_surjective: bool


def classify(h):
    """Mono/epi/iso via injectivity and surjectivity of the carrier map."""
    s, t = h.source.carrier, h.target.carrier
    inj = intlin.is_injective(h.matrix, s, t)
    surj = intlin.is_surjective(h.matrix, s, t)
    p_inj = len(set(h.point_map)) == len(h.point_map)
    p_surj = len(set(h.point_map)) == len(h.target.points)
    return Classification(inj, surj, p_surj and inj, p_inj, p_surj)


# -- sub- and quotient modules ----------------------------------------------

def submodule(t, pts):
    """The submodule of ``t`` on the A-stable point subset ``pts``.

    Returns ``(U, inclusion)``.
    """
    pts = sorted({t.carrier.canonical(p) for p in pts} | {t.zero()})
    for p in pts:
        if not t.has_point(p):
            raise NotASubmodule(f"{p} is not a point of the ambient module")
    pset = set(pts)
    for a in range(len(t.base)):
        for p in pts:
            if t.act(a, p) not in pset:
                raise NotASubmodule("point set is not stable under A")
    nonzero = [p for p in pts if any(p)]
    sub, incl = intlin.submodule(t.carrier, nonzero) if nonzero else \
        (FgModule(0, None, [zeros(0, 0)] * t.base.ring.dim), zeros(t.carrier.rank, 0))
    big = hstack([incl, t.carrier.relations], t.carrier.rank)
    coords = []
    for p in pts:
        if not any(p):
            coords.append((0,) * sub.rank)
            continue
        x = solve(big, p)
        coords.append(sub.canonical(x[:sub.rank]))
    u = SesquiadModule(t.base, sub, coords)
    return u, ModuleHom(u, t, incl)


def full_closure(t, pts):
    """Points of ``t`` lying in the subgroup generated by ``pts``."""
    span = t.span(list(pts) + [t.zero()])
    return sorted(p for p in t.points if member(span, p))


def is_full_submodule(t, pts):
    return set(full_closure(t, pts)) == {t.carrier.canonical(p) for p in pts} | {t.zero()}


def quotient(s, pts):
    """``S/U``: image of S in ``M_S / M_U``, with the projection."""
    for p in pts:
        if not s.has_point(p):
            raise NotASubmodule(f"{p} is not a point of the module")
    sub = Subgroup(s.carrier, list(pts))
    q, proj = intlin.quotient(s.carrier, sub)
    images = [q.canonical(proj @ vec(p)) if q.rank else () for p in s.points]
    out = SesquiadModule(s.base, q, images)
    h = ModuleHom(s, out, proj if q.rank else zeros(0, s.carrier.rank), check=False)
    ker = [p for p, j in zip(s.points, h.point_map) if not any(out.points[j])]
    if ker != full_closure(s, pts):
        raise InternalInconsistency("kernel of a quotient map differs from the full closure")
    return out, h


def kernel_points(h):
    return [p for p, j in zip(h.source.points, h.point_map) if not any(h.target.points[j])]


def kernel(h):
    """``(f^-1(0), M_{f^-1(0)})`` with its inclusion."""
    return submodule(h.source, kernel_points(h))


def cokernel(h):
    return quotient(h.target, h.image_points())


def image(h):
    """``ker(coker f)``: the full closure of f(S) in T."""
    return submodule(h.target, full_closure(h.target, h.image_points()))


def coimage(h):
    """``coker(ker f)``: S modulo its kernel points."""
    return quotient(h.source, kernel_points(h))


def is_full(h):
    return is_full_submodule(h.target, h.image_points())


def carrier_kernel_generated(h):
    """Is ``ker M_f`` generated by the kernel points?"""
    pre = intlin.preimage_lattice(h.matrix, h.target.carrier)
    span = h.source.span(kernel_points(h))
    return all(member(span, pre[:, j]) for j in range(pre.shape[1]))


def coimage_to_image(h):
    coim, q = coimage(h)
    im, incl = image(h)
    lookup = {incl(u): u for u in im.points}
    mapping = {}
    for s, j in zip(h.source.points, h.point_map):
        mapping[q(s)] = lookup[h.target.points[j]]
    return make_hom(coim, im, mapping)


def is_strong(h):
    """Coimage -> image is an isomorphism; checked against full + exact."""
    categorial = classify(coimage_to_image(h)).iso
    criterial = is_full(h) and carrier_kernel_generated(h)
    if categorial != criterial:
        raise InternalInconsistency(
            f"strongness: coimage/image test {categorial}, full+exact test {criterial}")
    return categorial


# -- products ---------------------------------------------------------------

def product(s, t):
    """Cartesian product with its projections."""
    carrier = intlin.direct_sum(s.carrier, t.carrier)
    pts = [tuple(x) + tuple(y) for x in s.points for y in t.points]
    p = SesquiadModule(s.base, carrier, pts)
    n, m = s.carrier.rank, t.carrier.rank
    pr1 = hstack([intlin.eye(n), zeros(n, m)], n) if n else zeros(0, n + m)
    pr2 = hstack([zeros(m, n), intlin.eye(m)], m) if m else zeros(0, n + m)
    return p, ModuleHom(p, s, pr1, check=False), ModuleHom(p, t, pr2, check=False)


def pair_hom(f, g, prod_):
    """``(f, g): W -> S x T`` into a product built by ``product``."""
    p, _, _ = prod_
    m = np.concatenate([f.matrix, g.matrix], axis=0)
    return ModuleHom(f.source, p, m)


# -- tensor products --------------------------------------------------------

@dataclass
class TensorInfo:
    left: SesquiadModule
    right: SesquiadModule
    fwd: np.ndarray
    bwd: np.ndarray


def simple_tensor(m, x, y):
    info = m.tensor_info
    if m.carrier.rank == 0:
        return ()
    return m.carrier.canonical(info.fwd @ kron(vec(x).reshape(-1, 1), vec(y).reshape(-1, 1))[:, 0])


def tensor(s, t):
    """``S (.) T``: simple tensors of points inside ``M_S (x) M_T``."""
    if s.base is not t.base and not s.base.same_as(t.base):
        raise BaseMismatch("tensor of modules over different sesquiads")
    carrier, fwd, bwd = intlin.tensor(s.carrier, t.carrier, s.base.ring)
    pts = []
    for x in s.points:
        for y in t.points:
            v = kron(vec(x).reshape(-1, 1), vec(y).reshape(-1, 1))[:, 0]
            pts.append(carrier.canonical(fwd @ v) if carrier.rank else ())
    out = SesquiadModule(s.base, carrier, pts)
    out.tensor_info = TensorInfo(s, t, fwd, bwd)
    return out


def tensor_hom(f, g, source=None, target=None):
    src = source or tensor(f.source, g.source)
    tgt = target or tensor(f.target, g.target)
    si, ti = src.tensor_info, tgt.tensor_info
    m = ti.fwd @ kron(f.matrix, g.matrix) @ si.bwd
    return ModuleHom(src, tgt, m)


def is_bilinear(s, t, u, b):
    """``b[(x, y)]`` maps pairs of points to points of ``u``."""
    try:
        for x in s.points:
            make_hom(t, u, {y: b[(x, y)] for y in t.points})
        for y in t.points:
            make_hom(s, u, {x: b[(x, y)] for x in s.points})
    except ModuleError:
        return False
    return True


def factor_bilinear(s, t, u, b, st=None):
    """The unique ``alpha: S (.) T -> U`` with ``alpha(x (.) y) = b(x, y)``."""
    if not is_bilinear(s, t, u, b):
        raise NotBilinear("b(x, .) or b(., y) is not a module homomorphism")
    st = st or tensor(s, t)
    mapping = {}
    for x in s.points:
        for y in t.points:
            z = simple_tensor(st, x, y)
            w = u.carrier.canonical(b[(x, y)])
            if mapping.setdefault(z, w) != w:
                raise InternalInconsistency("bilinear map does not factor through simple tensors")
    return make_hom(st, u, mapping)


# -- sequences --------------------------------------------------------------

def _check_composable(f, g):
    if not f.target.same_as(g.source):
        raise NotComposable("adjacent morphisms do not compose")


def is_exact_at(seq, i):
    """Exactness at the target of ``seq[i]`` (between seq[i] and seq[i+1])."""
    alpha, beta = seq[i], seq[i + 1]
    _check_composable(alpha, beta)
    t = alpha.target
    if not alpha.then(beta).is_zero():
        return False
    im_pts = full_closure(t, alpha.image_points())
    ker_pts = kernel_points(beta)
    im, _ = submodule(t, im_pts)
    ker, ker_incl = submodule(t, ker_pts)
    pos = {ker_incl(k): k for k in ker.points}
    im_incl = submodule(t, im_pts)[1]
    mapping = {}
    for u in im.points:
        p = im_incl(u)
        if p not in pos:
            return False
        mapping[u] = pos[p]
    ensuing = make_hom(im, ker, mapping)
    c = classify(ensuing)
    return is_full(ensuing) and c.mono and c.epi


def is_exact(seq):
    return all(is_exact_at(seq, i) for i in range(len(seq) - 1))


def is_strong_exact(seq):
    return all(is_strong(h) for h in seq) and is_exact(seq)


def carrier_exact_at(seq, i):
    """Exactness of the carrier sequence at the target of ``seq[i]``."""
    alpha, beta = seq[i], seq[i + 1]
    _check_composable(alpha, beta)
    t = alpha.target.carrier
    if t.rank == 0:
        return True
    im = intlin.image_subgroup(alpha.matrix, alpha.source.carrier, t)
    pre = intlin.preimage_lattice(beta.matrix, beta.target.carrier)
    ker = Subgroup(t, [pre[:, j] for j in range(pre.shape[1])])
    return im == ker


def carrier_exact(seq):
    return all(carrier_exact_at(seq, i) for i in range(len(seq) - 1))


def short_sequence(f, g):
    """``0 -> S -> T -> U -> 0`` as a list of four morphisms."""
    a = f.source.base
    z = zero_module(a)
    return [zero_hom(z, f.source), f, g, zero_hom(g.target, z)]


# -- flatness ---------------------------------------------------------------

class Flatness(enum.Enum):
    FLAT = "flat"
    NOT_FLAT = "not_flat"
    UNKNOWN = "unknown"


@dataclass
class FlatnessResult:
    status: Flatness
    witness: list | None
    route: str


def ideal_tensor_injective(f, ideal_gens):
    """Is ``a (x) M_F -> M_F`` injective for the ideal generated by ``ideal_gens``?"""
    ring = f.base.ring
    ideal = intlin.ideal_generated(ring, ideal_gens)
    gens = [g for g in ideal.generators if any(g)]
    if not gens or f.carrier.rank == 0:
        return True
    imod, incl = intlin.submodule(ring.module, gens)
    tmod, tfwd, tbwd = intlin.tensor(imod, f.carrier, ring)
    if tmod.rank == 0:
        return True
    n = f.carrier.rank
    cols = []
    for i in range(imod.rank):
        for j in range(n):
            acc = zeros(n, 1)[:, 0]
            for k in range(ring.dim):
                if incl[k, i]:
                    acc = acc + incl[k, i] * f.carrier.action[k][:, j]
            cols.append(acc)
    mult = columns(cols, n)
    return intlin.is_injective(mult @ tbwd, tmod, f.carrier)


def _ring_is_integers(ring):
    return ring.dim == 1 and ring.module.invariant_factors() == [0]


def ring_ideals(ring, limit=256):
    """All ideals of a finite ring, as generator lists."""
    subs = intlin.enumerate_subgroups(ring.module, limit)
    out = []
    for s in subs:
        if all(member(s, ring.canonical(a @ vec(g))) for a in ring.module.action
               for g in s.generators):
            out.append(list(s.generators))
    return out


def is_flat(f, ideals=None, limit=256):
    ring = f.base.ring
    if _ring_is_integers(ring):
        torsion = [x for x in f.carrier.invariant_factors() if x]
        if torsion:
            return FlatnessResult(Flatness.NOT_FLAT, [[torsion[0]]], "torsion")
        return FlatnessResult(Flatness.FLAT, None, "torsion")
    order = ring.module.order()
    if order is not None and order <= limit:
        for gens in ring_ideals(ring, limit):
            if not ideal_tensor_injective(f, gens):
                return FlatnessResult(Flatness.NOT_FLAT, [list(g) for g in gens], "ideals")
        return FlatnessResult(Flatness.FLAT, None, "ideals")
    if ideals is None:
        base = f.base
        ideals = [[base.embed[a]] for a in base.nonzero()]
        ideals += [[tuple(vec(base.embed[a]) - vec(base.embed[b]))]
                   for a, b in itertools.combinations(range(len(base)), 2)]
    for gens in ideals:
        if not ideal_tensor_injective(f, gens):
            return FlatnessResult(Flatness.NOT_FLAT, [list(g) for g in gens], "supplied ideals")
    return FlatnessResult(Flatness.UNKNOWN, None, "supplied ideals")


def flat_over_cyclic_ring(f):
    """Carrier flatness over Z or Z/n straight from invariant factors.

    Over Z/n a finitely generated module is flat iff each p-primary part
    is free over Z/p^v(n).
    """
    ring = f.base.ring
    if _ring_is_integers(ring):
        return all(x == 0 for x in f.carrier.invariant_factors())
    if ring.dim != 1:
        raise ModuleError("not a cyclic ring")
    (n,) = ring.module.invariant_factors()
    for d in f.carrier.invariant_factors():
        for p in _primes(n):
            vn, vd = _val(n, p), _val(d, p)
            if vd not in (0, vn):
                return False
    return True


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- free covers ------------------------------------------------------------

def cover(s):
    """Surjection from a free module sending basis vectors to the nonzero points."""
    base = s.base
    pts = [p for p in s.points if any(p)]
    free = free_module(base, len(pts))
    d = base.ring.dim
    blocks = []
    for p in pts:
        blocks.append(columns([s.carrier.canonical(a @ vec(p)) for a in s.carrier.action],
                              s.carrier.rank))
    m = hstack(blocks, s.carrier.rank) if blocks else zeros(s.carrier.rank, 0)
    return ModuleHom(free, s, m)
