"""Exact integer linear algebra.

Everything here works over arbitrary-precision Python integers stored in
numpy ``object`` arrays.  Abelian groups are cokernels of integer matrices
(relations are *columns*), and every constructor returns them in pruned
form: the relation matrix is the diagonal of non-unit invariant factors.
"""
from __future__ import annotations

from itertools import product
from math import gcd, prod

import numpy as np


class IntLinError(Exception):
    pass


class DimensionMismatch(IntLinError):
    pass


class ActionNotPreserved(IntLinError):
    pass


class MissingAction(IntLinError):
    pass


# -- matrices ---------------------------------------------------------------

def mat(rows, nrows=None, ncols=None):
    """Build an exact integer matrix.  Shape hints are needed for empty input."""
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, x in np.ndenumerate(rows):
            out[idx] = int(x)
        return out
    rows = [list(r) for r in rows]
    if nrows is None:
        nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = np.zeros((nrows, ncols), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise DimensionMismatch("ragged matrix")
        for j, x in enumerate(r):
            out[i, j] = int(x)
    return out


def vec(entries):
    return np.array([int(x) for x in entries], dtype=object).reshape(-1)


def zeros(r, c):
    return np.zeros((r, c), dtype=object)


def eye(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def columns(vectors, n):
    """Stack vectors of length ``n`` as the columns of an n x k matrix."""
    out = zeros(n, len(vectors))
    for j, v in enumerate(vectors):
        v = list(v)
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{n}")
        for i in range(n):
            out[i, j] = int(v[i])
    return out


def hstack(mats, n):
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return zeros(n, 0)
    return np.concatenate(mats, axis=1)


def block_diag(mats):
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def kron(a, b):
    out = zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    for (i, j), x in np.ndenumerate(a):
        if x:
            out[i * b.shape[0]:(i + 1) * b.shape[0],
                j * b.shape[1]:(j + 1) * b.shape[1]] = x * b
    return out


def as_tuple(v):
    return tuple(int(x) for x in v)


def det(m):
    """Exact determinant (Bareiss)."""
    n = m.shape[0]
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- Smith and Hermite forms ------------------------------------------------

def smith_normal_form(m):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    D is diagonal with d_1 | d_2 | ... and nonnegative entries.  The pivot
    is always the entry of smallest nonzero absolute value, ties broken by
    lowest (row, column) index, so the output is reproducible.
    """
    r, c = m.shape
    a = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            ra, rs = a[dst], a[src]
            for k in range(c):
                ra[k] += q * rs[k]
            ua, us = u[dst], u[src]
            for k in range(r):
                ua[k] += q * us[k]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = None
                for i in range(t, r):
                    for j in range(t, c):
                        if (i == t or j == t) and a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                            best = (abs(a[i][j]), i, j)
                _, pi, pj = best
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return mat(u, r, r), mat(a, r, c), mat(v, c, c)


def diagonal(d):
    return [int(d[i, i]) for i in range(min(d.shape))]


def hermite_basis(vectors, n):
    """Row-style Hermite basis of the lattice spanned by ``vectors`` in Z^n.

    Rows are in echelon form with positive pivots; entries above each pivot
    are reduced into ``[0, pivot)``.
    """
    rows = [[int(x) for x in v] for v in vectors]
    rows = [row for row in rows if any(row)]
    basis = []
    col = 0
    while rows and col < n:
        active = [row for row in rows if row[col]]
        rest = [row for row in rows if not row[col]]
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[col]))
            piv = active[0]
            nxt = [piv]
            for row in active[1:]:
                q = row[col] // piv[col]
                row = [x - q * y for x, y in zip(row, piv)]
                if row[col]:
                    nxt.append(row)
                elif any(row):
                    rest.append(row)
            active = nxt
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            basis.append(piv)
        rows = rest
        col += 1
    # reduce entries above pivots
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    for k in range(len(basis)):
        pk, rk = pivots[k], basis[k]
        for i in range(k):
            q = basis[i][pk] // rk[pk]
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], rk)]
    return [tuple(row) for row in basis]


def reduce_vector(basis, v):
    """Canonical representative of ``v`` modulo a Hermite basis."""
    v = [int(x) for x in v]
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        q = v[p] // row[p]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def lattice_kernel(m):
    """Columns spanning the integer kernel ``{x : m x = 0}``."""
    _, d, v = smith_normal_form(m)
    rank = sum(1 for x in diagonal(d) if x)
    return v[:, rank:]


def solve(m, b):
    """An integer solution of ``m x = b``, or None.

    The representative returned is reduced modulo the Hermite basis of
    the solution lattice, so it does not depend on how it was found.
    """
    b = vec(b)
    if m.shape[0] != len(b):
        raise DimensionMismatch("solve: row count differs from right-hand side")
    u, d, v = smith_normal_form(m)
    c = u @ b
    diag = diagonal(d)
    y = [0] * m.shape[1]
    for i in range(m.shape[0]):
        di = diag[i] if i < len(diag) else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    x = v @ vec(y) if m.shape[1] else vec([])
    rank = sum(1 for t in diag if t)
    kern = [v[:, j] for j in range(rank, m.shape[1])]
    return vec(reduce_vector(hermite_basis(kern, m.shape[1]), x))


# -- finitely generated abelian groups --------------------------------------

class FgModule:
    """Z^rank modulo the columns of ``relations``, optionally with an action.

    ``action`` is one rank x rank matrix per basis element of the acting
    algebra.
    """

    __slots__ = ("rank", "relations", "action", "_basis")

    def __init__(self, rank, relations=None, action=None):
        self.rank = rank
        self.relations = zeros(rank, 0) if relations is None else relations
        if self.relations.shape[0] != rank:
            raise DimensionMismatch("relation matrix must have `rank` rows")
        self.action = None if action is None else tuple(action)
        self._basis = hermite_basis(self.relations.T, rank)

    def __repr__(self):
        return f"FgModule({self.describe()})"

    def canonical(self, v):
        if len(v) != self.rank:
            raise DimensionMismatch(f"vector of length {len(v)} in module of rank {self.rank}")
        return reduce_vector(self._basis, v)

    def is_zero(self, v):
        return not any(self.canonical(v))

    def invariant_factors(self):
        """Invariant factors of the group, unit factors dropped; 0 = free Z."""
        _, d, _ = smith_normal_form(self.relations)
        diag = diagonal(d)
        rank = len([x for x in diag if x])
        out = [x for x in diag[:rank] if x != 1]
        return out + [0] * (self.rank - rank)

    def describe(self):
        parts = [("Z" if x == 0 else f"Z/{x}") for x in self.invariant_factors()]
        return " + ".join(parts) if parts else "0"

    def order(self):
        """Group order, or None when infinite."""
        f = self.invariant_factors()
        if 0 in f:
            return None
        return prod(f)

    def is_trivial(self):
        return not self.invariant_factors()

    def elements(self):
        """All canonical elements (finite, pruned modules only)."""
        if self.order() is None:
            raise IntLinError("cannot enumerate an infinite group")
        mods = []
        for i in range(self.rank):
            row = next((r for r in self._basis if r[i] and not any(r[:i])), None)
            mods.append(row[i] if row else None)
        if None in mods:
            raise IntLinError("elements() needs a diagonal presentation")
        return [self.canonical(v) for v in product(*[range(m) for m in mods])]

    def act(self, i, v):
        return self.canonical(self.action[i] @ vec(v))

    def same_as(self, other):
        return (self.rank == other.rank and self._basis == other._basis
                and _same_action(self.action, other.action))


def _same_action(a, b):
    if a is None or b is None:
        return a is b
    return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))


def present(rank, relations, action=None):
    """Prune the presentation ``Z^rank / relations``.

    Returns ``(module, fwd, bwd)``: ``fwd`` maps old coordinates to pruned
    ones, ``bwd`` lifts pruned coordinates back, and ``fwd @ bwd == 1``.
    """
    u, d, _ = smith_normal_form(relations)
    uinv = _unimodular_inverse(u)
    diag = diagonal(d) + [0] * max(0, rank - min(d.shape))
    keep = [i for i in range(rank) if diag[i] != 1]
    fwd = u[keep, :] if keep else zeros(0, rank)
    bwd = uinv[:, keep] if keep else zeros(rank, 0)
    k = len(keep)
    rel_cols = [[diag[i] if j == idx else 0 for j in range(k)]
                for idx, i in enumerate(keep) if diag[i]]
    new_rel = columns(rel_cols, k)
    new_action = None
    if action is not None:
        new_action = [_reduce_matrix(fwd @ a @ bwd, new_rel) for a in action]
    mod = FgModule(k, new_rel, new_action)
    return mod, fwd, bwd


def _reduce_matrix(m, rel):
    # keep entries small: reduce every column modulo the diagonal relations
    out = m.copy()
    for col in range(rel.shape[1]):
        i = next(t for t in range(rel.shape[0]) if rel[t, col])
        out[i, :] = np.array([x % rel[i, col] for x in out[i, :]], dtype=object)
    return out


def _unimodular_inverse(u):
    n = u.shape[0]
    inv = np.empty((n, n), dtype=object)
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(u, e)
        inv[:, j] = x
    return inv


class Subgroup:
    """The subgroup of ``ambient`` generated by ``generators``."""

    __slots__ = ("ambient", "generators", "basis")

    def __init__(self, ambient, generators):
        self.ambient = ambient
        self.generators = tuple(ambient.canonical(g) for g in generators)
        self.basis = tuple(hermite_basis(list(self.generators) + list(ambient.relations.T),
                                        ambient.rank))

    def __contains__(self, v):
        return member(self, v)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subgroup({list(self.generators)})"

    def index_data(self):
        """Invariant factors of ambient / self."""
        q, _ = quotient(self.ambient, self)
        return q.invariant_factors()

    def contains_subgroup(self, other):
        return all(member(self, g) for g in other.generators)


def member(s, v):
    if len(v) != s.ambient.rank:
        raise DimensionMismatch("member: vector does not live in the ambient module")
    return not any(reduce_vector(s.basis, v))


def quotient(m, s, check_action=True):
    """``m / s`` with the projection matrix."""
    gens = columns(s.generators, m.rank)
    rel = hstack([m.relations, gens], m.rank)
    if m.action is not None and check_action:
        for a in m.action:
            for g in s.generators:
                if not member(s, a @ vec(g)):
                    raise ActionNotPreserved("subgroup is not stable under the action")
    q, fwd, _ = present(m.rank, rel, m.action)
    return q, fwd


def preimage_lattice(phi, target):
    """Generators (as columns) of ``{x : phi x in relations(target)}``."""
    n = phi.shape[1]
    big = hstack([phi, -target.relations], target.rank) if target.relations.shape[1] else phi
    if big.shape[1] == 0:
        return zeros(n, 0)
    ker = lattice_kernel(big)
    return ker[:n, :]


def submodule(m, gens):
    """Presentation of the subgroup of ``m`` generated by ``gens``.

    Returns ``(module, inclusion)``; the action restricts when the
    generated subgroup is stable, otherwise ActionNotPreserved.
    """
    g = columns([m.canonical(x) for x in gens], m.rank)
    k = g.shape[1]
    rel = preimage_lattice(g, m)
    action = None
    if m.action is not None:
        action = []
        big = hstack([g, m.relations], m.rank)
        for a in m.action:
            img = a @ g
            cols = []
            for j in range(k):
                x = solve(big, img[:, j]) if big.shape[1] else None
                if x is None:
                    if any(m.canonical(img[:, j])):
                        raise ActionNotPreserved("generated subgroup is not stable under the action")
                    x = vec([0] * big.shape[1])
                cols.append(x[:k])
            action.append(columns(cols, k))
    sub, fwd, bwd = present(k, rel, action)
    return sub, g @ bwd


def is_injective(phi, source, target):
    pre = preimage_lattice(phi, target)
    return all(source.is_zero(pre[:, j]) for j in range(pre.shape[1]))


def is_surjective(phi, source, target):
    basis = hermite_basis(list(phi.T) + list(target.relations.T), target.rank)
    for i in range(target.rank):
        e = [0] * target.rank
        e[i] = 1
        if any(reduce_vector(basis, e)):
            return False
    return True


def is_well_defined(phi, source, target):
    return all(target.is_zero(phi @ source.relations[:, j]) for j in range(source.relations.shape[1]))


def kernel_of(phi, source, target):
    """Kernel of the induced map as (module, inclusion)."""
    pre = preimage_lattice(phi, target)
    return submodule(source, [pre[:, j] for j in range(pre.shape[1])])


def image_subgroup(phi, source, target):
    return Subgroup(target, [phi[:, j] for j in range(phi.shape[1])])


def extend_linear(source, gens, target, images):
    """The Z-linear map ``source -> target`` with ``gens[k] -> images[k]``.

    ``gens`` must generate ``source`` as a group.  Returns None when no
    well-defined map exists.
    """
    g = columns([source.canonical(x) for x in gens], source.rank)
    h = columns([target.canonical(y) for y in images], target.rank)
    k = g.shape[1]
    rel = preimage_lattice(g, source)
    for j in range(rel.shape[1]):
        if not target.is_zero(h @ rel[:, j]):
            return None
    big = hstack([g, source.relations], source.rank)
    cols = []
    for i in range(source.rank):
        e = [0] * source.rank
        e[i] = 1
        x = solve(big, e)
        if x is None:
            raise IntLinError("generators do not span the source module")
        cols.append(target.canonical(h @ x[:k]))
    return columns(cols, target.rank) if cols else zeros(target.rank, 0)


def direct_sum(a, b):
    action = None
    if a.action is not None and b.action is not None:
        action = [block_diag([x, y]) for x, y in zip(a.action, b.action)]
    return FgModule(a.rank + b.rank, block_diag([a.relations, b.relations]), action)


def tensor(a, b, over):
    """``a (x)_R b`` for an algebra R acting on both.

    Returns ``(module, fwd, bwd)`` where ``fwd`` maps pair coordinates
    (index ``i * b.rank + j``) to the pruned module and ``bwd`` lifts back.
    """
    if a.action is None or b.action is None:
        raise MissingAction("tensor product needs the algebra action on both factors")
    if len(a.action) != over.dim or len(b.action) != over.dim:
        raise DimensionMismatch("action does not match the algebra")
    n = a.rank * b.rank
    ia, ib = eye(a.rank), eye(b.rank)
    rels = [kron(a.relations, ib), kron(ia, b.relations)]
    for ra, rb in zip(a.action, b.action):
        rels.append(kron(ra, ib) - kron(ia, rb))
    rel = hstack(rels, n)
    action = [kron(ra, ib) for ra in a.action]
    return present(n, rel, action)


def enumerate_subgroups(m, limit=256):
    """All subgroups of a finite module, by closure under sums of cyclics."""
    order = m.order()
    if order is None or order > limit:
        raise IntLinError("subgroup enumeration needs a finite module within the limit")
    cyclic = {}
    for x in m.elements():
        s = Subgroup(m, [x])
        cyclic.setdefault(s.basis, s)
    found = {Subgroup(m, []).basis: Subgroup(m, [])}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic.values():
                t = Subgroup(m, list(s.generators) + list(c.generators))
                if t.basis not in found:
                    found[t.basis] = t
                    nxt.append(t)
        frontier = nxt
    return [found[k] for k in sorted(found)]


# -- finite-rank Z-algebras -------------------------------------------------

class ZAlgebra:
    """Commutative Z-algebra of finite rank given by structure constants.

    ``mult[i][j]`` is the coordinate vector of ``e_i * e_j``.  The additive
    group is ``module`` (pruned), whose action is the regular representation.
    """

    __slots__ = ("dim", "mult", "unit", "module")

    def __init__(self, dim, mult, unit, relations=None):
        self.dim = dim
        self.mult = [[vec(mult[i][j]) for j in range(dim)] for i in range(dim)]
        self.unit = vec(unit)
        rel = zeros(dim, 0) if relations is None else relations
        action = [self._basis_matrix(i) for i in range(dim)]
        self.module = FgModule(dim, rel, action)

    def _basis_matrix(self, i):
        return columns([self.mult[i][j] for j in range(self.dim)], self.dim)

    @classmethod
    def present(cls, dim, mult, unit, relations):
        """Prune a presentation; returns ``(algebra, fwd, bwd)``."""
        mod, fwd, bwd = present(dim, relations)
        k = mod.rank
        raw = [[vec(m) for m in row] for row in mult]

        def mul_raw(x, y):
            out = vec([0] * dim)
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        if yj:
                            out = out + xi * yj * raw[i][j]
            return out

        new_mult = [[mod.canonical(fwd @ mul_raw(bwd[:, i], bwd[:, j])) for j in range(k)]
                    for i in range(k)]
        alg = cls(k, new_mult, mod.canonical(fwd @ vec(unit)), mod.relations)
        return alg, fwd, bwd

    @classmethod
    def integers(cls):
        return cls(1, [[[1]]], [1])

    @classmethod
    def zmod(cls, n):
        return cls.present(1, [[[1]]], [1], mat([[n]]))[0]

    @classmethod
    def poly_quotient(cls, coeffs, characteristic=0):
        """``Z[x] / (f, characteristic)`` for monic ``f`` (constant term first)."""
        f = [int(c) for c in coeffs]
        deg = len(f) - 1
        if deg < 1 or f[-1] != 1:
            raise IntLinError("modulus must be monic of degree >= 1")

        def reduce(poly):
            poly = list(poly) + [0] * max(0, deg - len(poly))
            for top in range(len(poly) - 1, deg - 1, -1):
                c = poly[top]
                if c:
                    for i in range(deg + 1):
                        poly[top - deg + i] -= c * f[i]
            return poly[:deg]

        mult = [[reduce([0] * (i + j) + [1]) for j in range(deg)] for i in range(deg)]
        unit = [1] + [0] * (deg - 1)
        rel = characteristic * eye(deg) if characteristic else zeros(deg, 0)
        return cls.present(deg, mult, unit, rel)[0]

    def __repr__(self):
        return f"ZAlgebra(dim={self.dim}, group={self.module.describe()})"

    def canonical(self, x):
        return self.module.canonical(x)

    def mul(self, x, y):
        out = vec([0] * self.dim)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        out = out + xi * yj * self.mult[i][j]
        return self.canonical(out)

    def mult_matrix(self, x):
        """Matrix of multiplication by ``x`` on the additive group."""
        out = zeros(self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = out + xi * self.module.action[i]
        return out

    def add(self, x, y):
        return self.canonical(vec(x) + vec(y))

    def neg(self, x):
        return self.canonical(-vec(x))

    def zero(self):
        return (0,) * self.dim

    def one(self):
        return self.canonical(self.unit)

    def scalar(self, k):
        return self.canonical(k * self.unit)

    def power(self, x, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def is_finite(self):
        return self.module.order() is not None

    def elements(self):
        return self.module.elements()

    def is_zero_ring(self):
        return self.module.is_trivial()

    def quotient(self, gens):
        """``R / (gens)`` with the projection matrix."""
        ideal = ideal_generated(self, gens)
        rel = hstack([self.module.relations, columns(ideal.generators, self.dim)], self.dim)
        mult = [[self.mult[i][j] for j in range(self.dim)] for i in range(self.dim)]
        alg, fwd, _ = ZAlgebra.present(self.dim, mult, self.unit, rel)
        return alg, fwd

    def check_axioms(self):
        """Raise if multiplication is not commutative/associative/unital."""
        basis = [tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim)]
        for x in basis:
            if self.mul(self.one(), x) != self.canonical(x):
                raise IntLinError("unit does not act as identity")
            for y in basis:
                if self.mul(x, y) != self.mul(y, x):
                    raise IntLinError("multiplication not commutative")
                for z in basis:
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                        raise IntLinError("multiplication not associative")


def ideal_generated(r, gens):
    """The ideal of ``r`` generated by ``gens``, as a subgroup."""
    spans = []
    for g in gens:
        g = vec(g)
        spans.append(r.canonical(g))
        for i in range(r.dim):
            spans.append(r.canonical(r.module.action[i] @ g))
    return Subgroup(r.module, spans)


def is_unit(r, x):
    m = r.mult_matrix(vec(x))
    return is_surjective(m, r.module, r.module) and is_injective(m, r.module, r.module)


def inverse(r, x):
    """The inverse of a unit, else None."""
    if not is_unit(r, x):
        return None
    y = solve(hstack([r.mult_matrix(vec(x)), r.module.relations], r.dim), r.unit)
    return r.canonical(y[:r.dim])


__all__ = [
    "ActionNotPreserved", "DimensionMismatch", "FgModule", "IntLinError", "MissingAction",
    "Subgroup", "ZAlgebra", "as_tuple", "columns", "det", "direct_sum", "enumerate_subgroups",
    "extend_linear", "eye", "gcd", "hermite_basis", "ideal_generated", "image_subgroup",
    "inverse", "is_injective", "is_surjective", "is_unit", "is_well_defined", "kernel_of",
    "lattice_kernel", "mat", "member", "present", "preimage_lattice", "quotient",
    "reduce_vector", "smith_normal_form", "solve", "submodule", "tensor", "vec", "zeros",
]
