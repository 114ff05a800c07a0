"""Line-oriented definition files.

A file is a list of sections::

    [sesquiad F1]
    elements: 0 1
    row: 0 0
    row: 0 1

Every section is ``[kind NAME header...]`` followed by ``key: value``
lines; ``#`` starts a comment.  For ``ring:`` sesquiads, ``names:`` lists
the elements in sorted order of their coordinate vectors.  Parsing keeps the normalized entries (so
files round-trip) and builds the objects they describe.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import intlin, scheme as sc, sesquiad as sq, smodule as sm


class DefinitionError(Exception):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        loc = "" if line is None else f"line {line}" + ("" if column is None else f", column {column}")
        super().__init__(f"{loc}: {message}" if loc else message)


class DefinitionSyntaxError(DefinitionError):
    pass


class UnknownReference(DefinitionError):
    pass


class InvariantViolation(DefinitionError):
    pass


KINDS = {
    "sesquiad": ("elements", "row", "fact", "ring", "subset", "names", "saturate"),
    "sesquiad-hom": ("send",),
    "module": ("rank", "relations", "points", "action", "close", "free"),
    "hom": ("send",),
    "sequence": ("hom",),
    "space": ("points", "order", "preset"),
    "sheaf": ("constant", "skyscraper", "stalk", "restrict", "module"),
    "sheaf-hom": ("at",),
    "task": ("run",),
}

HEADER_SHAPES = {
    "sesquiad": [],
    "sesquiad-hom": ["from", None, "to", None],
    "module": ["over", None],
    "hom": ["from", None, "to", None],
    "sequence": [],
    "space": [],
    "sheaf": ["on", None],
    "sheaf-hom": ["from", None, "to", None],
    "task": [],
}


@dataclass
class Entry:
    key: str
    qualifier: str
    value: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass
class Section:
    kind: str
    name: str
    header: tuple
    entries: list
    line: int = field(default=0, compare=False)

    def get(self, key):
        return [e for e in self.entries if e.key == key]

    def one(self, key, default=None):
        found = self.get(key)
        return found[-1] if found else default


@dataclass
class DefinitionFile:
    sections: list
    objects: dict = field(default_factory=dict, compare=False)
    path: str = field(default="", compare=False)

    def tasks(self):
        return [s for s in self.sections if s.kind == "task"]

    def __getitem__(self, name):
        return self.objects[name]


_SECTION = re.compile(r"^\[([a-z-]+)\s+([^\s\]]+)((?:\s+[^\]]+)?)\]\s*$")
_ENTRY = re.compile(r"^([a-z-]+)(?:\s+([^:]+?))?\s*:\s*(.*)$")


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_text(text, path="<string>"):
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            m = _SECTION.match(stripped)
            if not m:
                raise DefinitionSyntaxError("malformed section header", lineno, col)
            kind, name, rest = m.group(1), m.group(2), m.group(3).split()
            if kind not in KINDS:
                raise DefinitionSyntaxError(f"unknown section kind {kind!r}", lineno, col + 1)
            _check_header(kind, rest, lineno, col)
            if any(s.name == name for s in sections):
                raise InvariantViolation(f"name {name!r} is defined twice", lineno, col)
            current = Section(kind, name, tuple(rest), [], lineno)
            sections.append(current)
            continue
        if current is None:
            raise DefinitionSyntaxError("entry outside of any section", lineno, col)
        m = _ENTRY.match(stripped)
        if not m:
            raise DefinitionSyntaxError("expected 'key: value'", lineno, col)
        key, qual, value = m.group(1), (m.group(2) or "").strip(), m.group(3).strip()
        if key not in KINDS[current.kind]:
            raise DefinitionSyntaxError(f"unknown key {key!r} in a {current.kind} section",
                                        lineno, col)
        vcol = col + stripped.index(":") + 1 + (len(stripped.split(":", 1)[1]) -
                                                 len(stripped.split(":", 1)[1].lstrip()))
        current.entries.append(Entry(key, " ".join(qual.split()), " ".join(value.split()),
                                     lineno, vcol))
    df = DefinitionFile(sections, path=path)
    build_objects(df)
    return df


def _check_header(kind, rest, lineno, col):
    shape = HEADER_SHAPES[kind]
    if kind == "sheaf" and rest[:2] == ["on", "spec"] and len(rest) == 3:
        return
    if len(rest) != len(shape) or any(s is not None and s != r for s, r in zip(shape, rest)):
        want = " ".join(s or "NAME" for s in shape)
        raise DefinitionSyntaxError(f"a {kind} header needs '{want}'", lineno, col)


def parse(path):
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), path)


def serialize(df):
    out = []
    for s in df.sections:
        head = " ".join((s.kind, s.name) + tuple(s.header))
        out.append(f"[{head}]")
        for e in s.entries:
            key = f"{e.key} {e.qualifier}" if e.qualifier else e.key
            out.append(f"{key}: {e.value}")
        out.append("")
    return "\n".join(out)


# -- value parsing ----------------------------------------------------------

def _ints(tok, e):
    try:
        return tuple(int(x) for x in tok.split(",")) if tok not in ("()", "") else ()
    except ValueError:
        raise DefinitionSyntaxError(f"bad integer vector {tok!r}", e.line, e.column) from None


def vectors(e):
    return [_ints(t, e) for t in e.value.split()]


def matrix(text, e, nrows=None, ncols=None):
    rows = [r.strip() for r in text.split(";")] if text.strip() else []
    data = [_ints(r.replace(" ", ","), e) if r else () for r in rows]
    if nrows is not None and ncols is not None and not data:
        return intlin.zeros(nrows, ncols)
    if len({len(r) for r in data}) > 1:
        raise DefinitionSyntaxError("ragged matrix", e.line, e.column)
    return intlin.mat([list(r) for r in data])


def _ref(df, name, kinds, e):
    sec = next((s for s in df.sections if s.name == name), None)
    if sec is None or name not in df.objects:
        raise UnknownReference(f"{name!r} is not defined above", e.line if e else None,
                               e.column if e else None)
    if sec.kind not in kinds:
        raise UnknownReference(f"{name!r} is a {sec.kind}, expected {' or '.join(kinds)}",
                               e.line if e else None, e.column if e else None)
    return df.objects[name]


class _HeaderRef:
    def __init__(self, line):
        self.line, self.column = line, 1


# -- building ---------------------------------------------------------------

def build_objects(df):
    for s in df.sections:
        builder = _BUILDERS[s.kind]
        try:
            df.objects[s.name] = builder(df, s)
        except DefinitionError:
            raise
        except (sq.SesquiadError, sm.ModuleError, sc.SchemeError, intlin.IntLinError) as exc:
            raise InvariantViolation(f"{s.kind} {s.name}: {exc}", s.line) from None


def _ring(e):
    parts = e.value.split()
    if parts == ["integers"]:
        return intlin.ZAlgebra.integers()
    if len(parts) == 2 and parts[0] == "zmod":
        return intlin.ZAlgebra.zmod(int(parts[1]))
    if len(parts) == 3 and parts[0] == "poly":
        return intlin.ZAlgebra.poly_quotient(list(_ints(parts[2], e)), int(parts[1]))
    raise DefinitionSyntaxError("ring must be 'integers', 'zmod N' or 'poly CHAR c0,...,1'",
                                e.line, e.column)


def _fact(e, names):
    lhs, eq, rhs = e.value.partition("=")
    if not eq:
        raise DefinitionSyntaxError("a fact needs '='", e.line, e.column)
    coeffs, args = [], []
    for term in lhs.split(" + "):
        k, star, a = term.strip().partition("*")
        if not star:
            k, a = "1", k
        try:
            coeffs.append(int(k))
        except ValueError:
            raise DefinitionSyntaxError(f"bad coefficient {k!r}", e.line, e.column) from None
        args.append(a.strip())
    for a in args + [rhs.strip()]:
        if a not in names:
            raise UnknownReference(f"unknown element {a!r}", e.line, e.column)
    return sq.AdditionFact(tuple(coeffs), tuple(args), rhs.strip())


def _build_sesquiad(df, s):
    ring_e = s.one("ring")
    if ring_e is not None:
        ring = _ring(ring_e)
        sub = s.one("subset")
        names_e = s.one("names")
        names = names_e.value.split() if names_e else None
        if sub is None:
            a = sq.ring_sesquiad(ring, names)
        else:
            a = sq.from_pair(ring, vectors(sub), names=names)
    else:
        el = s.one("elements")
        if el is None:
            raise DefinitionSyntaxError("a sesquiad needs 'elements' or 'ring'", s.line)
        names = el.value.split()
        rows = s.get("row")
        if len(rows) != len(names):
            raise InvariantViolation(f"expected {len(names)} rows, found {len(rows)}", s.line)
        table = []
        for r in rows:
            cells = r.value.split()
            if len(cells) != len(names):
                raise InvariantViolation("row has the wrong length", r.line, r.column)
            for c in cells:
                if c not in names:
                    raise UnknownReference(f"unknown element {c!r}", r.line, r.column)
            table.append([names.index(c) for c in cells])
        _check_table(table, rows)
        facts = [_fact(e, names) for e in s.get("fact")]
        a = sq.build(names, table, facts)
    sat = s.one("saturate")
    if sat is not None and sat.value == "true":
        a, _ = sq.saturate(a)
    return a


def _cell_column(entry, j):
    tokens = list(re.finditer(r"\S+", entry.value))
    return entry.column + tokens[j].start()


def _check_table(table, rows):
    n = len(table)
    for i in range(n):
        for j in range(n):
            if table[i][j] != table[j][i]:
                raise InvariantViolation("multiplication is not commutative",
                                         rows[i].line, _cell_column(rows[i], j))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise InvariantViolation("multiplication is not associative",
                                             rows[i].line, _cell_column(rows[i], j))
    try:
        sq.check_monoid(table)
    except sq.SesquiadError as exc:
        raise InvariantViolation(str(exc), rows[0].line if rows else None) from None


def _build_sesquiad_hom(df, s):
    hdr = _HeaderRef(s.line)
    a = _ref(df, s.header[1], ["sesquiad"], hdr)
    b = _ref(df, s.header[3], ["sesquiad"], hdr)
    mapping = {}
    for e in s.get("send"):
        x, arrow, y = e.value.partition("->")
        if not arrow:
            raise DefinitionSyntaxError("expected 'x -> y'", e.line, e.column)
        mapping[x.strip()] = y.strip()
    missing = [n for n in a.names if n not in mapping]
    if missing:
        raise InvariantViolation(f"no image for {missing}", s.line)
    return sq.hom(a, b, mapping)


def _build_module(df, s):
    hdr = _HeaderRef(s.line)
    a = _ref(df, s.header[1], ["sesquiad"], hdr)
    free = s.one("free")
    if free is not None:
        return sm.free_module(a, int(free.value))
    rank_e = s.one("rank")
    if rank_e is None:
        raise DefinitionSyntaxError("a module needs 'rank' or 'free'", s.line)
    rank = int(rank_e.value)
    rel_e = s.one("relations")
    rels = vectors(rel_e) if rel_e else []
    pts_e = s.one("points")
    pts = vectors(pts_e) if pts_e else []
    for v in rels + pts:
        if len(v) != rank:
            e = rel_e if v in rels else pts_e
            raise InvariantViolation(f"vector {v} does not have {rank} coordinates", e.line, e.column)
    acts = {}
    for e in s.get("action"):
        if e.qualifier not in a.names:
            raise UnknownReference(f"unknown element {e.qualifier!r}", e.line, e.column)
        acts[e.qualifier] = matrix(e.value, e, rank, rank)
    close = s.one("close")
    return sm.make_module(a, rank, pts, rels, acts or None,
                          close=close is not None and close.value == "true")


def _build_hom(df, s):
    hdr = _HeaderRef(s.line)
    src = _ref(df, s.header[1], ["module"], hdr)
    tgt = _ref(df, s.header[3], ["module"], hdr)
    images = {}
    for e in s.get("send"):
        x, arrow, y = e.value.partition("->")
        if not arrow:
            raise DefinitionSyntaxError("expected 'v -> w'", e.line, e.column)
        images[sm.to_carrier(src, _ints(x.strip(), e))] = sm.to_carrier(tgt, _ints(y.strip(), e))
    return sm.hom_from_images(src, tgt, images)


def _build_sequence(df, s):
    homs = [_ref(df, e.value, ["hom"], e) for e in s.get("hom")]
    for f, g in zip(homs, homs[1:]):
        if not f.target.same_as(g.source):
            raise InvariantViolation("adjacent morphisms do not compose", s.line)
    return homs


_PRESETS = {"point": sc.point_space, "sierpinski": sc.sierpinski, "pseudocircle": sc.pseudocircle}


def _build_space(df, s):
    pre = s.one("preset")
    if pre is not None:
        parts = pre.value.split()
        if parts[0] == "chain" and len(parts) == 2:
            return sc.chain_space(int(parts[1]))
        if parts[0] not in _PRESETS:
            raise DefinitionSyntaxError(f"unknown preset {pre.value!r}", pre.line, pre.column)
        return _PRESETS[parts[0]]()
    pts_e = s.one("points")
    if pts_e is None:
        raise DefinitionSyntaxError("a space needs 'points' or 'preset'", s.line)
    pts = pts_e.value.split()
    rel = []
    for e in s.get("order"):
        for tok in e.value.split():
            y, lt, x = tok.partition("<")
            if not lt or y not in pts or x not in pts:
                raise UnknownReference(f"bad order relation {tok!r}", e.line, e.column)
            rel.append((y, x))
    return sc.FiniteSpace(pts, rel)


def _build_sheaf(df, s):
    hdr = _HeaderRef(s.line)
    if s.header[:2] == ("on", "spec"):
        a = _ref(df, s.header[2], ["sesquiad"], hdr)
        mod_e = s.one("module")
        if mod_e is None:
            raise DefinitionSyntaxError("a sheaf on a spectrum needs 'module'", s.line)
        m = _ref(df, mod_e.value, ["module"], mod_e)
        return sc.module_sheaf_from(sc.spec_scheme(a), m)
    space = _ref(df, s.header[1], ["space"], hdr)
    const = s.one("constant")
    if const is not None:
        return sc.constant_sheaf(space, _ref(df, const.value, ["module"], const))
    sky = s.one("skyscraper")
    if sky is not None:
        x, _, name = sky.value.partition(" ")
        if x not in space.points:
            raise UnknownReference(f"unknown point {x!r}", sky.line, sky.column)
        return sc.skyscraper(space, x, _ref(df, name.strip(), ["module"], sky))
    stalks = {}
    for e in s.get("stalk"):
        if e.qualifier not in space.points:
            raise UnknownReference(f"unknown point {e.qualifier!r}", e.line, e.column)
        stalks[e.qualifier] = _ref(df, e.value, ["module"], e)
    missing = [x for x in space.points if x not in stalks]
    if missing:
        raise InvariantViolation(f"no stalk at {missing}", s.line)
    res = {}
    for e in s.get("restrict"):
        q = e.qualifier.split()
        if len(q) != 2 or not all(p in space.points for p in q):
            raise UnknownReference("restrict needs two points 'x y'", e.line, e.column)
        x, y = q
        raw_rank = lambda m: m.presentation[0].shape[1] if m.presentation else m.carrier.rank
        raw = matrix(e.value, e, raw_rank(stalks[y]), raw_rank(stalks[x]))
        res[(x, y)] = sm.matrix_to_carriers(stalks[x], stalks[y], raw)
    for y, x in space.covers():
        if (x, y) not in res:
            raise InvariantViolation(f"no restriction from {x} to {y}", s.line)
    return sc.ModuleSheaf(space, stalks, res)


def _build_sheaf_hom(df, s):
    hdr = _HeaderRef(s.line)
    f = _ref(df, s.header[1], ["sheaf"], hdr)
    g = _ref(df, s.header[3], ["sheaf"], hdr)
    maps = {}
    for e in s.get("at"):
        if e.qualifier not in f.space.points:
            raise UnknownReference(f"unknown point {e.qualifier!r}", e.line, e.column)
        maps[e.qualifier] = _ref(df, e.value, ["hom"], e).matrix
    missing = [x for x in f.space.points if x not in maps]
    if missing:
        raise InvariantViolation(f"no map at {missing}", s.line)
    return sc.SheafHom(f, g, maps)


def _build_task(df, s):
    run = s.one("run")
    if run is None:
        raise DefinitionSyntaxError("a task needs 'run'", s.line)
    return tuple(run.value.split())


_BUILDERS = {
    "sesquiad": _build_sesquiad,
    "sesquiad-hom": _build_sesquiad_hom,
    "module": _build_module,
    "hom": _build_hom,
    "sequence": _build_sequence,
    "space": _build_space,
    "sheaf": _build_sheaf,
    "sheaf-hom": _build_sheaf_hom,
    "task": _build_task,
}
