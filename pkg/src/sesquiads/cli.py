"""Command line front end: ``check`` a definition file or ``run`` its tasks.

Reports are canonical JSON (sorted keys, ASCII, fixed indentation), so two
runs on the same input give byte-identical output.
"""
from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import logging
import os
import sys
import time

import numpy as np

from . import deffile, intlin, scheme as sc, sesquiad as sq, smodule as sm
from . import cohomology as co

log = logging.getLogger("sesquiads")

ENV_BOUNDS = "SESQUIADS_BOUNDS"
DEFAULT_BOUNDS = {"spec": sq.DEFAULT_SPEC_BOUND, "sep": 3, "ideal": 256, "sat": 2, "seed": 0,
                  "count": 50}


class UsageError(Exception):
    pass


def bounds_from_env(environ=None):
    """Defaults overridden by ``SESQUIADS_BOUNDS="spec=8,sep=3,..."``."""
    environ = os.environ if environ is None else environ
    out = dict(DEFAULT_BOUNDS)
    raw = environ.get(ENV_BOUNDS, "").strip()
    for item in filter(None, (p.strip() for p in raw.split(","))):
        key, eq, val = item.partition("=")
        if not eq or key not in out:
            raise UsageError(f"{ENV_BOUNDS}: unknown entry {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"{ENV_BOUNDS}: {key} needs an integer") from None
    return out


# -- JSON ---------------------------------------------------------------------

def to_json(x):
    """Plain JSON data for reports; tuples become lists, enums their values."""
    if isinstance(x, (bool, type(None), str)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [to_json(v) for v in x]
        return sorted(items, key=canonical) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, np.ndarray):
        return [[int(v) for v in row] for row in x.tolist()] if x.ndim == 2 else \
            [int(v) for v in x.tolist()]
    if isinstance(x, sq.Polynomial):
        return str(x)
    if isinstance(x, sq.Congruence):
        return x.label()
    if isinstance(x, sm.SesquiadModule):
        return describe_module(x)
    if dataclasses.is_dataclass(x):
        return {f.name: to_json(getattr(x, f.name)) for f in dataclasses.fields(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def canonical(data):
    return json.dumps(data, sort_keys=True, ensure_ascii=True, indent=2)


def describe_group(g):
    return [int(x) for x in g.invariant_factors()]


def describe_module(m):
    return {"carrier": describe_group(m.carrier), "points": [list(p) for p in m.points]}


def describe_hom(h):
    return {"source": describe_module(h.source), "target": describe_module(h.target),
            "matrix": to_json(h.matrix)}


# -- operations ---------------------------------------------------------------

OPS = {}


def op(name, *kinds, doc=""):
    """Register an operation taking objects of the given section kinds."""
    def wrap(fn):
        OPS[name] = (fn, kinds, doc or (fn.__doc__ or "").strip().splitlines()[0])
        return fn
    return wrap


class Context:
    def __init__(self, df, bounds, decisions=None):
        self.df, self.bounds = df, bounds
        self.decisions = set() if decisions is None else decisions

    def note(self, decision):
        self.decisions.add(decision)


def _resolve(df, args, kinds):
    out = []
    for i, kind in enumerate(kinds):
        optional = kind.endswith("?")
        kind = kind.rstrip("?")
        if i >= len(args):
            if optional:
                out.append(None)
                continue
            raise UsageError(f"missing argument {i + 1} ({kind})")
        tok = args[i]
        if kind == "int":
            try:
                val = int(tok)
            except ValueError:
                raise UsageError(f"argument {i + 1} must be an integer, got {tok!r}") from None
            if val < 0:
                raise UsageError(f"argument {i + 1} must be non-negative, got {val}")
            out.append(val)
            continue
        if kind == "word":
            out.append(tok)
            continue
        sec = next((s for s in df.sections if s.name == tok), None)
        if sec is None:
            raise deffile.UnknownReference(f"{tok!r} is not defined")
        allowed = kind.split("|")
        if sec.kind not in allowed:
            raise UsageError(f"{tok!r} is a {sec.kind}, expected {' or '.join(allowed)}")
        out.append(df.objects[tok])
    if len(args) > len(kinds):
        raise UsageError(f"too many arguments: {' '.join(args[len(kinds):])}")
    return out


DOMAIN_ERRORS = (sq.SesquiadError, sm.ModuleError, sc.SchemeError, intlin.IntLinError,
                 co.NotFlabby, deffile.DefinitionError)


def run_task(ctx, tokens):
    if not tokens:
        raise UsageError("empty task")
    name, args = tokens[0], list(tokens[1:])
    if name not in OPS:
        raise UsageError(f"unknown operation {name!r}")
    fn, kinds, _ = OPS[name]
    return fn(ctx, *_resolve(ctx.df, args, kinds))


def validate_tasks(df):
    """Check every task's operation and arguments without running it."""
    for sec in df.tasks():
        tokens = df.objects[sec.name]
        entry = sec.one("run")
        try:
            if tokens[0] not in OPS:
                raise UsageError(f"unknown operation {tokens[0]!r}")
            _resolve(df, list(tokens[1:]), OPS[tokens[0]][1])
        except deffile.UnknownReference as exc:
            raise deffile.UnknownReference(f"task {sec.name}: {exc}", entry.line,
                                           entry.column) from None
        except UsageError as exc:
            raise deffile.DefinitionSyntaxError(f"task {sec.name}: {exc}", entry.line,
                                                entry.column) from None


def provenance(ctx):
    return {"bounds": dict(sorted(ctx.bounds.items())), "prime_definition": sq.PRIME_FLAG,
            "decisions": sorted(ctx.decisions)}


def report_for(ctx, task_name, tokens, timing=False):
    t0 = time.perf_counter()
    ctx.decisions = set()
    try:
        result = {"status": "ok", "result": to_json(run_task(ctx, tokens))}
    except sq.InternalInconsistency as exc:
        result = {"status": "inconsistent", "error": str(exc)}
    except DOMAIN_ERRORS as exc:
        result = {"status": "error", "error": f"{type(exc).__name__}: {exc}"}
    rep = {"task": task_name, "run": list(tokens), **result, "provenance": provenance(ctx)}
    if timing:
        rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


# -- sesquiads ------------------------------------------------------------------

def describe_sesquiad(a):
    return {"elements": list(a.names), "table": [[a.names[v] for v in row] for row in a.table],
            "ring": describe_group(a.ring.module), "ring_dimension": a.ring.dim,
            "embedding": {a.names[i]: list(v) for i, v in enumerate(a.embed)}}


@op("ring", "sesquiad")
def op_ring(ctx, a):
    """Universal ring: additive group, basis size and element images."""
    return describe_sesquiad(a)


@op("saturate", "sesquiad")
def op_saturate(ctx, a):
    """Rebuild the partial addition from the ring up to the saturation horizon."""
    b, horizon = sq.saturate(a, coefficient_bound=ctx.bounds["sat"])
    return {"sesquiad": describe_sesquiad(b), "facts": [str(f) for f in b.facts],
            "horizon": horizon.as_dict()}


@op("congruences", "sesquiad")
def op_congruences(ctx, a):
    """Every congruence, with primality and maximality."""
    out = []
    for c in sq.congruence_lattice(a, ctx.bounds["spec"]):
        out.append({"congruence": c.label(), "prime": sq.is_prime(c),
                    "maximal": sq.is_maximal(c, ctx.bounds["spec"])})
    ctx.note("prime = integral quotient")
    return out


@op("spec", "sesquiad")
def op_spec(ctx, a):
    """Prime spectrum as a finite poset (specialization order)."""
    s = sc.spec_scheme(a, ctx.bounds["spec"])
    ctx.note("prime = integral quotient")
    return {"points": sorted(s.space.points), "order": sorted(s.space.relations()),
            "covers": sorted(s.space.covers()), "dimension": s.space.dimension(),
            "stalk_sizes": {x: len(s.stalks[x]) for x in sorted(s.space.points)}}


@op("simple", "sesquiad")
def op_simple(ctx, a):
    """Simplicity by the congruence lattice."""
    return {"simple": sq.is_simple(a, ctx.bounds["spec"])}


@op("maximal", "sesquiad")
def op_maximal(ctx, a):
    """The maximal congruences."""
    return [c.label() for c in sq.congruence_lattice(a, ctx.bounds["spec"])
            if sq.is_maximal(c, ctx.bounds["spec"])]


@op("localize", "sesquiad")
def op_localize(ctx, a):
    """Local and residue sesquiads at every prime, with the residue isomorphism check."""
    out = {}
    for c in sq.spec_c(a, ctx.bounds["spec"]):
        loc = sq.localize(a, c)
        out[c.label()] = {"local": list(loc.local.names), "residue": list(loc.residue.names),
                          "residue_via_quotient": list(loc.residue_alt.names),
                          "isomorphic": sq.is_isomorphism(loc.iso)}
    ctx.note("localization realised by an idempotent quotient of the ring")
    return out


@op("witness", "sesquiad")
def op_witness(ctx, a):
    """Generating pairs for every congruence."""
    return {c.label(): [list(p) for p in sq.is_finitely_generated_witness(c)]
            for c in sq.congruence_lattice(a, ctx.bounds["spec"])}


@op("units", "sesquiad")
def op_units(ctx, a):
    """Unit inclusions for a simple sesquiad."""
    return sq.unit_inclusions(a)


@op("closed", "sesquiad", "int?")
def op_closed(ctx, a, degree):
    """Algebraic closedness up to a degree."""
    d = degree or ctx.bounds["sep"]
    closed, p = sq.is_algebraically_closed_upto(a, d)
    return {"closed": closed, "degree": d, "rootless": None if p is None else str(p)}


@op("separable", "sesquiad-hom", "word")
def op_separable(ctx, h, b):
    """Separability of one target element over the source."""
    r = sq.is_separable(h, h.target.index(b), ctx.bounds["sep"])
    ctx.note("separability counts algebraic elements only")
    return {"status": r.status.value, "witness": None if r.witness is None else str(r.witness),
            "conclusive": r.conclusive, "cap": r.cap}


@op("full-subsesquiad", "sesquiad-hom")
def op_full_sub(ctx, h):
    """Whether an injective hom exhibits a full subsesquiad."""
    return {"full": sq.is_full_subsesquiad(h)}


@op("morphism-class", "sesquiad-hom")
def op_morphism_class(ctx, h):
    """Finiteness of the ring map."""
    return sq.morphism_class(h)


@op("unramified", "sesquiad-hom")
def op_unramified(ctx, h):
    """Residue extensions at every prime of the target."""
    ctx.note("separability counts algebraic elements only")
    return sc.is_unramified(h, ctx.bounds["spec"], ctx.bounds["sep"])


@op("etale", "sesquiad-hom")
def op_etale(ctx, h):
    """Flat and unramified."""
    ctx.note("separability counts algebraic elements only")
    return sc.is_etale(h, ctx.bounds["spec"], ctx.bounds["sep"], ctx.bounds["ideal"])


@op("root-bound", "sesquiad", "int?")
def op_root_bound(ctx, a, degree):
    """Largest root count of a nonzero polynomial against its degree."""
    d = degree or ctx.bounds["sep"]
    worst, count = None, 0
    for deg in range(1, d + 1):
        for p in sq.polynomials(a, deg):
            count += 1
            k = len(sq.poly_roots(p))
            if worst is None or k - p.degree > worst[0]:
                worst = (k - p.degree, str(p), k)
    return {"simple": sq.is_simple(a, ctx.bounds["spec"]), "polynomials": count,
            "max_excess": None if worst is None else worst[0],
            "example": None if worst is None else {"polynomial": worst[1], "roots": worst[2]},
            "bound_holds": worst is None or worst[0] <= 0}


# -- modules --------------------------------------------------------------------

@op("module", "module")
def op_module(ctx, m):
    """Carrier invariant factors and points."""
    return describe_module(m)


@op("classify", "hom")
def op_classify(ctx, f):
    """Mono, epi and iso through the carrier map, plus point injectivity."""
    ctx.note("mono/epi read off the carrier map; point injectivity reported separately")
    return sm.classify(f)


@op("full", "hom")
def op_full(ctx, f):
    """Whether the image is a full submodule."""
    return {"full": sm.is_full(f), "image": sorted(set(f.image_points())),
            "closure": sm.full_closure(f.target, f.image_points())}


@op("strong", "hom")
def op_strong(ctx, f):
    """Strongness by both criteria (they are required to agree)."""
    return {"strong": sm.is_strong(f), "full": sm.is_full(f),
            "carrier_kernel_generated": sm.carrier_kernel_generated(f)}


def _object_and_map(obj, arrow):
    return {"module": describe_module(obj), "map": to_json(arrow.matrix)}


@op("kernel", "hom")
def op_kernel(ctx, f):
    """Kernel module and its inclusion."""
    return _object_and_map(*sm.kernel(f))


@op("cokernel", "hom")
def op_cokernel(ctx, f):
    """Cokernel module and the projection onto it."""
    return _object_and_map(*sm.cokernel(f))


@op("image", "hom")
def op_image(ctx, f):
    """Image as a submodule of the target."""
    return _object_and_map(*sm.image(f))


@op("coimage", "hom")
def op_coimage(ctx, f):
    """Coimage as a quotient of the source."""
    return _object_and_map(*sm.coimage(f))


@op("tensor", "module", "module")
def op_tensor(ctx, s, t):
    """Tensor product: simple tensors of points in the carrier tensor."""
    return describe_module(sm.tensor(s, t))


@op("flat", "module")
def op_flat(ctx, m):
    """Flatness of the carrier over the universal ring."""
    r = sm.is_flat(m, limit=ctx.bounds["ideal"])
    return {"status": r.status.value, "witness": r.witness, "route": r.route}


@op("cover", "module")
def op_cover(ctx, m):
    """Free module surjecting onto the module."""
    c = sm.cover(m)
    return {"free_rank": len([p for p in m.points if any(p)]), "map": to_json(c.matrix),
            "onto": sm.classify(c).epi}


@op("exact", "sequence")
def op_exact(ctx, seq):
    """Exactness at every inner object."""
    return {"exact_at": [sm.is_exact_at(seq, i) for i in range(len(seq) - 1)],
            "exact": sm.is_exact(seq)}


@op("strong-exact", "sequence")
def op_strong_exact(ctx, seq):
    """Exact with every morphism strong."""
    return {"strong": [sm.is_strong(f) for f in seq], "exact": sm.is_exact(seq),
            "strong_exact": sm.is_strong_exact(seq)}


# -- sheaves and cohomology -------------------------------------------------------

def _space_of(obj, ctx):
    if isinstance(obj, sc.FiniteSpace):
        return obj
    if isinstance(obj, sq.Sesquiad):
        return sc.spec_scheme(obj, ctx.bounds["spec"]).space
    return obj.space


@op("sections", "sheaf", "word?")
def op_sections(ctx, f, opens):
    """Sections over an open set given as comma-separated points (default: everything)."""
    ctx.note("sections over non-principal opens are limits of stalks")
    u = f.space.points if opens is None else opens.split(",")
    if not f.space.is_open(u):
        raise sc.SchemeError(f"{sorted(u)} is not open")
    s = f.sections(u)
    gens = [p for p in s.points if any(p)]
    span = intlin.submodule(s.ambient, gens)[0] if gens else None
    return {"open": sorted(u), "count": len(s.points),
            "span": describe_group(span) if span is not None else [],
            "points": [list(p) for p in sorted(s.points)]}


@op("full-sheaf", "sheaf-hom")
def op_full_sheaf(ctx, phi):
    """Fullness on every open set and on every stalk."""
    r = sc.fullness_report(phi)
    return {"on_opens": r.global_value, "on_stalks": r.stalk_value,
            "agree": r.global_value == r.stalk_value,
            "failing_opens": sorted(sorted(u) for u, ok in r.on_opens.items() if not ok),
            "stalks": dict(sorted(r.on_stalks.items()))}


@op("cohomology", "space|sheaf", "sheaf?")
def op_cohomology(ctx, first, second):
    """Sheaf cohomology through the Godement resolution, checked against higher limits."""
    f = second if second is not None else first
    if not isinstance(f, sc.ModuleSheaf):
        raise UsageError("cohomology needs a sheaf")
    if second is not None and f.space is not first and \
            sorted(f.space.relations()) != sorted(first.relations()):
        raise UsageError("the sheaf does not live on that space")
    ctx.note(co.MODEL_NOTE)
    return [{"degree": r.degree, "group": r.describe(), "invariant_factors": r.invariant_factors,
             "full_module": r.full_module} for r in co.cohomology(f)]


@op("base-change", "sheaf")
def op_base_change(ctx, f):
    """Comparison of sesquiad-level groups with the ascended ones."""
    ctx.note("base change uses the same underlying space")
    return co.base_change_compare(f)


@op("flabby", "sheaf")
def op_flabby(ctx, f):
    """Flabbiness, and vanishing higher cohomology when flabby."""
    flabby = co.is_flabby(co.ascend(f))
    return {"flabby": flabby, "acyclic": co.flabby_acyclicity_check(f) if flabby else None}


@op("dot", "space|sesquiad|sheaf")
def op_dot(ctx, obj):
    """DOT text of a finite space or a spectrum."""
    if isinstance(obj, sq.Sesquiad):
        return {"dot": sc.scheme_dot(sc.spec_scheme(obj, ctx.bounds["spec"]))}
    return {"dot": sc.export_dot(_space_of(obj, ctx))}


@op("random-belian", "sesquiad", "int?")
def op_random_belian(ctx, a, count):
    """Seeded random homs: full+mono+epi gives iso, zero cokernel gives epi."""
    from . import randomized as rd
    rng = rd.rng_for(ctx.bounds["seed"])
    n = count or ctx.bounds["count"]
    fails = {"full_mono_epi_not_iso": 0, "zero_cokernel_not_epi": 0}
    for _ in range(n):
        f = rd.random_hom(rng, a)
        c = sm.classify(f)
        if sm.is_full(f) and c.mono and c.epi and not c.iso:
            fails["full_mono_epi_not_iso"] += 1
        if sm.cokernel(f)[0].is_zero() and not c.epi:
            fails["zero_cokernel_not_epi"] += 1
    return {"instances": n, "seed": ctx.bounds["seed"], "failures": fails}


# -- entry point ----------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="sesquiads", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="parse and validate a definition file")
    c.add_argument("file")
    r = sub.add_parser("run", help="run the tasks of a definition file")
    r.add_argument("file")
    r.add_argument("--task", help="run only this task")
    r.add_argument("--json", action="store_true", help="print the canonical JSON reports")
    r.add_argument("--dot", metavar="PATH", help="write the DOT of the last task's space")
    r.add_argument("--seed", type=int)
    r.add_argument("--bound-spec", type=int, help="largest sesquiad enumerated for spectra")
    r.add_argument("--cap-sep", type=int, help="degree cap for separability searches")
    r.add_argument("--timing", action="store_true", help="add wall-clock seconds to reports")
    sub.add_parser("ops", help="list the available operations")
    return p


def _load(path):
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    return deffile.parse(path)


def _summary(rep):
    if rep["status"] != "ok":
        return f"{rep['task']}: {rep['status']}: {rep['error']}"
    body = json.dumps(rep["result"], sort_keys=True, separators=(",", ":"))
    if len(body) > 160:
        body = body[:157] + "..."
    return f"{rep['task']}: {body}"


def run(path, task=None, bounds=None, timing=False):
    """Reports for the tasks of a file, in file order."""
    df = _load(path)
    validate_tasks(df)
    ctx = Context(df, dict(bounds or bounds_from_env()))
    tasks = [(s.name, df.objects[s.name]) for s in df.tasks()]
    if task is not None:
        tasks = [t for t in tasks if t[0] == task]
        if not tasks:
            raise UsageError(f"no task named {task!r}")
    return ctx, [report_for(ctx, name, tokens, timing) for name, tokens in tasks]


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "ops":
            for name in sorted(OPS):
                fn, kinds, doc = OPS[name]
                print(f"{name} {' '.join(kinds)}: {doc}")
            return 0
        if args.command == "check":
            df = _load(args.file)
            validate_tasks(df)
            kinds = {}
            for s in df.sections:
                kinds[s.kind] = kinds.get(s.kind, 0) + 1
            print(f"{args.file}: ok, " + ", ".join(f"{v} {k}" for k, v in sorted(kinds.items())))
            return 0
        bounds = bounds_from_env()
        for key, val in (("seed", args.seed), ("spec", args.bound_spec), ("sep", args.cap_sep)):
            if val is not None:
                bounds[key] = val
        ctx, reports = run(args.file, args.task, bounds, args.timing)
        if args.json:
            print(canonical(reports))
        else:
            for rep in reports:
                print(_summary(rep))
        if args.dot and reports:
            tokens = reports[-1]["run"]
            obj = ctx.df.objects.get(tokens[1]) if len(tokens) > 1 else None
            if obj is None or isinstance(obj, (tuple, list, sm.ModuleHom, sm.SesquiadModule)):
                raise UsageError("the last task has no space to draw")
            text = (sc.scheme_dot(sc.spec_scheme(obj, bounds["spec"]))
                    if isinstance(obj, sq.Sesquiad) else sc.export_dot(_space_of(obj, ctx)))
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
        return 0 if all(r["status"] == "ok" for r in reports) else 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
