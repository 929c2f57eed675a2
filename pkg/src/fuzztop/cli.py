"""Command-line front end: ``fuzztop <command> [names...] --doc FILE``.

Exit status is 0 when every law check passes, 1 when a law fails and 2 on
malformed input or an unknown command.
"""
import argparse
import hashlib
import sys

import numpy as np

from .checks import CheckReport
from .compact import closed_char_grid, is_perfect, spectrum
from .document import load_document
from .errors import (ArityError, FuzzTopError, StructuralError, UnknownCommand,
                     UnknownReference)
from .fsetcat import (PROBES, coproduct_lvset, image_equality, preimage_equality,
                      product_lvset, universal_probe)
from .fuzzfn import check_axioms, compose, image, in_sur_slack, preimage, proposition_audit
from .glmonoid import classify_monoid, derived_property_report, make_standard_monoid, validate_glmonoid
from .harness import batch_bytes, harness_generate
from .ltop import (continuity_audit, coproduct_space, generate_topology,
                   homeomorphism_degree, initial_topology, audit_initial_lift, is_continuous,
                   product_space, quotient_space, validate_topology)
from .lvset import equality_defect, is_extensional_subset
from .report import Report, emit_report

COMMANDS = ("validate", "degrees", "compose", "image", "preimage", "eq-preimage", "eq-image",
            "product", "coproduct", "topo-generate", "continuity", "initial", "quotient",
            "compact-spectrum", "perfect", "homeo-degree", "probe", "harness")

NEEDS_DOC = set(COMMANDS) - {"probe", "harness"}


def _arity(args, n, usage):
    if len(args) != n:
        raise ArityError(f"expected {usage}", tuple(args))


def _get(doc, section, name):
    table = getattr(doc, section)
    if name not in table:
        raise UnknownReference(f"undefined {section[:-1]} {name!r}", (name,))
    return table[name]


def _ff_data(F):
    m = F.monoid
    return {"matrix": m.labels_of(F.F), "mu": m.label(F.mu), "sigma": m.label(F.sigma),
            "injective": bool(F.injective)}


def _set_data(X):
    return {"elements": list(X.elements), "E": X.monoid.labels_of(X.E)}


def _grid(m, g):
    return {"labels": list(m.labels), "rows": [[bool(v) for v in r] for r in g]}


# --- command implementations --------------------------------------------------

def cmd_validate(doc, args, opts, rep):
    m = doc.monoid
    rep.checks.extend(validate_glmonoid(m), "monoid ")
    rep.checks.extend(derived_property_report(m), "monoid ")
    c = classify_monoid(m)
    rep.data["monoid"] = {"name": m.name, "size": m.size, "heyting": c.is_heyting, "mv": c.is_mv}
    names = args or (list(doc.sets) + list(doc.functions) + list(doc.topologies))
    for name in names:
        sec, obj = doc.lookup(name)
        if sec == "sets":
            d = equality_defect(m, obj.E)
            w = None if d is None else (d[0],) + tuple(obj.elements[i] for i in d[1])
            rep.checks.add(f"set {name}: L-valued equality", d is None, w)
        elif sec == "functions":
            rep.checks.extend(check_axioms(obj.dom, obj.cod, obj.F), f"function {name}: ")
        elif sec == "topologies":
            out = validate_topology(obj.set, list(obj.matrix))
            if isinstance(out, CheckReport):
                rep.checks.extend(out, f"topology {name}: ")
            else:
                rep.checks.add(f"topology {name}: L-topology", True)
        else:
            v = is_extensional_subset(obj)
            rep.checks.add(f"subset {name}: extensional", v.passed, v.witness, kind="condition")


def cmd_degrees(doc, args, opts, rep):
    _arity(args, 1, "degrees F")
    F = _get(doc, "functions", args[0])
    rep.data.update(_ff_data(F))


def cmd_compose(doc, args, opts, rep):
    _arity(args, 2, "compose G F")
    G, F = _get(doc, "functions", args[0]), _get(doc, "functions", args[1])
    H = compose(G, F)
    m = H.monoid
    rep.checks.extend(check_axioms(H.dom, H.cod, H.F), "composite ")
    bound = m.tnorm[G.mu, F.mu]
    ok = bool(m.leq[bound, H.mu])
    rep.checks.add("μ(G∘F) ≥ μ(G)*μ(F)", ok, None if ok else (m.label(H.mu), m.label(bound)),
                   detail=f"μ(G∘F) = {m.label(H.mu)}, μ(G)*μ(F) = {m.label(bound)}")
    rep.data["composite"] = _ff_data(H)
    rep.data["mu(G)*mu(F)"] = m.label(bound)


def cmd_image(doc, args, opts, rep):
    _arity(args, 2, "image F A")
    F, A = _get(doc, "functions", args[0]), _get(doc, "subsets", args[1])
    B = image(F, A)
    rep.data["image"] = B.labels()
    v = is_extensional_subset(B)
    rep.checks.add("image is extensional", v.passed, v.witness, kind="condition")


def cmd_preimage(doc, args, opts, rep):
    _arity(args, 2, "preimage F B")
    F, B = _get(doc, "functions", args[0]), _get(doc, "subsets", args[1])
    A = preimage(F, B)
    rep.data["preimage"] = A.labels()
    v = is_extensional_subset(A)
    rep.checks.add("preimage is extensional", v.passed, v.witness, kind="condition")


def cmd_eq_preimage(doc, args, opts, rep):
    _arity(args, 1, "eq-preimage F")
    F = _get(doc, "functions", args[0])
    X = preimage_equality(F.F, F.cod, F.dom.elements)
    rep.data["E"] = _set_data(X)["E"]
    rep.checks.extend(check_axioms(X, F.cod, F.F), "raw over the preimage equality ")


def cmd_eq_image(doc, args, opts, rep):
    _arity(args, 1, "eq-image F")
    F = _get(doc, "functions", args[0])
    Y = image_equality(F.F, F.dom, F.cod.elements)
    rep.data["E"] = _set_data(Y)["E"]
    rep.checks.extend(check_axioms(F.dom, Y, F.F), "raw over the image equality ")


def _family(doc, args):
    if not args:
        raise ArityError("expected at least one name")
    secs = {doc.lookup(a)[0] for a in args}
    if secs == {"topologies"}:
        return "spaces", [doc.topologies[a] for a in args]
    if secs == {"sets"}:
        return "sets", [doc.sets[a] for a in args]
    raise ArityError("names must all be sets or all be topologies", tuple(args))


def cmd_product(doc, args, opts, rep):
    kind, fam = _family(doc, args)
    cap = opts.cap or 64
    if kind == "spaces":
        S, prod = product_space(fam, cap=cap)
        rep.data["opens"] = S.monoid.labels_of(S.matrix)
    else:
        prod = product_lvset(fam, cap=cap)
    rep.data.update(_set_data(prod.lvset))
    for i, p in enumerate(prod.projections):
        rep.checks.extend(check_axioms(p.dom, p.cod, p.F), f"projection {i} ")


def cmd_coproduct(doc, args, opts, rep):
    kind, fam = _family(doc, args)
    if kind == "spaces":
        S, cop = coproduct_space(fam)
        rep.data["opens"] = S.monoid.labels_of(S.matrix)
    else:
        cop = coproduct_lvset(fam)
    rep.data.update(_set_data(cop.lvset))
    for i, q in enumerate(cop.injections):
        rep.checks.extend(check_axioms(q.dom, q.cod, q.F), f"injection {i} ")


def cmd_topo_generate(doc, args, opts, rep):
    if not args:
        raise ArityError("expected topo-generate T or topo-generate X A...")
    sec, obj = doc.lookup(args[0])
    if sec == "topologies":
        _arity(args, 1, "topo-generate T")
        T = obj.topology
    elif sec == "sets":
        subs = [_get(doc, "subsets", a) for a in args[1:]]
        T = generate_topology(obj, subs, repair=False, cap=opts.cap or 4096)
    else:
        raise ArityError("first name must be a set or a topology", (args[0],))
    rep.data["opens"] = T.monoid.labels_of(T.matrix)
    rep.data["size"] = len(T)
    out = validate_topology(T.space, list(T.matrix))
    rep.checks.add("result is an L-topology", not isinstance(out, CheckReport),
                   None if not isinstance(out, CheckReport) else out.failures[0].witness)


def cmd_continuity(doc, args, opts, rep):
    _arity(args, 3, "continuity F TX TY")
    F = _get(doc, "functions", args[0])
    SX, SY = _get(doc, "topologies", args[1]), _get(doc, "topologies", args[2])
    audit = continuity_audit(F, SX, SY)
    rep.checks.extend(audit)
    rep.data["continuous"] = audit["(1con)"].passed
    rep.data["mu"] = F.monoid.label(F.mu)


def cmd_initial(doc, args, opts, rep):
    _arity(args, 2, "initial F TY")
    F, SY = _get(doc, "functions", args[0]), _get(doc, "topologies", args[1])
    T = initial_topology(F, SY)
    rep.data["opens"] = T.monoid.labels_of(T.matrix)
    rep.checks.extend(audit_initial_lift(F, SY))


def cmd_quotient(doc, args, opts, rep):
    if len(args) < 2:
        raise ArityError("expected quotient TX c0 c1 ...", tuple(args))
    S = _get(doc, "topologies", args[0])
    try:
        q = [int(a) for a in args[1:]]
    except ValueError:
        raise ArityError("class labels must be integers", tuple(args[1:])) from None
    Q, lift = quotient_space(S, q)
    rep.data.update(_set_data(Q.set))
    rep.data["opens"] = Q.monoid.labels_of(Q.matrix)
    v = is_continuous(lift, S, Q)
    rep.checks.add("quotient map is continuous", v.passed, v.witness)


def cmd_spectrum(doc, args, opts, rep):
    _arity(args, 1, "compact-spectrum TX")
    S = _get(doc, "topologies", args[0])
    sp = spectrum(S)
    m = S.monoid
    rep.data["spectrum"] = _grid(m, sp.grid)
    rep.data["lowen_compact"] = sp.lowen_compact
    rep.data["chang_compact"] = sp.chang
    if S.is_mv:
        g = closed_char_grid(S)
        same = np.array_equal(g, sp.grid)
        w = None
        if not same:
            a, b = np.argwhere(g != sp.grid)[0]
            w = (m.label(a), m.label(b))
        rep.checks.add("closed-set characterisation agrees", same, w)


def cmd_perfect(doc, args, opts, rep):
    _arity(args, 5, "perfect F TX TY alpha beta")
    F = _get(doc, "functions", args[0])
    SX, SY = _get(doc, "topologies", args[1]), _get(doc, "topologies", args[2])
    v = is_perfect(F, SX, SY, args[3], args[4])
    rep.checks.add("F is closed", v.closed, v.witness if not v.closed else None, kind="condition")
    for y, ok in zip(F.cod.elements, v.fibers):
        rep.checks.add(f"fibre over {y} compact", ok, None if ok else (y,), kind="condition")
    rep.data["perfect"] = v.passed


def cmd_homeo(doc, args, opts, rep):
    _arity(args, 3, "homeo-degree F TX TY")
    F = _get(doc, "functions", args[0])
    SX, SY = _get(doc, "topologies", args[1]), _get(doc, "topologies", args[2])
    h = homeomorphism_degree(F, SX, SY)
    rep.data["degree"] = None if h.degree is None else F.monoid.label(h.degree)
    rep.data["reason"] = h.reason


def cmd_probe(doc, args, opts, rep):
    if not args:
        raise ArityError(f"expected probe QUESTION [bottom|top] [n1 n2 n3]; questions: {PROBES}")
    question, rest = args[0], list(args[1:])
    frame = "bottom"
    if rest and rest[0] in ("bottom", "top"):
        frame = rest.pop(0)
    bounds = (2, 2, 2)
    if rest:
        _arity(rest, 3, "three carrier bounds")
        bounds = tuple(int(v) for v in rest)
    m = doc.monoid if doc is not None else make_standard_monoid("boolean")
    budget = 100_000 if opts.cap is None else opts.cap
    r = universal_probe(question, m, bounds=bounds, budget=budget, frame=frame)
    rep.data.update({"question": question, "frame": frame, "bounds": list(bounds),
                     "verdict": r.verdict, "examined": r.examined, "complete": r.complete,
                     "counterexample": r.counterexample, "monoid": m.name})
    rep.checks.add("probe ran", True, kind="info", detail="evidence only, no verdict on the question")


def cmd_harness(doc, args, opts, rep):
    seed = 0 if opts.seed is None else opts.seed
    count = 100 if opts.cap is None else opts.cap
    batch = harness_generate(seed, count=count)
    rep.data["seed"] = seed
    rep.data["count"] = count
    rep.data["sha256"] = hashlib.sha256(batch_bytes(batch)).hexdigest()
    rep.data["traces"] = [" ".join(i.trace) for i in batch[:10]]
    fails = {}
    for inst in batch:
        for e in proposition_audit(inst.F).failures:
            fails.setdefault(e.law, (inst.index,) + tuple(map(str, e.witness)))
    # the in-sur 3-5 bounds are open to improvement; record how close the sample gets
    gaps = {}
    for inst in batch:
        for item, g in (in_sur_slack(inst.F) or {}).items():
            gaps.setdefault(item, []).append(g)
    rep.data["in-sur slack"] = {item: {"instances": len(v), "min rank gap": min(v),
                                       "attained": sum(g == 0 for g in v)}
                                for item, v in sorted(gaps.items())}
    laws = {e.law for e in proposition_audit(batch[0].F)} | set(fails)
    for law in sorted(laws):
        rep.checks.add(law, law not in fails, fails.get(law), detail=f"{count} instances")


DISPATCH = {
    "validate": cmd_validate, "degrees": cmd_degrees, "compose": cmd_compose,
    "image": cmd_image, "preimage": cmd_preimage, "eq-preimage": cmd_eq_preimage,
    "eq-image": cmd_eq_image, "product": cmd_product, "coproduct": cmd_coproduct,
    "topo-generate": cmd_topo_generate, "continuity": cmd_continuity, "initial": cmd_initial,
    "quotient": cmd_quotient, "compact-spectrum": cmd_spectrum, "perfect": cmd_perfect,
    "homeo-degree": cmd_homeo, "probe": cmd_probe, "harness": cmd_harness,
}


class Options:
    def __init__(self, seed=None, cap=None):
        self.seed, self.cap = seed, cap


def _error(exc):
    return {"type": type(exc).__name__, "message": str(exc.args[0]) if exc.args else "",
            "witness": exc.witness,
            "kind": "structural" if isinstance(exc, StructuralError) else "law"}


def run_command(doc, command, args=(), seed=None, cap=None):
    """Run one command against a parsed Document (or None) and return its Report."""
    rep = Report(command, [str(a) for a in args])
    try:
        if command not in DISPATCH:
            raise UnknownCommand(f"unknown command {command!r}", (command,))
        if doc is None and command in NEEDS_DOC:
            raise ArityError(f"{command} needs --doc")
        DISPATCH[command](doc, list(rep.args), Options(seed, cap), rep)
    except FuzzTopError as exc:
        rep.error = _error(exc)
    return rep


def build_parser():
    p = argparse.ArgumentParser(prog="fuzztop", description=__doc__.splitlines()[0])
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("names", nargs="*", help="object names and arguments for the command")
    p.add_argument("--doc", help="JSON document")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int)
    return p


def main(argv=None):
    opts = build_parser().parse_args(argv)
    doc = None
    rep = None
    if opts.doc is not None:
        strict = opts.command != "validate"
        try:
            doc = load_document(opts.doc, strict=strict)
        except FuzzTopError as exc:
            rep = Report(opts.command, opts.names, error=_error(exc))
        except OSError as exc:
            rep = Report(opts.command, opts.names,
                         error={"type": "OSError", "message": str(exc), "witness": None,
                                "kind": "structural"})
    if rep is None:
        rep = run_command(doc, opts.command, opts.names, opts.seed, opts.cap)
    sys.stdout.write(emit_report(rep, opts.format))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
