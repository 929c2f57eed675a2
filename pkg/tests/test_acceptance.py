"""Acceptance criteria 1-11 at their stated scales and tolerances.

Each test stores ``(passed, detail)`` in RESULTS before asserting, and the
conftest summary hook prints one line per criterion. Run this file directly
(``python3 tests/test_acceptance.py``) to get the same lines without pytest.
"""
import contextlib
import hashlib
import io
import itertools
import json
import os
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import oracles as O  # noqa: E402
from fuzztop import (LTopSpace, coproduct_lvset, degree_law_audit, generate_topology,  # noqa: E402
                     image_equality, make_lvset, monoid_from_name, preimage_equality,
                     product_lvset, proposition_audit, theorem_suite)
from fuzztop.cli import main, run_command  # noqa: E402
from fuzztop.compact import closed_char_grid, compact_grid  # noqa: E402
from fuzztop.document import load_document  # noqa: E402
from fuzztop.errors import FuzzTopError, NotTopSurjective, RawViolates2ff  # noqa: E402
from fuzztop.fuzzfn import FuzzyFunction, compose, from_crisp, to_crisp  # noqa: E402
from fuzztop.glmonoid import (derived_property_report, make_standard_monoid,  # noqa: E402
                              validate_glmonoid)
from fuzztop.harness import (batch_bytes, harness_generate, random_equality,  # noqa: E402
                             random_fuzzy_matrix, random_subbase)
from fuzztop.ltop import (audit_initial_lift, continuity_audit, discrete_like,  # noqa: E402
                          indiscrete, initial_topology, interior_values, is_continuous)
from fuzztop.lvset import all_lsubsets, crisp_lvset  # noqa: E402
from fuzztop.report import emit_machine, parse_report  # noqa: E402

RESULTS = {}
DOCS = Path(__file__).resolve().parent.parent / "demos" / "docs"


def record(k, ok, detail):
    RESULTS[k] = (bool(ok), detail)
    assert ok, detail


# --- 1. GL-monoid suite ------------------------------------------------------------

SUITE = [("boolean", 2), ("lukasiewicz", 2), ("lukasiewicz", 3), ("lukasiewicz", 5),
         ("lukasiewicz", 11), ("goedel", 3), ("goedel", 5), ("L3xL3", None)]


def test_criterion_01_glmonoid_suite():
    t = time.perf_counter()
    bad = []
    for name, n in SUITE:
        if n is None:
            l3 = make_standard_monoid("lukasiewicz", 3)
            m = make_standard_monoid("product", factors=(l3, l3))
        else:
            m = make_standard_monoid(name, n)
        ax, pr = validate_glmonoid(m), derived_property_report(m)
        L = np.arange(m.size)
        a, b, c = np.meshgrid(L, L, L, indexing="ij")
        adj = np.array_equal(m.leq[m.tnorm[a, b], c], m.leq[a, m.residuum[b, c]])
        if not (ax.ok and pr.ok and adj and len(ax) == 8 and len(pr) == 6):
            bad.append(m.name)
    dt = time.perf_counter() - t
    record(1, not bad and dt < 5,
           f"{len(SUITE)} monoids, axioms+adjunction+properties, {dt:.2f}s (< 5s)"
           + (f"; failing {bad}" if bad else ""))


# --- 2. residuum against brute force ----------------------------------------------

CATALOG = ["B"] + [f"L{n}" for n in range(2, 12)] + [f"G{n}" for n in range(3, 7)] + ["L3xL3"]


def test_criterion_02_residuum_oracle():
    pairs, bad = 0, []
    for name in CATALOG:
        m, om = monoid_from_name(name), O.oracle_for(name)
        by_label = {om.label(v): v for v in om.elements}
        for i, j in itertools.product(range(m.size), repeat=2):
            want = om.imp(by_label[m.label(i)], by_label[m.label(j)])
            pairs += 1
            if om.label(want) != m.label(m.residuum[i, j]):
                bad.append((name, m.label(i), m.label(j)))
    record(2, not bad, f"{pairs} pairs over {len(CATALOG)} monoids, {len(bad)} mismatches")


# --- 3. im-pr and in-sur on the harness --------------------------------------------

def test_criterion_03_proposition_laws():
    t = time.perf_counter()
    batch = harness_generate(seed=2024, bounds=(4, 4), chain_max=5, count=1000)
    viol = Counter()
    laws = set()
    for inst in batch:
        rep = proposition_audit(inst.F, rng=np.random.default_rng(inst.index))
        laws |= {e.law for e in rep}
        for e in rep.failures:
            viol[e.law] += 1
    dt = time.perf_counter() - t
    items = {law.split(":")[0] for law in laws}
    im = sum(1 for i in items if i.startswith("im-pr"))
    ins = sum(1 for i in items if i.startswith("in-sur"))
    record(3, not viol and dt < 60,
           f"1000 instances, {len(laws)} law checks covering im-pr 1-{im} and in-sur 1-{ins}, "
           f"{sum(viol.values())} violations, {dt:.1f}s (< 60s)")


# --- 4. equality transport ---------------------------------------------------------

def _raws(om, nx, ny):
    for vals in itertools.product(om.elements, repeat=nx * ny):
        yield [list(vals[i * ny:(i + 1) * ny]) for i in range(nx)]


def test_criterion_04_equality_transport():
    stats = Counter()
    bad = []
    for name in ("B", "L3"):
        m, om = monoid_from_name(name), O.oracle_for(name)
        for nx, ny in itertools.product((1, 2), repeat=2):
            # preimage side: every equality on Y, every raw with (1ff) and (3ff)
            for EY in O.all_equalities(om, ny):
                Y = make_lvset(m, O.to_index(om, m, EY))
                crispX = [[om.top if i == j else om.bot for j in range(nx)] for i in range(nx)]
                for F in _raws(om, nx, ny):
                    a1, _, a3 = O.ff_axioms(om, crispX, EY, F)
                    try:
                        EX = preimage_equality(O.to_index(om, m, F), Y)
                    except FuzzTopError:
                        stats["preimage refused"] += 1
                        if a1 and a3:
                            bad.append(("preimage refused", name, EY, F))
                        continue
                    stats["preimage"] += 1
                    EXv = O.to_values(om, m, EX.E)
                    if not (a1 and a3 and O.is_equality(om, EXv)
                            and O.is_greatest(om, EXv, O.preimage_candidates(om, EY, F))):
                        bad.append(("preimage", name, EY, F))
            # image side: every equality on X, every raw
            for EX in O.all_equalities(om, nx):
                X = make_lvset(m, O.to_index(om, m, EX))
                for F in _raws(om, nx, ny):
                    a2 = O.ff_axioms(om, EX, [[om.top] * ny] * ny, F)[1]
                    surj = all(om.join(om.t(F[x][y], F[x][y]) for x in range(nx)) == om.top
                               for y in range(ny))
                    try:
                        EY = image_equality(O.to_index(om, m, F), X, check_1ff=False)
                    except RawViolates2ff:
                        stats["image refused"] += 1
                        if a2:
                            bad.append(("image (2ff) refusal", name, EX, F))
                        continue
                    except NotTopSurjective:
                        stats["image refused"] += 1
                        if surj:
                            bad.append(("image surjectivity refusal", name, EX, F))
                        continue
                    stats["image"] += 1
                    EYv = O.to_values(om, m, EY.E)
                    if not (a2 and surj and O.is_equality(om, EYv)
                            and O.is_least(om, EYv, O.image_candidates(om, EX, F))):
                        bad.append(("image", name, EX, F))
                    if not O.ff_axioms(om, EX, EYv, F)[0]:
                        stats["image fails (1ff)"] += 1
    record(4, not bad,
           f"{stats['preimage']} preimage equalities maximal, {stats['image']} image equalities "
           f"minimal ({stats['image fails (1ff)']} of them leave (1ff) failing), "
           f"{stats['preimage refused'] + stats['image refused']} refusals confirmed; "
           f"{len(bad)} mismatches")


# --- 5. category equations ---------------------------------------------------------

def test_criterion_05_category_equations():
    rng = np.random.default_rng(55)
    names = ["B", "L3", "L4", "L5", "G3", "G4", "L3xL3"]
    n_prod = n_cop = tries = 0
    bad = []
    while (n_prod < 200 or n_cop < 200) and tries < 5000:
        tries += 1
        m = monoid_from_name(names[tries % len(names)])
        sets = [make_lvset(m, random_equality(m, int(rng.integers(1, 4)), rng)) for _ in range(3)]
        X, Y1, Y2 = sets
        F1 = FuzzyFunction(X, Y1, random_fuzzy_matrix(m, X.E, Y1.E, rng, []))
        F2 = FuzzyFunction(X, Y2, random_fuzzy_matrix(m, X.E, Y2.E, rng, []))
        if F1.mu == m.top and F2.mu == m.top:
            P = product_lvset([Y1, Y2])
            pair = P.pair([F1, F2])
            ok = all(np.array_equal(compose(p, pair).F, Fi.F)
                     for p, Fi in zip(P.projections, (F1, F2)))
            n_prod += 1
            if not ok:
                bad.append(("product", tries))
        G1 = FuzzyFunction(Y1, X, random_fuzzy_matrix(m, Y1.E, X.E, rng, []))
        G2 = FuzzyFunction(Y2, X, random_fuzzy_matrix(m, Y2.E, X.E, rng, []))
        C = coproduct_lvset([Y1, Y2])
        cop = C.copair([G1, G2])
        ok = all(np.array_equal(compose(cop, q).F, Gi.F) for q, Gi in zip(C.injections, (G1, G2)))
        n_cop += 1
        if not ok:
            bad.append(("coproduct", tries))
        rep = degree_law_audit(sets, [F1, F2, G1, G2])
        if not rep.ok:
            bad.append(("degree law", tries, rep.failures[0].law))
    record(5, not bad and n_prod >= 200 and n_cop >= 200,
           f"{n_prod} product and {n_cop} coproduct instances bit-exact (products over "
           f"μ=⊤ morphisms), degree laws on {tries} samples; {len(bad)} violations")


# --- 6. topology generation and interior -------------------------------------------

def _interior_laws(T, m):
    A = all_lsubsets(T.space)
    I = interior_values(T, A)
    if not (m.leq[I, A].all() and np.array_equal(interior_values(T, I), I)):
        return False
    fixed = {tuple(r) for r, i in zip(A, I) if np.array_equal(r, i)}
    if fixed != {tuple(r) for r in T.matrix}:
        return False
    # int(A ∧ B) = int A ∧ int B, which also gives monotonicity
    meets = m.meet[A[:, None, :], A[None, :, :]].reshape(-1, A.shape[1])
    lhs = interior_values(T, meets)
    rhs = m.meet[I[:, None, :], I[None, :, :]].reshape(-1, A.shape[1])
    return np.array_equal(lhs, rhs)


def _extensional_rows(om, E, n):
    return [list(A) for A in itertools.product(om.elements, repeat=n) if O.extensional(om, E, list(A))]


def test_criterion_06_topology_generation():
    t = time.perf_counter()
    rng = np.random.default_rng(66)
    cases = Counter()
    bad = []
    kernel = 0
    SAMPLED = 4000      # per monoid, where exhaustive enumeration is out of reach
    for name in ("B", "L3", "L4", "G3", "G4"):
        m, om = monoid_from_name(name), O.oracle_for(name)
        tables = O.lattice_tables(om)
        for n in (1, 2, 3):
            equalities = O.all_equalities(om, n)
            for E in equalities:
                X = make_lvset(m, O.to_index(om, m, E))
                ext = _extensional_rows(om, E, n)
                combos = [c for k in range(5) for c in itertools.combinations(range(len(ext)), k)]
                exhaustive = m.size <= 3 or n <= 2
                if not exhaustive:
                    size = min(len(combos), max(20, SAMPLED // len(equalities)))
                    pick = rng.choice(len(combos), size=size, replace=False)
                    combos = [combos[i] for i in pick]
                for j, c in enumerate(combos):
                    sub = [ext[i] for i in c]
                    T = generate_topology(X, [O.to_index(om, m, s) for s in sub])
                    got = {tuple(O.to_values(om, m, r)) for r in T.matrix}
                    cases["exhaustive" if exhaustive else "sampled"] += 1
                    if got != O.closure_oracle_fast(om, n, sub, tables):
                        bad.append((name, E, sub))
                    if j % 25 == 0:
                        kernel += 1
                        if not _interior_laws(T, m):
                            bad.append(("interior", name, E, sub))
    dt = time.perf_counter() - t
    record(6, not bad,
           f"{cases['exhaustive']} (equality, subbase) cases exhaustive "
           f"(all chains at |X|≤2, Boolean/Ł3/G3 at |X|=3), {cases['sampled']} sampled "
           f"for Ł4/G4 at |X|=3; interior kernel laws on {kernel} topologies; "
           f"{len(bad)} mismatches, {dt:.0f}s")


# --- 7. continuity equivalences ----------------------------------------------------

def test_criterion_07_continuity_equivalences():
    batch = harness_generate(seed=77, count=500)
    viol = Counter()
    at_top = 0
    for inst in batch:
        rep = continuity_audit(inst.F, inst.SX, inst.SY)
        for e in rep.failures:
            viol[e.law] += 1
            at_top += inst.F.mu == inst.monoid.top
    detail = ", ".join(f"{law}: {c}" for law, c in sorted(viol.items())) or "none"
    record(7, not viol,
           f"500 instances; violations {detail} ({at_top} at μ=⊤). (1con)<=>(5con) fails "
           f"whenever μ<⊤ lets F←(1_Y) drop below 1_X, see the frozen counterexample in "
           f"test_ltop")


# --- 8. initial lift ---------------------------------------------------------------

def _probes(inst, tau, rng):
    m, X = inst.monoid, inst.X
    S = LTopSpace(X, tau)
    out = [(S, FuzzyFunction(X, X, X.E, check=False))]
    for T in (discrete_like(X, limit=50_000) if m.size ** X.size <= 50_000 else None,
              indiscrete(X), generate_topology(X, random_subbase(m, X.E, rng, 2))):
        if T is not None:
            out.append((LTopSpace(X, T), FuzzyFunction(X, X, X.E, check=False)))
    for _ in range(4):
        Z = make_lvset(m, random_equality(m, int(rng.integers(1, 4)), rng))
        H = FuzzyFunction(Z, X, random_fuzzy_matrix(m, Z.E, X.E, rng, []))
        sub = list(random_subbase(m, Z.E, rng, int(rng.integers(0, 3))))
        FH = FuzzyFunction(Z, inst.Y, m.compose(H.F, inst.F.F), check=False)
        if rng.random() < 0.75:
            # make F∘H continuous so the factorisation has something to say
            sub.extend(m.join_reduce(m.tnorm[FH.F[None, :, :], inst.SY.matrix[:, None, :]],
                                     axis=-1))
        out.append((LTopSpace(Z, generate_topology(Z, sub)), H))
    return out


def test_criterion_08_initial_lift():
    rng = np.random.default_rng(88)
    n = seed = 0
    bad = []
    premises = 0
    while n < 200:
        for inst in harness_generate(seed=seed, bounds=(3, 3), count=50):
            if inst.F.mu != inst.monoid.top or n >= 200:
                continue
            n += 1
            tau = initial_topology(inst.F, inst.SY)
            probes = _probes(inst, tau, rng)
            for SZ, H in probes:
                FH = FuzzyFunction(H.dom, inst.Y, inst.monoid.compose(H.F, inst.F.F), check=False)
                premises += bool(is_continuous(FH, SZ, inst.SY))
            rep = audit_initial_lift(inst.F, inst.SY, probes)
            if not rep.ok:
                bad.append((seed, inst.index, rep.failures[0].law))
        seed += 1
    record(8, not bad,
           f"{n} instances with μ=⊤, weakest-topology and factorisation checks, "
           f"{premises} probes with F∘H continuous; {len(bad)} violations")


# --- 9. compactness ----------------------------------------------------------------

MV_NAMES = ["B", "L3", "L4", "L5", "L6", "L3xL3"]


def test_criterion_09_compactness():
    spaces = 0
    bad = []
    for inst in harness_generate(seed=99, bounds=(3, 3), catalog=MV_NAMES, count=300):
        for S in (inst.SX, inst.SY):
            if len(S.topology) > 8:
                continue
            spaces += 1
            g = compact_grid(S)
            if not np.array_equal(g, closed_char_grid(S)):
                bad.append(("grid", inst.index))
                continue
            m = S.monoid
            om = O.oracle_for(m.name)
            opens = O.to_values(om, m, S.matrix)
            closed = O.to_values(om, m, S.closed_matrix)
            vals = O.to_values(om, m, list(range(m.size)))
            oc = O.compact_grid_by_subfamilies(om, opens)
            cc = O.closed_grid_by_subfamilies(om, closed)
            for a, b in itertools.product(range(m.size), repeat=2):
                if not (oc[vals[a], vals[b]] == cc[vals[a], vals[b]] == g[a, b]):
                    bad.append(("oracle", inst.index, a, b))
    triples = []
    seed = 0
    while len(triples) < 500:
        for inst in harness_generate(seed=1000 + seed, bounds=(3, 3), count=100, continuous=1.0):
            if is_continuous(inst.F, inst.SX, inst.SY):
                triples.append((inst.F, inst.SX, inst.SY))
        seed += 1
    rep = theorem_suite(triples[:500])
    counts = "; ".join(f"{e.law}: {e.detail}" for e in rep)
    record(9, not bad and rep.ok and spaces > 0,
           f"{spaces} MV spaces with |τ|≤8: open-cover grid = closed-set grid = subfamily "
           f"oracles on every (α,β); theorems over 500 continuous maps, all (α,β,γ) "
           f"including β≰α ({counts}); {len(bad) + len(rep.failures)} violations")


# --- 10. crisp bridge --------------------------------------------------------------

def test_criterion_10_crisp_bridge():
    maps = graphs = 0
    bad = []
    for name in ("B", "G3", "G4", "G5"):
        m, om = monoid_from_name(name), O.oracle_for(name)
        for nx, ny in itertools.product(range(1, 5), repeat=2):
            X, Y = crisp_lvset(m, nx), crisp_lvset(m, ny)
            for f in itertools.product(range(ny), repeat=nx):
                F = from_crisp([Y.elements[i] for i in f], X, Y)
                graph = [[om.top if f[x] == y else om.bot for y in range(ny)] for x in range(nx)]
                maps += 1
                if to_crisp(F) != f or O.to_values(om, m, F.F) != graph:
                    bad.append((name, nx, ny, f))
            # the other direction: every fuzzy function with μ = ⊤ between crisp
            # sets is a graph, enumerated where the raw matrices are few enough
            if m.size ** (nx * ny) > 20_000:
                continue
            crispX = O.to_values(om, m, X.E)
            crispY = O.to_values(om, m, Y.E)
            for F in _raws(om, nx, ny):
                if not (all(O.ff_axioms(om, crispX, crispY, F))
                        and all(max(r, key=lambda v: v) == om.top for r in F)):
                    continue
                graphs += 1
                G = FuzzyFunction(X, Y, O.to_index(om, m, F))
                back = from_crisp([Y.elements[i] for i in to_crisp(G)], X, Y)
                if back != G:
                    bad.append((name, "graph", F))
    record(10, not bad,
           f"{maps} maps f -> F -> f and {graphs} fuzzy functions F -> f -> F over "
           f"B, G3, G4, G5 with |X|,|Y| ≤ 4; {len(bad)} mismatches")


# --- 11. CLI -----------------------------------------------------------------------

DOC_VERDICTS = [("minimal.json", 0, None), ("bad_equality.json", 1, "set X: L-valued equality"),
                ("undefined_reference.json", 2, "UnknownReference")]

ROUND_TRIP = [["degrees", "F"], ["compose", "G", "F"], ["image", "F", "A"], ["preimage", "F", "B"],
              ["eq-preimage", "F"], ["eq-image", "F"], ["product", "X", "Y"],
              ["coproduct", "X", "Y"], ["topo-generate", "TY"], ["continuity", "F", "TX", "TY"],
              ["initial", "F", "TY"], ["quotient", "TY", "0", "0"], ["compact-spectrum", "TY"],
              ["perfect", "F", "TX", "TY", "1", "1"], ["homeo-degree", "F", "TX", "TY"]]


def _cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def test_criterion_11_cli():
    problems = []
    doc = load_document(DOCS / "l3_example.json")
    for argv in ROUND_TRIP:
        rep = run_command(doc, argv[0], argv[1:])
        text = emit_machine(rep)
        if parse_report(text) != rep or emit_machine(parse_report(text)) != text:
            problems.append(("round trip", argv[0]))
    runs = [_cli("harness", "--seed", 11, "--cap", 200, "--format", "machine") for _ in range(2)]
    if runs[0] != runs[1]:
        problems.append("harness replay differs")
    digest = json.loads(runs[0][1])["data"]["sha256"]
    if digest != hashlib.sha256(batch_bytes(harness_generate(11, count=200))).hexdigest():
        problems.append("harness digest differs from the library batch")
    for fname, code, what in DOC_VERDICTS:
        got, out = _cli("validate", "--doc", DOCS / fname, "--format", "machine")
        rep = json.loads(out)
        if got != code or rep["exit_code"] != code:
            problems.append((fname, "exit", got))
        failing = [c["law"] for c in rep["checks"] if not c["passed"]]
        if code == 1 and failing != [what]:
            problems.append((fname, failing))
        if code == 2 and (rep["error"] or {}).get("type") != what:
            problems.append((fname, rep["error"]))
    record(11, not problems,
           f"{len(ROUND_TRIP)} command reports round-trip, harness replay byte-identical, "
           f"3 reference documents exit 0/1/2 as documented; problems {problems or 'none'}")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
