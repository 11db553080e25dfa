"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Every comparison is exact.  The only tolerances are wall-clock budgets,
pinned below.
"""

import time

import pytest

import kleene_ref as km
from corpus import FIXTURES, FORMERS, GENERIC_ONLY, IMPORTS, beta_cases, k_values
from cubnull.cube.suites import run_suite
from cubnull.lang.loader import check_paths, lemma_map, stdlib_root
from cubnull.workspace import Workspace
from test_kleene import TRIPLES

STDLIB_BUDGET_S = 60.0
COF_BUDGET_S = 120.0
MIN_BETA = 200
MIN_K_VALUES = 100
MIN_TRIPLES = 50


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def _all_ok(records):
    bad = [r.name for r in records if not r.ok]
    return not bad and bool(records), bad


def test_criterion_1_stdlib_gate(report):
    t0 = time.perf_counter()
    loader = check_paths([stdlib_root()])
    secs = time.perf_counter() - t0
    errors = [d.render() for r in loader.results.values() for d in r.diagnostics]
    lemmas = lemma_map(loader)
    required = ["null.ct:nullPi", "null.ct:nullSigma", "null.ct:nullId",
                "loc.ct:locPreservesProp", "loc.ct:locBContr", "loc.ct:truncNull",
                "loc.ct:truncNullIsProp", "loc.ct:truncNullIsNull",
                "universe-null.ct:universeNull"]
    missing = [k for k in required if k not in lemmas]
    ok = not errors and not missing and secs <= STDLIB_BUDGET_S
    report(1, ok, f"{len(loader.results)} files, {len(lemmas)} labelled definitions, "
                  f"{secs:.1f}s (budget {STDLIB_BUDGET_S:.0f}s), errors={len(errors)}, "
                  f"missing={missing}")


@pytest.fixture(scope="module")
def ws():
    w = Workspace(imports=IMPORTS)
    w.load(FIXTURES)
    return w


def test_criterion_2_hit_beta(ws, report):
    cases = beta_cases()
    failed = [c.id for c in cases if not ws.conv(c.ty, c.lhs, c.rhs)]
    fams = sorted({c.family.split(".")[0] for c in cases})
    ok = len(cases) >= MIN_BETA and not failed
    report(2, ok, f"{len(cases)} instances over {fams}, failures={len(failed)} {failed[:3]}")


def test_criterion_3_transport_identity(ws, report):
    vals = k_values()
    k_bad = [v for v in vals if not ws.conv("KT", f"transp (\\_. KT) top ({v})", v)]
    f_bad = [t for t, v in FORMERS if not ws.conv(t, f"transp (\\_. {t}) top ({v})", v)]
    tys = sorted({t for t, _ in FORMERS} | set(GENERIC_ONLY))
    g_bad = [t for t in tys
             if not ws.conv(f"({t}) -> {t}", f"\\(x : {t}). transp (\\_. {t}) top x", "\\x. x")]
    g = "glue [i = 0 -> 3, i = 1 -> 3] 3"
    glue_ok = ws.conv("PathP (\\i. ua (idEquiv Nat) i) 3 3",
                      f"\\i. transp (\\_. ua (idEquiv Nat) i) top ({g})", f"\\i. {g}")
    ok = len(vals) >= MIN_K_VALUES and not (k_bad or f_bad or g_bad) and glue_ok
    report(3, ok, f"K values {len(vals) - len(k_bad)}/{len(vals)}, closed formers "
                  f"{len(FORMERS) - len(f_bad)}/{len(FORMERS)}, generic {len(tys) - len(g_bad)}/"
                  f"{len(tys)}, Glue={'ok' if glue_ok else 'FAIL'}")


def test_criterion_4_cof_solver_vs_sieves(report):
    t0 = time.perf_counter()
    recs = run_suite("cof-completeness", 3)
    secs = time.perf_counter() - t0
    ok, bad = _all_ok(recs)
    strict = any(r.name.startswith("sieve((i=0)\\/(i=1)) strictly below") and r.ok for r in recs)
    ok = ok and strict and secs <= COF_BUDGET_S
    report(4, ok, f"{len(recs)} records, vars <= 3, dims <= 3, strict non-entailment "
                  f"{'seen' if strict else 'MISSING'}, {secs:.1f}s (budget {COF_BUDGET_S:.0f}s) {bad}")


def test_criterion_5_interval_algebra(report):
    recs = run_suite("iv-eq", 4)
    ok, bad = _all_ok(recs)
    box = {r.name: r for r in run_suite("box", 3)}
    counts = {n: box[f"|Box({n},1)|"].size for n in (1, 2, 3)}
    ok = ok and counts == {1: 3, 2: 6, 3: 20} and all(box[f"|Box({n},1)|"].ok for n in (1, 2, 3))
    report(5, ok, f"ivEq vs truth tables up to 4 vars ({len(recs)} records), "
                  f"|Box(n,1)| = {counts} {bad}")


def test_criterion_6_wprime(report):
    recs = run_suite("wprime", 1, 3)
    ok, bad = _all_ok(recs)
    names = {r.name for r in recs}
    needed = {"nat: restriction case split", "nat: no reducible head", "nat: fold unique (brute force)",
              "cone: restriction case split", "cone: no reducible head",
              "cone: fold unique (brute force)"}
    ok = ok and needed <= names
    report(6, ok, f"{len(recs)} records on nat (no reductions) and cone (firing reduction) {bad}")


def test_criterion_7_discrete_and_adjunctions(report):
    recs = run_suite("discrete", 2)
    ok, bad = _all_ok(recs)
    names = [r.name for r in recs]
    has = lambda p: any(n.startswith(p) for n in names)  # noqa: E731
    ok = ok and has("Delta(") and has("I not discrete") and has("evalAt0") and has("Hom(")
    report(7, ok, f"{len(recs)} records: Delta discrete, I not discrete, evalAt0 o Delta, "
                  f"adjunction counts {bad}")


def test_criterion_8_kleene(report):
    kws = Workspace(imports=["ct", "mp"])
    disagree = []
    for name, e, x, z, expected in TRIPLES:
        got = kws.normalize(f"TB {e} {x} {z}", "Bool") == "inl tt"
        ref = km.T(km.decode(e), x, z)
        u_ok = kws.normalize(f"U {z}", "Nat") == str(km.unpair(z)[1])
        if not (got == ref == expected and u_ok):
            disagree.append((name, e, x, z))
    negatives = sum(1 for *_, exp in TRIPLES if not exp)
    nonhalting = sum(1 for n, *_ in TRIPLES if n.startswith("loop"))
    stmts = kws.checks("CT", "U0") and kws.checks("MP", "U0")
    mp = kws.normalize("mpLeastTestValue", "Nat")
    ok = len(TRIPLES) >= MIN_TRIPLES and not disagree and nonhalting > 0 and stmts and mp == "2"
    report(8, ok, f"{len(TRIPLES)} triples ({negatives} negative, {nonhalting} non-halting), "
                  f"disagreements={len(disagree)}, CT/MP check={stmts}, MP least witness={mp}")
