import pytest

import kleene_ref as km
from cubnull.workspace import Workspace

# (name, program); all stay small enough for unary numerals
PROGRAMS = [
    ("identity", []),
    ("successor", [km.inc(0, 1)]),
    ("plus-two", [km.inc(0, 1), km.inc(0, 2)]),
    ("predecessor", [km.jz(0, 1)]),
    ("drain-r0", [km.jz(0, 2), km.inc(1, 0)]),
    ("loop-inc", [km.inc(0, 0)]),
    ("loop-r1", [km.jz(1, 0)]),
]
BOUND = 12


def triples():
    out = []
    for name, prog in PROGRAMS:
        e = km.encode(prog)
        for x in range(4):
            t = km.halting_time(prog, x, BOUND)
            if t is None:
                for steps in (0, 1, 3, 6):
                    out.append((name, e, x, km.pair(steps, x), False))
                continue
            res = km.run(prog, x, t)[1][0]
            out.append((name, e, x, km.pair(t, res), True))
            out.append((name, e, x, km.pair(t + 1, res), True))
            out.append((name, e, x, km.pair(t, res + 1), False))
            if t > 0:
                out.append((name, e, x, km.pair(t - 1, res), False))
    return out


TRIPLES = triples()


@pytest.fixture(scope="module")
def kws():
    return Workspace(imports=["ct", "mp"])


def test_reference_pairing_roundtrip():
    for z in range(500):
        assert km.pair(*km.unpair(z)) == z
    assert [km.unpair(z) for z in range(4)] == [(0, 0), (1, 0), (0, 1), (2, 0)]
    assert km.encode([km.inc(0, 1)]) == 11
    for _, prog in PROGRAMS:
        assert km.decode(km.encode(prog)) == prog


def test_reference_semantics():
    assert km.halting_time([km.inc(0, 0)], 0, 50) is None
    assert km.run([km.jz(0, 2), km.inc(1, 0)], 3, 20) == (2, [0, 3])
    assert km.run([km.inc(0, 1), km.inc(0, 2)], 5, 9) == (2, [7, 0])


def test_triple_corpus():
    assert len(TRIPLES) >= 50
    assert any(not ok for *_, ok in TRIPLES)
    assert any(name.startswith("loop") for name, *_ in TRIPLES)


@pytest.mark.parametrize("name,e,x,z,expected", TRIPLES,
                         ids=[f"{n}-x{x}-z{z}" for n, _, x, z, _ in TRIPLES])
def test_T_agrees_with_reference(kws, name, e, x, z, expected):
    assert km.T(km.decode(e), x, z) == expected
    want = "inl tt" if expected else "inr tt"
    assert kws.normalize(f"TB {e} {x} {z}", "Bool") == want
    assert kws.normalize(f"U {z}", "Nat") == str(km.unpair(z)[1])


def test_decT_is_a_decision(kws):
    assert kws.normalize("decT 11 3 (pair 1 4)", "Dec (T 11 3 (pair 1 4))").startswith("inl")
    assert kws.normalize("decT 1 0 (pair 3 0)", "Dec (T 1 0 (pair 3 0))").startswith("inr")
    assert kws.normalize("decTTest", "Bool") == "inl tt"


def test_object_pairing_matches_reference(kws):
    for a, b in [(0, 0), (3, 2), (1, 6)]:
        assert kws.normalize(f"pair {a} {b}", "Nat") == str(km.pair(a, b))
    for z in (0, 7, 40):
        a, b = km.unpair(z)
        assert kws.normalize(f"unpair {z}", "Nat * Nat") == f"({a}, {b})"


def test_statements_check(kws):
    for name, ty in [("CT", "U0"), ("MP", "U0")]:
        assert kws.checks(name, ty)
    assert kws.checks("ctIdAt3", "(z : Nat) * T 0 3 z * Path Nat (U z) 3")


def test_mp_least_witness(kws):
    table = [kws.normalize(f"fromTwo {n}", "Bool") == "inl tt" for n in range(8)]
    least = table.index(True)
    assert least == 2
    assert kws.normalize("mpLeastTestValue", "Nat") == str(least)
    # alpha with first witness 2 given a later witness 5
    out = kws.normalize("(mpLeast fromTwo).1 (inc (5, tt))", "LeastWitness fromTwo")
    assert out.startswith("(2,")
