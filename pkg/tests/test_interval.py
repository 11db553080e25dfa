from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cubnull.interval import (
    BOT, TOP, CAnd, CBot, CEq, COr, CTop, Cof, IJoin, IMeet, IOne, IVar, IZero,
    ONE, ZERO, IvElem, ScopeError, all_cofs, all_faces, cof_entails, cof_forall,
    cof_normalize, entailment_matrix, iv_eq, iv_normalize, iv_term,
)

i, j, k = IVar(0), IVar(1), IVar(2)


def truth(t, point):
    if isinstance(t, IZero):
        return 0
    if isinstance(t, IOne):
        return 1
    if isinstance(t, IVar):
        return point[t.index]
    a, b = truth(t.left, point), truth(t.right, point)
    return min(a, b) if isinstance(t, IMeet) else max(a, b)


def table(t, n):
    return tuple(truth(t, p) for p in product((0, 1), repeat=n))


def iv_terms(n):
    leaves = st.sampled_from([IZero(), IOne()] + [IVar(v) for v in range(n)])
    return st.recursive(leaves, lambda s: st.builds(IMeet, s, s) | st.builds(IJoin, s, s),
                        max_leaves=8)


def test_unit_and_idempotence():
    assert iv_normalize(IMeet(i, IOne()), 1) == IvElem.var(0)
    assert iv_normalize(IJoin(i, i), 1) == IvElem.var(0)
    assert iv_normalize(IMeet(i, IZero()), 1) == ZERO
    assert iv_normalize(IJoin(i, IOne()), 1) == ONE


def test_distributivity_against_truth_table():
    lhs = IMeet(i, IJoin(j, k))
    rhs = IJoin(IMeet(i, j), IMeet(i, k))
    assert table(lhs, 3) == table(rhs, 3)
    assert iv_normalize(lhs, 3) == iv_normalize(rhs, 3)
    assert iv_normalize(lhs, 3).clauses == ((0, 1), (0, 2))


def test_iv_eq_examples():
    assert iv_eq(i, i, 1)
    assert iv_eq(IMeet(i, j), IMeet(j, i), 2)
    assert not iv_eq(IJoin(i, j), i, 2)
    # witness i=0, j=1
    assert truth(IJoin(i, j), (0, 1)) != truth(i, (0, 1))


def test_scope_error():
    with pytest.raises(ScopeError):
        iv_normalize(IVar(2), 2)
    with pytest.raises(ScopeError):
        cof_normalize(CEq(IVar(1), 0), 1)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 4).flatmap(lambda n: st.tuples(st.just(n), iv_terms(n), iv_terms(n))))
def test_iv_eq_matches_truth_tables(args):
    n, s, t = args
    assert iv_eq(s, t, n) == (table(s, n) == table(t, n))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4).flatmap(lambda n: st.tuples(st.just(n), iv_terms(n))))
def test_normalize_idempotent_and_roundtrip(args):
    n, t = args
    e = iv_normalize(t, n)
    assert iv_normalize(iv_term(e), n) == e
    assert table(iv_term(e), n) == table(t, n)


def test_cof_examples():
    assert cof_normalize(CAnd(CEq(i, 0), CEq(i, 1)), 1) == BOT
    assert cof_normalize(CEq(IMeet(i, j), 1), 2) == Cof.face({0: 1, 1: 1})
    phi = COr(CEq(i, 0), CEq(j, 1))
    assert cof_normalize(CAnd(CTop(), phi), 2) == cof_normalize(phi, 2)
    assert cof_entails(CEq(i, 0), COr(CEq(i, 0), CEq(i, 1)), 1)
    assert not cof_entails(CTop(), COr(CEq(i, 0), CEq(i, 1)), 1)
    assert cof_entails(CAnd(CEq(i, 0), CEq(j, 1)), CEq(j, 1), 2)
    assert cof_normalize(CEq(IJoin(i, j), 0), 2) == Cof.face({0: 0, 1: 0})
    assert cof_normalize(CEq(IMeet(i, j), 0), 2) == Cof.of([[(0, 0)], [(1, 0)]])


def test_forall_examples():
    # variables: j = 0, bound i = 1
    assert cof_forall(CEq(IVar(0), 0), 1) == Cof.face({0: 0})
    assert cof_forall(CEq(IVar(1), 0), 1) == BOT
    phi = CAnd(COr(CEq(IVar(1), 0), CEq(IVar(0), 1)), COr(CEq(IVar(1), 1), CEq(IVar(0), 1)))
    assert cof_forall(phi, 1) == Cof.face({0: 1})
    assert cof_forall(COr(CEq(IVar(1), 0), CEq(IVar(1), 1)), 1) == BOT


def geometric(c: Cof, point):
    """Evaluate at a point of {0, 1/2, 1}^n (None = 1/2)."""
    return any(all(point[v] == e for v, e in f) for f in c.clauses)


def test_cof_counts():
    assert [len(all_cofs(n)) for n in range(3)] == [2, 5, 48]


def test_entails_oracle_two_vars():
    cofs = all_cofs(2)
    points = list(product((0, None, 1), repeat=2))
    for a in cofs:
        for b in cofs:
            sem = all(geometric(b, p) for p in points if geometric(a, p))
            assert a.entails(b) == sem


def test_entailment_matrix_agrees_with_scalar():
    cofs = all_cofs(2)
    m = entailment_matrix(cofs, cofs, 2)
    for x, a in enumerate(cofs):
        for y, b in enumerate(cofs):
            assert bool(m[x, y]) == a.entails(b)


def test_forall_property_small():
    for c in all_cofs(2):
        q = c.forall(1)
        assert q.entails(c.restrict({1: 0}))
        assert q.entails(c.restrict({1: 1}))
        assert q.entails(c)
        # largest: any cof in var 0 entailing c at both endpoints and at var 1 itself
        for r in all_cofs(1):
            if r.entails(c):
                assert r.entails(q)


def test_subst_matches_semantics():
    c = Cof.of([[(0, 1), (1, 0)], [(2, 1)]])
    s = c.subst({0: IvElem.of([[1, 2]]), 2: ZERO})
    # (j/\k = 1 and j = 0) or bot  ->  bot
    assert s == BOT
    s2 = c.subst({1: IvElem.var(0)})
    assert s2 == Cof.face({2: 1})


def test_normalize_mutual_entailment():
    for c in all_cofs(2):
        t = cof_normalize(c, 2)
        assert t.entails(c) and c.entails(t)
