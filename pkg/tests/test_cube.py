import pytest

from cubnull import interval as iv
from cubnull.cube.box import BoundError, BoxCat, compose, face_map, identity, projection
from cubnull.cube.presheaf import (
    delta_const, eval_at0, interval, is_discrete, nabla, nat_transformations, paths_at_level0,
    representable,
)
from cubnull.cube.sieve import cof_sieve, is_sieve, maximal_sieve, sieve_masks
from cubnull.cube.suites import run_suite
from cubnull.cube.wprime import build_wprime, check_case_split, depth_of
from cubnull.cube import suites

B2 = BoxCat(2)


def test_hom_counts():
    box = BoxCat(3)
    assert [len(box.hom(n, 1)) for n in range(4)] == [2, 3, 6, 20]
    assert len(box.hom(0, 1)) == 2
    assert len(box.hom(2, 2)) == 36


def test_bound():
    with pytest.raises(BoundError):
        BoxCat(4)
    with pytest.raises(BoundError):
        B2.hom(3, 1)


def test_laws_d2_exhaustive():
    res = B2.check_laws()
    assert res["ok"] and res["quadruples_skipped"] == 0


def test_face_and_projection():
    for n in range(2):
        for e in (0, 1):
            assert compose(projection(n), face_map(n, n, e)) == identity(n)


def test_interval_levels():
    I = interval(B2)
    assert len(I(0)) == 2 and len(I(1)) == 3
    assert I.check_functorial()["ok"]


def test_sieves_basic():
    assert cof_sieve(B2, iv.CBot(), 1).maps == frozenset()
    assert cof_sieve(B2, iv.CTop(), 1) == maximal_sieve(B2, 1)
    s = cof_sieve(B2, iv.COr(iv.CEq(iv.IVar(0), 0), iv.CEq(iv.IVar(0), 1)), 1)
    assert s < maximal_sieve(B2, 1) and is_sieve(B2, s)
    m = cof_sieve(B2, iv.CEq(iv.IMeet(iv.IVar(0), iv.IVar(1)), 1), 2)
    assert m == cof_sieve(B2, iv.Cof.face({0: 1, 1: 1}), 2)


def test_masks_agree_with_direct_sieves():
    cofs = iv.all_cofs(2)
    masks, _ = sieve_masks(B2, cofs, 2)
    sieves = [cof_sieve(B2, c, 2) for c in cofs]
    for a in range(len(cofs)):
        for b in range(len(cofs)):
            assert (int(masks[a]) & ~int(masks[b]) == 0) == (sieves[a] <= sieves[b])


def test_forall_against_sieves():
    # forall i.phi is the largest cof in j below phi[i:=0], phi[i:=1] and phi
    box = BoxCat(2)
    for c in iv.all_cofs(2):
        q = c.forall(1)
        s_q = cof_sieve(box, q, 2)
        for e in (0, 1):
            assert s_q <= cof_sieve(box, c.restrict({1: e}), 2)
        assert s_q <= cof_sieve(box, c, 2)


def test_delta_nabla():
    S = ["a", "b", "c"]
    D = delta_const(B2, S)
    assert eval_at0(D) == S and is_discrete(D)
    assert len(nabla(B2, S)(1)) == 9
    assert not is_discrete(interval(B2))
    assert paths_at_level0(interval(B2)) == 3


def test_adjunction_counts_small():
    I = interval(B2)
    assert len(nat_transformations(I, nabla(B2, [0, 1]))) == 2 ** 2
    assert len(nat_transformations(delta_const(B2, [0, 1]), I)) == 2 ** 2
    assert len(nat_transformations(representable(B2, 1), I)) == 3  # Yoneda


def test_wprime_leaves_and_depth():
    box = BoxCat(1)
    w = build_wprime(suites.cone_polynomial(box), 3)
    assert check_case_split(w)["ok"]
    assert max(depth_of(t) for t in w.levels[1]) == 3
    assert all(not (t.head[0] == 1 and not any(t.head[1])) for t in w.levels[1])


@pytest.mark.parametrize("name", ["box", "interval", "iv-eq", "discrete", "null", "wprime"])
def test_suite_passes(name):
    dim = 2 if name in ("box", "interval") else None
    records = run_suite(name, dim)
    assert records and all(r.ok for r in records), [r for r in records if not r.ok]
