import time

import pytest

from cubnull.lang.loader import check_paths, lemma_map, stdlib_root
from cubnull.workspace import Workspace


@pytest.fixture(scope="module")
def checked():
    t0 = time.perf_counter()
    loader = check_paths([stdlib_root()])
    return loader, time.perf_counter() - t0


def test_stdlib_checks_within_budget(checked):
    loader, secs = checked
    errs = [d.render() for r in loader.results.values() for d in r.diagnostics]
    assert errs == []
    assert secs <= 60


def test_every_definition_labelled(checked):
    loader, _ = checked
    for res in loader.results.values():
        assert set(res.decls) <= set(res.labels) | set(loader.session.hits)


@pytest.mark.parametrize("key,kind", [
    ("loc.ct:locBContr", "Cor"), ("null.ct:nullPi", "Prop"), ("ct.ct:CT", "Def"),
    ("null.ct:nullSigma", "Prop"), ("null.ct:nullId", "Prop"), ("loc.ct:locPreservesProp", "Prop"),
    ("loc.ct:truncNullIsProp", "Cor"), ("universe-null.ct:universeNull", "Prop"),
    ("mp.ct:mpLeast", None), ("kleene.ct:decT", None),
])
def test_lemma_map(checked, key, kind):
    m = lemma_map(checked[0])
    assert key in m
    if kind:
        assert m[key].startswith(kind + ":")


@pytest.fixture(scope="module")
def mws():
    return Workspace(imports=["modality/loc", "modality/universe-null", "mp"])


@pytest.mark.parametrize("name,ty", [
    ("nullPi", "{A : U0} -> {B : A -> U0} -> {X : U0} -> {Y : X -> U0} -> "
               "((x : X) -> isNull A B (Y x)) -> isNull A B ((x : X) -> Y x)"),
    ("nullUnit", "(A : U0) -> (B : A -> U0) -> isNull A B Unit"),
    ("ubUnit", "(A : U0) -> (B : A -> U0) -> UB A B"),
])
def test_statement_types(mws, name, ty):
    assert mws.checks(name, ty)


def test_beta_by_conversion(mws):
    # locRec and truncRec compute on their units by refl, not by a proof
    assert mws.checks("truncRecBeta", None)
    assert mws.checks("locTruncRecBeta", None)
    assert mws.checks("\\(n : Nat). refl {Trunc Nat} (inc n)",
                      "(n : Nat) -> Path (Trunc Nat) (truncMap (\\m. m) (inc n)) (inc n)")


def test_wrong_statement_rejected(mws):
    assert not mws.checks("nullUnit", "(A : U0) -> (B : A -> U0) -> isNull A B Nat")
    assert not mws.checks("refl (inc 1)", "Path (Trunc Nat) (inc 1) (inc 2)")
