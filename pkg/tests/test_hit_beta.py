from collections import Counter

import pytest

from corpus import beta_cases, negative_cases

CASES = beta_cases()


def test_corpus_size_and_coverage():
    assert len(CASES) >= 200
    fams = Counter(c.family.split(".")[0] for c in CASES)
    assert set(fams) == {"LFR", "Trunc", "Susp", "Cone", "K", "JB"}


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.id)
def test_computation_rule(ws, case):
    assert ws.conv(case.ty, case.lhs, case.rhs)


@pytest.mark.parametrize("case", negative_cases(), ids=lambda c: c.id)
def test_wrong_equation_rejected(ws, case):
    assert not ws.conv(case.ty, case.lhs, case.rhs)


def test_sq_endpoints_normalize(ws):
    assert ws.normalize("sq (inc 1) (inc 2) 0", "Trunc Nat") == "inc {Nat} 1"
    assert ws.normalize("sq (inc 1) (inc 2) 1", "Trunc Nat") == "inc {Nat} 2"


def test_pastecone_on_apex_is_stuck(ws):
    out = ws.normalize("pastecone {KA} {KB} (inl tt) (apex {Nat}) (\\n. leaf)", "KT")
    assert out.startswith("pastecone")


def test_hcomp_empty_system_not_reduced(ws):
    assert ws.normalize("hcomp (Trunc Nat) [0 = 1 -> \\k. inc 4] (inc 4)", "Trunc Nat").startswith("hcomp")
