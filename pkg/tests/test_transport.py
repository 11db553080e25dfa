import pytest

from corpus import FORMERS, GENERIC_ONLY, k_values

K_VALUES = k_values()


def test_k_corpus_size():
    assert len(K_VALUES) >= 100


@pytest.mark.parametrize("v", K_VALUES)
def test_k_transport_top_is_identity(ws, v):
    assert ws.conv("KT", f"transp (\\_. KT) top ({v})", v)


@pytest.mark.parametrize("ty,v", FORMERS, ids=[f"{t}|{v}" for t, v in FORMERS])
def test_transport_top_closed(ws, ty, v):
    assert ws.conv(ty, f"transp (\\_. {ty}) top ({v})", v)
    assert ws.conv(ty, f"transp1 (\\_. {ty}) top ({v})", v)


@pytest.mark.parametrize("ty", sorted({t for t, _ in FORMERS} | set(GENERIC_ONLY)))
def test_transport_top_generic(ws, ty):
    assert ws.conv(f"({ty}) -> {ty}", f"\\(x : {ty}). transp (\\_. {ty}) top x", "\\x. x")


def test_transport_top_glue(ws):
    ty = "PathP (\\i. ua (idEquiv Nat) i) 3 3"
    g = "glue [i = 0 -> 3, i = 1 -> 3] 3"
    assert ws.conv(ty, f"\\i. transp (\\_. ua (idEquiv Nat) i) top ({g})", f"\\i. {g}")


@pytest.fixture(scope="module")
def succ_pred(ws):
    ws.load(r"""
def sp (s : Sum Unit Nat) : Nat = case (\_. Nat) (\_. 0) (\n. suc n) s
def ps (n : Nat) : Sum Unit Nat = natrec (\_. Sum Unit Nat) (inl tt) (\m _. inr m) n
def succPred : Equiv (Sum Unit Nat) Nat =
  isoToEquiv sp ps
    (\n. natrec (\k. Path Nat (sp (ps k)) k) (refl 0) (\m _. refl (suc m)) n)
    (\s. case (\t. Path (Sum Unit Nat) (ps (sp t)) t) (\u. refl (inl tt)) (\n. refl (inr n)) s)
""")
    return "succPred"


def test_transport_along_ua_applies_the_equivalence(ws, succ_pred):
    assert ws.normalize(f"transp (\\i. ua {succ_pred} i) bot (inr 4)", "Nat") == "5"
    assert ws.normalize(f"transp (\\i. ua {succ_pred} i) bot (inl tt)", "Nat") == "0"


def test_transport_nonconstant_line_is_not_identity(ws, succ_pred):
    assert not ws.conv("Nat", f"transp (\\i. ua {succ_pred} i) bot (inr 4)", "4")
