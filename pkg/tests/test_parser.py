import shutil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubnull.lang.loader import Loader, stdlib_root
from cubnull.lang.parser import ParseError, parse_module, parse_term
from cubnull.lang.printer import show, show_module
from cubnull.workspace import Workspace

STDLIB = sorted(stdlib_root().rglob("*.ct"))

names = st.sampled_from(["x", "y", "f", "g", "Nat", "tt", "U0", "refl"])
atoms = st.one_of(names, st.integers(0, 20).map(str))


def _extend(inner):
    bound = st.sampled_from(["x", "y", "z"])
    return st.one_of(
        st.tuples(inner, inner).map(lambda p: f"{p[0]} ({p[1]})"),
        st.tuples(bound, inner).map(lambda p: f"\\{p[0]}. {p[1]}"),
        st.tuples(bound, inner, inner).map(lambda p: f"\\({p[0]} : {p[1]}). {p[2]}"),
        st.tuples(bound, inner, inner).map(lambda p: f"({p[0]} : {p[1]}) -> {p[2]}"),
        st.tuples(bound, inner, inner).map(lambda p: f"({p[0]} : {p[1]}) * {p[2]}"),
        st.tuples(inner, inner).map(lambda p: f"({p[0]}) -> {p[1]}"),
        st.tuples(inner, inner).map(lambda p: f"({p[0]}, {p[1]})"),
        inner.map(lambda t: f"({t}).1"),
        inner.map(lambda t: f"({t}).2"),
        st.tuples(inner, inner, inner).map(lambda p: f"Path ({p[0]}) ({p[1]}) ({p[2]})"),
        st.tuples(bound, inner, inner, inner).map(
            lambda p: f"let {p[0]} : {p[1]} = {p[2]} in {p[3]}"),
        st.tuples(inner, st.sampled_from(["0", "1", "i", "i /\\ j", "i \\/ j"])).map(
            lambda p: f"({p[0]}) {p[1]}"),
    )


terms = st.recursive(atoms, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(terms)
def test_term_print_parse_fixpoint(src):
    t = parse_term(src)
    printed = show(t)
    assert parse_term(printed) == t
    assert show(parse_term(printed)) == printed


@pytest.mark.parametrize("path", STDLIB, ids=lambda p: p.name)
def test_stdlib_module_roundtrip(path):
    m = parse_module(path.read_text())
    text = show_module(m)
    assert parse_module(text) == m
    assert show_module(parse_module(text)) == text


@pytest.mark.parametrize("name", ["trunc", "nat", "hits", "mp"])
def test_printed_file_elaborates_identically(tmp_path, name):
    src = stdlib_root() / f"{name}.ct"
    original = Loader(lint_labels=False)
    r1 = original.load(src)
    # the printed copy sits next to copies of its imports
    for dep in stdlib_root().glob("*.ct"):
        shutil.copy(dep, tmp_path / dep.name)
    (tmp_path / f"{name}.ct").write_text(show_module(parse_module(src.read_text())))
    printed = Loader(lint_labels=False)
    r2 = printed.load(tmp_path / f"{name}.ct")
    assert r1.ok and r2.ok and r1.decls == r2.decls
    for d in r1.decls:
        if d in original.session.hits:
            assert original.session.hits[d] == printed.session.hits[d]
            continue
        a, b = original.session.defs[d], printed.session.defs[d]
        assert (a.ty, a.term) == (b.ty, b.term), d


@pytest.mark.parametrize("bad", ["def x : Nat =", "def : Nat = 0", "(a, b", "\\x.", "def x : = 0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_module(bad) if bad.startswith("def") else parse_term(bad)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_module("def a : Nat = 0\ndef b : Nat = )")
    assert "2:" in str(e.value)


def test_hit_declaration_polynomial():
    ws = Workspace(imports=["hits"])
    poly = ws.session.hits["FreeFib"].polynomial()
    assert [s["con"] for s in poly["summands"]] == ["finc", "hcomp"]
    assert poly["summands"][1]["args"] == ["Prop", "2"]
    assert poly["params"] == ["A"]


def test_user_hit_with_boundary():
    ws = Workspace(imports=["prelude"])
    ws.load("""
hit Seg where
  | left
  | right
  | seg @ i [i = 0 -> left, i = 1 -> right]
""")
    assert ws.conv("Seg", "seg 0", "left")
    assert ws.conv("Seg", "seg 1", "right")
    assert not ws.conv("Seg", "seg 1", "left")
    poly = ws.session.hits["Seg"].polynomial()
    assert poly["summands"][2]["reductions"] == 2
