"""Module loading: import resolution, checking order and diagnostics."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..kernel.elab import Elab, ElabError
from ..kernel.session import Session, active, new_session
from . import ast as A
from .parser import ParseError, parse_module

STDLIB_ENV = "CUBNULL_STDLIB"


def stdlib_root() -> Path:
    env = os.environ.get(STDLIB_ENV)
    if env:
        return Path(env).resolve()
    return (Path(__file__).resolve().parent.parent / "lib").resolve()


@dataclass
class Diagnostic:
    severity: str           # "error" | "warning"
    file: str
    line: Optional[int]
    col: Optional[int]
    message: str
    expected: Optional[str] = None   # normal forms, for mismatches
    actual: Optional[str] = None

    def render(self) -> str:
        loc = self.file
        if self.line is not None:
            loc += f":{self.line}:{self.col}"
        return f"{loc}: {self.severity}: {self.message}"

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class FileResult:
    path: Path
    decls: list = field(default_factory=list)        # names in order
    labels: dict = field(default_factory=dict)       # name -> label
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


class LoadError(Exception):
    """An unreadable or unresolvable file (usage/I-O failure)."""


class Loader:
    """Checks files into one session.  Each file is checked once; imports
    are checked before the importing file."""

    def __init__(self, session: Session | None = None, lint_labels: bool | None = None):
        self.session = session or new_session()
        self.results: dict[Path, FileResult] = {}
        self.order: list[Path] = []
        self._stack: list[Path] = []
        self.lint_labels = lint_labels

    def resolve(self, imp: str, importer: Path) -> Path:
        rel = Path(*imp.split("/")).with_suffix(".ct")
        for base in (importer.parent, stdlib_root()):
            p = (base / rel).resolve()
            if p.is_file():
                return p
        raise LoadError(f"{importer}: cannot resolve import '{imp}'")

    def _lint(self, path: Path) -> bool:
        if self.lint_labels is not None:
            return self.lint_labels
        root = stdlib_root()
        return root == path or root in path.parents

    def load(self, path) -> FileResult:
        path = Path(path).resolve()
        if path in self.results:
            return self.results[path]
        if path in self._stack:
            cycle = " -> ".join(p.name for p in self._stack[self._stack.index(path):] + [path])
            raise LoadError(f"import cycle: {cycle}")
        try:
            src = path.read_text(encoding="utf-8")
        except OSError as e:
            raise LoadError(f"{path}: {e.strerror or e}") from e
        res = FileResult(path)
        try:
            mod = parse_module(src)
        except ParseError as e:
            res.diagnostics.append(Diagnostic("error", str(path), *(e.pos or (None, None)), e.msg))
            self._finish(path, res)
            return res
        self._stack.append(path)
        try:
            for d in mod.decls:
                if isinstance(d, A.Import):
                    dep = self.load(self.resolve(d.path, path))
                    if not dep.ok:
                        res.diagnostics.append(Diagnostic(
                            "error", str(path), *(d.pos or (None, None)),
                            f"imported file {dep.path.name} has errors"))
        finally:
            self._stack.pop()
        self._check(path, mod, res)
        self._finish(path, res)
        return res

    def _finish(self, path, res):
        self.results[path] = res
        self.order.append(path)

    def _check(self, path: Path, mod: A.Module, res: FileResult):
        lint = self._lint(path)
        el = Elab(self.session)
        seen = set()
        with active(self.session):
            for d in mod.decls:
                if isinstance(d, A.Import):
                    continue
                pos = d.pos or (None, None)
                if d.name in seen:
                    res.diagnostics.append(Diagnostic(
                        "error", str(path), *pos, f"'{d.name}' is declared twice in this file"))
                    continue
                seen.add(d.name)
                try:
                    el.decl(d, str(path))
                except ElabError as e:
                    p = e.pos or pos
                    res.diagnostics.append(Diagnostic("error", str(path), *p,
                                                      f"in '{d.name}': {e.msg}",
                                                      e.expected, e.actual))
                    continue
                except RecursionError:
                    res.diagnostics.append(Diagnostic("error", str(path), *pos,
                                                      f"in '{d.name}': recursion limit hit"))
                    continue
                res.decls.append(d.name)
                if d.label:
                    res.labels[d.name] = d.label
                elif lint:
                    res.diagnostics.append(Diagnostic(
                        "error", str(path), *pos, f"'{d.name}' has no @label annotation"))


def ct_files(paths) -> list[Path]:
    """Expand directories to their ``.ct`` files, sorted for a
    deterministic order."""
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            out.extend(sorted(q for q in p.rglob("*.ct") if q.is_file()))
        elif p.exists():
            out.append(p)
        else:
            raise LoadError(f"{p}: no such file or directory")
    return out


def check_paths(paths, loader: Loader | None = None) -> Loader:
    loader = loader or Loader()
    for f in ct_files(paths):
        loader.load(f)
    return loader


def lemma_map(loader: Loader) -> dict:
    """``{"file.ct:name": label}`` over every checked file."""
    out = {}
    for path in loader.order:
        res = loader.results[path]
        key = path.name   # stdlib basenames are unique
        for name in res.decls:
            if name in res.labels:
                out[f"{key}:{name}"] = res.labels[name]
    return out
