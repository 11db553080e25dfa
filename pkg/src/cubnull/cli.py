"""Command-line driver: ``check``, ``normalize``, ``oracle`` and ``lemmas``.

Exit codes: 0 success, 1 check failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .kernel.conv import quote
from .kernel.pretty import show_term
from .kernel.session import active
from .lang.loader import Loader, LoadError, check_paths, lemma_map, stdlib_root

OK, FAIL, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubnull", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="type-check .ct files or directories")
    c.add_argument("paths", nargs="*", help="files or directories (default: the stdlib)")
    c.add_argument("--json", action="store_true", help="one JSON record per line")

    n = sub.add_parser("normalize", help="print the normal form of a definition")
    n.add_argument("file")
    n.add_argument("name")

    o = sub.add_parser("oracle", help="run a finite cube-model suite")
    o.add_argument("suite", help="suite name, or 'all'")
    o.add_argument("--dim", type=int, default=None)
    o.add_argument("--depth", type=int, default=3)
    o.add_argument("--json", action="store_true")

    m = sub.add_parser("lemmas", help="list definition labels")
    m.add_argument("paths", nargs="*")
    m.add_argument("--json", action="store_true")
    return p


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    loader = check_paths(args.paths or [stdlib_root()])
    diags = [d for p in loader.order for d in loader.results[p].diagnostics]
    ndefs = sum(len(loader.results[p].decls) for p in loader.order)
    ok = all(loader.results[p].ok for p in loader.order)
    if args.json:
        for d in diags:
            print(json.dumps(d.as_dict()))
        print(json.dumps({"summary": {"files": len(loader.order), "definitions": ndefs,
                                      "errors": sum(d.severity == "error" for d in diags),
                                      "ok": ok, "seconds": round(time.perf_counter() - t0, 3)}}))
    else:
        for d in diags:
            print(d.render())
        status = "ok" if ok else "FAILED"
        print(f"{status}: {len(loader.order)} files, {ndefs} definitions "
              f"({time.perf_counter() - t0:.2f}s)")
    return OK if ok else FAIL


def cmd_normalize(args) -> int:
    loader = Loader()
    res = loader.load(args.file)
    for d in res.diagnostics:
        print(d.render(), file=sys.stderr)
    if not res.ok:
        return FAIL
    g = loader.session.defs.get(args.name)
    if g is None:
        print(f"cubnull: no definition named '{args.name}'", file=sys.stderr)
        return USAGE
    with active(loader.session):
        print(show_term(quote(0, g.value)))
    return OK


def cmd_oracle(args) -> int:
    from .cube.suites import SUITES, run_suite
    if args.suite != "all" and args.suite not in SUITES:
        print(f"cubnull: unknown suite '{args.suite}' (choose from: all, "
              f"{', '.join(SUITES)})", file=sys.stderr)
        return USAGE
    records = run_suite(args.suite, args.dim, args.depth)
    for r in records:
        if args.json:
            print(json.dumps(r.as_dict()))
        else:
            mark = "PASS" if r.ok else "FAIL"
            extra = "" if r.ok or r.witness is None else f"  witness: {r.witness!r}"
            print(f"{mark}  {r.name}  [{r.size}]{extra}")
    failed = sum(not r.ok for r in records)
    if not args.json:
        print(f"{len(records) - failed}/{len(records)} checks passed")
    return OK if not failed else FAIL


def cmd_lemmas(args) -> int:
    loader = check_paths(args.paths or [stdlib_root()])
    table = lemma_map(loader)
    if args.json:
        print(json.dumps(table, indent=2))
    else:
        for k, v in table.items():
            print(f"{k}\t{v}")
    return OK if all(loader.results[p].ok for p in loader.order) else FAIL


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:   # argparse: --help is 0, misuse is USAGE
        return e.code if isinstance(e.code, int) else USAGE
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        return {"check": cmd_check, "normalize": cmd_normalize, "oracle": cmd_oracle,
                "lemmas": cmd_lemmas}[args.cmd](args)
    except LoadError as e:
        print(f"cubnull: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
