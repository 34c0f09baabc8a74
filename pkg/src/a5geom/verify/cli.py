"""Command line: ``verify run|list|describe|cremona``.

Exit codes: 0 all checks pass, 1 some check fails, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .runner import descriptors, emit_report, exit_code, run_checks, select
from .scenario import RegistryError, Scenario, load_data


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Rerun the registered computational checks.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--registry", action="append", metavar="PATH",
                        help="extra registry file or directory (repeatable)")
        sp.add_argument("--conductor", type=int, default=120, help="cyclotomic conductor N (default 120)")

    r = sub.add_parser("run", help="run checks and print a report")
    common(r)
    r.add_argument("--filter", default=None, metavar="GLOB", help="id glob; comma-separated globs allowed")
    r.add_argument("--format", choices=("json", "md"), default="md")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical output)")
    r.add_argument("--output", "-o", default=None, help="write the report to a file")

    ls = sub.add_parser("list", help="list check ids")
    common(ls)
    ls.add_argument("--filter", default=None, metavar="GLOB")

    d = sub.add_parser("describe", help="show one check descriptor")
    common(d)
    d.add_argument("id")

    c = sub.add_parser("cremona", help="compute the image cubic of a Cremona transformation")
    common(c)
    c.add_argument("--group", required=True, help="registry group key, e.g. A5-nonstandard")
    c.add_argument("--quadric", required=True, help="registry form name, e.g. X2")
    c.add_argument("--orbit", required=True, help="registry point name of a length-5 orbit")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except RegistryError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.conductor <= 0:
        raise RegistryError("conductor must be positive")
    data = load_data(args.registry)
    if args.cmd == "list":
        for d in select(descriptors(data), args.filter):
            print(f"{d.id}\t{d.category}\t{d.anchor}")
        return 0
    if args.cmd == "describe":
        matches = [d for d in descriptors(data) if d.id == args.id]
        if not matches:
            raise RegistryError(f"unknown check id {args.id!r}")
        print(json.dumps(matches[0].to_dict(), indent=2, ensure_ascii=False))
        return 0
    sc = Scenario(data, args.conductor)
    if args.cmd == "cremona":
        return _cremona(sc, args)
    if args.jobs < 1:
        raise RegistryError("--jobs must be at least 1")
    reports = run_checks(args.filter, jobs=args.jobs, scenario=sc)
    text = emit_report(reports, args.format, timings=args.timings)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(reports)


def _cremona(sc: Scenario, args) -> int:
    from .checks import cremona

    res = cremona(sc, args.group, args.quadric, args.orbit)
    print(json.dumps(res, indent=2, sort_keys=True, ensure_ascii=False))
    return 0 if res["certified"] else 1


if __name__ == "__main__":
    sys.exit(main())
