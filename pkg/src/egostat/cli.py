"""egostat command line.

Exit codes: 0 ok, 2 network, 3 integrity (hash mismatch), 4 parse,
5 fatal undefined metric.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
import urllib.error
import urllib.request
from pathlib import Path

from . import __version__
from .datasets import cache_dir
from .errors import ParseError, UndefinedMetricError
from .graph import parse_edge_list, read_edge_list
from .report import build_report, compare

EXIT_OK, EXIT_NETWORK, EXIT_INTEGRITY, EXIT_PARSE, EXIT_UNDEFINED = 0, 2, 3, 4, 5

log = logging.getLogger("egostat")


def _err(msg):
    print(f"egostat: {msg}", file=sys.stderr)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def cmd_fetch(args) -> int:
    dest = Path(args.dest) if args.dest else cache_dir() / Path(args.url.rstrip("/")).name
    dest.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".part-", dir=dest.parent)
    h = hashlib.sha256()
    try:
        with os.fdopen(fd, "wb") as out, urllib.request.urlopen(args.url, timeout=args.timeout) as resp:
            for block in iter(lambda: resp.read(1 << 20), b""):
                h.update(block)
                out.write(block)
    except (urllib.error.URLError, OSError, ValueError) as exc:
        os.unlink(tmp)
        _err(f"download failed: {exc}")
        return EXIT_NETWORK
    digest = h.hexdigest()
    if args.sha256 and digest.lower() != args.sha256.lower():
        os.unlink(tmp)
        _err(f"sha256 mismatch: expected {args.sha256}, got {digest}")
        return EXIT_INTEGRITY
    os.replace(tmp, dest)
    print(f"{digest}  {dest}")
    return EXIT_OK


def _load(args):
    """(graph, dataset name, provenance) from a file argument or --edges."""
    if args.edges is not None:
        text = "\n".join(p.replace(",", " ") for p in args.edges.split(";"))
        g = parse_edge_list(io.StringIO(text))
        return g, "inline", {"input_sha256": hashlib.sha256(args.edges.encode()).hexdigest()}
    if args.input is None:
        raise ParseError("no input file or --edges given")
    try:
        g = read_edge_list(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(str(exc)) from exc
    name = Path(args.input).name
    for suffix in (".gz", ".txt"):
        name = name.removesuffix(suffix)
    return g, name, {"input_sha256": sha256_file(args.input)}


def cmd_report(args) -> int:
    try:
        g, name, prov = _load(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_PARSE
    bundle = build_report(g, dataset=name, seed=args.seed, skip_4clique=args.skip_4clique,
                          skip_diameter=args.skip_diameter, annd_def=args.annd_def,
                          diameter_sources=args.diameter_sources, force=args.force, provenance=prov)
    if args.format == "csv":
        sys.stdout.write(bundle.to_csv())
    elif args.format == "md":
        sys.stdout.write(bundle.to_markdown())
    else:
        sys.stdout.write(bundle.to_json())
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        g, _, _ = _load(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_PARSE
    try:
        cmp = compare(g)
    except UndefinedMetricError as exc:
        _err(f"undefined: {exc.reason}")
        return EXIT_UNDEFINED
    summary = json.dumps(cmp.summary(), sort_keys=True)
    if args.out:
        Path(f"{args.out}.csv").write_text(cmp.to_csv())
        Path(f"{args.out}.json").write_text(summary + "\n")
        print(summary)
    else:
        sys.stdout.write(cmp.to_csv())
        print(summary, file=sys.stderr)
    return EXIT_OK


def make_parser():
    p = argparse.ArgumentParser(prog="egostat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fetch", help="download a dataset archive")
    f.add_argument("url")
    f.add_argument("dest", nargs="?", help="target path (default: cache dir / basename of url)")
    f.add_argument("--sha256", help="expected hex digest")
    f.add_argument("--timeout", type=float, default=60.0)
    f.set_defaults(func=cmd_fetch)

    def add_input(sp):
        sp.add_argument("input", nargs="?", help="edge list (plain or gzip)")
        sp.add_argument("--edges", help='inline edges, e.g. "0 1;1 2;2 0"')

    r = sub.add_parser("report", help="compute the global and ego-level tables")
    add_input(r)
    fmt = r.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    fmt.add_argument("--md", dest="format", action="store_const", const="md")
    r.set_defaults(format="json")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--skip-4clique", action="store_true")
    r.add_argument("--skip-diameter", action="store_true")
    r.add_argument("--annd-def", choices=["vertex", "instance"], default="instance")
    r.add_argument("--diameter-sources", type=int, default=1000)
    r.add_argument("--force", action="store_true", help="run 4-clique and BFS passes even above 10^6 edges")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("compare", help="CCDFs of global, ego and predicted degrees")
    add_input(c)
    c.add_argument("--out", help="write <out>.csv and <out>.json instead of stdout")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
