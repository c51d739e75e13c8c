"""Command-line front end.

Descriptor files are YAML (JSON is accepted too) with the fields::

    n: 4            # 2, 3 or 4
    l: 2            # rank of the free part of H_n
    k: 1            # rank of H_{n+1}
    c: 1            # rank of Sq² on H^n (0 <= c <= l)
    torsion: [[3, 2]]   # T = Z/3², as [p, r] pairs with p odd
    spin: true
    attach:         # optional; one integer list per block of the attaching map
      x: [1, 0]
    steenrod:       # optional; matrices as {shape: [rows, cols], data: [...]}
      sq2: {4: {shape: [2, 2], data: [1, 0, 0, 0]}}

Exit codes: 0 ok, 1 usage, 2 parse or validation failure, 3 a requested
consistency check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .manifold import DescriptorError, descriptor_from_dict
from .report import build_report

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cohomotopy", description="Suspension splitting and cohomotopy sets of highly connected manifolds.")
    p.add_argument("--input", required=True, help="descriptor file (YAML or JSON)")
    p.add_argument("--degree", type=int, help="report only π^i for this i")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--check", action="store_true", help="run the homology and cross-engine checks")
    p.add_argument("--oracle", action="store_true", help="certify the normal form by orbit enumeration")
    p.add_argument("--steenrod", help="file with Steenrod operation matrices (overrides the descriptor's)")
    return p


def _load(path: str) -> object:
    with open(path, encoding="utf-8") as fh:
        return yaml.safe_load(fh)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    for flag in ("input", "steenrod"):
        path = getattr(args, flag)
        if path is not None and not Path(path).is_file():
            print(f"error: --{flag}: no such file: {path}", file=err)
            return EXIT_USAGE
    if args.degree is not None and args.degree <= 0:
        print("error: --degree must be positive", file=err)
        return EXIT_USAGE
    try:
        data = _load(args.input)
        if args.steenrod is not None:
            if not isinstance(data, dict):
                raise DescriptorError("<root>", "descriptor must be a mapping of fields")
            data = {**data, "steenrod": _load(args.steenrod)}
        d = descriptor_from_dict(data)
    except yaml.YAMLError as exc:
        print(f"parse error: {args.input}: {exc}", file=err)
        return EXIT_INVALID
    except DescriptorError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_INVALID

    rep = build_report(d, args.degree, check=args.check, oracle=args.oracle)
    out.write(rep.to_json() + "\n" if args.format == "json" else rep.to_text())
    if rep.validation:
        for v in rep.validation:
            print(f"validation error: {v}", file=err)
        return EXIT_INVALID
    if not rep.ok:
        for name, c in sorted(rep.checks.items()):
            if not c.get("ok", True):
                print(f"check failed: {name}: {'; '.join(c.get('details', []))}", file=err)
        return EXIT_INCONSISTENT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
