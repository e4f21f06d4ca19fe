"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .action import (PositiveDimensionalFixedLocus, UnsupportedOrderError, coinvariant_lattice,
                     fixed_point_count, invariant_lattice, order_of, wedge_square)
from .catalog import get_example, list_examples, verify_example
from .classification import SUPPORTED_PRIMES, enumerate_table, format_table, full_table
from .lattice import (Lattice, delta_invariant, discriminant, genus_fingerprint,
                      lattice_from_name, matrix_from_json)
from .linalg import SingularError, det

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _load_matrix(path: str):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        return matrix_from_json(doc)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _known_lattices() -> list[Lattice]:
    names = {row.lattice_name for row in full_table()}
    for rec in list_examples():
        names.add(rec.expected_T)
        if rec.expected_S:
            names.add(rec.expected_S)
    return [lattice_from_name(n) for n in sorted(names)]


def identify(lat: Lattice) -> str | None:
    fp = genus_fingerprint(lat)
    for known in _known_lattices():
        if known.rank == lat.rank and genus_fingerprint(known) == fp:
            return known.name
    return None


def describe_lattice(lat: Lattice) -> list[str]:
    data = discriminant(lat)
    plus, minus = lat.signature
    lines = [f"rank {lat.rank}, signature ({plus},{minus}), d={abs(lat.det)}, "
             f"{'even' if lat.is_even else 'odd'}"]
    factors = data.invariant_factors
    if not factors:
        lines.append("unimodular (a=0)")
    else:
        lines.append(f"discriminant group factors {list(factors)}")
        if len(set(factors)) == 1 and _is_prime(factors[0]):
            p = factors[0]
            text = f"{p}-elementary a={len(factors)}"
            if p == 2 and lat.is_even:
                text += f", δ={delta_invariant(lat)}"
            lines.append(text)
    fp = genus_fingerprint(lat)
    if fp.q_multiset is not None:
        qs = ", ".join(str(q) for _, q in fp.q_multiset)
        lines.append(f"discriminant form values: {{{qs}}}")
    return lines


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % k for k in range(2, int(n ** 0.5) + 1))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    rows = enumerate_table(args.p) if args.p else full_table()
    if args.format == "json":
        print(json.dumps([r.to_json() for r in rows], indent=2))
    else:
        print(format_table(rows))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all == bool(args.name):
        raise InputError("give exactly one example name or --all")
    if args.all:
        names = [rec.name for rec in list_examples()]
    else:
        try:
            get_example(args.name)
        except KeyError:
            known = ", ".join(rec.name for rec in list_examples())
            raise InputError(f"unknown example {args.name!r}; known: {known}") from None
        names = [args.name]
    reports = [verify_example(n) for n in names]
    doc = {"passed": all(r.passed for r in reports), "reports": [r.to_json() for r in reports]}
    if args.json:
        Path(args.json).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        width = max(len(n) for n in names)
        for r in reports:
            n_ok = sum(c.passed for c in r.checks)
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.example.ljust(width)}  {status}  ({n_ok}/{len(r.checks)} checks)")
        for r in reports:
            if args.verbose or not r.passed:
                print()
                print(r.format())
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_lattice_info(args) -> int:
    gram = _load_matrix(args.file)
    if not gram.is_symmetric():
        raise InputError("Gram matrix must be square and symmetric")
    try:
        lat = Lattice(gram)
    except SingularError:
        raise InputError("Gram matrix is degenerate (det = 0)") from None
    for line in describe_lattice(lat):
        print(line)
    name = identify(lat)
    if name:
        print(f"fingerprint matches {name}")
    return EXIT_OK


def cmd_wedge(args) -> int:
    g = _load_matrix(args.file)
    if g.shape != (4, 4):
        raise InputError(f"expected a 4x4 matrix, got {g.shape[0]}x{g.shape[1]}")
    d = det(g)
    if abs(d) != 1:
        raise InputError(f"|det g| = {abs(d)} != 1: not an automorphism of the lattice")
    action = wedge_square(g)
    print("wedge square (basis e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4):")
    print(action.phi)
    o1 = action.order_h1
    o2 = action.order_h2
    fmt = lambda o: "infinite or > 12" if o is None else str(o)
    print(f"order on H1: {fmt(o1)}, order on H2: {fmt(o2)}  ({fmt(o1)}/{fmt(o2)})")
    if d == 1:
        T = invariant_lattice(action)
        S = coinvariant_lattice(action)
        print(f"invariant lattice T: rank {T.rank}, Gram {T.gram.tolist()}")
        for line in describe_lattice(T) if T.rank else []:
            print(f"  {line}")
        name = identify(T) if T.rank else None
        if name:
            print(f"  fingerprint matches {name}")
        print(f"coinvariant lattice S: rank {S.rank}, Gram {S.gram.tolist()}")
    else:
        print("det g = -1: the wedge square reverses the pairing, no invariant lattice")
    if args.fixed:
        try:
            print(f"fixed points: {fixed_point_count(g)}")
        except PositiveDimensionalFixedLocus:
            print("fixed points: positive-dimensional")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-lattices",
        description="Lattice invariants of prime-order automorphisms of 2-tori")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print the invariant-lattice table")
    p_table.add_argument("--p", type=int, choices=SUPPORTED_PRIMES)
    p_table.add_argument("--format", choices=("text", "json"), default="text")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="verify catalog examples")
    p_verify.add_argument("name", nargs="?")
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p_verify.add_argument("-v", "--verbose", action="store_true", help="show every check")
    p_verify.set_defaults(func=cmd_verify)

    p_info = sub.add_parser("lattice-info", help="invariants of a Gram matrix file")
    p_info.add_argument("file")
    p_info.set_defaults(func=cmd_lattice_info)

    p_wedge = sub.add_parser("wedge", help="action of a 4x4 matrix on H^2")
    p_wedge.add_argument("file")
    p_wedge.add_argument("--fixed", action="store_true", help="also count torus fixed points")
    p_wedge.set_defaults(func=cmd_wedge)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
