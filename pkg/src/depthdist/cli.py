"""Command-line interface: ``depthdist {table,depth,preimage,poly,check}``."""

from __future__ import annotations

import argparse
import json
import sys
from math import factorial

from . import distribution as dist
from . import kernels
from .errors import DepthDistError
from .motzkin import area, parse_path
from .permutation import depth, parse_permutation, total_displacement
from .phi_map import enumerate_preimage, phi, preimage_count

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _format_table(table: dist.DepthTable, fmt: str) -> str:
    if fmt == "tsv":
        return "".join(
            "\t".join([str(n), *map(str, row)]) + "\n" for n, row in enumerate(table.rows)
        )
    if fmt == "json":
        # decimal strings: entries overflow 53-bit JSON numbers quickly
        return json.dumps([[str(x) for x in row] for row in table.rows]) + "\n"
    if fmt == "bfile":
        lines = []
        index = 1
        for row in table.rows:
            for x in row:
                lines.append(f"{index} {x}\n")
                index += 1
        return "".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


def cmd_table(args) -> int:
    table = dist.table(args.n, args.method, force=args.force, jobs=args.jobs)
    sys.stdout.write(_format_table(table, args.format))
    return EXIT_OK


def cmd_depth(args) -> int:
    w = parse_permutation(args.perm)
    p = phi(w)
    print(f"depth {depth(w)}")
    print(f"displacement {total_displacement(w)}")
    print(f"path {p}")
    print(f"area {area(p)}")
    return EXIT_OK


def cmd_preimage(args) -> int:
    p = parse_path(args.path)
    print(preimage_count(p))
    if args.list:
        for w in enumerate_preimage(p, force=args.force):
            print(w)
    return EXIT_OK


def cmd_poly(args) -> int:
    nmax = args.nmax if args.nmax is not None else max(40, 2 * args.k + 3)
    poly = dist.fixed_depth_polynomial(args.k, nmax)
    print(poly)
    print(f"verified for {poly.k} <= n <= {poly.verified_through}")
    return EXIT_OK


def _check_limits(args) -> dict[str, int]:
    brute = args.n if args.force else min(args.n, dist.BRUTE_CEILING)
    motzkin = args.n if args.force else min(args.n, dist.MOTZKIN_CEILING)
    return {
        "brute": min(brute, kernels.INT64_MAX_N),
        "motzkin": min(motzkin, kernels.INT64_MAX_N),
        "jfrac": args.n,
        "sfrac": args.n,
    }


def cmd_check(args) -> int:
    limits = _check_limits(args)
    tables = {
        "brute": dist.table_brute(limits["brute"], force=True, jobs=args.jobs),
        "motzkin": dist.table_motzkin(limits["motzkin"], force=True, jobs=args.jobs),
        "jfrac": dist.table_jfrac(args.n),
        "sfrac": dist.table_sfrac(args.n),
    }
    ok = True
    for n in range(args.n + 1):
        used = [m for m in dist.METHODS if n <= limits[m]]
        rows = {m: tables[m].restrict(n) for m in used}
        divergence = dist.first_divergence(list(rows.values()))
        notes = []
        if divergence is not None:
            dn, dk, values = divergence
            shown = ", ".join(f"{m}={v}" for m, v in values.items())
            notes.append(f"MISMATCH first divergence at n={dn}, k={dk}: {shown}")
            ok = False
        row = tables["jfrac"][n]
        if sum(row) != factorial(n):
            notes.append(f"MISMATCH row sum {sum(row)} != {n}!")
            ok = False
        if n >= 1 and row[-1] != dist.max_depth_count(n):
            notes.append(
                f"MISMATCH H({n},{dist.max_depth(n)}) = {row[-1]} != "
                f"{dist.max_depth_count(n)}"
            )
            ok = False
        if row[0] != 1 or (n >= 2 and row[1] != n - 1):
            notes.append("MISMATCH H(n,0) = 1 / H(n,1) = n-1 fails")
            ok = False
        status = "ok" if not notes else "; ".join(notes)
        print(f"n={n}\tmethods={','.join(used)}\t{status}")
        if divergence is not None:
            break
    zeros = tables["jfrac"].interior_zeros()
    if zeros:
        print(f"warning: zero entries inside the triangle at {zeros}", file=sys.stderr)
    print("all checks passed" if ok else "checks FAILED")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthdist",
        description="Exact distribution of permutation depth (half the total displacement).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "table",
        help="print the triangle H(n, k) for n = 0..N",
        description=(
            "Print H(n, k) = #{w in S_n : depth(w) = k} for n = 0..N. "
            f"Ceilings without --force: brute n <= {dist.BRUTE_CEILING}, "
            f"motzkin n <= {dist.MOTZKIN_CEILING}; both stop at "
            f"n = {kernels.INT64_MAX_N}."
        ),
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=dist.METHODS, default="jfrac")
    p.add_argument("--format", choices=("tsv", "json", "bfile"), default="tsv")
    p.add_argument("--force", action="store_true", help="lift the size ceilings")
    p.add_argument("--jobs", type=int, default=1, help="parallel partitions (brute, motzkin)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("depth", help="depth, displacement, path and area of a permutation")
    p.add_argument("perm", help='one-line notation, e.g. 3715246 or "10,1,2,3,4,5,6,7,8,9"')
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("preimage", help="number of permutations mapping to a Motzkin path")
    p.add_argument("path", help="word over U, D, H, e.g. UUHDDUD")
    p.add_argument("--list", action="store_true", help="also print the permutations")
    p.add_argument(
        "--force", action="store_true", help="allow listing more than 10^6 permutations"
    )
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("poly", help="H(n, k) for fixed k in the basis C(n-k, j)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, default=None, help="verify up to this n (default 40)")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("check", help="cross-validate all four methods up to n = N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true", help="run brute/motzkin past their ceilings")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 0) < 0:
        parser.error("--n must be nonnegative")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (DepthDistError, ValueError) as exc:
        print(f"depthdist: error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH if isinstance(exc, AssertionError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
