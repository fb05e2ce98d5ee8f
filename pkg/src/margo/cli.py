"""Command-line surface: reproducible, scriptable verification runs.

Exit codes: 0 success or PASS, 1 theorem-check counterexample, 2 resource
ceiling hit, 64 usage error.  Reports are plain text with a stable schema;
identical inputs and flags produce byte-identical reports regardless of the
worker count.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import characters, collapse, complexes, expfam, fiber, polytope, spaces
from .guards import ResourceCeilingError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise UsageError(message)


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers: {text!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_complex(args) -> complexes.SimplicialComplex:
    if getattr(args, "complex", None):
        return complexes.parse_complex(_read(args.complex))
    if getattr(args, "G", None):
        if not getattr(args, "space", None):
            raise UsageError("--G needs --space to fix n")
        space = _load_space(args)
        return complexes.interval_complement(space.n, _parse_int_list(args.G, "--G"))
    raise UsageError("a complex is required (--complex FILE or --G)")


def _load_space(args) -> spaces.ConfigSpace:
    if not getattr(args, "space", None):
        raise UsageError("--space q1,q2,... is required")
    return spaces.ConfigSpace(_parse_int_list(args.space, "--space"))


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(args, pairs: list[tuple[str, str]]) -> str:
    if getattr(args, "kv", False):
        return "".join(f"{k}={v}\n" for k, v in pairs)
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def _complex_str(cx: complexes.SimplicialComplex) -> str:
    facets = " ".join("{" + ",".join(str(i) for i in sorted(f)) + "}" for f in cx.facets)
    return f"{cx.n} ; {facets}" if facets else f"{cx.n} ; (no facets)"


def _space_str(space: spaces.ConfigSpace) -> str:
    return " ".join(str(q) for q in space.cardinalities)


def _configs_str(configs, space) -> str:
    return " ".join(spaces.config_str(x, space) for x in configs)


def _table_configs(u: spaces.ContingencyTable) -> str:
    parts = []
    for x, c in zip(u.space.configs(), u.counts):
        parts.extend([spaces.config_str(x, u.space)] * c)
    return " ".join(parts)


def _g_and_bound(cx) -> tuple[int | None, int | None]:
    try:
        g = cx.min_nonface_cardinality()
    except ValueError:
        return None, None
    return g, (2 ** (g - 1) if g >= 1 else None)


# ---------------------------------------------------------------- subcommands

def _cmd_matrix(args) -> int:
    cx = _load_complex(args)
    space = _load_space(args)
    matrix = spaces.marginal_matrix(cx, space)
    _emit(args, spaces.format_matrix(matrix.rows))
    return 0


def _cmd_moves(args) -> int:
    space = _load_space(args)
    if not space.is_binary:
        raise UsageError("interval moves are defined on binary spaces")
    if not args.G:
        raise UsageError("--G i,j,... is required")
    members = _parse_int_list(args.G, "--G")
    moves = characters.interval_moves(space.n, members)
    _emit(args, spaces.format_matrix([m.vector for m in moves]))
    return 0


def _cmd_kernel_basis(args) -> int:
    cx = _load_complex(args)
    basis = characters.kernel_basis(cx)
    rows = [e.values for e in basis]
    if not rows:
        _emit(args, f"0 {2 ** cx.n}\n")
        return 0
    _emit(args, spaces.format_matrix(rows))
    return 0


def _cmd_verify_markov(args) -> int:
    space = _load_space(args)
    cx = _load_complex(args)
    if args.moves:
        rows = spaces.parse_matrix(_read(args.moves))
        moves = [characters.Move(space, tuple(r)) for r in rows]
    else:
        if not args.G:
            raise UsageError("without --moves, --G is required to build the interval moves")
        if not space.is_binary:
            raise UsageError("interval moves need a binary space; pass --moves instead")
        moves = list(characters.interval_moves(space.n, _parse_int_list(args.G, "--G")))
    if args.drop_move is not None:
        if not 0 <= args.drop_move < len(moves):
            raise UsageError(f"--drop-move index out of range 0..{len(moves) - 1}")
        del moves[args.drop_move]
    report = fiber.verify_markov_basis(cx, space, moves, args.degree_limit,
                                       method=args.method, ceiling=args.ceiling,
                                       workers=args.workers)
    pairs = [
        ("command", "verify-markov"),
        ("complex", _complex_str(cx)),
        ("space", _space_str(space)),
        ("moves", str(len(moves))),
        ("degree-limit", str(report.degree_limit)),
        ("method", report.method),
        ("fibers-checked", str(report.fibers_checked)),
    ]
    if report.passed:
        pairs.append(("status", "PASS"))
        pairs.append(("note", f"all fibers of degree <= {report.degree_limit} connected; "
                              "evidence up to the stated bound, not a proof beyond it"))
    else:
        bad = report.witness
        u, v = bad.report.witness
        lay_blocks = bad.fiber.marginal.blocks
        rendered = " ; ".join(
            "{" + ",".join(str(i) for i in sorted(f)) + "}: "
            + " ".join(str(e) for e in bad.fiber.marginal.block(k))
            for k, (f, _) in enumerate(lay_blocks)
        )
        pairs.extend([
            ("status", "FAIL"),
            ("witness-degree", str(bad.fiber.marginal.degree)),
            ("witness-marginal", rendered),
            ("witness-fiber-size", str(bad.fiber.size)),
            ("witness-components", str(bad.report.components)),
            ("witness-u", _table_configs(u)),
            ("witness-v", _table_configs(v)),
        ])
    _emit(args, _render(args, pairs))
    return 0 if report.passed else 1


def _cmd_degree_bound(args) -> int:
    space = _load_space(args)
    cx = _load_complex(args)
    g, bound = _g_and_bound(cx)
    if g is None:
        raise UsageError("complex is the full power set: kernel is zero, no binomials exist")
    kmax = args.kmax if args.kmax is not None else (bound if bound else 1)
    found = fiber.min_binomial_degree(cx, space, kmax, ceiling=args.ceiling)
    pairs = [
        ("command", "degree-bound"),
        ("complex", _complex_str(cx)),
        ("space", _space_str(space)),
        ("g", str(g)),
        ("bound", str(bound) if bound else "none"),
        ("kmax", str(kmax)),
    ]
    passed = True
    if found is None:
        pairs.append(("witness-degree", f"none (no binomial of degree <= {kmax})"))
    else:
        k, move = found
        pos, neg, _ = characters.move_supports(move)
        square_free = all(abs(v) <= 1 for v in move.vector)
        pairs.extend([
            ("witness-degree", str(k)),
            ("witness-positive", _configs_str(pos, space)),
            ("witness-negative", _configs_str(neg, space)),
            ("square-free", "yes" if square_free else "no"),
        ])
        if bound is not None and k < bound:
            passed = False
    pairs.append(("status", "PASS" if passed else "FAIL"))
    _emit(args, _render(args, pairs))
    return 0 if passed else 1


def _cmd_neighborly(args) -> int:
    space = _load_space(args)
    cx = _load_complex(args)
    g, bound = _g_and_bound(cx)
    if args.kmax is not None:
        kmax = args.kmax
    elif bound is not None:
        kmax = bound  # one past the guaranteed neighborliness, to probe sharpness
    else:
        kmax = space.size
    report = polytope.neighborliness(cx, space, kmax, ceiling=args.ceiling,
                                     workers=args.workers)
    pairs = [
        ("command", "neighborly"),
        ("complex", _complex_str(cx)),
        ("space", _space_str(space)),
        ("g", str(g) if g is not None else "none"),
        ("bound", str(bound - 1) if bound is not None else "none"),
        ("kmax", str(kmax)),
        ("k", str(report.k)),
    ]
    if report.witness is not None:
        cert = report.witness
        nonzero = [(x, w) for x, w in zip(space.configs(), cert.combination) if w]
        pairs.extend([
            ("witness-size", str(len(cert.members))),
            ("witness", _configs_str(cert.members, space)),
            ("certificate", " ".join(f"{spaces.config_str(x, space)}={w}" for x, w in nonzero)),
            ("outside-mass", str(cert.outside_mass)),
        ])
    passed = bound is None or report.k >= bound - 1
    pairs.append(("status", "PASS" if passed else "FAIL"))
    _emit(args, _render(args, pairs))
    return 0 if passed else 1


def _cmd_collapse(args) -> int:
    space = _load_space(args)
    cmap = collapse.parse_collapsing(_read(args.map))
    if cmap.source != space:
        raise UsageError("collapsing map does not match --space")
    table = spaces.parse_table(_read(args.table))
    if table.space != space:
        raise UsageError("table does not match --space")
    collapsed = collapse.collapse_table(cmap, table)
    checks = 0
    failure = None
    for members in complexes.subsets(space.n):
        for z in spaces.binary_space(len(members)).configs():
            checks += 1
            if not collapse.verify_phi_identity(cmap, table, members, z):
                failure = (members, z)
                break
        if failure:
            break
    pairs = [
        ("command", "collapse"),
        ("space", _space_str(space)),
        ("degree", str(table.degree)),
        ("collapsed-degree", str(collapsed.degree)),
        ("phi-identity", f"OK ({checks} checks)" if failure is None else
         f"FAILED at B={{{ ','.join(map(str, sorted(failure[0]))) }}} z={failure[1]}"),
        ("collapsed-table", ""),
    ]
    text = _render(args, pairs[:-1]) + "collapsed-table:\n" + spaces.format_table(collapsed)
    _emit(args, text)
    return 0 if failure is None else 1


def _cmd_mi(args) -> int:
    space = _load_space(args)
    values = [float(tok) for tok in _read(args.density).split()]
    p = expfam.Density(space, tuple(values))
    pairs = [
        ("command", "mi"),
        ("space", _space_str(space)),
        ("mi", f"{expfam.multiinformation(p):.12g}"),
    ]
    _emit(args, _render(args, pairs))
    return 0


def _cmd_density(args) -> int:
    space = _load_space(args)
    cx = _load_complex(args)
    theta = [float(tok) for tok in _read(args.theta).split()]
    p = expfam.density(cx, space, theta)
    pairs = [
        ("command", "density"),
        ("complex", _complex_str(cx)),
        ("space", _space_str(space)),
        ("density", " ".join(f"{v:.12g}" for v in p.probabilities)),
    ]
    _emit(args, _render(args, pairs))
    return 0


def _cmd_tableau(args) -> int:
    table = spaces.parse_table(_read(args.table))
    _emit(args, fiber.tableau(table))
    return 0


# ------------------------------------------------------------------- parsing

def _add_common(sp, *, out=True, seed=True):
    if out:
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    if seed:
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property sweeps (reserved; default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="margo",
                     description="Marginal polytopes, Markov moves, and fiber checks")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("matrix", help="emit the marginal matrix of a complex")
    sp.add_argument("--complex", metavar="FILE", required=True)
    sp.add_argument("--space", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_matrix)

    sp = sub.add_parser("moves", help="emit the interval moves of an interval-complement model")
    sp.add_argument("--space", required=True)
    sp.add_argument("--G", metavar="I,J,...", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_moves)

    sp = sub.add_parser("kernel-basis", help="emit the character kernel basis of a complex")
    sp.add_argument("--complex", metavar="FILE", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_kernel_basis)

    sp = sub.add_parser("verify-markov", help="verify a move set connects all bounded fibers")
    sp.add_argument("--complex", metavar="FILE")
    sp.add_argument("--space", required=True)
    sp.add_argument("--G", metavar="I,J,...")
    sp.add_argument("--moves", metavar="FILE", help="move set in matrix text format")
    sp.add_argument("--drop-move", type=int, metavar="I", help="remove move I before verifying")
    sp.add_argument("--degree-limit", type=int, required=True, metavar="T")
    sp.add_argument("--method", choices=("fibers", "tables"), default="fibers")
    sp.add_argument("--ceiling", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--kv", action="store_true", help="emit key=value lines")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_verify_markov)

    sp = sub.add_parser("degree-bound", help="minimal binomial degree vs the 2^(g-1) bound")
    sp.add_argument("--complex", metavar="FILE")
    sp.add_argument("--space", required=True)
    sp.add_argument("--G", metavar="I,J,...")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--ceiling", type=int)
    sp.add_argument("--workers", type=int, default=1,
                    help="accepted for flag symmetry; this search is serial")
    sp.add_argument("--kv", action="store_true")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_degree_bound)

    sp = sub.add_parser("neighborly", help="exact LP-certified neighborliness sweep")
    sp.add_argument("--complex", metavar="FILE")
    sp.add_argument("--space", required=True)
    sp.add_argument("--G", metavar="I,J,...")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--ceiling", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--kv", action="store_true")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_neighborly)

    sp = sub.add_parser("collapse", help="collapse a table to binary and check the lemmas")
    sp.add_argument("--space", required=True)
    sp.add_argument("--map", metavar="FILE", required=True)
    sp.add_argument("--table", metavar="FILE", required=True)
    sp.add_argument("--kv", action="store_true")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_collapse)

    sp = sub.add_parser("mi", help="multiinformation of a density")
    sp.add_argument("--space", required=True)
    sp.add_argument("--density", metavar="FILE", required=True)
    sp.add_argument("--kv", action="store_true")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_mi)

    sp = sub.add_parser("density", help="exponential family density for a parameter vector")
    sp.add_argument("--complex", metavar="FILE", required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--theta", metavar="FILE", required=True)
    sp.add_argument("--kv", action="store_true")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_density)

    sp = sub.add_parser("tableau", help="pretty-print a table as its configuration multiset")
    sp.add_argument("--table", metavar="FILE", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_tableau)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"margo: usage error: {exc}", file=sys.stderr)
        return 64
    except ResourceCeilingError as exc:
        print(f"margo: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"margo: usage error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
