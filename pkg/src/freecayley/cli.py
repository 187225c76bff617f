"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 unreadable input or bad
arguments, 3 a search budget or size cap was exceeded, 4 the instance is
below p^2 and ``--allow-small`` was not given.  Output is collected and
printed only once a command has succeeded.
"""

from __future__ import annotations

import argparse
import shutil
import sys
from pathlib import Path

from . import cayley as cy
from . import formats as fmt
from . import reduce as rd
from .codes import DistanceBudgetExceeded, certify
from .graph import (
    DEFAULT_MAX_NODES,
    BudgetExhausted,
    Check,
    Graph,
    chromatic_number,
    is_equitable,
    max_clique,
    max_independent_set,
    seeded_ensemble,
)
from .gf import is_prime

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET, EXIT_SMALL = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> tuple[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise fmt.FormatError(f"cannot read {path}: {exc}") from None
    return text, fmt.sniff(text)


def load_graph(path: str) -> Graph:
    text, kind = _read(path)
    if kind != "dimacs":
        raise fmt.FormatError(f"{path} is not a DIMACS graph")
    return fmt.read_dimacs(text)


def load_spec(path: str) -> cy.CayleySpec:
    text, kind = _read(path)
    if kind != "cayley":
        raise fmt.FormatError(f"{path} is not a cayley spec")
    return fmt.read_cayley(text, Path(path).parent)


def load_code(path: str, budget: int):
    text, kind = _read(path)
    if kind != "code":
        raise fmt.FormatError(f"{path} is not a code file")
    code = fmt.read_code(text)
    return code if code.distance is not None else certify(code, budget)


def _elem(e) -> str:
    return "".join(map(str, e)) if all(x < 10 for x in e) else ",".join(map(str, e))


def _need_prime(p: int) -> None:
    if not is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")


def _outdir(args) -> Path:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _check_line(name: str, check: Check) -> str:
    if check.ok:
        return f"PASS {name}"
    return f"FAIL {name}: {check.reason}" + ("" if check.witness is None else f" witness={check.witness}")


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> tuple[int, list[str]]:
    text, kind = _read(args.input)
    out = []
    if kind == "dimacs":
        g = fmt.read_dimacs(text)
        if args.what == "clique":
            k, wit = max_clique(g, args.max_nodes)
            out = [f"omega={k}", "witness=" + " ".join(str(v + 1) for v in wit)]
        elif args.what == "indep":
            k, wit = max_independent_set(g, args.max_nodes)
            out = [f"alpha={k}", "witness=" + " ".join(str(v + 1) for v in wit)]
        else:
            k, col = chromatic_number(g, args.max_nodes)
            out = [f"chi={k}", "colouring=" + " ".join(str(c) for c in col)]
    elif kind == "cayley":
        spec = fmt.read_cayley(text, Path(args.input).parent)
        if args.what == "clique":
            k, wit = cy.clique_number(spec, args.max_nodes)
            out = [f"omega={k}", "witness=" + " ".join(_elem(e) for e in wit)]
        elif args.what == "indep":
            k, wit = cy.independence_number(spec, args.max_nodes)
            out = [f"alpha={k}", "witness=" + " ".join(_elem(e) for e in wit)]
        else:
            b = cy.chromatic_bounds(spec, args.max_nodes)
            if b.exact:
                k = b.lower
                out = [f"chi={k}", "certificate=coclique bound met by a tiling"]
            else:
                k, _ = chromatic_number(cy.materialize(spec, args.max_vertices), args.max_nodes)
                out = [f"chi={k}", "certificate=exact search on the materialised graph"]
    else:
        raise fmt.FormatError(f"solve expects a DIMACS graph or a cayley spec, got {kind}")
    return EXIT_OK, out


def cmd_reduce(args) -> tuple[int, list[str]]:
    _need_prime(args.p)
    x = load_graph(args.input)
    rep = rd.reduce_clique(x, args.p, allow_small=args.allow_small, solve=not args.no_solve,
                           max_nodes=args.max_nodes)
    out_dir = _outdir(args)
    stem = Path(args.input).stem
    files = {
        out_dir / f"{stem}.cayley": fmt.write_cayley(rep.spec),
        out_dir / f"{stem}.code": fmt.write_code(rep.code),
        out_dir / f"{stem}.report": rep.to_text(),
    }
    for path, body in files.items():
        path.write_text(body)
    lines = rep.to_text().splitlines() + [f"wrote={p}" for p in files]
    if not args.no_figures:
        nb = cy.neighborhood_of_identity(rep.spec)
        _, wit = max_clique(nb, args.max_nodes)
        fig = out_dir / f"{stem}_neighbourhood.png"
        from .plotting import neighbourhood_figure
        neighbourhood_figure(nb, [_elem(c) for c in rep.spec.connection], set(wit), fig,
                             f"identity neighbourhood, p={args.p}, dim={rep.quotient_dim}")
        lines.append(f"figure={fig}")
    return EXIT_OK, lines


def cmd_recover(args) -> tuple[int, list[str]]:
    _need_prime(args.p)
    x = load_graph(args.input)
    if args.spec:
        omega_q = cy.clique_number(load_spec(args.spec), args.max_nodes)[0]
    elif args.omega_q is not None:
        omega_q = args.omega_q
    else:
        raise UsageError("recover needs --spec or --omega-q")
    value, path = rd.recover_omega(omega_q, args.p, x)
    return EXIT_OK, [f"omega_quotient={omega_q}", f"omega={value}", f"caveat_path={path}"]


def cmd_gadget(args) -> tuple[int, list[str]]:
    base = load_spec(args.spec)
    if not isinstance(base.group, cy.ElementaryGroup) or not 1 <= args.level <= base.group.n:
        raise UsageError("--level must lie in 1..n for a Z_p^n spec")
    gs = rd.gadget(base, args.level)
    out_dir = _outdir(args)
    path = out_dir / f"{Path(args.spec).stem}_gamma{args.level}.cayley"
    path.write_text(fmt.write_cayley(gs.spec))
    lines = [f"level={gs.level}", f"dimension={gs.spec.group.n}", f"conn_size={gs.spec.degree}", f"wrote={path}"]
    if args.solve:
        alpha = cy.independence_number(gs.spec, args.max_nodes)[0]
        chi = cy.chromatic_number_cayley(gs.spec, max_nodes=args.max_nodes, max_vertices=args.max_vertices)
        omega = cy.clique_number(base, args.max_nodes)[0]
        lines += [f"alpha={alpha}", f"chi={chi}", f"omega_base={omega}"]
    return EXIT_OK, lines


def cmd_approx(args) -> tuple[int, list[str]]:
    _need_prime(args.p)
    x = load_graph(args.input)
    res = rd.approx_clique_driver(x, args.p, oracle=rd.default_oracle(args.max_nodes), max_nodes=args.max_nodes)
    lines = [f"n={res.n}", f"y={res.y}", f"bound={res.bound}"]
    lines += [f"level {i}: chi={c}{'' if c == args.p ** res.n else ' (> p^n)'}" for i, c in res.levels]
    lines += [f"omega_gamma={res.omega_gamma}",
              f"bracket={'ok' if res.bracket_ok() else 'violated'} [{res.bound}, {res.bound * args.p})",
              f"caveat={res.caveat}"]
    if not args.no_figures:
        from .plotting import levels_figure
        fig = _outdir(args) / f"{Path(args.input).stem}_levels.png"
        levels_figure(res.levels, args.p, res.n, res.y, fig)
        lines.append(f"figure={fig}")
    return EXIT_OK, lines


def cmd_embed(args) -> tuple[int, list[str]]:
    x = load_graph(args.input)
    emb = rd.embed_cubelike(x)
    out_dir = _outdir(args)
    stem = Path(args.input).stem
    path = out_dir / f"{stem}_cubelike.cayley"
    path.write_text(fmt.write_cayley(emb.spec))
    lines = [f"m={emb.m}", f"padded_order={emb.padded}", f"code_k={emb.code.k}", f"size={emb.size}",
             f"size_bound={emb.size_bound}", _check_line("induced copy", emb.induced),
             "image=" + " ".join(_elem(e) for e in emb.image), f"wrote={path}"]
    if not args.no_figures:
        from .plotting import embedding_figure
        img = emb.image
        conn = emb.spec.connection_set()
        grp = emb.spec.group
        seen = Graph(len(img), [(i, j) for i in range(len(img)) for j in range(i + 1, len(img))
                                if grp.div(img[i], img[j]) in conn])
        fig = out_dir / f"{stem}_embedding.png"
        embedding_figure(x, seen, fig, f"v={x.order}, cubelike order {emb.size}")
        lines.append(f"figure={fig}")
    return EXIT_OK, lines


def cmd_lift(args) -> tuple[int, list[str]]:
    base = load_spec(args.spec)
    if not isinstance(base.group, cy.ElementaryGroup):
        raise UsageError("lift needs a Z_p^m spec")
    group_text, kind = _read(args.group)
    if kind != "group":
        raise fmt.FormatError(f"{args.group} is not a group table")
    table = fmt.read_group(group_text)
    p = base.group.p
    h = args.h if args.h is not None else cy.cauchy_element(table, p)
    lifted = cy.lift_connection_set(base, table, h)
    out_dir = _outdir(args)
    gname = Path(args.group).name
    if (out_dir / gname).resolve() != Path(args.group).resolve():
        shutil.copyfile(args.group, out_dir / gname)
    path = out_dir / f"{Path(args.spec).stem}_lifted.cayley"
    path.write_text(fmt.write_cayley(lifted, groupfile=gname, p=p))
    report = cy.verify_lift(base, lifted, h, args.max_vertices)
    om_b = cy.clique_number(base, args.max_nodes)[0]
    om_l = cy.clique_number(lifted, args.max_nodes)[0]
    lines = [f"h={h}", f"blocks={report.blocks}", f"expected_blocks={report.expected_blocks}",
             _check_line("blocks are isomorphic copies", report.check),
             f"omega_base={om_b}", f"omega_lifted={om_l}", f"wrote={path}"]
    return (EXIT_OK if report.ok and om_b == om_l else EXIT_FAIL), lines


def _graphs_for(args) -> list[Graph]:
    path = args.graph or args.input
    if path:
        return [load_graph(path)]
    return [g for g in seeded_ensemble(args.seed) if g.order <= args.v]


def _over_graphs(name: str, graphs: list[Graph], check) -> list[str]:
    """One FAIL line per failing graph, or a single PASS line for the lot."""
    fails = []
    for g in graphs:
        c = check(g)
        if not c.ok:
            fails.append(_check_line(f"{name} {g!r} edges={g.edges()}", c))
    return fails or [f"PASS {name} ({len(graphs)} graphs)"]


def cmd_verify(args) -> tuple[int, list[str]]:
    _need_prime(args.p)
    lines: list[str] = []
    suite = args.suite
    if suite == "sidon":
        if args.v is None:
            raise UsageError("sidon suite needs --v")
        rep = cy.check_sum_distinctness(args.v, args.p)
        lines = [_check_line(f"{name} p={args.p} v={args.v}", c) for name, c in rep.checks.items()]
        lines.append(f"permitted_collisions={len(rep.permitted)}")
    elif suite == "cover":
        lines = _over_graphs(f"cover p={args.p}", _graphs_for(args), lambda g: cy.cover_structure(g, args.p))
    elif suite == "ladder":
        def ladder(g: Graph) -> Check:
            om = max_clique(g, args.max_nodes)[0]
            got = cy.clique_number(cy.free_connection_set(g, args.p), args.max_nodes)[0]
            want = cy.expected_free_omega(om, args.p)
            return Check(got == want, f"omega(X)={om}, omega(Z_p(X))={got}, expected {want}")
        lines = _over_graphs(f"ladder p={args.p}", _graphs_for(args), ladder)
    elif suite == "distance-ladder":
        if not args.code or not (args.graph or args.input):
            raise UsageError("distance-ladder needs --code and --graph")
        code = load_code(args.code, args.budget)
        x = load_graph(args.graph or args.input)
        if code.n != x.order:
            raise UsageError(f"code length {code.n} differs from graph order {x.order}")
        fq = cy.free_quotient(x, code.p, code)
        d = code.distance.d
        lines.append(_check_line("d>=3 code is a coclique", cy.code_is_coclique(fq)))
        if code.distance_at_least(5):
            lines.append(_check_line("d>=5 induced copy", cy.verify_induced_copy(fq)))
        else:
            lines.append(f"SKIP d>=5 induced copy: certified d={d}")
        if code.distance_at_least(7):
            om = max_clique(x, args.max_nodes)[0]
            got = cy.clique_number(fq.spec, args.max_nodes)[0]
            want = cy.expected_free_omega(om, code.p)
            lines.append(_check_line("d>=7 omega ladder", Check(got == want, f"omega={got}, expected {want}")))
        else:
            lines.append(f"SKIP d>=7 omega ladder: certified d={d}")
    elif suite == "gadget":
        if not args.spec:
            raise UsageError("gadget suite needs --spec")
        base = load_spec(args.spec)
        p, n = base.group.p, base.group.n
        omega = cy.clique_number(base, args.max_nodes)[0]
        for i in range(1, n + 1):
            g = cy.materialize(rd.gadget(base, i).spec, args.max_vertices)
            alpha = max_independent_set(g, args.max_nodes)[0]
            chi = chromatic_number(g, args.max_nodes)[0]
            lines.append(_check_line(f"alpha(Gamma_{i}) = min(p^i, omega)",
                                     Check(alpha == min(p ** i, omega), f"alpha={alpha}")))
            lines.append(_check_line(f"chi(Gamma_{i}) = p^n iff omega >= p^i",
                                     Check((chi == p ** n) == (omega >= p ** i), f"chi={chi}, omega={omega}")))
    elif suite == "equitable":
        if not args.code or not (args.graph or args.input):
            raise UsageError("equitable suite needs --code and --graph")
        code = load_code(args.code, args.budget)
        x = load_graph(args.graph or args.input)
        spec = cy.free_connection_set(x, code.p)
        part = cy.coset_partition(spec, code)
        lines.append(_check_line("coset partition is equitable",
                                 is_equitable(cy.materialize(spec, args.max_vertices), part)))
    elif suite == "transfer":
        def transfer(g: Graph) -> Check:
            fq = cy.free_quotient(g, args.p)
            k, clique = max_clique(g, args.max_nodes)
            back = rd.recover_clique(list(cy.clique_up(clique, fq).image), fq)
            return Check(g.is_clique(back) and len(back) == k, f"recovered {back} from a {k}-clique")
        lines = _over_graphs(f"transfer p={args.p}", _graphs_for(args), transfer)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown suite {suite}")
    failed = any(ln.startswith("FAIL") for ln in lines)
    return (EXIT_FAIL if failed else EXIT_OK), lines


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime (default 2)")
    common.add_argument("--seed", type=int, default=2024, help="seed for generated test graphs")
    common.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES, help="search node cap")
    common.add_argument("--max-vertices", type=int, default=cy.DEFAULT_MAX_VERTICES,
                        help="cap on materialised Cayley graphs")
    common.add_argument("--deterministic", action="store_true",
                        help="single-threaded search (the solvers are always single-threaded)")
    common.add_argument("--output-dir", default=".", help="directory for written files")

    parser = argparse.ArgumentParser(prog="freecayley", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="exact clique, colouring or independence number")
    p.add_argument("input")
    p.add_argument("--what", choices=["clique", "chroma", "indep"], default="clique")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="build the Goppa quotient of Z_p(X)")
    p.add_argument("input")
    p.add_argument("--allow-small", action="store_true", help="use the trivial code when v < p^2")
    p.add_argument("--no-solve", action="store_true", help="skip the clique number computation")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("recover", parents=[common], help="omega(X) from the quotient clique number")
    p.add_argument("input")
    p.add_argument("--spec")
    p.add_argument("--omega-q", type=int)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("gadget", parents=[common], help="build the chromatic gadget Gamma_i")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--solve", action="store_true")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("approx", parents=[common], help="floor(log_p omega) from chromatic numbers")
    p.add_argument("input")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("embed", parents=[common], help="induced copy in a small cubelike graph")
    p.add_argument("input")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("lift", parents=[common], help="lift a Z_p^m spec into G^m")
    p.add_argument("--spec", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--h", type=int, help="element of order p (default: first found)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("input", nargs="?")
    p.add_argument("--suite", required=True,
                   choices=["sidon", "cover", "ladder", "distance-ladder", "gadget", "equitable", "transfer"])
    p.add_argument("--v", type=int)
    p.add_argument("--graph")
    p.add_argument("--code")
    p.add_argument("--spec")
    p.add_argument("--budget", type=int, default=1 << 20, help="codeword enumeration budget")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_nodes <= 0 or args.max_vertices <= 0:
        print("error: caps must be positive", file=sys.stderr)
        return EXIT_PARSE
    if args.command == "verify" and args.v is None and args.suite in ("cover", "ladder", "transfer"):
        args.v = 6
    try:
        status, lines = args.func(args)
    except (fmt.FormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExhausted, cy.SizeCapExceeded, DistanceBudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except rd.SmallInstance as exc:
        print(f"small instance: {exc}; rerun with --allow-small or solve directly", file=sys.stderr)
        return EXIT_SMALL
    print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
