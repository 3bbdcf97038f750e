"""Command-line driver: ``taufan <command> <algebra> [options]``.

Every command prints a human-readable section followed by a machine-readable
block of ``key: value`` lines introduced by ``--- machine-readable ---``.

Exit status: 0 when everything requested passed, 1 when a mathematical
inconsistency was detected, 2 when a cap or budget was hit and the result is
partial, 64 for usage and input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from .algebra import AlgebraError, AlgebraSyntaxError, BoundQuiverAlgebra, bundled_algebra, load_algebra
from .decompose import InconclusiveError, is_brick
from .gfan import c_matrix, format_matrix, g_matrix, transpose
from .polyhedra import Cone
from .render import ProjectionSpec, WallSpec, export_dot, render_2d, render_stereographic
from .representation import ModuleSyntaxError, RepresentationError, parse_modules
from .selfcheck import Workspace, is_kronecker, selfcheck
from .stability import (
    KRONECKER_FAMILIES,
    LIMIT_RAY,
    chambers,
    is_semistable,
    is_stable,
    kronecker_ray,
    kronecker_space,
    label_edges,
    stable_filtration,
    walls,
)
from .submodules import BudgetExceeded, UnsupportedField
from .tautheory import InconsistencyError, MutationError, fac, g_vector, hasse

EXIT_OK, EXIT_INCONSISTENT, EXIT_PARTIAL, EXIT_USAGE = 0, 1, 2, 64
BUNDLED = ("a2", "cycle3", "kronecker")
DEFAULT_KRONECKER_DEPTH = 4


class UsageError(Exception):
    """Invalid options or unreadable input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Report:
    """Collects human-readable lines and machine-readable fields."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.fields: dict[str, str] = {"command": command}
        self.exit = EXIT_OK

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def set(self, key: str, value) -> None:
        self.fields[key] = str(value)

    def partial(self) -> None:
        if self.exit == EXIT_OK:
            self.exit = EXIT_PARTIAL

    def write(self, out: TextIO) -> None:
        for line in self.lines:
            out.write(line + "\n")
        out.write("--- machine-readable ---\n")
        self.fields["exit"] = str(self.exit)
        for k, v in self.fields.items():
            out.write(f"{k}: {v}\n")


# -- option parsing helpers ----------------------------------------------------

def parse_vector(text: str, length: int | None = None) -> tuple[Fraction, ...]:
    try:
        vals = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational vector: {text!r}") from None
    if length is not None and len(vals) != length:
        raise UsageError(f"expected {length} coordinates, got {len(vals)}")
    return vals


def parse_bound(text: str | None, n: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"not an integer bound: {text!r}") from None
    if any(v < 0 for v in vals):
        raise UsageError("dimension bounds must be nonnegative")
    if len(vals) == 1:
        return tuple(vals * n)
    if len(vals) != n:
        raise UsageError(f"expected 1 or {n} bounds")
    return tuple(vals)


def threads_setting(cli_value: int | None) -> int:
    """Worker-pool size from ``--threads`` or ``TAUFAN_THREADS`` (default 1)."""
    if cli_value is not None:
        if cli_value < 1:
            raise UsageError("--threads must be positive")
        return cli_value
    env = os.environ.get("TAUFAN_THREADS")
    if env is None:
        return 1
    if not env.isdigit() or int(env) < 1:
        raise UsageError("TAUFAN_THREADS must be a positive integer")
    return int(env)


def load(name_or_path: str) -> BoundQuiverAlgebra:
    path = Path(name_or_path)
    if path.is_file():
        return load_algebra(str(path))
    if name_or_path in BUNDLED:
        return bundled_algebra(name_or_path)
    raise UsageError(f"no such algebra file: {name_or_path}")


def _vec_str(v: Sequence) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _graph_status(rep: Report, ws: Workspace) -> None:
    g = ws.graph
    rep.set("graph_status", g.status)
    rep.set("infinite_suspect", "yes" if g.infinite_suspect else "no")
    if g.infinite_suspect:
        rep.say("note: a cap was hit; possibly τ-tilting infinite (partial result)")
        rep.partial()


# -- commands ------------------------------------------------------------------------

def cmd_check(alg: BoundQuiverAlgebra, args, rep: Report) -> None:
    rep.say(f"vertices: {alg.n}")
    rep.say(f"arrows: {', '.join(f'{a.label}:{a.source}->{a.target}' for a in alg.quiver.arrows)}")
    rep.say(f"dimension: {alg.dimension}")
    rep.say("basis: " + " ".join(str(p) for p in alg.path_basis))
    rep.set("status", "ok")
    rep.set("vertices", alg.n)
    rep.set("dimension", alg.dimension)
    rep.set("field", alg.field.name)


def cmd_indec(ws: Workspace, args, rep: Report) -> None:
    cat = ws.catalog
    rep.say(f"dimension bound: {_vec_str(cat.dim_bound)}")
    for e in cat:
        rep.say(f"{e.id}\tdim={_vec_str(e.module.dims)}\tg={_vec_str(g_vector(e.module))}"
                f"\tbrick={'yes' if is_brick(e.module) else 'no'}")
    rep.set("indecomposables", len(cat))
    rep.set("bound", ",".join(str(b) for b in cat.dim_bound))


def cmd_pairs(ws: Workspace, args, rep: Report) -> None:
    for k, p in enumerate(ws.graph.pairs(), start=1):
        rep.say(f"{k}\t{p.label(ws.catalog)}\tkey={p.key_str()}")
    rep.set("pairs", len(ws.graph.nodes))
    _graph_status(rep, ws)


def cmd_mutation_graph(ws: Workspace, args, rep: Report) -> None:
    if args.labels and ws.graph.complete:
        if label_edges(ws.graph, ws.catalog):
            raise InconsistencyError("constructive and facet brick labels disagree")
    _write_text(args.dot, export_dot(ws.graph, args.labels, ws.catalog))
    rep.set("nodes", len(ws.graph.nodes))
    rep.set("edges", len(ws.graph.edges))
    _graph_status(rep, ws)


def cmd_hasse(ws: Workspace, args, rep: Report) -> None:
    poset = hasse(ws.graph)
    _write_text(args.dot, export_dot(ws.graph, False, ws.catalog, name="hasse"))
    rep.set("nodes", len(poset.nodes))
    rep.set("covers", len(poset.covers))
    rep.set("top", len(poset.top()))
    rep.set("bottom", len(poset.bottom()))
    _graph_status(rep, ws)


def _select_pairs(ws: Workspace, key: str | None):
    pairs = ws.graph.pairs()
    if key is None:
        return list(enumerate(pairs, start=1))
    for k, p in enumerate(pairs, start=1):
        if key in (str(k), p.key_str(), p.label(ws.catalog)):
            return [(k, p)]
    raise UsageError(f"no pair matches {key!r}")


def cmd_matrix(ws: Workspace, args, rep: Report, which: str) -> None:
    chosen = _select_pairs(ws, args.pair)
    for k, p in chosen:
        if p.size != p.n:
            continue
        m = g_matrix(p) if which == "G" else c_matrix(p)
        rep.say(f"{k}\t{p.label(ws.catalog)}\t{which}={format_matrix(m)}")
    rep.set("matrices", len(chosen))
    _graph_status(rep, ws)


def kronecker_wall_specs(alg: BoundQuiverAlgebra, depth: int) -> list[WallSpec]:
    """Two simple-module lines, ``depth`` rays on each side and the dotted limit ray."""
    specs = []
    for family, label in (("tau^-m(2)", "2"), ("tau^m(1)", "1")):
        specs.append(WallSpec(label, kronecker_space(alg, family, 0).cone))
    for k in range(1, depth + 1):
        pre = ("tau^-m(2)", "tau^-m(1/22)")[k % 2]
        inj = ("tau^m(1)", "tau^m(11/2)")[k % 2]
        m = k // 2
        specs.append(WallSpec(_family_label(pre, m), kronecker_space(alg, pre, m).cone))
        specs.append(WallSpec(_family_label(inj, m), kronecker_space(alg, inj, m).cone))
    specs.append(WallSpec("R", Cone.from_generators(2, [LIMIT_RAY]), limit=True))
    return specs


def _family_label(family: str, m: int) -> str:
    base = family.split("(", 1)[1].rstrip(")")
    if m == 0:
        return base
    sign = "-" if "^-" in family else ""
    return f"tau^{sign}{m}({base})"


def cmd_walls(ws: Workspace, args, rep: Report) -> None:
    alg = ws.algebra
    found = walls(ws.catalog)
    for w in found:
        rep.say(w.report_line())
    rep.set("walls", len(found))
    if is_kronecker(alg):
        depth = args.kronecker_depth if args.kronecker_depth is not None else DEFAULT_KRONECKER_DEPTH
        for family in KRONECKER_FAMILIES:
            for m in range(depth + 1):
                space = kronecker_space(ws.catalog.algebra, family, m)
                kind = "line" if space.cone.lineality else "ray"
                rep.say(f"FAMILY {family} m={m} dim={_vec_str(space.equality)} {kind}="
                        f"{_vec_str(kronecker_ray(family, m))}")
        rep.say(f"LIMIT ray={_vec_str(LIMIT_RAY)}")
        rep.set("kronecker_depth", depth)


def cmd_chambers(ws: Workspace, args, rep: Report) -> None:
    chs = chambers(ws.graph)
    for ch in chs:
        rep.say(ch.report_line())
    rep.set("chambers", len(chs))
    _graph_status(rep, ws)


def cmd_stability(ws: Workspace, args, rep: Report) -> None:
    if args.module is None or args.vector is None:
        raise UsageError("stability needs --module PATH and --vector")
    alg = ws.catalog.algebra
    v = parse_vector(args.vector, alg.n)
    try:
        text = Path(args.module).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.module}: {exc.strerror}") from None
    mods = parse_modules(alg, text)
    for M in mods:
        semi, stab = is_semistable(M, v), is_stable(M, v)
        rep.say(f"module {M.name} dim={_vec_str(M.dims)}")
        rep.say(f"semistable: {'yes' if semi else 'no'}, stable: {'yes' if stab else 'no'}")
        if semi and not M.is_zero():
            filt = stable_filtration(M, v)
            rep.say("filtration factors: " + " ".join(_vec_str(d) for d in filt.factor_dims()))
    if len(mods) == 1:
        rep.set("semistable", "yes" if is_semistable(mods[0], v) else "no")
        rep.set("stable", "yes" if is_stable(mods[0], v) else "no")
    rep.set("modules", len(mods))


def cmd_table(ws: Workspace, args, rep: Report) -> None:
    rep.say("C is (G^T)^-1; its columns are the c-vectors (C^T lists them as rows).")
    for k, p in enumerate(ws.graph.pairs(), start=1):
        if p.size != p.n:
            continue
        G, C = g_matrix(p), c_matrix(p)
        members = fac(list(p.T), ws.catalog).sorted_ids(ws.catalog) if p.T else []
        rep.say(f"chamber {k}\t{p.label(ws.catalog)}\tG={format_matrix(G)}\tC={format_matrix(C)}"
                f"\tC^T={format_matrix(transpose(C))}\tFac T={{{', '.join(members) or '0'}}}")
    rep.set("rows", len(ws.graph.nodes))
    _graph_status(rep, ws)


def cmd_render(ws: Workspace, args, rep: Report) -> None:
    alg = ws.algebra
    if args.out is None:
        raise UsageError("render needs --out PATH")
    if alg.n == 2:
        if is_kronecker(alg):
            depth = args.kronecker_depth if args.kronecker_depth is not None else DEFAULT_KRONECKER_DEPTH
            specs = kronecker_wall_specs(ws.catalog.algebra, depth)
        else:
            specs = [WallSpec(w.brick_id, w.space.cone) for w in walls(ws.catalog)]
        svg = render_2d(specs)
    elif alg.n == 3:
        point = tuple(int(x) if x.denominator == 1 else x for x in parse_vector(args.project, 3)) \
            if args.project else (1, 1, 1)
        specs = [WallSpec(w.brick_id, w.space.cone) for w in walls(ws.catalog)]
        svg = render_stereographic(specs, ProjectionSpec(point, args.samples, args.view_radius))
    else:
        raise UsageError("render supports two or three vertices")
    _write_text(args.out, svg)
    rep.set("walls_drawn", sum(1 for s in specs if not s.limit))
    rep.set("limit_walls", sum(1 for s in specs if s.limit))
    rep.set("output", args.out)


def cmd_selfcheck(ws: Workspace, args, rep: Report) -> None:
    result = selfcheck(ws, args.kronecker_depth if args.kronecker_depth is not None else 5)
    for r in result.results:
        rep.say(f"{r.name}: {r.status}" + (f" ({r.detail})" if r.detail else ""))
        rep.set(f"suite.{r.name}", r.status)
    rep.set("graph_status", result.graph_status)
    if result.failed:
        first = result.failed[0]
        rep.say(f"FAILED {first.name}: {first.detail}")
        rep.exit = EXIT_INCONSISTENT
    elif result.skipped:
        rep.partial()
    rep.set("failed", len(result.failed))
    rep.set("skipped", len(result.skipped))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="taufan", description="τ-tilting pairs, g-vector fans and stability walls.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("algebra", help="algebra file, or one of: " + ", ".join(BUNDLED))
        p.add_argument("--max-nodes", type=int, default=512)
        p.add_argument("--max-depth", type=int, default=64)
        p.add_argument("--max-module-dim", type=int, default=16,
                       help="largest summand dimension admitted during mutation")
        p.add_argument("--dim-bound", help="catalog bound: one integer or one per vertex")
        p.add_argument("--threads", type=int, help="worker-pool size (also TAUFAN_THREADS)")
        return p

    common(sub.add_parser("check", help="validate an algebra file"))
    p = common(sub.add_parser("indec", help="list indecomposables"))
    p.add_argument("--max-dim", help="per-vertex dimension bound (alias of --dim-bound)")
    common(sub.add_parser("pairs", help="enumerate τ-tilting pairs"))
    p = common(sub.add_parser("mutation-graph", help="export the mutation graph as DOT"))
    p.add_argument("--dot", default="-")
    p.add_argument("--labels", action="store_true")
    p = common(sub.add_parser("hasse", help="export the Hasse poset as DOT"))
    p.add_argument("--dot", default="-")
    for name in ("gmatrix", "cmatrix"):
        p = common(sub.add_parser(name, help=f"print {name[0].upper()}-matrices"))
        p.add_argument("--pair", help="row number, key or label of one pair")
    p = common(sub.add_parser("walls", help="list walls"))
    p.add_argument("--kronecker-depth", type=int)
    common(sub.add_parser("chambers", help="list chambers"))
    p = common(sub.add_parser("stability", help="semistability of modules from a file"))
    p.add_argument("--module")
    p.add_argument("--vector")
    common(sub.add_parser("table", help="chambers, pairs, G, C and torsion classes"))
    p = common(sub.add_parser("render", help="draw the wall-and-chamber structure as SVG"))
    p.add_argument("--out")
    p.add_argument("--project", help="projection point x,y,z (three vertices only)")
    p.add_argument("--kronecker-depth", type=int)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--view-radius", type=float, default=8.0)
    p = common(sub.add_parser("selfcheck", help="run every invariant suite"))
    p.add_argument("--kronecker-depth", type=int)
    return parser


COMMANDS = {
    "indec": cmd_indec, "pairs": cmd_pairs, "mutation-graph": cmd_mutation_graph, "hasse": cmd_hasse,
    "gmatrix": lambda ws, a, r: cmd_matrix(ws, a, r, "G"),
    "cmatrix": lambda ws, a, r: cmd_matrix(ws, a, r, "C"),
    "walls": cmd_walls, "chambers": cmd_chambers, "stability": cmd_stability, "table": cmd_table,
    "render": cmd_render, "selfcheck": cmd_selfcheck,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Parses ``argv``, runs the command and writes the report; returns the exit status."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        rep.set("threads", threads_setting(args.threads))
        for name in ("max_nodes", "max_depth", "max_module_dim"):
            if getattr(args, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if getattr(args, "kronecker_depth", None) is not None and args.kronecker_depth < 0:
            raise UsageError("--kronecker-depth must be nonnegative")
        alg = load(args.algebra)
        if args.command == "check":
            cmd_check(alg, args, rep)
        else:
            bound_text = getattr(args, "max_dim", None) or args.dim_bound
            ws = Workspace(alg, args.max_nodes, args.max_depth, parse_bound(bound_text, alg.n),
                           args.max_module_dim)
            if not alg.field.is_prime:
                rep.set("catalog_field", "f2 (integer structure constants reduced modulo 2)")
            COMMANDS[args.command](ws, args, rep)
    except (UsageError, AlgebraSyntaxError, AlgebraError, ModuleSyntaxError, RepresentationError,
            UnsupportedField) as exc:
        rep.say(f"error: {exc}")
        rep.set("error", type(exc).__name__)
        rep.exit = EXIT_USAGE
    except (BudgetExceeded, InconclusiveError) as exc:
        rep.say(f"budget exceeded: {exc}")
        rep.set("error", type(exc).__name__)
        rep.exit = EXIT_PARTIAL
    except (InconsistencyError, MutationError) as exc:
        rep.say(f"inconsistency: {exc}")
        rep.set("error", type(exc).__name__)
        rep.exit = EXIT_INCONSISTENT
    rep.write(out)
    return rep.exit


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
