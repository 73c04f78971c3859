import argparse
from typing import Any, Callable, Dict, List, Optional, Tuple

from bounds import (
    BoundNotApplicable,
    best_rules,
    cr_lower_crossing_lemma,
    cr_lower_linear,
    cr_upper_trivial,
    edge_bound_forms,
    guy_f,
    min_edges_critical,
)
from census import GraphCensus
from coloring import ColoringSolver, SolverBudgetExceeded
from config import Config
from drawings import count_crossings, cylindrical_count, cylindrical_drawing, drawing_to_json, render_svg
from graph import Graph, read_graph6_file, to_graph6
from logger import LOG, configure_logging
from report_writer import ReportWriter
from verifier import audit_graph_albertson, verify_albertson, verify_large_n

VERSION = "1.0.0"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

Outcome = Tuple[Any, int]


class CommandHandler:
    """Handles all command-line interface logic for the Albertson verifier"""

    def __init__(self, config: Config):
        """
        Initialize the command handler

        Args:
            config: Loaded configuration; flags given on the command line override it
        """
        self.config = config
        self.parser = self._create_parser()
        self._setup_commands()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create the main argument parser"""
        parser = argparse.ArgumentParser(
            prog="albertson",
            description="Exact checks around Albertson's conjecture for small chromatic numbers",
        )
        parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
        self.subparsers = parser.add_subparsers(title="Commands", dest="command", required=True)

        # Flags shared by every subcommand
        self.common = argparse.ArgumentParser(add_help=False)
        self.common.add_argument("--out", type=str, help="Write the JSON report to PATH instead of stdout")
        self.common.add_argument("--workers", type=int, help="Worker processes for enumeration")
        self.common.add_argument("--node-budget", type=int, help="Branch-node budget of the coloring solver")
        self.common.add_argument("--cache-dir", type=str, help="Directory for graph6 caches and census outputs")
        return parser

    def _add(self, name: str, help_text: str, func: Callable) -> argparse.ArgumentParser:
        sub = self.subparsers.add_parser(name, help=help_text, parents=[self.common])
        sub.set_defaults(func=func)
        return sub

    def _setup_commands(self):
        """Setup all available commands"""
        chromatic = self._add("chromatic", "Chromatic number of every graph in a graph6 file", self._chromatic)
        chromatic.add_argument("graph6_file", type=str)

        critical = self._add("critical", "Test every graph in a graph6 file for r-criticality", self._critical)
        critical.add_argument("graph6_file", type=str)
        critical.add_argument("--r", type=int, required=True)

        bounds = self._add("bounds", "Crossing-number bounds from n and m", self._bounds)
        bounds.add_argument("--n", type=int, required=True)
        bounds.add_argument("--m", type=int, required=True)
        bounds.add_argument("--borodin", action="store_true", help="Chromatic number is at least 7")

        edge_bound = self._add("edge-bound", "Edge lower bounds for r-critical graphs on n vertices", self._edge_bound)
        edge_bound.add_argument("--r", type=int, required=True)
        edge_bound.add_argument("--n", type=int, required=True)
        edge_bound.add_argument("--allow-complete", action="store_true", help="Do not assume G != K_r")

        verify = self._add("verify-albertson", "Case analysis for 7 <= r <= 12", self._verify_albertson)
        verify.add_argument("--r", type=int, required=True)
        verify.add_argument("--window", type=int, help="Largest n checked one by one (default: multiplier * r)")

        large = self._add("verify-large-n", "The n >= 4r regime for r >= 13", self._verify_large_n)
        large.add_argument("--r", type=int, required=True)

        small = self._add("lemma1", "Exhaustive check of r-critical graphs on at most r+2 vertices", self._lemma1)
        small.add_argument("--r", type=int, required=True)

        census = self._add("census", "All r-critical graphs on n vertices", self._census)
        census.add_argument("--n", type=int, required=True)
        census.add_argument("--r", type=int, required=True)

        excess = self._add("excess-audit", "Check excess bounds over every r-critical graph in the census",
                           self._excess_audit)
        excess.add_argument("--r", type=int, required=True)
        excess.add_argument("--n-max", type=int, help="Largest order audited (default: census_max_n)")

        draw = self._add("draw-kn", "Two-circle drawing of K_n and its crossing count", self._draw_kn)
        draw.add_argument("--n", type=int, required=True)
        draw.add_argument("--svg", type=str, help="Also render the drawing to this SVG file")

        audit = self._add("audit", "Check cr(G) >= cr(K_chi) on graphs from a graph6 file", self._audit)
        audit.add_argument("graph6_file", type=str)

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Parse argv, run one subcommand and emit its report

        Returns:
            0 on success or PASS, 1 on FAIL, 2 on usage or input errors, 3 when the solver budget runs out
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        try:
            self.config.apply_overrides(args.node_budget, args.workers, args.cache_dir)
        except ValueError as e:
            LOG.error(f"Invalid option: {e}")
            return EXIT_USAGE
        configure_logging(self.config.log_level, self.config.log_file)

        try:
            report, code = args.func(args)
            ReportWriter(args.out).emit(report)
        except SolverBudgetExceeded as e:
            LOG.error(f"{args.command}: {e}")
            return EXIT_BUDGET
        except (ValueError, OSError) as e:
            LOG.error(f"{args.command}: {e}")
            return EXIT_USAGE
        LOG.info(f"{args.command} finished with exit code {code}")
        return code

    def _solver(self) -> ColoringSolver:
        return ColoringSolver(self.config.node_budget)

    def _census_engine(self) -> GraphCensus:
        return GraphCensus(
            max_n=self.config.census_max_n,
            cache_dir=self.config.cache_dir,
            workers=self.config.workers,
            node_budget=self.config.node_budget,
        )

    def _read_graphs(self, path: str) -> List[Graph]:
        graphs = read_graph6_file(path)
        if not graphs:
            raise ValueError(f"{path} holds no graphs")
        LOG.info(f"Read {len(graphs)} graphs from {path}")
        return graphs

    def _chromatic(self, args) -> Outcome:
        solver = self._solver()
        results = []
        for g in self._read_graphs(args.graph6_file):
            chi, coloring = solver.optimal_coloring(g)
            results.append({
                "graph6": to_graph6(g),
                "n": g.n,
                "m": g.m,
                "chi": chi,
                "coloring": {str(v): c for v, c in sorted(coloring.items())},
                "nodes_visited": solver.nodes_visited,
            })
        return {"command": "chromatic", "graphs": results}, EXIT_OK

    def _critical(self, args) -> Outcome:
        solver = self._solver()
        results = []
        for g in self._read_graphs(args.graph6_file):
            entry = solver.audit(g, args.r).to_dict()
            entry.update({"graph6": to_graph6(g), "n": g.n, "m": g.m})
            results.append(entry)
        critical = sum(1 for entry in results if entry["critical"])
        LOG.info(f"{critical} of {len(results)} graphs are {args.r}-critical")
        return {"command": "critical", "r": args.r, "graphs": results}, EXIT_OK

    def _bounds(self, args) -> Outcome:
        linear = cr_lower_linear(args.n, args.m, enable_borodin=args.borodin)
        try:
            lemma = cr_lower_crossing_lemma(args.n, args.m)
        except BoundNotApplicable:
            lemma = None
        LOG.info(f"n={args.n} m={args.m}: cr >= {linear.value} by {linear.rule.value}")
        report = {
            "command": "bounds",
            "n": args.n,
            "m": args.m,
            "borodin": args.borodin,
            "cr_lower_linear": linear,
            "best_rules": best_rules(args.n, args.m),
            "crossing_lemma": lemma,
            "cr_upper_trivial": cr_upper_trivial(args.m),
        }
        return report, EXIT_OK

    def _edge_bound(self, args) -> Outcome:
        assume_not_complete = not args.allow_complete
        best = min_edges_critical(args.r, args.n, assume_not_complete)
        report = {
            "command": "edge-bound",
            "r": args.r,
            "n": args.n,
            "assume_not_complete": assume_not_complete,
            "min_edges": best,
            "forms": edge_bound_forms(args.r, args.n, assume_not_complete),
        }
        return report, EXIT_OK

    def _verify_albertson(self, args) -> Outcome:
        window = args.window if args.window is not None else self.config.window_for(args.r)
        report = verify_albertson(args.r, window)
        return report, EXIT_OK if report.verdict == "PASS" else EXIT_FAIL

    def _verify_large_n(self, args) -> Outcome:
        record = verify_large_n(args.r)
        report = {"command": "verify-large-n", "r": args.r, "case": record, "verdict": record.verdict}
        return report, EXIT_OK if record.verdict == "PASS" else EXIT_FAIL

    def _lemma1(self, args) -> Outcome:
        report = self._census_engine().verify_lemma1(args.r)
        return report, EXIT_OK if report.verdict == "PASS" else EXIT_FAIL

    def _census(self, args) -> Outcome:
        found = self._census_engine().census_critical(args.n, args.r)
        report = {
            "command": "census",
            "n": args.n,
            "r": args.r,
            "count": len(found),
            "graphs": [to_graph6(g) for g in found],
        }
        LOG.info(f"{len(found)} {args.r}-critical graphs on {args.n} vertices")
        return report, EXIT_OK

    def _excess_audit(self, args) -> Outcome:
        audit = self._census_engine().audit_excess_bounds(args.r, args.n_max)
        return audit, EXIT_OK if audit.verdict == "PASS" else EXIT_FAIL

    def _draw_kn(self, args) -> Outcome:
        d = cylindrical_drawing(args.n, max_n=self.config.drawing_max_n)
        counted = count_crossings(d)
        predicted = cylindrical_count(args.n)
        target = guy_f(args.n)
        verdict = "PASS" if counted.total == predicted == target else "FAIL"
        if args.svg:
            render_svg(d, args.svg, title=f"K_{args.n}: {counted.total} crossings")
        LOG.info(f"K_{args.n}: drawing has {counted.total} crossings, formula {target}: {verdict}")
        report = {
            "command": "draw-kn",
            "n": args.n,
            "crossings": counted,
            "cylindrical_count": predicted,
            "guy_f": target,
            "svg": args.svg,
            "drawing": drawing_to_json(d),
            "perturbation_seed": d.construction["seed"],
            "verdict": verdict,
        }
        return report, EXIT_OK if verdict == "PASS" else EXIT_FAIL

    def _audit(self, args) -> Outcome:
        solver = self._solver()
        results: List[Dict[str, Any]] = []
        certified = True
        for g in self._read_graphs(args.graph6_file):
            audit = audit_graph_albertson(g, solver)
            entry = audit.to_dict()
            entry["graph6"] = to_graph6(g)
            results.append(entry)
            certified = certified and audit.certified
        report = {"command": "audit", "graphs": results, "verdict": "CERTIFIED" if certified else "INCONCLUSIVE"}
        return report, EXIT_OK if certified else EXIT_FAIL
