"""
Isomorph-free enumeration of small graphs, the exhaustive check that the
only r-critical graphs on at most r+2 vertices are K_r and K_{r+2} minus C5,
and an audit of the excess bounds over every critical graph found.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from bounds import BoundRule
from coloring import DEFAULT_NODE_BUDGET, ColoringSolver, excess
from graph import (
    Graph,
    GraphError,
    iter_bits,
    make_complete,
    make_kr2_minus_c5,
    read_graph6_file,
    to_graph6,
    write_graph6_file,
)
from logger import LOG

DEFAULT_MAX_N = 8
MAX_LEMMA_R = 6


class CensusCapExceeded(ValueError):
    """Enumeration requested beyond the configured vertex cap."""


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """
    Minimum upper-triangle adjacency string over all vertex orders.

    The string is read in graph6 column order (pairs (0,1), (0,2), (1,2),
    (0,3), ...) and stored as an integer whose most significant bit is the
    first pair. Two graphs share a CanonicalForm iff they are isomorphic.
    """

    n: int
    code: int

    @property
    def bits(self) -> str:
        width = self.n * (self.n - 1) // 2
        return format(self.code, f"0{width}b") if width else ""

    def graph(self) -> Graph:
        """The representative whose adjacency string is exactly this code"""
        width = self.n * (self.n - 1) // 2
        rows = [0] * self.n
        position = width - 1
        for j in range(1, self.n):
            for i in range(j):
                if self.code >> position & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                position -= 1
        return Graph(self.n, rows)


def canonical_form(g: Graph) -> CanonicalForm:
    """
    Exact minimum over all n! vertex orders, computed column by column.

    Placing vertices one at a time fixes the string column by column: the
    column of the vertex placed at position j is its adjacency to the
    vertices at positions 0..j-1. Any order whose column is larger than the
    current minimum is dominated, so only minimal extensions are kept.
    Partial orders that leave every unplaced vertex with the same column
    code have identical futures and are merged.
    """
    n = g.n
    rows = g.rows
    if n <= 1:
        return CanonicalForm(n, 0)

    full = (1 << n) - 1
    # state: (unplaced mask, per-vertex column codes against the placed prefix)
    states: Dict[Tuple[int, Tuple[int, ...]], None] = {(full, (0,) * n): None}
    code = 0
    for _ in range(n):
        best: Optional[int] = None
        extensions: List[Tuple[int, Tuple[int, ...], int]] = []
        for unplaced, columns in states:
            for v in iter_bits(unplaced):
                column = columns[v]
                if best is None or column < best:
                    best = column
                    extensions = []
                if column == best:
                    extensions.append((unplaced, columns, v))

        placed_width = n - next(iter(states))[0].bit_count()
        code = (code << placed_width) | best

        merged: Dict[Tuple[int, Tuple[int, ...]], None] = {}
        for unplaced, columns, v in extensions:
            rest = unplaced & ~(1 << v)
            row = rows[v]
            new_columns = tuple(
                (columns[u] << 1) | (row >> u & 1) if rest >> u & 1 else 0
                for u in range(n)
            )
            merged[(rest, new_columns)] = None
        states = merged
    return CanonicalForm(n, code)


def _augment(parent: Tuple[int, Tuple[int, ...]]) -> Set[int]:
    """
    Canonical codes of all one-vertex extensions of a parent.

    The new vertex is only given neighborhoods that keep it at minimum
    degree; every graph arises this way by deleting a minimum-degree vertex.
    """
    n, rows = parent
    degrees = [r.bit_count() for r in rows]
    codes = set()
    new = 1 << n
    for subset in range(1 << n):
        size = subset.bit_count()
        if any(degrees[u] + (subset >> u & 1) < size for u in range(n)):
            continue
        child_rows = tuple(row | new if subset >> u & 1 else row for u, row in enumerate(rows))
        child = Graph._trusted(n + 1, child_rows + (subset,))
        codes.add(canonical_form(child).code)
    return codes


@dataclass
class CensusReport:
    r: int
    n_max: int
    found: Dict[int, List[str]]
    expected: Dict[int, List[str]]
    classes_scanned: Dict[int, int]
    verdict: str

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n_max": self.n_max,
            "found": {str(n): graphs for n, graphs in sorted(self.found.items())},
            "expected": {str(n): graphs for n, graphs in sorted(self.expected.items())},
            "classes_scanned": {str(n): count for n, count in sorted(self.classes_scanned.items())},
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class ExcessCheck:
    graph6: str
    n: int
    m: int
    rule: BoundRule
    bound: int
    excess: int

    @property
    def slack(self) -> int:
        return self.excess - self.bound

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "rule": self.rule.value,
            "bound": self.bound,
            "excess": self.excess,
            "slack": self.slack,
        }


@dataclass
class ExcessAudit:
    r: int
    n_max: int
    checks: List[ExcessCheck] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    dirac_extremal_orders: List[int] = field(default_factory=list)
    brooks_equality: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "PASS" if not self.violations else "FAIL"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n_max": self.n_max,
            "checks": [c.to_dict() for c in self.checks],
            "violations": list(self.violations),
            "dirac_extremal_orders": list(self.dirac_extremal_orders),
            "brooks_equality": list(self.brooks_equality),
            "verdict": self.verdict,
        }


def is_odd_cycle(g: Graph) -> bool:
    if g.n < 3 or g.n % 2 == 0 or any(d != 2 for d in g.degrees()):
        return False
    # 2-regular and connected
    seen, frontier = 1, 1
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= reach
    return seen == (1 << g.n) - 1


class GraphCensus:
    """Enumerates isomorphism classes and scans them for r-critical graphs"""

    def __init__(self, max_n: int = DEFAULT_MAX_N, cache_dir: Optional[str] = None,
                 workers: int = 1, node_budget: int = DEFAULT_NODE_BUDGET):
        """
        Args:
            max_n: Largest vertex count that may be enumerated
            cache_dir: Directory for graph6 caches and census outputs (optional)
            workers: Worker processes used for augmentation
            node_budget: Branch-node budget handed to the coloring solver
        """
        if max_n < 0:
            raise ValueError(f"enumeration cap must be nonnegative, got {max_n}")
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.max_n = max_n
        self.cache_dir = cache_dir
        self.workers = workers
        self.solver = ColoringSolver(node_budget)
        self._classes: Dict[int, List[Graph]] = {}
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)

    def enumerate_nonisomorphic(self, n: int) -> Iterator[Graph]:
        """
        One representative per isomorphism class on n vertices, ordered by canonical code.

        Raises:
            CensusCapExceeded: If n exceeds the enumeration cap
        """
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        if n > self.max_n:
            raise CensusCapExceeded(f"enumeration capped at n <= {self.max_n}, got {n}")
        return iter(self._classes_on(n))

    def _classes_on(self, n: int) -> List[Graph]:
        if n in self._classes:
            return self._classes[n]
        cached = self._read_cache(n)
        if cached is not None:
            self._classes[n] = cached
            return cached

        if n == 0:
            classes = [Graph(0)]
        else:
            parents = [(p.n, p.rows) for p in self._classes_on(n - 1)]
            codes: Set[int] = set()
            if self.workers > 1 and len(parents) > 1:
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    for part in pool.map(_augment, parents, chunksize=max(1, len(parents) // (4 * self.workers))):
                        codes |= part
            else:
                for parent in parents:
                    codes |= _augment(parent)
            classes = [CanonicalForm(n, code).graph() for code in sorted(codes)]

        LOG.info(f"Enumerated {len(classes)} isomorphism classes on {n} vertices")
        self._classes[n] = classes
        self._write_cache(n, classes)
        return classes

    def _cache_path(self, name: str) -> Optional[str]:
        return os.path.join(self.cache_dir, name) if self.cache_dir else None

    def _read_cache(self, n: int) -> Optional[List[Graph]]:
        path = self._cache_path(f"graphs{n}.g6")
        if not path or not os.path.exists(path):
            return None
        try:
            graphs = read_graph6_file(path)
        except GraphError as e:
            LOG.warning(f"Ignoring unreadable census cache {path}: {e}")
            return None
        if any(g.n != n for g in graphs):
            LOG.warning(f"Ignoring census cache {path}: wrong vertex count")
            return None
        LOG.debug(f"Loaded {len(graphs)} classes on {n} vertices from {path}")
        return graphs

    def _write_cache(self, n: int, classes: Sequence[Graph]) -> None:
        path = self._cache_path(f"graphs{n}.g6")
        if path:
            write_graph6_file(path, classes)

    def census_critical(self, n: int, r: int) -> List[Graph]:
        """All isomorphism classes on exactly n vertices that are r-critical"""
        if r < 1:
            raise ValueError(f"r must be at least 1, got {r}")
        found = []
        for g in self.enumerate_nonisomorphic(n):
            # critical graphs have minimum degree at least r - 1
            if n < r or (n and g.min_degree() < r - 1):
                continue
            if 2 * g.m < (r - 1) * n:
                continue
            if self.solver.is_r_critical(g, r):
                found.append(g)
        LOG.debug(f"Found {len(found)} {r}-critical classes on {n} vertices")

        path = self._cache_path(f"critical_n{n}_r{r}.g6")
        if path:
            write_graph6_file(path, found)
        return found

    def verify_lemma1(self, r: int) -> CensusReport:
        """
        Check that K_r and K_{r+2} minus C5 are the only r-critical graphs on at most r+2 vertices.

        Raises:
            ValueError: If r < 3, or r + 2 exceeds the enumeration cap
        """
        if r < 3:
            raise ValueError(f"small critical graph check needs r >= 3, got {r}")
        if r + 2 > self.max_n:
            raise CensusCapExceeded(
                f"checking r={r} needs graphs on {r + 2} vertices; cap is {self.max_n}"
            )

        found: Dict[int, List[str]] = {}
        scanned: Dict[int, int] = {}
        found_forms: Set[CanonicalForm] = set()
        for n in range(1, r + 3):
            scanned[n] = sum(1 for _ in self.enumerate_nonisomorphic(n))
            critical = self.census_critical(n, r)
            if critical:
                found[n] = [to_graph6(g) for g in critical]
                found_forms.update(canonical_form(g) for g in critical)

        expected_graphs = {r: make_complete(r), r + 2: make_kr2_minus_c5(r)}
        expected = {n: [to_graph6(canonical_form(g).graph())] for n, g in expected_graphs.items()}
        expected_forms = {canonical_form(g) for g in expected_graphs.values()}

        verdict = "PASS" if found_forms == expected_forms else "FAIL"
        LOG.info(f"Small critical graphs for r={r}: {verdict} ({sum(len(v) for v in found.values())} found)")
        return CensusReport(r, r + 2, found, expected, scanned, verdict)

    def audit_excess_bounds(self, r: int, n_max: Optional[int] = None) -> ExcessAudit:
        """
        Check the Dirac, Gallai and Kostochka-Stiebitz excess bounds on every
        r-critical graph in the census, plus the equality characterizations.
        """
        if not 3 <= r <= MAX_LEMMA_R:
            raise ValueError(f"excess audit supports 3 <= r <= {MAX_LEMMA_R}, got {r}")
        n_max = self.max_n if n_max is None else n_max
        audit = ExcessAudit(r, n_max)

        for n in range(r, n_max + 1):
            for g in self.census_critical(n, r):
                eps = excess(g, r)
                code = to_graph6(g)

                if eps == 0 and not (g.is_complete() or is_odd_cycle(g)):
                    audit.violations.append(f"{code}: excess 0 but neither complete nor an odd cycle")
                if eps != 0 and (g.is_complete() or is_odd_cycle(g)):
                    audit.violations.append(f"{code}: complete or odd cycle with excess {eps}")
                if eps == 0:
                    audit.brooks_equality.append(code)

                checks = [ExcessCheck(code, n, g.m, BoundRule.TRIVIAL_DEGREE, 0, eps)]
                if not g.is_complete():
                    checks.append(ExcessCheck(code, n, g.m, BoundRule.DIRAC, r - 3, eps))
                    p = n - r
                    if 2 <= p <= r - 2:
                        checks.append(ExcessCheck(code, n, g.m, BoundRule.GALLAI, p * r - p * p - 2, eps))
                    if n >= r + 2 and n != 2 * r - 1:
                        checks.append(ExcessCheck(code, n, g.m, BoundRule.KOSTOCHKA_STIEBITZ, 2 * r - 6, eps))
                    # Dirac's equality case has 2r - 1 vertices; for r = 3 every odd cycle is tight
                    if eps == r - 3:
                        audit.dirac_extremal_orders.append(n)
                        if r >= 4 and n != 2 * r - 1:
                            audit.violations.append(f"{code}: excess {eps} = r - 3 with n = {n} != 2r - 1")

                for check in checks:
                    if check.slack < 0:
                        audit.violations.append(
                            f"{code}: {check.rule.value} needs excess >= {check.bound}, got {check.excess}"
                        )
                audit.checks.extend(checks)

        LOG.info(f"Excess audit r={r}, n <= {n_max}: {len(audit.checks)} checks, verdict {audit.verdict}")
        return audit


_default_census = GraphCensus()


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    return _default_census.enumerate_nonisomorphic(n)


def census_critical(n: int, r: int) -> List[Graph]:
    return _default_census.census_critical(n, r)


def verify_lemma1(r: int) -> CensusReport:
    return _default_census.verify_lemma1(r)


def audit_excess_bounds(r: int) -> ExcessAudit:
    return _default_census.audit_excess_bounds(r)
