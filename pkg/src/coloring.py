"""
Exact chromatic number, r-criticality and the excess function.

The engine is a DSATUR branch and bound: a greedy clique gives the lower
bound, greedy DSATUR gives the upper bound, and the gap is closed by exact
k-colorability searches that branch on the most saturated vertex.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from graph import Graph, delete_edge, delete_vertex, iter_bits
from logger import LOG

DEFAULT_NODE_BUDGET = 10 ** 8

Coloring = Dict[int, int]


class SolverBudgetExceeded(RuntimeError):
    """The search visited more branch nodes than the configured budget allows."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"coloring search exceeded node budget ({nodes} > {budget})")
        self.nodes = nodes
        self.budget = budget


@dataclass(frozen=True)
class GraphAudit:
    chi: int
    r: int
    critical: bool
    excess: int
    witness_coloring: Coloring = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "chi": self.chi,
            "r": self.r,
            "critical": self.critical,
            "excess": self.excess,
            "witness_coloring": {str(v): c for v, c in sorted(self.witness_coloring.items())},
        }


def excess(g: Graph, r: int) -> int:
    """2m - (r-1)n; nonnegative for r-critical graphs"""
    return 2 * g.m - (r - 1) * g.n


def is_proper_coloring(g: Graph, coloring: Coloring) -> bool:
    if set(coloring) != set(range(g.n)):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def clique_lower_bound(g: Graph) -> int:
    """Size of the largest clique found by greedy growth from every start vertex"""
    best = 0
    degrees = g.degrees()
    for start in range(g.n):
        size = 1
        candidates = g.rows[start]
        while candidates:
            v = max(iter_bits(candidates), key=lambda u: (degrees[u], -u))
            size += 1
            candidates &= g.rows[v]
        best = max(best, size)
    return best


def dsatur_upper_bound(g: Graph) -> Tuple[int, Coloring]:
    """
    Greedy DSATUR coloring.

    Returns:
        Number of colors used and the coloring
    """
    colors: Coloring = {}
    seen = [0] * g.n  # bitmask of colors on colored neighbors
    degrees = g.degrees()
    used = 0
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if u not in colors),
            key=lambda u: (seen[u].bit_count(), degrees[u], -u),
        )
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
        for u in iter_bits(g.rows[v]):
            seen[u] |= 1 << c
    return used, colors


class ColoringSolver:
    """Exact coloring engine with a branch-node budget per public call"""

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET):
        """
        Args:
            node_budget: Maximum branch nodes visited by one public call
        """
        if node_budget <= 0:
            raise ValueError(f"node budget must be positive, got {node_budget}")
        self.node_budget = node_budget
        self.nodes_visited = 0

    def is_k_colorable(self, g: Graph, k: int) -> Tuple[bool, Optional[Coloring]]:
        """
        Decide whether g has a proper k-coloring.

        Returns:
            (True, witness) when a coloring exists, else (False, None)

        Raises:
            SolverBudgetExceeded: If the search outgrows the node budget
        """
        if k < 0:
            raise ValueError(f"k must be nonnegative, got {k}")
        self.nodes_visited = 0
        return self._colorable(g, k)

    def chromatic_number(self, g: Graph) -> int:
        self.nodes_visited = 0
        return self._chromatic(g)[0]

    def optimal_coloring(self, g: Graph) -> Tuple[int, Coloring]:
        """Chromatic number together with a witness coloring using exactly that many colors"""
        self.nodes_visited = 0
        return self._chromatic(g)

    def is_r_critical(self, g: Graph, r: int) -> bool:
        """
        chi(g) == r and deleting any vertex or any edge leaves an (r-1)-colorable graph.

        Both deletion families are checked: edge deletions alone accept K_r plus
        an isolated vertex.
        """
        if r < 1:
            raise ValueError(f"r must be at least 1, got {r}")
        self.nodes_visited = 0
        if g.n < r or g.min_degree() < r - 1:
            return False
        if self._chromatic(g)[0] != r:
            return False
        return self._deletions_colorable(g, r - 1)

    def audit(self, g: Graph, r: int) -> GraphAudit:
        self.nodes_visited = 0
        chi, witness = self._chromatic(g)
        critical = chi == r and g.min_degree() >= r - 1 and self._deletions_colorable(g, r - 1)
        LOG.debug(f"Audit n={g.n} m={g.m} r={r}: chi={chi} critical={critical} after {self.nodes_visited} nodes")
        return GraphAudit(chi=chi, r=r, critical=critical, excess=excess(g, r), witness_coloring=witness)

    def _deletions_colorable(self, g: Graph, k: int) -> bool:
        for v in range(g.n):
            if not self._colorable(delete_vertex(g, v), k)[0]:
                return False
        for e in g.edges():
            if not self._colorable(delete_edge(g, e), k)[0]:
                return False
        return True

    def _chromatic(self, g: Graph) -> Tuple[int, Coloring]:
        if g.n == 0:
            return 0, {}
        lower = clique_lower_bound(g)
        upper, best = dsatur_upper_bound(g)
        for k in range(lower, upper):
            ok, witness = self._colorable(g, k)
            if ok:
                return k, witness
        return upper, best

    def _colorable(self, g: Graph, k: int) -> Tuple[bool, Optional[Coloring]]:
        if g.n == 0:
            return True, {}
        if k == 0:
            return False, None
        if clique_lower_bound(g) > k:
            return False, None
        used, greedy = dsatur_upper_bound(g)
        if used <= k:
            return True, greedy

        n = g.n
        rows = g.rows
        degrees = g.degrees()
        colors = [-1] * n

        def forbidden(v: int) -> int:
            mask = 0
            for u in iter_bits(rows[v]):
                if colors[u] >= 0:
                    mask |= 1 << colors[u]
            return mask

        def search(colored: int, used: int) -> bool:
            self.nodes_visited += 1
            if self.nodes_visited > self.node_budget:
                raise SolverBudgetExceeded(self.nodes_visited, self.node_budget)
            if colored == n:
                return True

            pick, pick_mask, pick_key = -1, 0, None
            for v in range(n):
                if colors[v] >= 0:
                    continue
                mask = forbidden(v)
                key = (mask.bit_count(), degrees[v])
                if pick_key is None or key > pick_key:
                    pick, pick_mask, pick_key = v, mask, key

            # colors beyond used + 1 are symmetric to used + 1
            for c in range(min(used + 1, k)):
                if pick_mask >> c & 1:
                    continue
                colors[pick] = c
                if search(colored + 1, max(used, c + 1)):
                    return True
                colors[pick] = -1
            return False

        if search(0, 0):
            return True, {v: c for v, c in enumerate(colors)}
        return False, None


# one solver per call; nodes_visited is never shared between callers


def is_k_colorable(g: Graph, k: int) -> Tuple[bool, Optional[Coloring]]:
    return ColoringSolver().is_k_colorable(g, k)


def chromatic_number(g: Graph) -> int:
    return ColoringSolver().chromatic_number(g)


def optimal_coloring(g: Graph) -> Tuple[int, Coloring]:
    return ColoringSolver().optimal_coloring(g)


def is_r_critical(g: Graph, r: int) -> bool:
    return ColoringSolver().is_r_critical(g, r)


def audit(g: Graph, r: int) -> GraphAudit:
    return ColoringSolver().audit(g, r)
