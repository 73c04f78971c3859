"""
Graph data model for the verifier.

Graphs are labeled, simple and undirected, with vertices 0..n-1 and one
adjacency bitmask per vertex. Values are immutable after construction, so
they are safe to share between threads and to send to worker processes.
"""

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from logger import LOG

MAX_VERTICES = 64
GRAPH6_MAX_VERTICES = 62
GRAPH6_HEADER = ">>graph6<<"

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid graph construction, deletion or graph6 input."""


class Graph:
    """Immutable simple graph stored as packed adjacency rows"""

    __slots__ = ("_n", "_rows", "_m")

    def __init__(self, n: int, rows: Optional[Sequence[int]] = None):
        """
        Build a graph from adjacency rows.

        Args:
            n: Vertex count, 0 <= n <= 64
            rows: One bitmask per vertex; bit j of rows[i] marks edge {i, j}

        Raises:
            GraphError: If n is out of range or rows are not symmetric and loop-free
        """
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if rows is None:
            rows = (0,) * n
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(rows)}")

        full = (1 << n) - 1
        for i, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {i} references vertices outside 0..{n - 1}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
            rest = row
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if not rows[j] >> i & 1:
                    raise GraphError(f"adjacency not symmetric on pair ({i}, {j})")
                rest ^= low

        self._n = n
        self._rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def _trusted(cls, n: int, rows: Tuple[int, ...]) -> "Graph":
        # Internal constructor for rows already known to be valid.
        g = cls.__new__(cls)
        g._n = n
        g._rows = rows
        g._m = sum(r.bit_count() for r in rows) // 2
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self._n and 0 <= v < self._n):
            return False
        return bool(self._rows[u] >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._rows[v]

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [r.bit_count() for r in self._rows]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def edges(self) -> List[Edge]:
        """Edges as (u, v) pairs with u < v, sorted lexicographically"""
        return [(u, v) for u in range(self._n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        return self._m == self._n * (self._n - 1) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """
        Return the graph with vertex v renamed to perm[v].

        Raises:
            GraphError: If perm is not a permutation of 0..n-1
        """
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabeling must be a permutation of the vertex set")
        rows = [0] * self._n
        for v in range(self._n):
            image = 0
            for u in iter_bits(self._rows[v]):
                image |= 1 << perm[u]
            rows[perm[v]] = image
        return Graph._trusted(self._n, tuple(rows))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} not in graph on {self._n} vertices")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    def __reduce__(self):
        return (Graph, (self._n, self._rows))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    """
    Build a graph on n vertices from an edge list.

    Raises:
        GraphError: On loops or endpoints outside 0..n-1
    """
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, tuple(rows))


def make_complete(n: int) -> Graph:
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full ^ (1 << v) for v in range(n)))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows)))


def make_kr2_minus_c5(r: int) -> Graph:
    """
    K_{r+2} with the edges of the 5-cycle 0-1-2-3-4-0 removed.

    Vertices 0..4 have degree r-1; the remaining r-3 vertices have degree r+1.
    """
    if r < 3:
        raise GraphError(f"K_(r+2) minus C5 needs r >= 3, got {r}")
    k = make_complete(r + 2)
    rows = list(k.rows)
    for v in range(5):
        w = (v + 1) % 5
        rows[v] &= ~(1 << w)
        rows[w] &= ~(1 << v)
    return Graph._trusted(r + 2, tuple(rows))


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """
    Lexicographic product g[h]: vertex (u, x) is labeled u * h.n + x.

    (u, x) ~ (v, y) iff u ~ v in g, or u == v and x ~ y in h.
    """
    size = g.n * h.n
    if size > MAX_VERTICES:
        raise GraphError(f"product has {size} vertices, cap is {MAX_VERTICES}")
    block = (1 << h.n) - 1
    rows = []
    for u in range(g.n):
        spread = 0
        for v in iter_bits(g.rows[u]):
            spread |= block << (v * h.n)
        for x in range(h.n):
            rows.append(spread | (h.rows[x] << (u * h.n)))
    return Graph._trusted(size, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of g and h plus every edge between them; h is shifted by g.n"""
    size = g.n + h.n
    if size > MAX_VERTICES:
        raise GraphError(f"join has {size} vertices, cap is {MAX_VERTICES}")
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    rows = [row | h_all for row in g.rows]
    rows.extend((row << g.n) | g_all for row in h.rows)
    return Graph._trusted(size, tuple(rows))


def make_catlin(k: int) -> Graph:
    """C5[K_k]; chromatic number ceil(5k/2)"""
    return lexicographic_product(make_cycle(5), make_complete(k))


def delete_vertex(g: Graph, v: int) -> Graph:
    """
    Remove v; vertices above v shift down by one, keeping their order.

    Raises:
        GraphError: If v is not a vertex of g
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph on {g.n} vertices")
    low = (1 << v) - 1
    rows = []
    for u, row in enumerate(g.rows):
        if u == v:
            continue
        rows.append((row & low) | (row >> (v + 1) << v))
    return Graph._trusted(g.n - 1, tuple(rows))


def delete_edge(g: Graph, e: Edge) -> Graph:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not in graph")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph._trusted(g.n, tuple(rows))


def contains_clique(g: Graph, k: int) -> bool:
    """True iff g has k pairwise adjacent vertices"""
    if k <= 0:
        return True

    def extend(candidates: int, need: int) -> bool:
        if need == 0:
            return True
        if candidates.bit_count() < need:
            return False
        for v in iter_bits(candidates):
            # only later vertices remain candidates, so each clique is tried once
            later = candidates >> (v + 1) << (v + 1)
            if extend(later & g.rows[v], need - 1):
                return True
        return False

    return extend((1 << g.n) - 1, k)


def _upper_triangle_bits(g: Graph) -> Iterator[int]:
    # graph6 column order: for j = 1..n-1, i = 0..j-1
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            yield row >> i & 1


def to_graph6(g: Graph) -> str:
    """Encode g as a graph6 line (without the trailing newline)"""
    if g.n > GRAPH6_MAX_VERTICES:
        raise GraphError(f"graph6 output supports n <= {GRAPH6_MAX_VERTICES}, got {g.n}")
    out = [chr(g.n + 63)]
    bits = list(_upper_triangle_bits(g))
    bits.extend([0] * (-len(bits) % 6))
    for start in range(0, len(bits), 6):
        value = 0
        for b in bits[start:start + 6]:
            value = value << 1 | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 line.

    Args:
        text: graph6 line; a trailing newline and a leading >>graph6<< header are accepted

    Raises:
        GraphError: On malformed length, bytes outside 63..126 or nonzero padding bits
    """
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise GraphError("empty graph6 line")

    data = [ord(c) for c in line]
    bad = [c for c in data if not 63 <= c <= 126]
    if bad:
        raise GraphError(f"graph6 byte {bad[0]} outside 63..126")

    n = data[0] - 63
    if n > GRAPH6_MAX_VERTICES:
        raise GraphError("graph6 headers for n > 62 are not supported")

    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[1:]
    if len(body) != expected:
        raise GraphError(f"graph6 body for n={n} needs {expected} bytes, got {len(body)}")

    bits = []
    for byte in body:
        value = byte - 63
        bits.extend(value >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("graph6 padding bits must be zero")

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def read_graph6_file(path: str) -> List[Graph]:
    """Read every non-blank line of a graph6 file"""
    graphs = []
    with open(path, "r", encoding="ascii") as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                graphs.append(parse_graph6(line))
            except GraphError as e:
                raise GraphError(f"{path}:{number}: {e}") from e
    LOG.debug(f"Read {len(graphs)} graphs from {path}")
    return graphs


def write_graph6_file(path: str, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as f:
        for g in graphs:
            f.write(to_graph6(g) + "\n")
            count += 1
    LOG.debug(f"Wrote {count} graphs to {path}")
    return count
