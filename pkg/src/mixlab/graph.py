"""Simple undirected graphs, their matrices, text formats and generators.

Vertices are the integers ``0 .. n-1``.  A :class:`Graph` is immutable and
keeps its edges as a lexicographically sorted tuple of pairs ``(u, v)`` with
``u < v``, together with per-vertex adjacency bitmasks.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Base class for invalid graph input."""


class LoopEdgeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class IsolatedVertexError(GraphError):
    pass


class EmptyOrFullSubsetError(GraphError):
    pass


class DisconnectedBaseError(GraphError):
    pass


class InvalidProbabilityError(GraphError):
    pass


class UnsupportedSizeError(GraphError):
    pass


class MalformedGraph6Error(GraphError):
    pass


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "degrees", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopEdgeError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
        canon = tuple(sorted(seen))
        deg = [0] * n
        masks = [0] * n
        for u, v in canon:
            deg[u] += 1
            deg[v] += 1
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", canon)
        object.__setattr__(self, "degrees", tuple(deg))
        object.__setattr__(self, "masks", tuple(masks))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        mask = self.masks[v]
        return [u for u in range(self.n) if mask >> u & 1]

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def all_degrees_even(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees)

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    reach |= self.masks[v]
                f >>= 1
                v += 1
            frontier = reach & ~seen
            seen |= reach
        return seen == (1 << self.n) - 1

    def components(self) -> int:
        left = (1 << self.n) - 1
        count = 0
        while left:
            start = left & -left
            seen = frontier = start
            while frontier:
                reach = 0
                for v in _bits(frontier):
                    reach |= self.masks[v]
                frontier = reach & ~seen
                seen |= reach
            left &= ~seen
            count += 1
        return count

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            idx = np.array(self.edges)
            a[idx[:, 0], idx[:, 1]] = 1
            a[idx[:, 1], idx[:, 0]] = 1
        return a

    def remove_vertex(self, v: int) -> "Graph":
        """Graph on ``n-1`` vertices with ``v`` deleted; later labels shift down."""
        relabel = lambda x: x - (x > v)
        return Graph(self.n - 1, [(relabel(a), relabel(b)) for a, b in self.edges if v not in (a, b)])

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges + ((u, v),))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        return Graph(self.n, [(perm[a], perm[b]) for a, b in self.edges])


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical graph, rejecting loops, duplicates and bad labels."""
    return Graph(n, edges)


# -- matrices ---------------------------------------------------------------

def laplacian(g: Graph) -> np.ndarray:
    """Integer Laplacian: degrees on the diagonal, -1 for every edge."""
    return np.diag(np.array(g.degrees, dtype=np.int64)) - g.adjacency()


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(np.array(g.degrees, dtype=np.int64))


def transition_matrix(g: Graph) -> np.ndarray:
    """Simple random walk matrix ``P = D^-1 A``."""
    deg = np.array(g.degrees, dtype=float)
    if np.any(deg == 0):
        raise IsolatedVertexError("transition matrix undefined with an isolated vertex")
    return g.adjacency() / deg[:, None]


def subset_mask(n: int, a) -> int:
    if isinstance(a, (int, np.integer)):
        mask = int(a)
        if mask >> n:
            raise VertexOutOfRangeError("subset mask has bits beyond n")
        return mask
    mask = 0
    for v in a:
        if not 0 <= v < n:
            raise VertexOutOfRangeError(f"vertex {v} outside 0..{n - 1}")
        mask |= 1 << int(v)
    return mask


def boundary_size(g: Graph, a) -> int:
    """Number of edges with exactly one endpoint in ``a``.

    ``a`` is an iterable of vertices or an integer bitmask.
    """
    mask = subset_mask(g.n, a)
    if mask == 0 or mask == (1 << g.n) - 1:
        raise EmptyOrFullSubsetError("boundary needs a nonempty proper subset")
    return sum((mask >> u & 1) != (mask >> v & 1) for u, v in g.edges)


# -- deterministic families ---------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides need at least one vertex")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def two_cliques_matched(n: int) -> Graph:
    """Two disjoint copies of K_n joined by the perfect matching i <-> n+i.

    Every vertex has degree n (n-1 inside its clique plus one matching edge).
    """
    if n < 2:
        raise GraphError("need n >= 2")
    edges = list(itertools.combinations(range(n), 2))
    edges += [(n + i, n + j) for i, j in itertools.combinations(range(n), 2)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def clique_plus_pendant(n: int) -> Graph:
    """K_n with one extra vertex hanging off vertex n-1."""
    if n < 2:
        raise GraphError("need n >= 2")
    return Graph(n + 1, list(itertools.combinations(range(n), 2)) + [(n - 1, n)])


def blowup(base: Graph, multiplicities: Sequence[int], scale: int) -> Graph:
    """Replace base vertex j by an independent set of ``scale * c_j`` vertices.

    Two new vertices are adjacent iff their base vertices are adjacent.
    Classes are laid out consecutively in base-vertex order.
    """
    if base.n < 2:
        raise GraphError("base graph needs more than one vertex")
    if len(multiplicities) != base.n:
        raise GraphError("one multiplicity per base vertex")
    if any(c < 1 for c in multiplicities) or scale < 1:
        raise GraphError("multiplicities and scale must be >= 1")
    if not base.is_connected():
        raise DisconnectedBaseError("base graph must be connected")
    sizes = [scale * c for c in multiplicities]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int).tolist()
    edges = []
    for j1, j2 in base.edges:
        for a in range(offsets[j1], offsets[j1 + 1]):
            for b in range(offsets[j2], offsets[j2 + 1]):
                edges.append((a, b))
    return Graph(offsets[-1], edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph(off, edges)


# -- randomness ---------------------------------------------------------------

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the splitmix64 output function."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Independent per-trial seed: splitmix64(seed xor index)."""
    return splitmix64((int(seed) ^ int(index)) & _MASK64)


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based, so each derived seed gives an independent stream.
    return np.random.Generator(np.random.Philox(int(seed) & _MASK64))


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Gilbert random graph: each of the n(n-1)/2 pairs is an edge with prob. p."""
    if not 0 < p < 1:
        raise InvalidProbabilityError(f"p must lie in (0, 1), got {p}")
    if n < 1:
        raise GraphError("need n >= 1")
    pairs = list(itertools.combinations(range(n), 2))
    keep = _rng(seed).random(len(pairs)) < p
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


# -- even-degree corpus -----------------------------------------------------------

FULL_ENUMERATION_MAX_N = 7
DEFAULT_SAMPLE = 2000


def cycle_space_dimension(n: int) -> int:
    return n * (n - 1) // 2 - (n - 1)


def even_subgraph_from_coordinates(n: int, coords: int) -> Graph:
    """Even spanning subgraph of K_n from a cycle-space coordinate vector.

    The spanning tree is the star at vertex 0; the fundamental cycle of the
    non-tree edge (i, j) is the triangle 0-i-j.  Bit ``t`` of ``coords``
    selects the t-th non-tree pair in lexicographic order.  XOR-ing the
    chosen triangles keeps (i, j) and toggles (0, i) and (0, j).
    """
    edges = []
    parity = [0] * n
    t = 0
    for i in range(1, n):
        for j in range(i + 1, n):
            if coords >> t & 1:
                edges.append((i, j))
                parity[i] ^= 1
                parity[j] ^= 1
            t += 1
    edges += [(0, i) for i in range(1, n) if parity[i]]
    return Graph(n, edges)


def even_subgraph_corpus(
    n: int,
    connected_only: bool = False,
    max_graphs: int | None = None,
    seed: int = 0,
    sample: int | None = None,
) -> Iterator[Graph]:
    """Yield spanning subgraphs of K_n whose degrees are all even.

    For ``n <= 7`` (and no ``sample``) the whole cycle space is enumerated in
    coordinate order.  Otherwise ``sample`` coordinate vectors (default 2000)
    are drawn uniformly from a seeded stream; duplicates are kept.
    ``connected_only`` drops graphs that are not connected on all n vertices.
    ``max_graphs`` caps the number of graphs yielded.
    """
    if not 2 <= n <= 9:
        raise UnsupportedSizeError(f"corpus supports 2 <= n <= 9, got {n}")
    dim = cycle_space_dimension(n)
    if sample is None and n <= FULL_ENUMERATION_MAX_N:
        coords: Iterable[int] = range(1 << dim)
    else:
        draws = DEFAULT_SAMPLE if sample is None else int(sample)
        rng = _rng(seed)
        coords = (int(c) for c in rng.integers(0, 1 << dim, size=draws, dtype=np.uint64))
    emitted = 0
    for c in coords:
        if max_graphs is not None and emitted >= max_graphs:
            return
        g = even_subgraph_from_coordinates(n, c)
        if connected_only and not g.is_connected():
            continue
        emitted += 1
        yield g


# -- text formats ---------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    """Encode in graph6 (upper triangle, column-major, 6 bits per char)."""
    n = g.n
    if n <= 62:
        head = [n]
    elif n <= 258047:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise MalformedGraph6Error("graph6 encoder supports n <= 258047")
    bits = [g.has_edge(i, j) for j in range(1, n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    body = [sum(b << (5 - k) for k, b in enumerate(bits[t:t + 6])) for t in range(0, len(bits), 6)]
    return "".join(chr(63 + x) for x in head + body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s or any(not 63 <= ord(ch) <= 126 for ch in s):
        raise MalformedGraph6Error(f"not a graph6 string: {text!r}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n, rest = (vals[1] << 12) | (vals[2] << 6) | vals[3], vals[4:]
    else:
        raise MalformedGraph6Error("8-byte graph6 size headers are not supported")
    if n == 0:
        raise MalformedGraph6Error("graph with zero vertices")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise MalformedGraph6Error(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(rest)}")
    bits = [(x >> (5 - k)) & 1 for x in rest for k in range(6)]
    if any(bits[nbits:]):
        raise MalformedGraph6Error("nonzero padding bits")
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    return Graph(n, [e for e, b in zip(pairs, bits) if b])


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by m lines ``u v`` (0-indexed)."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphError("edge list needs a header line 'n m'")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    n, m = nums[0], nums[1]
    body = nums[2:]
    if len(body) != 2 * m:
        raise GraphError(f"header announces {m} edges, found {len(body) / 2:g}")
    return Graph(n, zip(body[0::2], body[1::2]))
