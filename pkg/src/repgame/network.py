"""Interaction topologies: periodic/open square lattices and Watts-Strogatz graphs.

Both builders are pure: the same arguments (including the seed) always produce
the same adjacency, so graphs can be rebuilt cheaply inside worker processes
instead of being shipped around.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpecError

__all__ = [
    "SquareLattice",
    "SmallWorld",
    "Adjacency",
    "build_lattice",
    "build_small_world",
    "build_network",
    "adjacency_to_edgelist",
    "adjacency_from_edgelist",
]


@dataclass(frozen=True)
class SquareLattice:
    """side x side grid, von Neumann (4-cell) neighborhood, row-major indexing."""

    side: int
    periodic: bool = True

    def __post_init__(self):
        if self.side < 2:
            raise InvalidSpecError(f"lattice side must be >= 2, got {self.side}")

    @property
    def node_count(self) -> int:
        return self.side * self.side

    @property
    def label(self) -> str:
        return f"sl{self.side}" + ("" if self.periodic else "-open")


@dataclass(frozen=True)
class SmallWorld:
    """Watts-Strogatz ring of k/2 neighbors per side, rewired with probability beta."""

    n: int
    k: int
    beta: float
    graph_seed: int = 0

    def __post_init__(self):
        if self.k % 2 != 0:
            raise InvalidSpecError(f"small-world degree k must be even, got {self.k}")
        if not 0 < self.k < self.n:
            raise InvalidSpecError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.beta <= 1.0:
            raise InvalidSpecError(f"rewiring probability must be in [0, 1], got {self.beta}")

    @property
    def node_count(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return f"ws{self.n}-k{self.k}-b{self.beta:g}"


NetworkSpec = SquareLattice | SmallWorld


@dataclass(frozen=True)
class Adjacency:
    """Immutable undirected graph as sorted neighbor lists.

    Guarantees: symmetric, no self-loops, no duplicate entries, minimum
    degree 1. ``spec`` records which builder produced the graph (snapshot
    rendering needs to know it came from a lattice).
    """

    node_count: int
    neighbors: tuple[tuple[int, ...], ...]
    spec: NetworkSpec | None = None
    _arrays: dict = field(default_factory=dict, repr=False, compare=False)

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.neighbors) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges as (i, j) pairs with i < j, lexicographic order."""
        return [(i, j) for i in range(self.node_count) for j in self.neighbors[i] if i < j]

    # Flat array views used by the vectorized engine; built once, cached.
    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if "edges" not in self._arrays:
            es = self.edges()
            ei = np.array([e[0] for e in es], dtype=np.int64)
            ej = np.array([e[1] for e in es], dtype=np.int64)
            self._arrays["edges"] = (ei, ej)
        return self._arrays["edges"]

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, flat_neighbors, degrees) in node order."""
        if "csr" not in self._arrays:
            degs = np.array([len(ns) for ns in self.neighbors], dtype=np.int64)
            indptr = np.zeros(self.node_count + 1, dtype=np.int64)
            np.cumsum(degs, out=indptr[1:])
            flat = np.fromiter(
                (j for ns in self.neighbors for j in ns), dtype=np.int64, count=int(indptr[-1])
            )
            self._arrays["csr"] = (indptr, flat, degs)
        return self._arrays["csr"]

    def validate(self) -> None:
        """Check the structural invariants, raising InvalidSpecError on violation."""
        seen = set()
        for i, ns in enumerate(self.neighbors):
            if len(ns) == 0:
                raise InvalidSpecError(f"node {i} is isolated")
            if len(set(ns)) != len(ns):
                raise InvalidSpecError(f"node {i} has duplicate neighbors")
            if i in ns:
                raise InvalidSpecError(f"node {i} has a self-loop")
            if any(not 0 <= j < self.node_count for j in ns):
                raise InvalidSpecError(f"node {i} has an out-of-range neighbor")
            if tuple(sorted(ns)) != ns:
                raise InvalidSpecError(f"neighbor list of node {i} is not sorted")
            for j in ns:
                seen.add((i, j))
        for i, j in seen:
            if (j, i) not in seen:
                raise InvalidSpecError(f"edge ({i}, {j}) is not symmetric")


def _finalize(node_count: int, nbr_sets: list[set[int]], spec: NetworkSpec | None) -> Adjacency:
    adj = Adjacency(
        node_count=node_count,
        neighbors=tuple(tuple(sorted(ns)) for ns in nbr_sets),
        spec=spec,
    )
    adj.validate()
    return adj


def build_lattice(side: int, periodic: bool = True) -> Adjacency:
    """Square lattice with von Neumann neighborhoods.

    Node (row, col) has index ``row * side + col``. With periodic boundaries
    every node has degree 4 for side >= 3; side == 2 degenerates to degree 2
    because the two wrap directions collapse onto the same neighbor. Open
    boundaries simply drop the out-of-range neighbors.
    """
    spec = SquareLattice(side=side, periodic=periodic)
    nbrs: list[set[int]] = [set() for _ in range(side * side)]
    for r in range(side):
        for c in range(side):
            i = r * side + c
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if periodic:
                    rr %= side
                    cc %= side
                elif not (0 <= rr < side and 0 <= cc < side):
                    continue
                j = rr * side + cc
                if j != i:
                    nbrs[i].add(j)
    return _finalize(side * side, nbrs, spec)


def build_small_world(n: int, k: int, beta: float, graph_seed: int = 0) -> Adjacency:
    """Watts-Strogatz graph: ring lattice plus probabilistic rewiring.

    Start from a ring where node i connects to its k/2 nearest neighbors on
    each side. Visit the original edges lag by lag (lag 1..k/2, source node
    0..n-1) and rewire each with probability beta: the source endpoint is
    kept and the target is redrawn uniformly until it is neither the source,
    nor a current neighbor of it. A rewire that would isolate the old target
    is skipped, so the minimum-degree invariant survives; the edge count is
    always exactly n*k/2.
    """
    spec = SmallWorld(n=n, k=k, beta=beta, graph_seed=graph_seed)
    rng = np.random.default_rng(np.random.SeedSequence(graph_seed))
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for lag in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + lag) % n
            nbrs[i].add(j)
            nbrs[j].add(i)
    for lag in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + lag) % n
            if rng.random() >= beta:
                continue
            if j not in nbrs[i]:  # already rewired away by an earlier pass
                continue
            if len(nbrs[j]) == 1:  # removing (i, j) would isolate j
                continue
            if len(nbrs[i]) >= n - 1:  # no admissible target exists
                continue
            while True:
                target = int(rng.integers(0, n))
                if target != i and target not in nbrs[i]:
                    break
            nbrs[i].remove(j)
            nbrs[j].remove(i)
            nbrs[i].add(target)
            nbrs[target].add(i)
    return _finalize(n, nbrs, spec)


def build_network(spec: NetworkSpec) -> Adjacency:
    if isinstance(spec, SquareLattice):
        return build_lattice(spec.side, spec.periodic)
    if isinstance(spec, SmallWorld):
        return build_small_world(spec.n, spec.k, spec.beta, spec.graph_seed)
    raise InvalidSpecError(f"unknown network spec: {spec!r}")


def adjacency_to_edgelist(adj: Adjacency) -> str:
    """Serialize as text: a node-count header then one 'i j' line per edge, i < j."""
    lines = [f"nodes {adj.node_count}"]
    lines.extend(f"{i} {j}" for i, j in adj.edges())
    return "\n".join(lines) + "\n"


def adjacency_from_edgelist(text: str) -> Adjacency:
    """Inverse of :func:`adjacency_to_edgelist`; used for cross-checks."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("nodes "):
        raise InvalidSpecError("edge list must start with a 'nodes <count>' header")
    n = int(lines[0].split()[1])
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for ln in lines[1:]:
        a, b = (int(x) for x in ln.split())
        nbrs[a].add(b)
        nbrs[b].add(a)
    return _finalize(n, nbrs, None)
