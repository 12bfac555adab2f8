"""Graph construction, validation, and serialization for the fullerene family.

Two builders are provided: the tube-isomer generator for F_N with N a
multiple of 10 (a faithful port of the original 1-based MATLAB index
arithmetic, including its edge-deletion pass), and the blocked construction
of the C60 buckyball from circulant 5x5 blocks. Node labels are 1-based on
the whole public surface; only ndarray indices are 0-based.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with 1-based node labels.

    Parameters
    ----------
    n_nodes : int
        Number of nodes, labelled 1..n_nodes.
    edges : frozenset of (int, int)
        Unordered edges stored as sorted pairs (a, b) with a < b.
    """

    n_nodes: int
    edges: frozenset

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ValueError("graph needs at least one node")
        for a, b in self.edges:
            if not (1 <= a <= self.n_nodes and 1 <= b <= self.n_nodes):
                raise ValueError(f"edge ({a},{b}) out of range 1..{self.n_nodes}")
            if a == b:
                raise ValueError(f"self-loop at node {a}")
            if a > b:
                raise ValueError(f"edge ({a},{b}) not stored as sorted pair")

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def graph_from_edges(n_nodes: int, edge_list) -> Graph:
    """Build a Graph from an iterable of (a, b) pairs, rejecting duplicates."""
    seen = set()
    for a, b in edge_list:
        a, b = int(a), int(b)
        if a == b:
            raise ValueError(f"self-loop at node {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
    return Graph(n_nodes=int(n_nodes), edges=frozenset(seen))


def adjacency(g: Graph) -> np.ndarray:
    """Symmetric 0/1 adjacency matrix of `g` (the walk Hamiltonian).

    Entry [a-1, b-1] is 1 exactly when {a, b} is an edge; the diagonal is 0.
    The returned array is marked read-only.
    """
    a = np.zeros((g.n_nodes, g.n_nodes))
    for i, j in g.edges:
        a[i - 1, j - 1] = 1.0
        a[j - 1, i - 1] = 1.0
    a.flags.writeable = False
    return a


def degrees(g: Graph) -> np.ndarray:
    d = np.zeros(g.n_nodes, dtype=int)
    for a, b in g.edges:
        d[a - 1] += 1
        d[b - 1] += 1
    return d


def is_connected(g: Graph) -> bool:
    """Breadth-first reachability from node 1."""
    if g.n_nodes == 1:
        return True
    nbrs: dict[int, list[int]] = {v: [] for v in range(1, g.n_nodes + 1)}
    for a, b in g.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = {1}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n_nodes


def validate_fullerene(g: Graph) -> None:
    """Assert the fullerene graph invariants, raising ValueError on failure.

    Checks: even N, every degree exactly 3, edge count 3N/2, connectivity.
    The downstream spectral physics silently degrades on malformed graphs,
    so generators call this and fail loudly.
    """
    if g.n_nodes % 2 != 0:
        raise ValueError(f"fullerene node count must be even, got {g.n_nodes}")
    if g.n_edges != 3 * g.n_nodes // 2:
        raise ValueError(
            f"fullerene on {g.n_nodes} nodes needs {3 * g.n_nodes // 2} edges, "
            f"got {g.n_edges}"
        )
    d = degrees(g)
    if not np.all(d == 3):
        bad = int(np.argmin(d == 3)) + 1
        raise ValueError(f"node {bad} has degree {d[bad - 1]}, expected 3")
    if not is_connected(g):
        raise ValueError("graph is not connected")


def _mrange(start: int, step: int, stop: int):
    """MATLAB-style inclusive range start:step:stop."""
    j = start
    while j <= stop:
        yield j
        j += step


def build_tube_fullerene(n: int) -> Graph:
    """Tube-isomer fullerene F_n for n a multiple of 10, n >= 30.

    Port of the original 1-based MATLAB generator, kept loop-for-loop
    identical (the overlapping ring ranges and the final edge-deletion pass
    included) so the produced edge sets match the reference graphs exactly.
    The pentagon of interest is nodes 1..5; node n sits on the far cap.

    Raises
    ------
    ValueError
        If n is not a multiple of 10 or n < 30; the index arithmetic is
        only defined there.
    """
    n = int(n)
    if n % 10 != 0 or n < 30:
        raise ValueError(
            f"tube generator needs a multiple of 10 with n >= 30, got {n}"
        )

    m = np.zeros((n + 1, n + 1), dtype=int)  # 1-based scratch, row/col 0 unused

    def link(a: int, b: int, bond: int = 1) -> None:
        m[a, b] = bond
        m[b, a] = bond

    # long skip bonds along the tube wall
    for j in _mrange(7, 2, n - 16):
        link(j, j + 11)
    # pentagon nodes out to the first ring
    for j in _mrange(1, 1, 5):
        link(j, 4 + 2 * j)
    # second-to-last ring out to the far cap
    k = n - 4
    for j in _mrange(n - 13, 2, n - 6):
        k += 1
        link(j, k)
    # ring-to-ring spokes
    for j in _mrange(15, 10, n):
        link(j, j + 1)
    # rings themselves; ranges overlap on purpose (re-links are idempotent)
    for blk in range(0, n // 10):
        for j in _mrange(blk * 5 + 1, 1, 10 * blk + 5):
            if j < 10 * blk + 5:
                link(j, j + 1)
            elif j == 5:
                link(j, 5 * blk + 1)
            else:
                link(j, j - 9)
    # far cap pentagon
    for j in _mrange(n - 4, 1, n):
        if j < n:
            link(j, j + 1)
        else:
            link(j, n - 4)
    # deletion pass: the skip-bond loop overshoots once per full ring
    for b in _mrange(15, 10, n - 25):
        link(b, b + 11, 0)

    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if m[a, b]]
    g = graph_from_edges(n, edges)
    validate_fullerene(g)
    return g


def _circulant5(first_row) -> np.ndarray:
    c = np.zeros((5, 5))
    for i in range(5):
        for j in range(5):
            c[i, j] = first_row[(j - i) % 5]
    return c


def build_c60_blocked() -> Graph:
    """C60 buckyball adjacency assembled from a 12x12 grid of 5x5 blocks.

    The grid uses the pentagon circulant A5 = circ[0,1,0,0,1], the shift
    circulants K = circ[0,1,0,0,0] and L = circ[0,0,1,0,0], the identity I,
    and the 5x5 anti-diagonal exchange J. The result is 3-regular with 90
    edges and centrosymmetric: A[x][y] = A[61-x][61-y], which is asserted.
    Nodes 1..5 form the pentagon of interest.
    """
    a5 = _circulant5([0, 1, 0, 0, 1])
    kc = _circulant5([0, 1, 0, 0, 0])
    lc = _circulant5([0, 0, 1, 0, 0])
    j5 = np.fliplr(np.eye(5))
    i5 = np.eye(5)
    z = np.zeros((5, 5))
    kt = kc.T
    lt = lc.T

    grid = [
        [a5, i5, z, z, z, z, z, z, z, z, z, z],
        [i5, z, i5, i5, z, z, z, z, z, z, z, z],
        [z, i5, z, kt, z, i5, z, z, z, z, z, z],
        [z, i5, kc, z, i5, z, z, z, z, z, z, z],
        [z, z, z, i5, z, i5, lt @ j5, z, z, z, z, z],
        [z, z, i5, z, i5, z, z, lc @ j5, z, z, z, z],
        [z, z, z, z, j5 @ lc, z, z, i5, z, i5, z, z],
        [z, z, z, z, z, j5 @ lt, i5, z, i5, z, z, z],
        [z, z, z, z, z, z, z, i5, z, kt, i5, z],
        [z, z, z, z, z, z, i5, z, kc, z, i5, z],
        [z, z, z, z, z, z, z, z, i5, i5, z, i5],
        [z, z, z, z, z, z, z, z, z, z, i5, a5],
    ]
    a = np.block(grid)

    if not np.array_equal(a, a.T):
        raise AssertionError("blocked C60 assembly lost symmetry")
    if not np.array_equal(a, np.flipud(np.fliplr(a))):
        raise AssertionError("blocked C60 assembly lost centrosymmetry")

    edges = [(i + 1, j + 1) for i in range(60) for j in range(i + 1, 60) if a[i, j]]
    g = graph_from_edges(60, edges)
    validate_fullerene(g)
    return g


def save_graph(g: Graph, path, header=()) -> None:
    """Write the plain-text edge-list format: first line N, then 'a b' lines.

    Entries of header are emitted first as '#' comment lines, which
    load_graph skips.
    """
    lines = [h if h.startswith("#") else "# " + h for h in header]
    lines.append(str(g.n_nodes))
    for a, b in sorted(g.edges):
        lines.append(f"{a} {b}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_graph(path) -> Graph:
    """Read the edge-list format written by save_graph.

    Lines starting with '#' are comments. Labels are 1-based; malformed
    lines, out-of-range labels, and duplicate edges raise ValueError.
    """
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    body = [ln for ln in raw if ln and not ln.startswith("#")]
    if not body:
        raise ValueError(f"{path}: empty graph file")
    try:
        n_nodes = int(body[0])
    except ValueError:
        raise ValueError(f"{path}: first line must be the node count") from None
    edges = []
    for ln in body[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: malformed edge line {ln!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"{path}: malformed edge line {ln!r}") from None
        if not (1 <= a <= n_nodes and 1 <= b <= n_nodes):
            raise ValueError(
                f"{path}: edge ({a},{b}) out of range (labels are 1-based)"
            )
        edges.append((a, b))
    return graph_from_edges(n_nodes, edges)


def edge_checksum(g: Graph) -> str:
    """Order-independent SHA-256 over the canonical edge list."""
    canon = str(g.n_nodes) + "\n" + "\n".join(
        f"{a} {b}" for a, b in sorted(g.edges)
    )
    return hashlib.sha256(canon.encode()).hexdigest()
