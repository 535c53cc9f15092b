"""Labelled multigraphs: cores, kernels, and connectivity predicates.

A Multigraph is a pseudograph: loops are stored as (v, v) and count twice
toward the degree; parallel edges are repeated pairs.  Subgraph extraction
keeps the original vertex labels, so a graph carries an explicit set of
active vertices alongside its label-space size.
"""

from __future__ import annotations

from collections import Counter

from .errors import DomainError
from .numeric import eta_of

__all__ = [
    "Multigraph",
    "DegreeSequence",
    "two_core",
    "pre_kernel",
    "kernel",
    "is_two_connected",
    "is_two_edge_connected",
    "is_simple",
    "parse_edge_list",
    "format_edge_list",
]


class Multigraph:
    """Immutable labelled pseudograph.

    ``vertices`` is the set of active labels (defaults to range(n)); edges
    are canonicalized to sorted pairs and sorted order for equality.
    """

    __slots__ = ("n", "vertices", "edges")

    def __init__(self, n, edges=(), vertices=None):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        self.n = n
        if vertices is None:
            self.vertices = tuple(range(n))
        else:
            self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        canon = []
        for u, v in edges:
            if u not in vset or v not in vset:
                raise DomainError(f"edge ({u},{v}) uses an inactive vertex")
            canon.append((u, v) if u <= v else (v, u))
        canon.sort()
        self.edges = tuple(canon)

    @property
    def edge_count(self):
        return len(self.edges)

    def degrees(self):
        """Degree per active vertex (loops count twice)."""
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self):
        """vertex -> list of (neighbor, edge_id); loops appear once."""
        adj = {v: [] for v in self.vertices}
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                adj[u].append((v, eid))
            else:
                adj[u].append((v, eid))
                adj[v].append((u, eid))
        return adj

    def __eq__(self, other):
        return (isinstance(other, Multigraph)
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return (f"Multigraph(n={self.n}, |V|={len(self.vertices)}, "
                f"|E|={len(self.edges)})")


class DegreeSequence:
    """A degree vector with cached count statistics."""

    __slots__ = ("degrees", "_counts")

    def __init__(self, degrees):
        ds = tuple(int(d) for d in degrees)
        if any(d < 0 for d in ds):
            raise DomainError("degrees must be non-negative")
        self.degrees = ds
        self._counts = None

    def __eq__(self, other):
        return isinstance(other, DegreeSequence) and self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        if len(self.degrees) <= 12:
            return f"DegreeSequence{self.degrees}"
        return f"DegreeSequence(n={len(self.degrees)}, m={self.m})"

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    @property
    def counts(self):
        """Counter: degree value -> multiplicity (D_j)."""
        if self._counts is None:
            self._counts = Counter(self.degrees)
        return self._counts

    def D(self, j):
        return self.counts[j]

    @property
    def m(self):
        """Half the degree sum (the edge count of any realization)."""
        s = sum(self.degrees)
        if s % 2 != 0:
            raise DomainError("degree sum is odd; no realization exists")
        return s // 2

    @property
    def n_prime(self):
        """Number of vertices of degree >= 3."""
        return sum(1 for d in self.degrees if d >= 3)

    @property
    def m_prime(self):
        """Half the sum of degrees >= 3 (kernel edge count when min deg 2)."""
        s = sum(d for d in self.degrees if d >= 3)
        return s // 2 if s % 2 == 0 else s / 2

    @property
    def eta(self):
        return eta_of(self.degrees)


def _active_subgraph(G, keep):
    keep = set(keep)
    edges = [(u, v) for (u, v) in G.edges if u in keep and v in keep]
    return Multigraph(G.n, edges, vertices=keep)


def two_core(G: Multigraph) -> Multigraph:
    """Maximal sub-multigraph of minimum degree >= 2 (repeatedly peel
    degree <= 1 vertices); labels preserved, possibly empty."""
    deg = G.degrees()
    alive = {v for v in G.vertices}
    # incidence without loops: loops keep a vertex's degree at >= 2 and
    # never propagate peeling.
    adj = {v: [] for v in G.vertices}
    for u, v in G.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    stack = [v for v in alive if deg[v] <= 1]
    dead = set()
    while stack:
        v = stack.pop()
        if v in dead or deg[v] > 1:
            continue
        dead.add(v)
        for w in adj[v]:
            if w not in dead:
                deg[w] -= 1
                deg[v] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    keep = alive - dead
    return _active_subgraph(G, keep)


def _components(G: Multigraph):
    """Connected components of the active vertex set (loops ignored)."""
    adj = {v: [] for v in G.vertices}
    for u, v in G.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = set()
    comps = []
    for s in G.vertices:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def pre_kernel(G: Multigraph) -> Multigraph:
    """Two-core minus every component that is a bare cycle (all degrees
    exactly 2 and connected; an isolated vertex with one loop counts)."""
    core = two_core(G)
    deg = core.degrees()
    keep = set()
    for comp in _components(core):
        if all(deg[v] == 2 for v in comp):
            continue  # cycle component (or loop-only vertex)
        keep |= comp
    return _active_subgraph(core, keep)


def kernel(G: Multigraph) -> Multigraph:
    """Contract each maximal path of degree-2 vertices in the pre-kernel
    to a single edge; result has min degree >= 3 (loops/multi-edges ok)."""
    pk = pre_kernel(G)
    deg = pk.degrees()
    branch = {v for v in pk.vertices if deg[v] >= 3}
    adj = pk.adjacency()
    used = [False] * len(pk.edges)
    kedges = []
    for u in branch:
        for w, eid in adj[u]:
            if used[eid]:
                continue
            if u == w:  # loop at a branch vertex survives as-is
                used[eid] = True
                kedges.append((u, u))
                continue
            # walk through degree-2 vertices until the next branch vertex
            used[eid] = True
            prev_eid, cur = eid, w
            while cur not in branch:
                nxt = None
                for w2, eid2 in adj[cur]:
                    if eid2 != prev_eid and not used[eid2]:
                        nxt = (w2, eid2)
                        break
                if nxt is None:
                    # degree-2 loop endpoint: (v,v) loop on a path vertex
                    # cannot occur in a pre-kernel walk; defensive stop
                    break
                used[nxt[1]] = True
                prev_eid, cur = nxt[1], nxt[0]
            kedges.append((u, cur))
    return Multigraph(pk.n, kedges, vertices=branch)


def _dfs_low(G: Multigraph):
    """Iterative DFS computing discovery/low-link over the multigraph.

    Returns (order, low, parent_edge, tree_children, components) where
    components is the number of DFS roots.  Parallel edges are distinct:
    only the exact edge used to enter a vertex is skipped on the way back,
    so a doubled edge acts as a back edge.  Loops are ignored.
    """
    adj = G.adjacency()
    disc = {}
    low = {}
    children = {v: [] for v in G.vertices}
    roots = []
    counter = 0
    for s in G.vertices:
        if s in disc:
            continue
        roots.append(s)
        stack = [(s, -1, iter(adj[s]))]
        disc[s] = low[s] = counter
        counter += 1
        while stack:
            v, in_eid, it = stack[-1]
            advanced = False
            for w, eid in it:
                if w == v:
                    continue  # loop
                if eid == in_eid:
                    continue  # don't reuse the entering edge
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    children[v].append(w)
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
        # end component
    return disc, low, children, roots


def is_two_connected(G: Multigraph) -> bool:
    """No cut-vertex, connected, and at least three vertices."""
    if len(G.vertices) < 3:
        return False
    disc, low, children, roots = _dfs_low(G)
    if len(roots) != 1:
        return False
    root = roots[0]
    if len(children[root]) >= 2:
        return False
    for v in G.vertices:
        if v == root:
            continue
        for w in children[v]:
            if low[w] >= disc[v]:
                return False
    return True


def is_two_edge_connected(G: Multigraph) -> bool:
    """Connected with no bridge.  A single active vertex is vacuously
    2-edge-connected; two vertices need edge multiplicity >= 2 (which the
    bridge test gives for free).  Loops are never bridges."""
    if len(G.vertices) == 0:
        return False
    if len(G.vertices) == 1:
        return True
    disc, low, children, roots = _dfs_low(G)
    if len(roots) != 1:
        return False
    for v in G.vertices:
        for w in children[v]:
            if low[w] > disc[v]:
                return False
    return True


def is_simple(G: Multigraph) -> bool:
    """No loops and no parallel edges."""
    seen = set()
    for u, v in G.edges:
        if u == v or (u, v) in seen:
            return False
        seen.add((u, v))
    return True


def parse_edge_list(text: str) -> Multigraph:
    """Read the 'n m' header followed by m 'u v' lines (0-based labels)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise DomainError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise DomainError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return Multigraph(n, edges)


def format_edge_list(G: Multigraph) -> str:
    out = [f"{G.n} {len(G.edges)}"]
    out.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(out) + "\n"
