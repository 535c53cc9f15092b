"""Exact ground truth at tiny scale by exhaustive enumeration.

Counts are exact big integers; probabilities are exact fractions.  These
routines exist to pin down every probabilistic and asymptotic claim at
sizes where brute force is feasible, so the enumeration guards are
deliberately conservative.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

from .errors import DomainError, LimitError
from .graphs import (
    DegreeSequence,
    Multigraph,
    is_simple,
    is_two_connected,
    is_two_edge_connected,
)

__all__ = [
    "PREDICATES",
    "exact_count",
    "exact_count_degseq",
    "exact_U",
    "exact_Uprime",
    "exact_prob_2cs",
    "enumerate_matchings",
    "enumerate_kernel_configs",
    "double_factorial",
    "rising_factorial",
]

_MAX_N = 8
_MAX_N_OVERRIDE = 9
_MAX_DEGREE_SUM = 18


def _min_degree_at_least(G, k):
    return all(d >= k for d in G.degrees().values())


def _connected(G):
    if len(G.vertices) <= 1:
        return True
    adj = {v: [] for v in G.vertices}
    for u, v in G.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = {G.vertices[0]}
    stack = [G.vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(G.vertices)


PREDICATES = {
    "two_connected": is_two_connected,
    "two_edge_connected": lambda G: len(G.vertices) >= 3
    and is_two_edge_connected(G),
    "min_degree_2": lambda G: _min_degree_at_least(G, 2),
    "connected": _connected,
    "all": lambda G: True,
}


def double_factorial(k: int) -> int:
    """(k)!! for odd k >= -1; (2m-1)!! is the number of matchings on 2m
    points."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def rising_factorial(x: int, k: int) -> int:
    """x (x+1) ... (x+k-1)."""
    out = 1
    for i in range(k):
        out *= x + i
    return out


def exact_count(n: int, m: int, predicate: str, override: bool = False) -> int:
    """Count labelled simple (n, m)-graphs satisfying the predicate by
    iterating all C(n(n-1)/2, m) edge subsets."""
    if predicate not in PREDICATES:
        raise DomainError(f"unknown predicate {predicate!r}")
    limit = _MAX_N_OVERRIDE if override else _MAX_N
    if not 3 <= n <= limit:
        raise LimitError(
            f"exact_count guard: need 3 <= n <= {limit} (got n={n}); "
            "pass override=True to raise the cap to 9"
        )
    pairs = list(combinations(range(n), 2))
    if not 0 <= m <= len(pairs):
        raise DomainError(f"m must be in [0, {len(pairs)}]")
    pred = PREDICATES[predicate]
    count = 0
    for subset in combinations(pairs, m):
        if pred(Multigraph(n, subset)):
            count += 1
    return count


def enumerate_matchings(points):
    """All perfect matchings on the given point list, smallest unmatched
    point first; yields tuples of point pairs."""
    points = list(points)
    if len(points) % 2 != 0:
        raise DomainError("cannot match an odd number of points")

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for i in range(1, len(rest)):
            b = rest[i]
            tail = rest[1:i] + rest[i + 1:]
            for sub in rec(tail):
                yield ((a, b),) + sub

    yield from rec(points)


def _cells(d):
    """point -> vertex map for the pairing model on degree sequence d."""
    owner = []
    for v, deg in enumerate(d):
        owner.extend([v] * deg)
    return owner


def _matching_to_graph(n, owner, matching):
    return Multigraph(n, [(owner[a], owner[b]) for a, b in matching])


def _count_matchings(d, predicate, require_simple=True):
    """(favorable, total) over all pairings of the degree sequence."""
    ds = list(d)
    total_points = sum(ds)
    if total_points > _MAX_DEGREE_SUM:
        raise LimitError(
            f"degree sum {total_points} exceeds the enumeration guard "
            f"({_MAX_DEGREE_SUM})"
        )
    owner = _cells(ds)
    n = len(ds)
    pred = PREDICATES[predicate]
    cache = {}
    fav = 0
    total = 0
    for matching in enumerate_matchings(range(total_points)):
        total += 1
        edges = tuple(sorted(
            (owner[a], owner[b]) if owner[a] <= owner[b] else (owner[b], owner[a])
            for a, b in matching))
        hit = cache.get(edges)
        if hit is None:
            G = Multigraph(n, edges)
            hit = (is_simple(G) or not require_simple) and pred(G)
            cache[edges] = hit
        if hit:
            fav += 1
    return fav, total


def exact_count_degseq(d, predicate: str) -> int:
    """Number of simple graphs with degree sequence d satisfying the
    predicate, via the pairing identity: favorable matchings divide
    exactly by prod d_i!."""
    if predicate not in PREDICATES:
        raise DomainError(f"unknown predicate {predicate!r}")
    ds = list(d)
    fav, _total = _count_matchings(ds, predicate)
    denom = math.prod(math.factorial(x) for x in ds)
    if fav % denom != 0:
        raise ArithmeticError(
            "pairing identity violated: favorable matching count "
            f"{fav} not divisible by prod d_i! = {denom}"
        )
    return fav // denom


def exact_U(d) -> Fraction:
    """Exact probability that the pairing model is simple."""
    fav, total = _count_matchings(d, "all")
    return Fraction(fav, total)


def exact_Uprime(d) -> Fraction:
    """Exact probability that the pairing model is simple and 2-connected."""
    fav, total = _count_matchings(d, "two_connected")
    return Fraction(fav, total)


def _compositions(total, parts):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_kernel_configs(d):
    """All (kernel_edges, assignment) outcomes of the kernel configuration
    model for degree sequence d, uniformly weighted.

    kernel_edges is the projected edge tuple (in matching order, oriented
    by point order); assignment gives, per kernel edge, the ordered tuple
    of degree-2 vertex labels placed on it.
    """
    ds = list(d)
    if any(x < 2 for x in ds):
        raise DomainError("kernel configuration model needs min degree 2")
    kernel_vs = [i for i, x in enumerate(ds) if x >= 3]
    deg2 = [i for i, x in enumerate(ds) if x == 2]
    if not kernel_vs:
        raise DomainError("no vertex of degree >= 3: kernel is empty")
    kd = [ds[i] for i in kernel_vs]
    if sum(kd) % 2 != 0:
        raise DomainError("kernel degree sum must be even")
    owner = []
    for v, deg in zip(kernel_vs, kd):
        owner.extend([v] * deg)
    M = sum(kd) // 2
    D2 = len(deg2)
    for matching in enumerate_matchings(range(sum(kd))):
        kernel_edges = tuple((owner[a], owner[b]) for a, b in matching)
        # every arrangement = (composition of D2 into M parts) x
        # (permutation of the degree-2 labels), split by the composition
        for comp in _compositions(D2, M):
            for perm in permutations(deg2):
                assignment = []
                pos = 0
                for t in comp:
                    assignment.append(tuple(perm[pos:pos + t]))
                    pos += t
                yield kernel_edges, tuple(assignment)


def subdivide(n, kernel_edges, assignment):
    """Pre-kernel obtained by placing the assigned degree-2 vertices along
    each kernel edge, in order."""
    edges = []
    active = set()
    for (u, v), labels in zip(kernel_edges, assignment):
        chain = [u, *labels, v]
        active.update(chain)
        edges.extend(zip(chain[:-1], chain[1:]))
    return Multigraph(n, edges, vertices=active)


def exact_prob_2cs(d) -> Fraction:
    """Exact probability that the kernel configuration model's pre-kernel
    is 2-connected and simple."""
    ds = list(d)
    kernel_sum = sum(x for x in ds if x >= 3)
    D2 = sum(1 for x in ds if x == 2)
    if kernel_sum > 12 or D2 > 4:
        raise LimitError(
            "exact_prob_2cs guard: need kernel degree sum <= 12 and "
            f"D_2 <= 4 (got {kernel_sum}, {D2})"
        )
    n = len(ds)
    fav = 0
    total = 0
    for kernel_edges, assignment in enumerate_kernel_configs(ds):
        total += 1
        G = subdivide(n, kernel_edges, assignment)
        if is_simple(G) and is_two_connected(G):
            fav += 1
    M = kernel_sum // 2
    expected_total = double_factorial(kernel_sum - 1) * rising_factorial(M, D2)
    if total != expected_total:
        raise ArithmeticError("kernel configuration enumeration miscounted")
    return Fraction(fav, total)
