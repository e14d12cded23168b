"""(d, h)-decompositions: data model, verifier, degeneracy and the exact oracle.

A decomposition ``(D, H)`` of ``G`` splits the edge set into ``H`` (maximum
degree at most ``h``) and an acyclic orientation ``D`` of the rest with
maximum out-degree at most ``d``.
"""

from __future__ import annotations

import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .embedding import Edge, RotationGraph, edge_key

DEFAULT_EDGE_BUDGET = 40
MAX_ORACLE_H = 2


class DecompositionError(ValueError):
    """A decomposition refers to something that is not in the graph."""


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OrientedDecomposition:
    d: int
    h: int
    h_edges: tuple[Edge, ...]
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_edges", tuple(sorted(edge_key(u, v) for u, v in self.h_edges)))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    def out_degrees(self) -> Counter:
        return Counter(u for u, _ in self.arcs)


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness}"


def verify(G: RotationGraph, dec: OrientedDecomposition) -> Violation | None:
    """Return None when ``dec`` is a valid (d, h)-decomposition of ``G``.

    Otherwise the first failing condition, checked in this order: edge
    partition, degree bound on H, out-degree bound on D, acyclicity of D.
    """
    edges = set(G.edges)
    for e in dec.h_edges:
        if e not in edges:
            raise DecompositionError(f"H edge {e[0]}-{e[1]} is not an edge of the graph")
    for u, v in dec.arcs:
        if edge_key(u, v) not in edges:
            raise DecompositionError(f"arc {u}>{v} is not an edge of the graph")

    cover = Counter(dec.h_edges)
    cover.update(edge_key(u, v) for u, v in dec.arcs)
    for e in G.edges:
        if cover[e] == 0:
            return Violation("uncovered edge", e)
        if cover[e] > 1:
            return Violation("doubly-covered edge", e)

    hdeg = Counter(x for e in dec.h_edges for x in e)
    for v in sorted(hdeg):
        if hdeg[v] > dec.h:
            return Violation("H over-degree vertex", (v, hdeg[v]))

    out = dec.out_degrees()
    for v in sorted(out):
        if out[v] > dec.d:
            return Violation("out-degree exceeded", (v, out[v]))

    cyc = find_directed_cycle(dec.arcs)
    if cyc is not None:
        return Violation("directed cycle", tuple(cyc))
    return None


def find_directed_cycle(arcs: Iterable[tuple[int, int]]) -> list[int] | None:
    succ = defaultdict(list)
    for u, v in sorted(arcs):
        succ[u].append(v)
    color: dict[int, int] = {}
    for root in sorted(succ):
        if root in color:
            continue
        stack = [(root, iter(succ[root]))]
        trail = [root]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
                trail.pop()
            elif color.get(w) == 1:
                return trail[trail.index(w):] + [w]
            elif w not in color:
                color[w] = 1
                stack.append((w, iter(succ[w])))
                trail.append(w)
    return None


@dataclass(frozen=True)
class DegeneracyCertificate:
    order: tuple[int, ...]
    value: int


def _adjacency(vertices: Iterable[int], edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def degeneracy_order(G: RotationGraph | None = None, *, vertices: Iterable[int] | None = None,
                     edges: Iterable[Edge] | None = None) -> DegeneracyCertificate:
    """Peel a minimum-degree vertex (smallest id on ties) until nothing is left.

    Works on ``G`` or on an arbitrary subgraph given by ``vertices``/``edges``.
    """
    if G is not None:
        vertices = G.vertices if vertices is None else vertices
        edges = G.edges if edges is None else edges
    adj = _adjacency(vertices or (), edges or ())
    deg = {v: len(n) for v, n in adj.items()}
    buckets: dict[int, set[int]] = defaultdict(set)
    for v, k in deg.items():
        buckets[k].add(v)
    order = []
    value = 0
    removed = set()
    lo = 0
    for _ in range(len(adj)):
        while not buckets[lo]:
            lo += 1
        v = min(buckets[lo])
        buckets[lo].discard(v)
        value = max(value, lo)
        order.append(v)
        removed.add(v)
        for w in adj[v]:
            if w not in removed:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
        lo = max(lo - 1, 0)
    return DegeneracyCertificate(tuple(order), value)


def degeneracy(vertices: Iterable[int], edges: Iterable[Edge]) -> int:
    return degeneracy_order(vertices=vertices, edges=edges).value


def orientation_from_order(edges: Iterable[Edge], order: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Orient every edge from the endpoint peeled earlier to the one peeled later.

    A vertex's out-degree is then its residual degree when it was peeled, so
    the maximum out-degree equals the certificate value and, since arcs
    only go forward in ``order``, the orientation is acyclic.
    """
    rank = {v: i for i, v in enumerate(order)}
    if len(rank) != len(order):
        raise ValueError("order repeats a vertex")
    arcs = []
    for u, v in edges:
        if u not in rank or v not in rank:
            raise ValueError(f"order is missing an endpoint of edge {u}-{v}")
        arcs.append((u, v) if rank[u] < rank[v] else (v, u))
    return tuple(sorted(arcs))


def edge_budget() -> int:
    raw = os.environ.get("DECOMP_ORACLE_EDGE_BUDGET")
    return int(raw) if raw else DEFAULT_EDGE_BUDGET


def _build(G_vertices, G_edges, d, h, chosen: Sequence[Edge]) -> OrientedDecomposition:
    hset = set(chosen)
    rest = [e for e in G_edges if e not in hset]
    cert = degeneracy_order(vertices=G_vertices, edges=rest)
    return OrientedDecomposition(d, h, tuple(chosen), orientation_from_order(rest, cert.order))


def oracle_decide(G: RotationGraph, d: int, h: int, *,
                  budget: int | None = None) -> OrientedDecomposition | None:
    """Exact search for a (d, h)-decomposition, h <= 2.

    Candidate H sets (subgraphs of maximum degree <= h) are visited in
    lexicographic order of their sorted edge-index tuples, so the returned
    witness is the lexicographically first one.  A subtree is skipped when
    even removing every still-addable edge leaves degeneracy above d.
    """
    if h < 0 or d < 0:
        raise ValueError("d and h must be non-negative")
    if h > MAX_ORACLE_H:
        raise ValueError(f"oracle supports h <= {MAX_ORACLE_H}")
    edges = list(G.edges)
    limit = edge_budget() if budget is None else budget
    if len(edges) > limit:
        raise OracleBudgetExceeded(f"{len(edges)} edges exceeds the oracle budget of {limit}")
    verts = G.vertices
    hdeg = Counter()
    chosen: list[int] = []

    def rest_degeneracy(excluded: set[int]) -> int:
        return degeneracy(verts, (e for i, e in enumerate(edges) if i not in excluded))

    def search(start: int) -> bool:
        taken = set(chosen)
        if rest_degeneracy(taken) <= d:
            return True
        addable = [i for i in range(start, len(edges))
                   if hdeg[edges[i][0]] < h and hdeg[edges[i][1]] < h]
        if not addable or rest_degeneracy(taken | set(addable)) > d:
            return False
        for i in addable:
            u, v = edges[i]
            if hdeg[u] < h and hdeg[v] < h:
                chosen.append(i)
                hdeg[u] += 1
                hdeg[v] += 1
                if search(i + 1):
                    return True
                chosen.pop()
                hdeg[u] -= 1
                hdeg[v] -= 1
        return False

    if not search(0):
        return None
    dec = _build(verts, edges, d, h, [edges[i] for i in chosen])
    assert verify(G, dec) is None
    return dec


def defective_coloring(G: RotationGraph, dec: OrientedDecomposition) -> dict[int, int]:
    """Color with d + 1 colors so that only H edges can be monochromatic.

    Vertices are colored sinks-first (reverse topological order of D), each
    taking the smallest color unused by its out-neighbors.
    """
    bad = verify(G, dec)
    if bad is not None:
        raise DecompositionError(f"invalid decomposition: {bad}")
    if dec.h > 1:
        raise DecompositionError("defective_coloring expects h <= 1")
    succ: dict[int, list[int]] = {v: [] for v in G.vertices}
    indeg = Counter()
    for u, v in dec.arcs:
        succ[u].append(v)
        indeg[v] += 1
    # Kahn's order on D, then reversed
    ready = sorted(v for v in G.vertices if indeg[v] == 0)
    topo = []
    while ready:
        v = ready.pop(0)
        topo.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    color: dict[int, int] = {}
    for v in reversed(topo):
        used = {color[w] for w in succ[v]}
        color[v] = next(c for c in range(dec.d + 1) if c not in used)
    return color


def coloring_defect(G: RotationGraph, color: Mapping[int, int]) -> int:
    """Largest number of same-colored neighbors over all vertices."""
    return max((sum(color[w] == color[v] for w in G.adjacency[v]) for v in G.vertices), default=0)
