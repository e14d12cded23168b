"""Signed rotation systems and face tracing.

A :class:`RotationGraph` stores, for every vertex, the cyclic (clockwise)
order of its darts.  Each dart carries a signature in ``{+1, -1}``; the two
darts of an edge always carry the same signature.  All-positive signatures
describe an orientable embedding, negative edges twist the local sense and
make non-orientable surfaces (projective plane, Klein bottle) representable.

Face tracing convention
-----------------------
A walk state is ``(v, i, o)``: we stand at ``v`` about to leave along dart
``rot[v][i]`` with local sense ``o``.  Crossing the edge multiplies ``o`` by
the edge signature.  Having entered ``w`` through the reverse dart at index
``j``, the next dart is ``j + 1`` (rotation successor) if the sense is
positive and ``j - 1`` (predecessor) if negative.  Every face is the orbit of
this map together with its reversed orbit; faces are reported in the order
their first positive state ``(v, i, +1)`` appears when scanning vertices and
darts in increasing order.

Corner ``c`` of a vertex ``v`` is the angle between darts ``c`` and ``c + 1``
(indices mod ``d(v)``).  An isolated vertex is given one face of degree 0 so
that every connected component contributes ``V - E + F <= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence


class EmbeddingError(ValueError):
    """The rotation data does not describe a simple embedded graph."""


class Dart(NamedTuple):
    head: int
    sign: int = 1


Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class RotationGraph:
    """Immutable signed rotation system.

    ``rotations`` maps each vertex id to the clockwise tuple of its darts.
    Vertex ids are arbitrary non-negative integers; parsed and generated
    graphs use ``0..n-1`` and :func:`remove_vertices` keeps the surviving ids.
    """

    rotations: Mapping[int, tuple[Dart, ...]]
    _pos: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        rot = {int(v): tuple(Dart(int(w), int(s)) for w, s in darts)
               for v, darts in sorted(self.rotations.items())}
        object.__setattr__(self, "rotations", rot)
        pos: dict[tuple[int, int], int] = {}
        for v, darts in rot.items():
            if v < 0:
                raise EmbeddingError(f"negative vertex id {v}")
            for i, (w, s) in enumerate(darts):
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if (v, w) in pos:
                    raise EmbeddingError(f"parallel edge {v}-{w}")
                if w not in rot:
                    raise EmbeddingError(f"vertex {v} references unknown vertex {w}")
                if s not in (1, -1):
                    raise EmbeddingError(f"bad signature {s} on dart {v}->{w}")
                pos[(v, w)] = i
        for (v, w), i in pos.items():
            j = pos.get((w, v))
            if j is None:
                raise EmbeddingError(f"asymmetric adjacency: {v}->{w} has no reverse dart")
            if rot[v][i].sign != rot[w][j].sign:
                raise EmbeddingError(f"signature mismatch on edge {v}-{w}")
        object.__setattr__(self, "_pos", pos)

    @classmethod
    def from_neighbors(cls, rotation: Mapping[int, Sequence[int]],
                       negative: Iterable[Edge] = ()) -> "RotationGraph":
        """Build from plain neighbor orders; edges in ``negative`` get signature -1."""
        neg = {edge_key(u, v) for u, v in negative}
        return cls({v: tuple(Dart(w, -1 if edge_key(v, w) in neg else 1) for w in nbrs)
                    for v, nbrs in rotation.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RotationGraph):
            return NotImplemented
        return self.rotations == other.rotations

    def __hash__(self) -> int:
        return hash(tuple(self.rotations.items()))

    def __repr__(self) -> str:
        return f"RotationGraph(n={self.vertex_count}, m={self.edge_count})"

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self.rotations)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((v, w) for v, darts in self.rotations.items()
                            for w, _ in darts if v < w))

    @property
    def edge_count(self) -> int:
        return len(self._pos) // 2

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(w for w, _ in darts) for v, darts in self.rotations.items()}

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in rotation order."""
        return tuple(w for w, _ in self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._pos

    def signature(self, u: int, v: int) -> int:
        return self.rotations[u][self._pos[(u, v)]].sign

    def dart_index(self, u: int, v: int) -> int:
        return self._pos[(u, v)]

    @property
    def is_orientable_scheme(self) -> bool:
        """True when every signature is +1 (sufficient, not necessary, for orientability)."""
        return all(s == 1 for darts in self.rotations.values() for _, s in darts)

    def relabeled(self) -> "RotationGraph":
        """Copy with vertex ids compressed to ``0..n-1`` in increasing order."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return RotationGraph({index[v]: tuple(Dart(index[w], s) for w, s in darts)
                              for v, darts in self.rotations.items()})

    @cached_property
    def faces(self) -> "FaceData":
        return _trace(self)


@dataclass(frozen=True)
class Face:
    """A face given by its boundary walk (darts in traversal order)."""

    darts: tuple[Edge, ...]
    isolated: int | None = None

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge_key(u, v) for u, v in self.darts)


@dataclass(frozen=True)
class FaceData:
    faces: tuple[Face, ...]
    corners: dict[int, tuple[int, ...]]
    """vertex -> face index of each corner, corner c between darts c and c+1."""
    edge_sides: dict[Edge, tuple[int, int]]
    """edge -> face indices on its two sides (equal for a bridge)."""


@dataclass(frozen=True)
class EmbeddingSummary:
    v_count: int
    e_count: int
    f_count: int

    @property
    def characteristic(self) -> int:
        return self.v_count - self.e_count + self.f_count


def _trace(G: RotationGraph) -> FaceData:
    rot = G.rotations
    pos = G._pos
    seen: set[tuple[int, int, int]] = set()
    faces: list[Face] = []
    corners: dict[int, list[int | None]] = {v: [None] * len(d) for v, d in rot.items()}
    sides: dict[Edge, list[int]] = {e: [] for e in G.edges}

    def step(state):
        v, i, o = state
        w, s = rot[v][i]
        o *= s
        j = pos[(w, v)]
        k = (j + 1) % len(rot[w]) if o > 0 else (j - 1) % len(rot[w])
        return (w, k, o)

    def reverse(state):
        v, i, o = state
        w, s = rot[v][i]
        return (w, pos[(w, v)], -o * s)

    for v in G.vertices:
        if not rot[v]:
            faces.append(Face((), isolated=v))
            continue
        for i in range(len(rot[v])):
            start = (v, i, 1)
            if start in seen:
                continue
            fid = len(faces)
            walk = []
            state = start
            while True:
                seen.add(state)
                seen.add(reverse(state))
                u, k, o = state
                w = rot[u][k].head
                walk.append((u, w))
                c = (k - 1) % len(rot[u]) if o > 0 else k
                if corners[u][c] is not None:
                    raise EmbeddingError(f"corner {c} of vertex {u} traced twice")
                corners[u][c] = fid
                sides[edge_key(u, w)].append(fid)
                state = step(state)
                if state == start:
                    break
            faces.append(Face(tuple(walk)))
    for v, cs in corners.items():
        if any(c is None for c in cs):
            raise EmbeddingError(f"untraced corner at vertex {v}")
    for e, fs in sides.items():
        if len(fs) != 2:
            raise EmbeddingError(f"edge {e} has {len(fs)} face sides")
    return FaceData(tuple(faces),
                    {v: tuple(cs) for v, cs in corners.items()},
                    {e: (fs[0], fs[1]) for e, fs in sides.items()})


def trace_faces(G: RotationGraph) -> list[Face]:
    return list(G.faces.faces)


def summary(G: RotationGraph) -> EmbeddingSummary:
    return EmbeddingSummary(G.vertex_count, G.edge_count, len(G.faces.faces))


def euler_characteristic(G: RotationGraph) -> int:
    return summary(G).characteristic


def incident_faces(G: RotationGraph, v: int) -> tuple[int, ...]:
    """Face index at each corner of ``v`` in rotation order (repeats kept)."""
    if v not in G.rotations:
        raise KeyError(f"unknown vertex {v}")
    return G.faces.corners[v]


def remove_vertices(G: RotationGraph, X: Iterable[int]) -> RotationGraph:
    """Induced embedding on ``V - X``; surviving darts keep their cyclic order."""
    X = set(X)
    if not X:
        return G
    return RotationGraph({v: tuple(d for d in darts if d.head not in X)
                          for v, darts in G.rotations.items() if v not in X})


def subdivide_edges(G: RotationGraph, edges: Iterable[Edge] | None = None) -> RotationGraph:
    """Insert a new degree-2 vertex on each given edge (all edges by default).

    New ids are allocated after the current maximum, in sorted edge order.
    The new vertex sits on the dart positions of the old edge, and the old
    signature is kept on the half incident to the larger endpoint.
    """
    targets = sorted(edge_key(u, v) for u, v in (G.edges if edges is None else edges))
    rot = {v: list(darts) for v, darts in G.rotations.items()}
    nxt = max(G.vertices, default=-1) + 1
    for u, w in targets:
        if not G.has_edge(u, w):
            raise EmbeddingError(f"no edge {u}-{w} to subdivide")
        s = G.signature(u, w)
        x = nxt
        nxt += 1
        rot[u][G.dart_index(u, w)] = Dart(x, 1)
        rot[w][G.dart_index(w, u)] = Dart(x, s)
        rot[x] = [Dart(u, 1), Dart(w, s)]
    return RotationGraph({v: tuple(d) for v, d in rot.items()})


def from_drawing(positions: Mapping[int, tuple[float, float]],
                 edges: Iterable[Edge]) -> RotationGraph:
    """Rotation system of a straight-line drawing: neighbors sorted clockwise.

    The result is a planar embedding only if the drawing has no crossings;
    callers can check ``euler_characteristic == 2`` on connected inputs.
    """
    import math

    nbrs: dict[int, list[int]] = {v: [] for v in positions}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def clockwise(v: int):
        x0, y0 = positions[v]
        return sorted(nbrs[v], key=lambda w: -math.atan2(positions[w][1] - y0,
                                                         positions[w][0] - x0))

    return RotationGraph.from_neighbors({v: clockwise(v) for v in positions})
