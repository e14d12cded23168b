"""Deterministic test-instance generators with canonical embeddings.

Planar kinds come from straight-line drawings (see ``from_drawing``) and
have characteristic 2; ``toroidal_grid`` has characteristic 0.  ``complete``
uses a plane drawing for n <= 4 and a torus embedding for n = 5, 6.
"""

from __future__ import annotations

import math
from itertools import combinations, product

from .embedding import RotationGraph, from_drawing


def _circle(k: int, radius: float = 1.0, phase: float = math.pi / 2):
    return [(radius * math.cos(phase - 2 * math.pi * i / k),
             radius * math.sin(phase - 2 * math.pi * i / k)) for i in range(k)]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def cycle(n: int) -> RotationGraph:
    _need(n >= 3, "cycle needs n >= 3")
    pos = dict(enumerate(_circle(n)))
    return from_drawing(pos, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> RotationGraph:
    _need(n >= 1, "path needs n >= 1")
    return from_drawing({i: (float(i), 0.0) for i in range(n)}, [(i, i + 1) for i in range(n - 1)])


def wheel(n: int) -> RotationGraph:
    """Hub 0 joined to a rim cycle 1..n."""
    _need(n >= 3, "wheel needs a rim of n >= 3")
    pos = {0: (0.0, 0.0)}
    pos.update({i + 1: p for i, p in enumerate(_circle(n))})
    edges = [(0, i) for i in range(1, n + 1)] + [(i, i % n + 1) for i in range(1, n + 1)]
    return from_drawing(pos, edges)


def prism(n: int) -> RotationGraph:
    """Outer cycle 0..n-1, inner cycle n..2n-1, spokes i -- n+i."""
    _need(n >= 3, "prism needs n >= 3")
    pos = {i: p for i, p in enumerate(_circle(n, 2.0))}
    pos.update({n + i: p for i, p in enumerate(_circle(n, 1.0))})
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return from_drawing(pos, edges)


def planar_grid(m: int, n: int) -> RotationGraph:
    """m rows by n columns of vertices; vertex r*n + c."""
    _need(m >= 1 and n >= 1, "planar_grid needs m, n >= 1")
    pos = {r * n + c: (float(c), float(-r)) for r in range(m) for c in range(n)}
    edges = [(r * n + c, r * n + c + 1) for r in range(m) for c in range(n - 1)]
    edges += [(r * n + c, (r + 1) * n + c) for r in range(m - 1) for c in range(n)]
    return from_drawing(pos, edges)


def toroidal_grid(m: int, n: int) -> RotationGraph:
    """m x n grid with wrap-around; rotation right, down, left, up at every vertex."""
    _need(m >= 3 and n >= 3, "toroidal_grid needs m, n >= 3")

    def vid(r: int, c: int) -> int:
        return (r % m) * n + (c % n)

    return RotationGraph.from_neighbors({
        vid(r, c): [vid(r, c + 1), vid(r + 1, c), vid(r, c - 1), vid(r - 1, c)]
        for r in range(m) for c in range(n)})


def hex_grid(m: int, n: int) -> RotationGraph:
    """Honeycomb patch of m rows with n hexagons each (brick-wall drawing)."""
    _need(m >= 1 and n >= 1, "hex_grid needs m, n >= 1")
    edges = set()
    for i in range(m):
        for j in range(n):
            a = 2 * j + i % 2
            for r in (i, i + 1):
                edges.add(((r, a), (r, a + 1)))
                edges.add(((r, a + 1), (r, a + 2)))
            edges.add(((i, a), (i + 1, a)))
            edges.add(((i, a + 2), (i + 1, a + 2)))
    points = sorted({p for e in edges for p in e})
    index = {p: k for k, p in enumerate(points)}
    pos = {index[(r, c)]: (float(c), float(-r)) for r, c in points}
    return from_drawing(pos, [(index[a], index[b]) for a, b in edges])


# Z_7 rotation (1, 3, 2, 6, 4, 5) embeds K7 as a torus triangulation.
_K7_STEPS = (1, 3, 2, 6, 4, 5)


def complete(n: int) -> RotationGraph:
    _need(1 <= n <= 6, "complete supports 1 <= n <= 6")
    if n <= 3:
        return from_drawing(dict(enumerate(_circle(n))) if n > 1 else {0: (0.0, 0.0)},
                            list(combinations(range(n), 2)))
    if n == 4:
        pos = {0: (0.0, 0.0), 1: (0.0, 2.0), 2: (1.8, -1.0), 3: (-1.8, -1.0)}
        return from_drawing(pos, list(combinations(range(4), 2)))
    rot = {v: [(v + s) % 7 for s in _K7_STEPS] for v in range(7)}
    keep = set(range(n))
    return RotationGraph.from_neighbors({v: [w for w in rot[v] if w in keep] for v in keep})


def _polyhedron(points: list[tuple[float, float, float]], length: float) -> RotationGraph:
    """Convex polyhedron skeleton; edges are vertex pairs at the given distance."""
    edges = [(i, j) for i, j in combinations(range(len(points)), 2)
             if abs(math.dist(points[i], points[j]) - length) < 1e-6]
    nbrs = {i: [] for i in range(len(points))}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    rot = {}
    for i, p in enumerate(points):
        norm = math.sqrt(sum(x * x for x in p))
        nz = [x / norm for x in p]
        ref = [1.0, 0.0, 0.0] if abs(nz[0]) < 0.9 else [0.0, 1.0, 0.0]
        ex = _normalize(_cross(ref, nz))
        ey = _cross(nz, ex)

        def angle(j, p=p, ex=ex, ey=ey):
            d = [points[j][k] - p[k] for k in range(3)]
            return -math.atan2(sum(a * b for a, b in zip(d, ey)), sum(a * b for a, b in zip(d, ex)))

        rot[i] = sorted(nbrs[i], key=angle)
    return RotationGraph.from_neighbors(rot)


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _normalize(a):
    n = math.sqrt(sum(x * x for x in a))
    return [x / n for x in a]


_PHI = (1 + math.sqrt(5)) / 2


def octahedron() -> RotationGraph:
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    return _polyhedron([tuple(map(float, p)) for p in pts], math.sqrt(2))


def icosahedron() -> RotationGraph:
    pts = []
    for a, b in product((1, -1), repeat=2):
        pts += [(0.0, a, b * _PHI), (a, b * _PHI, 0.0), (b * _PHI, 0.0, a)]
    return _polyhedron(pts, 2.0)


def dodecahedron() -> RotationGraph:
    pts = [tuple(map(float, p)) for p in product((1, -1), repeat=3)]
    for a, b in product((1, -1), repeat=2):
        pts += [(0.0, a / _PHI, b * _PHI), (a / _PHI, b * _PHI, 0.0), (b * _PHI, 0.0, a / _PHI)]
    return _polyhedron(pts, 2 / _PHI)


KINDS = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "wheel": (wheel, 1),
    "prism": (prism, 1),
    "planar_grid": (planar_grid, 2),
    "toroidal_grid": (toroidal_grid, 2),
    "hex_grid": (hex_grid, 2),
    "complete": (complete, 1),
    "octahedron": (octahedron, 0),
    "icosahedron": (icosahedron, 0),
    "dodecahedron": (dodecahedron, 0),
}


def generate(kind: str, *params: int) -> RotationGraph:
    try:
        fn, arity = KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}") from None
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)


__all__ = ["generate", "KINDS"] + list(KINDS)
