"""Cycle-structure predicates and class membership.

Cycles are vertex tuples in canonical form: the smallest vertex first and
the smaller of its two cycle-neighbors second.  Enumeration is a DFS rooted
at each vertex in increasing order that only visits larger vertices, so each
cycle is produced once and in a fixed order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .embedding import RotationGraph, edge_key, euler_characteristic, incident_faces

MAX_CYCLE = 8

Cycle = tuple[int, ...]

G_CONDITIONS = ("no-chord-5", "no-chord-6", "no-chord-7-and-no-adjacent-4cycles")
H_PAIRS = ((3, 4), (3, 6), (4, 6))


def iter_cycles(G: RotationGraph, k: int) -> Iterator[Cycle]:
    if not 3 <= k <= MAX_CYCLE:
        raise ValueError(f"cycle length must be in 3..{MAX_CYCLE}, got {k}")
    adj = {v: sorted(G.adjacency[v]) for v in G.vertices}
    for s in G.vertices:
        path = [s]
        on_path = {s}

        def extend():
            u = path[-1]
            if len(path) == k:
                if s in G.adjacency[u] and path[1] < path[-1]:
                    yield tuple(path)
                return
            for w in adj[u]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.discard(w)

        yield from extend()


def enumerate_cycles(G: RotationGraph, k: int) -> list[Cycle]:
    return list(iter_cycles(G, k))


def has_cycle(G: RotationGraph, k: int) -> bool:
    return next(iter_cycles(G, k), None) is not None


def cycle_edges(cycle: Cycle) -> set:
    return {edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}


def find_chord_cycle(G: RotationGraph, k: int) -> tuple[Cycle, tuple[int, int]] | None:
    """First k-cycle (enumeration order) with a chord, with its smallest chord."""
    for cyc in iter_cycles(G, k):
        on = set(cyc)
        own = cycle_edges(cyc)
        chords = sorted(edge_key(x, y) for x in cyc for y in G.adjacency[x]
                        if y in on and x < y and edge_key(x, y) not in own)
        if chords:
            return cyc, chords[0]
    return None


def has_chord_cycle(G: RotationGraph, k: int) -> bool:
    if k not in (5, 6, 7):
        raise ValueError("chord cycles are tracked for k in {5, 6, 7}")
    return find_chord_cycle(G, k) is not None


def find_adjacent_4cycles(G: RotationGraph) -> tuple[Cycle, Cycle] | None:
    """Two distinct 4-cycles sharing at least one edge, or None."""
    first_on_edge: dict = {}
    for cyc in iter_cycles(G, 4):
        for e in sorted(cycle_edges(cyc)):
            other = first_on_edge.setdefault(e, cyc)
            if other != cyc:
                return other, cyc
    return None


def has_adjacent_4cycles(G: RotationGraph) -> bool:
    return find_adjacent_4cycles(G) is not None


def face_profile(G: RotationGraph, face_index: int) -> tuple[int, ...]:
    """Sorted degrees of the boundary vertices of a face, with multiplicity."""
    face = G.faces.faces[face_index]
    return tuple(sorted(G.degree(u) for u in face.vertices))


def face_counts(G: RotationGraph, v: int) -> Counter:
    """n_i(v): corner incidences of v with i-faces, keyed by face degree i."""
    faces = G.faces.faces
    return Counter(faces[f].degree for f in incident_faces(G, v))


def max_triangle_run(G: RotationGraph, v: int) -> int:
    """Longest run of 3-face corners in the cyclic corner order at v."""
    faces = G.faces.faces
    flags = [faces[f].degree == 3 for f in incident_faces(G, v)]
    if not flags:
        return 0
    if all(flags):
        return len(flags)
    best = run = 0
    for flag in flags + flags:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


@dataclass
class StructureReport:
    characteristic: int
    has_cycle: dict[int, bool]
    has_chord_cycle: dict[int, bool]
    has_adjacent_4cycles: bool
    class_G: list[str]
    class_H: list[tuple[int, int]]
    face_counts: dict[int, dict[int, int]]
    triangle_runs: dict[int, int]
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "has_cycle": {str(k): b for k, b in self.has_cycle.items()},
            "has_chord_cycle": {str(k): b for k, b in self.has_chord_cycle.items()},
            "has_adjacent_4cycles": self.has_adjacent_4cycles,
            "class_G": self.class_G,
            "class_H": [f"{i},{j}" for i, j in self.class_H],
            "n_i": {str(v): {str(i): c for i, c in sorted(t.items())}
                    for v, t in self.face_counts.items()},
            "max_3face_run": {str(v): r for v, r in self.triangle_runs.items()},
            "witnesses": self.witnesses,
        }


def classify(G: RotationGraph) -> StructureReport:
    cyc = {k: has_cycle(G, k) for k in range(3, 8)}
    witnesses: dict = {}
    chord = {}
    for k in (5, 6, 7):
        found = find_chord_cycle(G, k) if cyc[k] else None
        chord[k] = found is not None
        if found:
            witnesses[f"chord_{k}"] = {"cycle": list(found[0]), "chord": list(found[1])}
    adj4 = find_adjacent_4cycles(G) if cyc[4] else None
    if adj4:
        witnesses["adjacent_4cycles"] = [list(c) for c in adj4]
    conditions = [not chord[5], not chord[6], not chord[7] and adj4 is None]
    return StructureReport(
        characteristic=euler_characteristic(G),
        has_cycle=cyc,
        has_chord_cycle=chord,
        has_adjacent_4cycles=adj4 is not None,
        class_G=[name for name, ok in zip(G_CONDITIONS, conditions) if ok],
        class_H=[(i, j) for i, j in H_PAIRS if not cyc[i] and not cyc[j]],
        face_counts={v: dict(face_counts(G, v)) for v in G.vertices},
        triangle_runs={v: max_triangle_run(G, v) for v in G.vertices},
        witnesses=witnesses,
    )


def in_class_G(G: RotationGraph) -> bool:
    return bool(classify(G).class_G)


def in_class_H(G: RotationGraph) -> bool:
    return any(not has_cycle(G, i) and not has_cycle(G, j) for i, j in H_PAIRS)


def classify_3vertex(G: RotationGraph, v: int,
                     mode: Literal["four_face", "three_face"]) -> str:
    """``bad`` when a 3-vertex has exactly one corner on a 4-face (``four_face``)
    or on a 3-face (``three_face``); ``good`` otherwise."""
    if mode not in ("four_face", "three_face"):
        raise ValueError(f"unknown mode {mode!r}")
    if G.degree(v) != 3:
        return "not_3vertex"
    size = 4 if mode == "four_face" else 3
    return "bad" if face_counts(G, v)[size] == 1 else "good"
