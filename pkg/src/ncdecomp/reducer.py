"""Reducible configurations and the constructive decomposer.

Every configuration is a set ``X`` of labeled vertices together with a
*recipe*: a matching ``M'`` and arcs ``D'`` on ``X``.  Given a decomposition
of ``G - X``, the extension adds ``M'`` to H, ``D'`` to D and orients every
edge between ``X`` and the rest away from ``X``.  The extension is valid as
soon as

* the edges of ``G[X]`` are exactly ``M' + D'``,
* ``M'`` is a matching and ``D'`` is acyclic, and
* every ``x`` in ``X`` has at most ``d - outdeg_{D'}(x)`` neighbors outside ``X``,

since no arc enters ``X`` from outside and ``M'`` shares no vertex with the
H edges of ``G - X``.  Detectors check these conditions on top of the degree
and face hypotheses of each configuration.

Theorem ``T0`` targets (3, 1)-decompositions, ``T1`` targets (2, 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

from .decomposition import (OracleBudgetExceeded, OrientedDecomposition, find_directed_cycle,
                            oracle_decide, verify)
from .embedding import RotationGraph, edge_key, euler_characteristic, remove_vertices
from .structure import face_profile

log = logging.getLogger(__name__)

THEOREM_PARAMS = {"T0": (3, 1), "T1": (2, 1)}
BASE_THRESHOLD = 10


class ReductionError(RuntimeError):
    """A recipe did not extend cleanly; indicates a detector bug."""


@dataclass(frozen=True)
class Recipe:
    labels: tuple[str, ...]
    matching: tuple[tuple[str, str], ...] = ()
    arcs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        seen = [x for e in self.matching for x in e]
        if len(seen) != len(set(seen)):
            raise ValueError("recipe matching is not a matching")
        if find_directed_cycle(self.arcs) is not None:
            raise ValueError("recipe arcs contain a directed cycle")
        pairs = [frozenset(e) for e in self.matching + self.arcs]
        if len(pairs) != len(set(pairs)):
            raise ValueError("recipe lists an edge twice")

    @cached_property
    def internal(self) -> dict[str, set[str]]:
        adj = {x: set() for x in self.labels}
        for a, b in self.matching + self.arcs:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def out_degree(self, label: str) -> int:
        return sum(1 for a, _ in self.arcs if a == label)

    def allowance(self, label: str, d: int) -> int:
        """How many edges ``label`` may have to vertices outside ``X``."""
        return d - self.out_degree(label)


@dataclass(frozen=True)
class ConfigMatch:
    lemma: str
    theorem: str
    recipe: Recipe
    hosts: tuple[int, ...]
    """host vertex of each recipe label, in label order"""

    @property
    def vertex_map(self) -> dict[str, int]:
        return dict(zip(self.recipe.labels, self.hosts))

    @property
    def deleted(self) -> frozenset[int]:
        return frozenset(self.hosts)

    @property
    def host_matching(self) -> tuple[tuple[int, int], ...]:
        m = self.vertex_map
        return tuple(edge_key(m[a], m[b]) for a, b in self.recipe.matching)

    @property
    def host_arcs(self) -> tuple[tuple[int, int], ...]:
        m = self.vertex_map
        return tuple((m[a], m[b]) for a, b in self.recipe.arcs)

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "vertex_map": self.vertex_map}


def _pairs(text: str) -> tuple[tuple[str, str], ...]:
    """'1-5 2-3' -> (('v1', 'v5'), ('v2', 'v3'))"""
    out = []
    for tok in text.split():
        a, b = tok.replace(">", "-").split("-")
        out.append((f"v{a}", f"v{b}"))
    return tuple(out)


def _l7(labels: str, matching: str, arcs: str) -> Recipe:
    return Recipe(tuple(f"v{i}" for i in labels.split()), _pairs(matching), _pairs(arcs))


_ALL11 = " ".join(str(i) for i in range(1, 12))

# (2,1) configurations: deleted set X, matched edges M' and arcs D' of G[X].
L7_RECIPES: dict[str, Recipe] = {
    "L7-1": _l7(_ALL11, "1-5 2-3 6-7 8-9 10-11",
                 "1>2 1>7 2>9 3>4 3>8 4>5 5>6 8>10 11>4"),
    "L7-2": _l7(_ALL11, "1-5 2-3 6-7 8-9 4-11",
                 "1>2 1>7 2>9 3>4 3>8 4>5 5>6 8>10 10>11"),
    "L7-3": _l7(_ALL11, "1-5 6-7 2-11 4-8 9-10",
                 "1>2 1>7 2>3 3>4 3>9 4>5 5>6 9>8 11>10"),
    "L7-4": _l7(_ALL11, "1-5 6-7 2-11 4-8 9-10",
                 "1>2 1>7 2>3 3>4 3>9 4>5 5>6 9>8 10>11"),
    "L7-5": _l7("1 2 3 4 5 6 7 9", "1-2 4-5 6-7",
                 "1>5 1>7 2>6 2>9 3>2 3>4 7>3 7>9"),
    "L7-6": _l7("1 2 3 4 5 6 7 8 9", "1-5 3-4 6-7 8-9",
                 "1>2 1>7 2>6 3>2 3>9 4>8 5>4 5>9 6>5"),
    "L7-7": _l7(_ALL11, "2-3 4-5 6-7 8-9 10-11",
                 "1>5 1>7 2>1 2>6 3>4 3>9 4>8 9>10 11>2"),
}

_SINGLE = Recipe(("v",))
_PAIR = Recipe(("u", "v"), (("u", "v"),))
_L2A_545 = Recipe(("v", "v1", "v2", "v3"), (("v", "v1"), ("v2", "v3")),
                  (("v", "v3"), ("v2", "v"), ("v2", "v1")))
_L2A_454 = Recipe(("v", "v1", "v2", "v3"), (("v1", "v2"), ("v", "v3")),
                  (("v", "v2"), ("v1", "v"), ("v3", "v2")))
_L2B = Recipe(("v", "v1", "v2", "v3", "v4"), (("v1", "v2"), ("v3", "v4")),
              (("v", "v1"), ("v", "v3"), ("v2", "v"), ("v2", "v3"), ("v4", "v")))
_L6 = Recipe(("v1", "v2", "v3", "v4"), (("v1", "v2"), ("v3", "v4")),
             (("v1", "v4"), ("v3", "v2")))

LEMMA_IDS = {
    "T0": ("L1a", "L1b", "L2a-case1-545", "L2a-case1-454", "L2a-case2", "L2b"),
    "T1": ("L5a", "L5b", "L6") + tuple(L7_RECIPES),
}


def _fits(G: RotationGraph, recipe: Recipe, hosts: tuple[int, ...], d: int) -> bool:
    """Injective, induced edges equal the recipe's, external degrees within budget."""
    if len(set(hosts)) != len(hosts):
        return False
    label_of = dict(zip(hosts, recipe.labels))
    for x, label in zip(hosts, recipe.labels):
        want = recipe.internal[label]
        inside = {label_of[w] for w in G.adjacency[x] if w in label_of}
        if inside != want:
            return False
        if G.degree(x) - len(inside) > recipe.allowance(label, d):
            return False
    return True


# ---------------------------------------------------------------- detectors
# Each detector takes (G, anchor) and returns candidate host tuples whose
# first entry is ``anchor``, paired with the recipe to use.

Candidate = tuple[Recipe, tuple[int, ...]]


def _low_vertex(bound: int):
    def detect(G: RotationGraph, a: int) -> list[Candidate]:
        return [(_SINGLE, (a,))] if G.degree(a) <= bound else []
    return detect


def _adjacent_pair(deg: int):
    def detect(G: RotationGraph, a: int) -> list[Candidate]:
        if G.degree(a) != deg:
            return []
        return [(_PAIR, (a, b)) for b in sorted(G.adjacency[a]) if G.degree(b) == deg]
    return detect


def _triangle_types(G: RotationGraph, v: int) -> list[tuple[int, ...] | None]:
    """Profile of each corner face at v if it is a 3-face, else None."""
    faces = G.faces.faces
    return [face_profile(G, f) if faces[f].degree == 3 else None for f in G.faces.corners[v]]


def _ring(G: RotationGraph, v: int, start: int, step: int = 1) -> list[int]:
    nb = G.neighbors(v)
    return [nb[(start + step * k) % len(nb)] for k in range(len(nb))]


def _detect_l2a_case1(pattern: str):
    recipe = _L2A_545 if pattern == "545" else _L2A_454
    middle = 4 if pattern == "545" else 5

    def detect(G: RotationGraph, v: int) -> list[Candidate]:
        if G.degree(v) != 5:
            return []
        types = _triangle_types(G, v)
        out = []
        for i in range(5):
            if types[i] == types[(i + 1) % 5] == (4, 5, 5):
                v1, v2, v3, _, _ = _ring(G, v, i)
                if G.degree(v2) == middle:
                    out.append((recipe, (v, v1, v2, v3)))
        return out
    return detect


def _detect_l2a_case2(G: RotationGraph, v: int) -> list[Candidate]:
    if G.degree(v) != 5:
        return []
    types = _triangle_types(G, v)
    out = []
    for i in range(5):
        if types[i] == types[(i + 2) % 5] == (4, 5, 5):
            v1, v2, v3, v4, _ = _ring(G, v, i)
            arcs = []
            for a, b, la, lb in ((v1, v2, "v1", "v2"), (v3, v4, "v3", "v4")):
                four, five = (la, lb) if G.degree(a) == 4 else (lb, la)
                arcs += [("v", five), (four, "v")]
            recipe = Recipe(("v", "v1", "v2", "v3", "v4"), (("v1", "v2"), ("v3", "v4")),
                            tuple(arcs))
            out.append((recipe, (v, v1, v2, v3, v4)))
    return out


def _detect_l2b(G: RotationGraph, v: int) -> list[Candidate]:
    if G.degree(v) != 5:
        return []
    types = _triangle_types(G, v)
    want = [(4, 5, 5), (4, 5, 6), (4, 5, 6)]
    out = []
    for i in range(5):
        if [types[(i + k) % 5] for k in range(3)] == want:
            v1, v2, v3, v4, _ = _ring(G, v, i)
            out.append((_L2B, (v, v1, v2, v3, v4)))
        if [types[(i - k) % 5] for k in range(3)] == want:
            # mirror image: walk the rotation backwards from the far side of face i
            v1, v2, v3, v4, _ = _ring(G, v, i + 1, -1)
            out.append((_L2B, (v, v1, v2, v3, v4)))
    return [(r, h) for r, h in out if [G.degree(x) for x in h] == [5, 5, 4, 6, 4]]


def _detect_l6(G: RotationGraph, a: int) -> list[Candidate]:
    if G.degree(a) != 3:
        return []
    faces = G.faces.faces
    out = []
    for f in set(G.faces.corners[a]):
        walk = faces[f].vertices
        if len(walk) != 4 or len(set(walk)) != 4:
            continue
        i = walk.index(a)
        for step in (1, -1):
            cyc = tuple(walk[(i + step * k) % 4] for k in range(4))
            if [G.degree(x) for x in cyc] == [3, 4, 3, 4]:
                out.append((_L6, cyc))
    return out


def _detect_l7(recipe: Recipe, d: int = 2):
    labels = recipe.labels
    want_deg = {x: len(recipe.internal[x]) + recipe.allowance(x, d) for x in labels}
    # placement order: BFS over the recipe graph from the first label
    order = [labels[0]]
    parent: dict[str, str] = {}
    for x in order:
        for y in sorted(recipe.internal[x], key=labels.index):
            if y not in parent and y != labels[0]:
                parent[y] = x
                order.append(y)
    if len(order) != len(labels):
        raise ValueError("configuration recipes must be connected")

    def detect(G: RotationGraph, a: int) -> list[Candidate]:
        if G.degree(a) != want_deg[order[0]]:
            return []
        found = []
        place = {order[0]: a}
        used = {a}

        def extend(k: int) -> None:
            if k == len(order):
                found.append((recipe, tuple(place[x] for x in labels)))
                return
            x = order[k]
            for w in sorted(G.adjacency[place[parent[x]]]):
                if w in used or G.degree(w) != want_deg[x]:
                    continue
                if all((w in G.adjacency[place[y]]) == (y in recipe.internal[x])
                       for y in order[:k]):
                    place[x] = w
                    used.add(w)
                    extend(k + 1)
                    used.discard(w)
                    del place[x]

        extend(1)
        return found

    return detect


DETECTORS: dict[str, Callable[[RotationGraph, int], list[Candidate]]] = {
    "L1a": _low_vertex(3),
    "L1b": _adjacent_pair(4),
    "L2a-case1-545": _detect_l2a_case1("545"),
    "L2a-case1-454": _detect_l2a_case1("454"),
    "L2a-case2": _detect_l2a_case2,
    "L2b": _detect_l2b,
    "L5a": _low_vertex(2),
    "L5b": _adjacent_pair(3),
    "L6": _detect_l6,
    **{name: _detect_l7(r) for name, r in L7_RECIPES.items()},
}


def _theorem(theorem: str) -> tuple[int, int]:
    try:
        return THEOREM_PARAMS[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem {theorem!r}; use T0 or T1") from None


def lemma_matches(G: RotationGraph, theorem: str, lemma: str) -> Iterator[ConfigMatch]:
    """All valid matches of one lemma, in lexicographic order of host tuples."""
    d, _ = _theorem(theorem)
    detect = DETECTORS[lemma]
    for a in G.vertices:
        cands = sorted({(hosts, recipe) for recipe, hosts in detect(G, a)
                        if _fits(G, recipe, hosts, d)}, key=lambda c: c[0])
        for hosts, recipe in cands:
            yield ConfigMatch(lemma, theorem, recipe, hosts)


def iter_configs(G: RotationGraph, theorem: str) -> Iterator[ConfigMatch]:
    for lemma in LEMMA_IDS[theorem]:
        yield from lemma_matches(G, theorem, lemma)


def find_config(G: RotationGraph, theorem: str) -> ConfigMatch | None:
    """First match: lemma order first, then lexicographic host order."""
    _theorem(theorem)
    return next(iter_configs(G, theorem), None)


def apply_reduction(G: RotationGraph, match: ConfigMatch,
                    sub_dec: OrientedDecomposition) -> OrientedDecomposition:
    d, h = _theorem(match.theorem)
    X = match.deleted
    rest = remove_vertices(G, X)
    bad = verify(rest, sub_dec)
    if bad is not None:
        raise ReductionError(f"sub-decomposition of G - X is invalid: {bad}")
    if sub_dec.d > d or sub_dec.h > h:
        raise ReductionError(f"sub-decomposition bounds ({sub_dec.d},{sub_dec.h}) exceed ({d},{h})")

    internal = {edge_key(u, w) for u in X for w in G.adjacency[u] if w in X}
    listed = [edge_key(u, w) for u, w in match.host_matching + match.host_arcs]
    if sorted(listed) != sorted(internal):
        raise ReductionError(f"{match.lemma}: recipe edges do not match G[X]")

    outward = [(x, y) for x in sorted(X) for y in sorted(G.adjacency[x]) if y not in X]
    arcs = sub_dec.arcs + match.host_arcs + tuple(outward)
    out = OrientedDecomposition(d, h, sub_dec.h_edges + match.host_matching, arcs)
    outdeg = out.out_degrees()
    for x in X:
        if outdeg[x] > d:
            raise ReductionError(f"{match.lemma}: vertex {x} ends with out-degree {outdeg[x]} > {d}")
    bad = verify(G, out)
    if bad is not None:
        raise ReductionError(f"{match.lemma}: extension failed: {bad}")
    return out


@dataclass
class Diagnostic:
    """Why ``decompose_by_reduction`` could not finish."""

    theorem: str
    reason: str
    graph: RotationGraph
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "reason": self.reason,
                "remaining_vertices": list(self.graph.vertices),
                "remaining_edges": [list(e) for e in self.graph.edges]}


def decompose_by_reduction(G: RotationGraph, theorem: str, *,
                           base_threshold: int = BASE_THRESHOLD,
                           budget: int | None = None,
                           trace: list | None = None,
                           check_class: bool = True) -> OrientedDecomposition | Diagnostic:
    """Peel reducible configurations, solve the small remainder exactly, extend back.

    ``trace`` (if given) receives one dict per step.  Oracle budget errors
    on the base instance propagate; above the threshold an irreducible
    instance that is too large for the oracle yields a :class:`Diagnostic`.
    """
    d, h = _theorem(theorem)
    if check_class:
        _warn_outside_class(G, theorem)
    steps: list[tuple[RotationGraph, ConfigMatch]] = []
    events = trace if trace is not None else []
    cur = G
    while cur.vertex_count > base_threshold:
        m = find_config(cur, theorem)
        if m is None:
            break
        steps.append((cur, m))
        cur = remove_vertices(cur, m.deleted)
        events.append({"lemma": m.lemma, "vertex_map": m.vertex_map, "remaining": cur.vertex_count})

    irreducible = cur.vertex_count > base_threshold
    try:
        base = oracle_decide(cur, d, h, budget=budget)
    except OracleBudgetExceeded:
        if irreducible:
            return Diagnostic(theorem, "no reducible configuration and too large for the oracle",
                              cur, events)
        raise
    events.append({"oracle": cur.vertex_count, "irreducible": irreducible, "found": base is not None})
    if base is None:
        return Diagnostic(theorem, f"remaining graph has no ({d},{h})-decomposition", cur, events)
    for host, m in reversed(steps):
        base = apply_reduction(host, m, base)
    return base


def _warn_outside_class(G: RotationGraph, theorem: str) -> None:
    from .structure import classify, in_class_H

    if euler_characteristic(G) < 0:
        log.warning("embedding has negative characteristic; no guarantee applies")
    inside = bool(classify(G).class_G) if theorem == "T0" else in_class_H(G)
    if not inside:
        log.warning("graph is outside the class covered by %s; proceeding best-effort", theorem)
