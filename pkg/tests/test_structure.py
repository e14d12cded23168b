import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ncdecomp.embedding import RotationGraph
from ncdecomp.generators import complete, cycle, dodecahedron, hex_grid, prism, toroidal_grid, wheel
from ncdecomp.structure import (G_CONDITIONS, H_PAIRS, classify, classify_3vertex,
                                enumerate_cycles, face_counts, find_adjacent_4cycles,
                                find_chord_cycle, has_adjacent_4cycles, has_chord_cycle,
                                max_triangle_run)

from gadgets import from_nx, star


# ---------------------------------------------------------------- brute force
def brute_cycles(g: nx.Graph, k: int) -> set[tuple]:
    """All k-cycles by trying every vertex sequence; canonical = least rotation/reflection."""
    found = set()
    for sub in itertools.combinations(sorted(g), k):
        first, rest = sub[0], sub[1:]
        for perm in itertools.permutations(rest):
            seq = (first,) + perm
            if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
                rots = []
                for s in (seq, seq[::-1]):
                    rots += [s[i:] + s[:i] for i in range(k)]
                found.add(min(rots))
    return found


def brute_flags(g: nx.Graph):
    n = g.number_of_nodes()
    cyc = {k: brute_cycles(g, k) if k <= n else set() for k in range(3, 9)}
    chord = {}
    for k in (5, 6, 7):
        chord[k] = any(
            any(g.has_edge(x, y) and abs(c.index(x) - c.index(y)) not in (1, k - 1)
                for x, y in itertools.combinations(c, 2))
            for c in cyc[k])
    edgesets = [{frozenset((c[i], c[(i + 1) % 4])) for i in range(4)} for c in cyc[4]]
    adj4 = any(a & b for a, b in itertools.combinations(edgesets, 2))
    conds = [not chord[5], not chord[6], not chord[7] and not adj4]
    class_g = [name for name, ok in zip(G_CONDITIONS, conds) if ok]
    class_h = [(i, j) for i, j in H_PAIRS if not cyc[i] and not cyc[j]]
    return cyc, chord, adj4, class_g, class_h


def check_against_brute(g: nx.Graph):
    G = from_nx(g)
    cyc, chord, adj4, class_g, class_h = brute_flags(g)
    for k in range(3, 9):
        assert set(enumerate_cycles(G, k)) == cyc[k], k
        assert len(enumerate_cycles(G, k)) == len(cyc[k])
    rep = classify(G)
    assert rep.has_chord_cycle == chord
    assert rep.has_adjacent_4cycles == adj4
    assert rep.class_G == class_g
    assert rep.class_H == class_h
    assert rep.has_cycle == {k: bool(cyc[k]) for k in range(3, 8)}


def test_matches_brute_force_on_all_small_graphs():
    atlas = nx.graph_atlas_g()[1:]
    for g in atlas:
        if g.number_of_nodes() >= 3 and g.number_of_edges() >= 3:
            check_against_brute(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.2, 0.7))
def test_matches_brute_force_on_random_8_vertex_graphs(seed, p):
    check_against_brute(nx.gnp_random_graph(8, p, seed=seed))


# ---------------------------------------------------------------- examples
def test_cycle_enumeration_examples():
    assert enumerate_cycles(cycle(5), 5) == [(0, 1, 2, 3, 4)]
    assert len(enumerate_cycles(complete(4), 3)) == 4
    assert len(enumerate_cycles(complete(4), 4)) == 3


def test_canonical_form():
    for c in enumerate_cycles(complete(5), 5) + enumerate_cycles(wheel(6), 4):
        assert c[0] == min(c) and c[1] < c[-1]


@pytest.mark.parametrize("k", [2, 9])
def test_cycle_length_range(k):
    with pytest.raises(ValueError):
        enumerate_cycles(cycle(5), k)


def test_chord_examples():
    assert not any(has_chord_cycle(cycle(5), k) for k in (5, 6, 7))
    assert has_chord_cycle(wheel(5), 5)
    cyc, chord = find_chord_cycle(wheel(5), 5)
    assert 0 in cyc and set(chord) <= set(cyc)
    assert not has_chord_cycle(complete(4), 5)
    with pytest.raises(ValueError):
        has_chord_cycle(cycle(5), 4)


def test_adjacent_4cycles_examples():
    assert has_adjacent_4cycles(toroidal_grid(3, 3))
    a, b = find_adjacent_4cycles(toroidal_grid(3, 3))
    assert a != b
    assert not has_adjacent_4cycles(cycle(4))
    assert not has_adjacent_4cycles(hex_grid(2, 3))


def test_classify_examples():
    assert (3, 4) in classify(hex_grid(2, 2)).class_H
    rep = classify(cycle(5))
    assert rep.class_G == list(G_CONDITIONS)
    assert rep.class_H == list(H_PAIRS)
    # the 3x3 torus grid has 3-cycles (rows), 4-cycles (faces) and 6-cycles
    rep = classify(toroidal_grid(3, 3))
    assert rep.has_cycle[3] and rep.has_cycle[4] and rep.has_cycle[6]
    assert rep.class_H == []
    assert rep.characteristic == 0
    assert set(rep.to_json()) >= {"class_G", "class_H", "n_i", "max_3face_run", "characteristic"}


def test_face_counts_sum_to_degree():
    for G in (toroidal_grid(3, 4), wheel(6), hex_grid(2, 2), complete(5)):
        for v in G.vertices:
            assert sum(face_counts(G, v).values()) == G.degree(v)


def test_wheel_counts_and_runs():
    G = wheel(6)
    assert face_counts(G, 0) == {3: 6}
    assert max_triangle_run(G, 0) == 6
    assert face_counts(G, 1) == {3: 2, 6: 1}
    assert max_triangle_run(G, 1) == 2


def test_triangle_run_wraps_around():
    G, _ = star(["tri", "open", "tri", "tri", "tri"])
    assert max_triangle_run(G, 0) == 4


def test_classify_3vertex():
    assert classify_3vertex(dodecahedron(), 0, "four_face") == "good"
    assert classify_3vertex(prism(4), 0, "four_face") == "good"  # three 4-faces
    G, _ = star(["quad", "open", "open"])
    assert classify_3vertex(G, 0, "four_face") == "bad"
    G, _ = star(["tri", "open", "open"])
    assert classify_3vertex(G, 0, "three_face") == "bad"
    assert classify_3vertex(G, 0, "four_face") == "good"
    assert classify_3vertex(toroidal_grid(3, 3), 0, "four_face") == "not_3vertex"
    with pytest.raises(ValueError):
        classify_3vertex(G, 0, "five_face")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_chord_cycles_monotone_under_edge_addition(seed):
    rng = random.Random(seed)
    g = nx.gnp_random_graph(8, 0.35, seed=seed)
    missing = [e for e in itertools.combinations(range(8), 2) if not g.has_edge(*e)]
    if not missing:
        return
    before = classify(from_nx(g))
    g.add_edge(*rng.choice(missing))
    after = classify(from_nx(g))
    for k in (5, 6, 7):
        assert after.has_chord_cycle[k] >= before.has_chord_cycle[k]
        assert after.has_cycle[k] >= before.has_cycle[k]


def test_no_cycle_means_no_chord_cycle():
    for g in nx.graph_atlas_g()[1:300]:
        rep = classify(from_nx(g))
        for k in (5, 6, 7):
            assert rep.has_cycle[k] or not rep.has_chord_cycle[k]


def test_isolated_vertices():
    rep = classify(RotationGraph({0: (), 1: ()}))
    assert rep.face_counts == {0: {}, 1: {}}
    assert rep.triangle_runs == {0: 0, 1: 0}
