import math
from collections import defaultdict
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ncdecomp.discharging import (RULESETS, THEOREM_OF, apply_rules, audit, get_ruleset,
                                  initial_charges, rational)
from ncdecomp.embedding import euler_characteristic, remove_vertices
from ncdecomp.generators import cycle, dodecahedron, hex_grid, icosahedron, toroidal_grid, wheel
from ncdecomp.structure import classify_3vertex, has_chord_cycle

from gadgets import draw, polar, random_planar, star

ALL = sorted(RULESETS)


# ---------------------------------------------------------------- independent charge oracle
def oracle_final(G, rs_id):
    """Final charges recomputed from the face boundary walks alone.

    Every occurrence of a vertex on a walk is one corner; the face across an
    edge is found through the reversed dart (orientable embeddings only).
    """
    walks = [f.darts for f in G.faces.faces]
    fdeg = [len(w) for w in walks]
    deg = G.degree
    at = defaultdict(list)
    dart_face = {}
    for i, w in enumerate(walks):
        for u, v in w:
            at[u].append(i)
            dart_face[(u, v)] = i
    charge = {("v", v): F(deg(v) - 4) for v in G.vertices}
    charge.update({("f", i): F(k - 4) for i, k in enumerate(fdeg)})

    def move(a, b, q):
        charge[a] -= q
        charge[b] += q

    def profile(i):
        return tuple(sorted(deg(u) for u, _ in walks[i]))

    def five_amount(p, table):
        if p[0] >= 5:
            return F(1, 3)
        if p == (4, 5, 5):
            return F(1, 2)
        if p[:2] == (4, 5) and p[2] >= 6:
            return table(p[2])
        return 0

    def status(v, k):
        if deg(v) != 3:
            return None
        n = sum(1 for i in at[v] if fdeg[i] == k)
        return "bad" if n == 1 else "good"

    for i, w in enumerate(walks):
        k = fdeg[i]
        for v, _ in w:
            d, fv, vv = deg(v), ("f", i), ("v", v)
            if rs_id == "T0_13":
                if k == 3 and d == 5:
                    move(vv, fv, five_amount(profile(i), lambda top: F(5, 12)))
                if k == 3 and d >= 6:
                    move(vv, fv, F(7, 12))
                if k >= 5:
                    move(fv, vv, F(11, 60))
            elif rs_id == "T0_2":
                if k == 3 and d == 5:
                    move(vv, fv, five_amount(profile(i),
                                             lambda top: F(5, 12) if top == 6 else F(61, 150)))
                if k == 3 and d == 6:
                    move(vv, fv, F(7, 12))
                if k == 3 and d >= 7:
                    move(vv, fv, F(89, 150))
                if k == 5:
                    move(fv, vv, F(11, 60))
                if k >= 6:
                    move(fv, vv, F(49, 150))
            elif rs_id == "T1_1":
                if k >= 5 and d == 3:
                    move(fv, vv, F(1, 3))
            else:
                s = status(v, 4 if rs_id == "T1_2" else 3)
                if k >= 5 and s:
                    move(fv, vv, F(1, 2) if s == "bad" else F(1, 3))
        if rs_id == "T1_3" and k >= 5:
            for u, v in w:
                other = dart_face[(v, u)]
                if other != i and fdeg[other] == 3:
                    move(("f", i), ("f", other), F(1, 3))
    return charge


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(ALL), st.integers(6, 30))
def test_engine_matches_oracle_on_random_planar_graphs(seed, rs, n):
    G = random_planar(n, seed)
    # thin the triangulation so that larger faces and 3-vertices appear
    G = remove_vertices(G, [v for v in G.vertices if v % 4 == 0])
    assert apply_rules(G, rs).final == oracle_final(G, rs)


@pytest.mark.parametrize("rs", ALL)
@pytest.mark.parametrize("G", [toroidal_grid(3, 4), hex_grid(3, 3), dodecahedron(), wheel(7),
                               icosahedron()], ids=["torus", "hex", "dodeca", "wheel", "icosa"])
def test_engine_matches_oracle_on_generators(G, rs):
    assert apply_rules(G, rs).final == oracle_final(G, rs)


# ---------------------------------------------------------------- initial charges
def test_initial_charge_examples():
    L = initial_charges(cycle(3))
    assert sorted(L.initial.values()) == [-2, -2, -2, -1, -1]
    assert L.total_initial() == -8 and L.transfers == []
    assert initial_charges(icosahedron()).total_initial() == 12 * 1 + 20 * (-1) == -8
    L = initial_charges(toroidal_grid(3, 3))
    assert set(L.initial.values()) == {0} and len(L.initial) == 18


@pytest.mark.parametrize("rs", ALL)
def test_conservation(rs):
    for G in (cycle(3), cycle(7), toroidal_grid(4, 5), hex_grid(2, 4), icosahedron(),
              remove_vertices(icosahedron(), [0, 5])):
        L = apply_rules(G, rs)
        assert L.total_final() == L.total_initial() == -4 * euler_characteristic(G)


def test_ledger_arithmetic():
    L = apply_rules(hex_grid(2, 2), "T1_1")
    final = L.final
    for x, q in final.items():
        out = sum((t.amount for t in L.transfers if t.source == x), F(0))
        inc = sum((t.amount for t in L.transfers if t.target == x), F(0))
        assert q == L.initial[x] - out + inc
    assert all(isinstance(q, F) for q in final.values())


# ---------------------------------------------------------------- rule tables
def test_rule_table_amounts():
    want = {
        "T0_13": {F(1, 3), F(1, 2), F(5, 12), F(7, 12), F(11, 60)},
        "T0_2": {F(1, 3), F(1, 2), F(5, 12), F(61, 150), F(7, 12), F(89, 150), F(11, 60),
                 F(49, 150)},
        "T1_1": {F(1, 3)},
        "T1_2": {F(1, 3), F(1, 2)},
        "T1_3": {F(1, 3), F(1, 2)},
    }
    assert {k: rs.amounts() for k, rs in RULESETS.items()} == want
    assert THEOREM_OF == {"T0_13": "T0", "T0_2": "T0", "T1_1": "T1", "T1_2": "T1", "T1_3": "T1"}


def test_rule_lookup():
    rs = get_ruleset("T0_2")
    assert rs.amount("R3") == F(89, 150)
    assert rs.amount("R1", "(4,5,7+)-face") == F(61, 150)
    assert get_ruleset("T1_2").amount("R1", "bad 3-vertex") == F(1, 2)
    with pytest.raises(KeyError):
        rs.amount("R1")
    with pytest.raises(ValueError):
        get_ruleset("T9")


# ---------------------------------------------------------------- worked examples
def face_with(G, vertices):
    return next(i for i, f in enumerate(G.faces.faces) if set(f.vertices) == set(vertices)
                and f.degree == len(vertices))


def test_five_vertex_gadget_t0_13():
    G, ring = star(["tri", "tri", "tri", "open", "open"], [5, 4, 6, 4, None], center_degree=5)
    assert apply_rules(G, "T0_13").final[("v", 0)] == F(1, 30)


def test_45_7plus_face_t0_2():
    corners = ["tri"] + ["open"] * 6
    G, ring = star(corners, [4, 5] + [None] * 5, center_degree=7)
    f = face_with(G, (0, ring[0], ring[1]))
    assert apply_rules(G, "T0_2").final[("f", f)] == 0


def test_pentagon_with_two_bad_3vertices_t1_2():
    p = [polar(1.0, math.pi / 2 - 2 * math.pi * i / 5) for i in range(5)]
    out = [polar(2.0, math.pi / 2 - 2 * math.pi * i / 5) for i in range(5)]
    pos = {i: p[i] for i in range(5)}
    pos.update({"x0": out[0], "y": out[1], "x2": out[2], "z": out[3],
                "t0": polar(2.0, math.pi / 2 + 0.35), "t2": polar(2.0, math.pi / 2 - 4 * math.pi / 5 + 0.35)})
    ids = {k: i for i, k in enumerate(pos)}
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(0, "x0"), ("x0", "y"), ("y", 1), (2, "x2"), ("x2", "z"), ("z", 3), (0, "t0"),
              (2, "t2")]
    G = draw({ids[k]: v for k, v in pos.items()}, [(ids[a], ids[b]) for a, b in edges])
    assert [G.degree(i) for i in range(5)] == [4, 3, 4, 3, 2]
    assert classify_3vertex(G, 1, "four_face") == classify_3vertex(G, 3, "four_face") == "bad"
    f = face_with(G, range(5))
    assert apply_rules(G, "T1_2").final[("f", f)] == 0


def test_triangle_fed_by_three_big_faces_t1_3():
    G, ring = star(["tri", "open", "open"])
    f = face_with(G, (0, ring[0], ring[1]))
    L = apply_rules(G, "T1_3")
    incoming = [t for t in L.transfers if t.target == ("f", f)]
    assert len(incoming) == 3 and all(t.amount == F(1, 3) for t in incoming)
    assert L.final[("f", f)] == 0


# ---------------------------------------------------------------- audit
def test_audit_icosahedron():
    G = icosahedron()
    rep = audit(G, "T0_13")
    assert rep.conservation and rep.total_final == -8
    assert {n.element for n in rep.negatives} == {("v", v) for v in G.vertices}
    assert {n.final for n in rep.negatives} == {F(-2, 3)}
    assert all(len(n.transfers) == 5 for n in rep.negatives)
    assert has_chord_cycle(G, 5)


def test_audit_torus_grid():
    rep = audit(toroidal_grid(3, 3), "T0_13")
    assert rep.conservation and rep.total_final == 0
    assert set(rep.ledger.final.values()) == {0}
    assert not rep.negatives and not rep.positive_exists
    assert rep.first_config["lemma"] == "L1b"


def test_audit_hex_grid():
    G = hex_grid(3, 3)
    rep = audit(G, "T1_1")
    assert rep.conservation and rep.negatives
    for n in rep.negatives:
        kind, v = n.element
        assert kind == "v" and G.degree(v) <= 3
        assert n.explained_by["lemma"] in ("L5a", "L5b")
        assert v in n.explained_by["vertex_map"].values() or any(
            w in n.explained_by["vertex_map"].values() for w in G.adjacency[v])


def test_audit_json():
    rep = audit(cycle(3), "T1_1").to_json()
    assert {"ruleset", "characteristic", "total_initial", "total_final", "negatives"} <= set(rep)
    assert rep["total_initial"] == rep["total_final"] == "-8/1"
    neg = rep["negatives"][0]
    assert set(neg) == {"element", "final", "transfers", "explained_by"}
    assert neg["element"] in {"v0", "v1", "v2", "f0", "f1"}
    assert rational(F(-2, 3)) == "-2/3"
