"""Text formats: ROTSYS (embedded graphs) and DECOMP (decompositions).

ROTSYS::

    ROTSYS 1
    <n> <m>
    0: 1 2 3-
    ...

One line per vertex lists its neighbors clockwise; a trailing ``-`` marks a
dart of signature -1 and must be repeated on the reverse dart.  ``#`` starts
a comment.

DECOMP::

    DECOMP 1
    <d> <h>
    H: 0-1 2-3
    D: 0>2 1>3 ...
"""

from __future__ import annotations

from .embedding import Dart, RotationGraph, edge_key


class FormatError(ValueError):
    """Malformed input; ``lineno`` is 1-based, or None when not line-specific."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None
    if val < 0:
        raise FormatError(f"negative value {val}", lineno)
    return val


def parse_rotation_graph(text: str) -> RotationGraph:
    lines = list(_content_lines(text))
    if not lines or lines[0][1].split() != ["ROTSYS", "1"]:
        raise FormatError("missing 'ROTSYS 1' header", lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise FormatError("missing '<n> <m>' line")
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 2:
        raise FormatError("expected '<n> <m>'", lineno)
    n, m = (_int(p, lineno) for p in parts)

    rot: dict[int, tuple[Dart, ...]] = {}
    where: dict[int, int] = {}
    for lineno, line in lines[2:]:
        head, sep, rest = line.partition(":")
        if not sep:
            raise FormatError("expected 'u: v1 v2 ...'", lineno)
        u = _int(head.strip(), lineno)
        if u >= n:
            raise FormatError(f"vertex {u} out of range for n={n}", lineno)
        if u in rot:
            raise FormatError(f"vertex {u} listed twice", lineno)
        darts = []
        for tok in rest.split():
            sign = 1
            if tok.endswith("-"):
                tok, sign = tok[:-1], -1
            w = _int(tok, lineno)
            if w >= n:
                raise FormatError(f"dangling reference to vertex {w} (n={n})", lineno)
            darts.append(Dart(w, sign))
        rot[u] = tuple(darts)
        where[u] = lineno
    missing = [v for v in range(n) if v not in rot]
    if missing:
        raise FormatError(f"no rotation line for vertex {missing[0]}")
    for u in sorted(rot):
        heads = [w for w, _ in rot[u]]
        if u in heads:
            raise FormatError(f"loop at vertex {u}", where[u])
        if len(set(heads)) != len(heads):
            raise FormatError(f"parallel edge at vertex {u}", where[u])
        for w, s in rot[u]:
            back = [t for x, t in rot[w] if x == u]
            if not back:
                raise FormatError(f"asymmetric adjacency: {u} lists {w} but not vice versa", where[u])
            if back[0] != s:
                raise FormatError(f"signature mismatch on edge {u}-{w}", where[u])
    G = RotationGraph(rot)
    if G.edge_count != m:
        raise FormatError(f"header says m={m} but rotations give {G.edge_count} edges", lines[1][0])
    return G


def serialize_rotation_graph(G: RotationGraph) -> str:
    G = G.relabeled()
    out = ["ROTSYS 1", f"{G.vertex_count} {G.edge_count}"]
    for v, darts in G.rotations.items():
        toks = " ".join(f"{w}{'-' if s < 0 else ''}" for w, s in darts)
        out.append(f"{v}: {toks}".rstrip())
    return "\n".join(out) + "\n"


def parse_decomposition(text: str):
    from .decomposition import OrientedDecomposition

    lines = list(_content_lines(text))
    if not lines or lines[0][1].split() != ["DECOMP", "1"]:
        raise FormatError("missing 'DECOMP 1' header", lines[0][0] if lines else 1)
    if len(lines) < 2 or len(lines[1][1].split()) != 2:
        raise FormatError("expected '<d> <h>'", lines[1][0] if len(lines) > 1 else None)
    d, h = (_int(p, lines[1][0]) for p in lines[1][1].split())
    section = None
    h_edges: list = []
    arcs: list = []
    seen_sections = set()
    for lineno, line in lines[2:]:
        for tok in line.split():
            if tok in ("H:", "D:"):
                if tok in seen_sections:
                    raise FormatError(f"duplicate section {tok}", lineno)
                seen_sections.add(tok)
                section = tok
                continue
            if section == "H:":
                a, sep, b = tok.partition("-")
                if not sep:
                    raise FormatError(f"expected 'u-v', got {tok!r}", lineno)
                h_edges.append(edge_key(_int(a, lineno), _int(b, lineno)))
            elif section == "D:":
                a, sep, b = tok.partition(">")
                if not sep:
                    raise FormatError(f"expected 'u>v', got {tok!r}", lineno)
                arcs.append((_int(a, lineno), _int(b, lineno)))
            else:
                raise FormatError(f"token {tok!r} outside an H:/D: section", lineno)
    if seen_sections != {"H:", "D:"}:
        raise FormatError("both 'H:' and 'D:' sections are required")
    return OrientedDecomposition(d, h, tuple(h_edges), tuple(arcs))


def serialize_decomposition(dec) -> str:
    h = " ".join(f"{u}-{v}" for u, v in sorted(dec.h_edges))
    a = " ".join(f"{u}>{v}" for u, v in sorted(dec.arcs))
    return f"DECOMP 1\n{dec.d} {dec.h}\nH: {h}".rstrip() + f"\nD: {a}".rstrip() + "\n"
