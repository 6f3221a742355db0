"""The rank-2 affine building: a (q+1)-valent tree truncated at a depth.

Edges are the chambers; two edges are 0-adjacent when they share a black
vertex and 1-adjacent when they share a white one.  The metric of a pair
is the alternating word reading off the colours of the vertices crossed
by the unique non-backtracking edge path, an element of the two-generator
group with no relation between the generators.

Truncation keeps every check finite: vertices at the boundary are missing
children, so panel-size and metric statements are made for the interior
and the margin quantifies how far inside they hold.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from .chamber_system import ChamberSystem
from .core import WMetricBuilding
from .coxeter import CoxeterElement, CoxeterMatrix, canonical_word

BLACK, WHITE = 0, 1

INFINITE_DIHEDRAL = CoxeterMatrix.dihedral(None)


class TruncatedTree:
    def __init__(self, q: int, depth: int, vertex_colors: list[int],
                 vertex_depth: list[int], edges: list[tuple[int, int]]):
        self.q = q
        self.depth = depth
        self.vertex_colors = tuple(vertex_colors)
        self.vertex_depth = tuple(vertex_depth)
        self.edges = tuple(edges)
        classes: dict[int, dict[int, list[int]]] = {BLACK: {}, WHITE: {}}
        for k, (u, v) in enumerate(self.edges):
            for vert in (u, v):
                classes[self.vertex_colors[vert]].setdefault(vert, []).append(k)
        self.cs = ChamberSystem(
            len(self.edges),
            (BLACK, WHITE),
            {
                color: [tuple(v) for _, v in sorted(classes[color].items())]
                for color in (BLACK, WHITE)
            },
            labels=[f"e{u}-{v}" for u, v in self.edges],
        )
        self._edge_depth: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.edges)

    def edge_depths(self) -> tuple[int, ...]:
        """Gallery distance of every chamber from the root edge."""
        if self._edge_depth is None:
            self._edge_depth = tuple(self.cs.gallery_distances(0))
        return self._edge_depth

    def interior_chambers(self, margin: int) -> list[int]:
        """Chambers at distance at most depth - margin from the root edge."""
        if margin >= self.depth:
            raise ValueError("margin must be smaller than the depth")
        limit = self.depth - margin
        return [c for c, d in enumerate(self.edge_depths()) if d <= limit]

    def interior_vertices(self) -> list[int]:
        return [v for v in range(len(self.vertex_colors)) if self.vertex_depth[v] < self.depth]

    def to_dot(self) -> str:
        lines = ["graph tree {"]
        for v in range(len(self.vertex_colors)):
            fill = "black" if self.vertex_colors[v] == BLACK else "white"
            lines.append(
                f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];'
            )
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def build_tree(q: int, depth: int) -> TruncatedTree:
    """Grow the (q+1)-valent tree from one root edge, level by level.

    Vertices created at level d < depth receive q further edges, so every
    vertex strictly inside the truncation has degree q + 1.
    """
    if q < 2:
        raise ValueError("need q >= 2")
    if depth < 1:
        raise ValueError("need depth >= 1")
    vertex_colors = [BLACK, WHITE]
    vertex_depth = [0, 0]
    edges: list[tuple[int, int]] = [(0, 1)]
    frontier = [0, 1]
    for level in range(1, depth + 1):
        new_frontier = []
        for v in frontier:
            for _ in range(q):
                w = len(vertex_colors)
                vertex_colors.append(1 - vertex_colors[v])
                vertex_depth.append(level)
                edges.append((v, w) if vertex_colors[v] == BLACK else (w, v))
                new_frontier.append(w)
        frontier = new_frontier
    return TruncatedTree(q, depth, vertex_colors, vertex_depth, edges)


def _words_from(t: TruncatedTree, c: int) -> list[tuple[int, ...]]:
    """Shortest-gallery colour words from c to every chamber, by one BFS."""
    words: list[tuple[int, ...] | None] = [None] * t.size
    words[c] = ()
    queue = deque([c])
    while queue:
        cur = queue.popleft()
        for color in (BLACK, WHITE):
            for nxt in t.cs.panel(cur, color):
                if nxt != cur and words[nxt] is None:
                    words[nxt] = words[cur] + (color,)
                    queue.append(nxt)
    if any(w is None for w in words):
        raise ValueError("tree is not connected")
    return words  # type: ignore[return-value]


def delta_tree(t: TruncatedTree, c: int, d: int) -> CoxeterElement:
    """Colours of the vertices crossed by the shortest edge path c -> d.

    In a tree the shortest gallery is the unique non-backtracking one, so
    the resulting word is alternating (hence reduced).
    """
    if not (0 <= c < t.size and 0 <= d < t.size):
        raise ValueError("chamber out of range")
    word = _words_from(t, c)[d]
    return CoxeterElement(canonical_word(word, INFINITE_DIHEDRAL), INFINITE_DIHEDRAL)


def tree_building(t: TruncatedTree) -> WMetricBuilding:
    """The truncated tree as a metric chamber system.

    The value alphabet is the alternating words that actually occur,
    sorted ShortLex with the identity first.
    """
    n = t.size
    words = []
    seen: set[tuple[int, ...]] = set()
    for c in range(n):
        row = _words_from(t, c)
        words.append(row)
        seen.update(row)
    alphabet = sorted(seen, key=lambda w: (len(w), w))
    if alphabet[0] != ():
        raise AssertionError("identity distance missing")
    index = {w: k for k, w in enumerate(alphabet)}
    table = np.zeros((n, n), dtype=np.int32)
    for c in range(n):
        for d in range(n):
            table[c, d] = index[words[c][d]]
    elements = tuple(CoxeterElement(w, INFINITE_DIHEDRAL) for w in alphabet)
    return WMetricBuilding(t.cs, INFINITE_DIHEDRAL, elements, table)


def _alternating_words(max_len: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for start in (BLACK, WHITE):
        for length in range(1, max_len + 1):
            out.append(tuple((start + k) % 2 for k in range(length)))
    return sorted(out, key=lambda w: (len(w), w))


def check_b2_interior(t: TruncatedTree, margin: int) -> "Report":
    """The metric axiom on the interior, with words up to the margin.

    For interior chambers c, d and every alternating word f of length at
    most margin: a typed gallery c -> d of type f exists (through the full
    tree) exactly when the tree metric of the pair is f.  Galleries of a
    doubled type exist but never disturb the metric; the caveat witness is
    asserted separately.
    """
    from .core import Report, gallery_relation

    interior = t.interior_chambers(margin)
    words = _alternating_words(margin)
    n = t.size
    delta_words = {}
    for c in interior:
        row = _words_from(t, c)
        for d in interior:
            delta_words[(c, d)] = row[d]
    violations = []
    for f in words:
        rel = gallery_relation(t.cs, f)
        for c in interior:
            for d in interior:
                expected = delta_words[(c, d)] == f
                got = bool(rel[c, d])
                if expected != got:
                    violations.append(
                        {"word": "".join(str(i) for i in f) or "e",
                         "pair": [c, d],
                         "kind": "delta-without-gallery" if expected else "gallery-without-delta"}
                    )
    return Report(
        axiom="B2-interior",
        passed=not violations,
        counts={
            "interior_chambers": len(interior),
            "total_chambers": n,
            "margin": margin,
            "words": len(words),
        },
        violations=violations[:20],
    )
