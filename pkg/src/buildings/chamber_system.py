"""Chamber systems over a colour set: partitions, residues, galleries.

A chamber system is a set of chambers {0..N-1} with one equivalence
relation per colour, stored as explicit partitions.  Chambers are dense
integer indices; the optional labels are display-only strings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DOT_PALETTE = ("red", "blue", "green", "orange", "purple", "brown")


class ChamberSystem:
    def __init__(
        self,
        size: int,
        colors: Sequence[int],
        partitions: Mapping[int, Sequence[Sequence[int]]],
        labels: Sequence[str] | None = None,
    ):
        if size < 0:
            raise ValueError("negative chamber count")
        self.size = size
        self.colors: tuple[int, ...] = tuple(colors)
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("duplicate colours")
        if set(partitions) != set(self.colors):
            raise ValueError("partitions must be keyed exactly by the colours")
        self._classes: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._class_of: dict[int, list[int]] = {}
        for color in self.colors:
            classes = tuple(tuple(sorted(cl)) for cl in partitions[color])
            owner = [-1] * size
            for ci, cl in enumerate(classes):
                if not cl:
                    raise ValueError(f"empty class for colour {color}")
                for c in cl:
                    if not 0 <= c < size:
                        raise ValueError(f"chamber {c} out of range")
                    if owner[c] != -1:
                        raise ValueError(f"chamber {c} in two classes of colour {color}")
                    owner[c] = ci
            missing = [c for c in range(size) if owner[c] == -1]
            if missing:
                raise ValueError(f"chambers {missing} missing from colour {color}")
            self._classes[color] = classes
            self._class_of[color] = owner
        if labels is not None and len(labels) != size:
            raise ValueError("label count disagrees with chamber count")
        self.labels: tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(str(c) for c in range(size))
        )

    def check_color(self, i: int) -> None:
        if i not in self._classes:
            raise ValueError(f"unknown colour {i}")

    def classes(self, i: int) -> tuple[tuple[int, ...], ...]:
        self.check_color(i)
        return self._classes[i]

    def panel(self, c: int, i: int) -> tuple[int, ...]:
        """The i-equivalence class of c (c included)."""
        self.check_color(i)
        if not 0 <= c < self.size:
            raise ValueError(f"chamber {c} out of range")
        return self._classes[i][self._class_of[i][c]]

    def adjacent(self, c: int, d: int, i: int) -> bool:
        """i-adjacency; reflexive by construction."""
        self.check_color(i)
        return self._class_of[i][c] == self._class_of[i][d]

    def neighbors(self, c: int) -> set[int]:
        """Chambers sharing some panel with c, c itself excluded."""
        out: set[int] = set()
        for i in self.colors:
            out.update(self.panel(c, i))
        out.discard(c)
        return out

    def residue(self, c: int, J: Iterable[int]) -> tuple[int, ...]:
        """The J-connected component of c, as a sorted tuple."""
        J = tuple(J)
        for i in J:
            self.check_color(i)
        seen = {c}
        queue = deque([c])
        while queue:
            cur = queue.popleft()
            for i in J:
                for nxt in self.panel(cur, i):
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
        return tuple(sorted(seen))

    def residues(self, J: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        """All J-residues, ordered by their least chamber."""
        J = tuple(J)
        seen: set[int] = set()
        out = []
        for c in range(self.size):
            if c not in seen:
                comp = self.residue(c, J)
                seen.update(comp)
                out.append(comp)
        return tuple(out)

    def gallery_distances(self, c: int) -> list[int]:
        """BFS distances from c in the chamber adjacency graph (-1 unreachable)."""
        dist = [-1] * self.size
        dist[c] = 0
        queue = deque([c])
        while queue:
            cur = queue.popleft()
            for nxt in self.neighbors(cur):
                if dist[nxt] == -1:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
        return dist

    def diameter(self) -> int:
        """Largest gallery distance; raises if the system is disconnected."""
        best = 0
        for c in range(self.size):
            dist = self.gallery_distances(c)
            if min(dist) < 0:
                raise ValueError("chamber system is not connected")
            best = max(best, max(dist))
        return best

    def nerve(self) -> "SimplicialComplex":
        """The nerve of the covering by corank-1 residues.

        Vertices are the residues over the colour sets missing one colour;
        a set of vertices spans a simplex when the residues share a chamber.
        """
        if not self.colors:
            raise ValueError("nerve needs at least one colour")
        vertex_of: dict[tuple[tuple[int, ...], int], int] = {}
        vertices: list[tuple[tuple[int, ...], int]] = []
        chamber_vertices: list[list[int]] = [[] for _ in range(self.size)]
        for dropped in self.colors:
            J = tuple(i for i in self.colors if i != dropped)
            for comp in self.residues(J):
                vid = (J, comp[0])
                if vid not in vertex_of:
                    vertex_of[vid] = len(vertices)
                    vertices.append(vid)
                for c in comp:
                    chamber_vertices[c].append(vertex_of[vid])
        simplices: set[frozenset[int]] = {frozenset()}
        for verts in chamber_vertices:
            vs = tuple(sorted(set(verts)))
            # every subset of a chamber's vertex set meets in that chamber
            for mask in range(1, 1 << len(vs)):
                simplices.add(frozenset(vs[t] for t in range(len(vs)) if mask >> t & 1))
        return SimplicialComplex(tuple(vertices), frozenset(simplices))

    def residue_intersection_check(self) -> bool:
        """Whether intersections of corank-1 residues are again residues.

        True for every building this package constructs; an arbitrary
        chamber system may fail.
        """
        colors = self.colors
        n = len(colors)
        for c in range(self.size):
            for mask in range(1, 1 << n):
                dropped = [colors[t] for t in range(n) if mask >> t & 1]
                inter: set[int] | None = None
                for x in dropped:
                    J = tuple(i for i in colors if i != x)
                    comp = set(self.residue(c, J))
                    inter = comp if inter is None else inter & comp
                rest = tuple(i for i in colors if i not in dropped)
                if inter != set(self.residue(c, rest)):
                    return False
        return True

    def to_dot(self) -> str:
        """Edge-coloured graph in DOT format, deterministically ordered."""
        lines = ["graph chambers {"]
        for c in range(self.size):
            lines.append(f'  c{c} [label="{self.labels[c]}"];')
        for pos, color in enumerate(self.colors):
            attr = DOT_PALETTE[pos % len(DOT_PALETTE)]
            for cl in self._classes[color]:
                for a_i in range(len(cl)):
                    for b_i in range(a_i + 1, len(cl)):
                        lines.append(
                            f'  c{cl[a_i]} -- c{cl[b_i]} [color="{attr}", label="{color}"];'
                        )
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Gallery:
    """A chamber walk c_0 .. c_k typed by the colours crossed."""

    chambers: tuple[int, ...]
    word: tuple[int, ...]


def is_gallery(cs: ChamberSystem, g: Gallery) -> bool:
    """Validate the gallery against cs: typed adjacency and no repeats in a row."""
    if len(g.chambers) != len(g.word) + 1 or not g.chambers:
        return False
    for c in g.chambers:
        if not 0 <= c < cs.size:
            return False
    for j, i in enumerate(g.word):
        if i not in cs.colors:
            return False
        a, b = g.chambers[j], g.chambers[j + 1]
        if a == b or not cs.adjacent(a, b, i):
            return False
    return True


@dataclass(frozen=True)
class SimplicialComplex:
    """An abstract simplicial complex on opaque vertex ids."""

    vertices: tuple
    simplices: frozenset[frozenset[int]]

    def simplices_of_dim(self, k: int) -> list[frozenset[int]]:
        return sorted(
            (s for s in self.simplices if len(s) == k + 1),
            key=lambda s: tuple(sorted(s)),
        )

    def f_vector(self) -> tuple[int, ...]:
        """Counts by dimension, starting at dimension 0."""
        if not self.vertices:
            return ()
        top = max((len(s) for s in self.simplices), default=0)
        return tuple(len(self.simplices_of_dim(k)) for k in range(top))

    def is_downward_closed(self) -> bool:
        for s in self.simplices:
            for v in s:
                if (s - {v}) not in self.simplices:
                    return False
        return all(frozenset((i,)) in self.simplices for i in range(len(self.vertices)))
