"""Coxeter complexes: the thin chamber system on a Coxeter group.

Chambers are group elements, two being i-adjacent exactly when they differ
by right multiplication with the i-th generator, and the group-valued
metric is delta(g, h) = g^-1 h.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .chamber_system import ChamberSystem
from .coxeter import CayleyGraph, CoxeterElement, CoxeterMatrix, cayley_graph


class CoxeterComplex:
    def __init__(self, cayley: CayleyGraph, colors: tuple[int, ...], cs: ChamberSystem):
        self.cayley = cayley
        self.cm: CoxeterMatrix = cayley.cm
        self.colors = colors
        self.cs = cs

    @property
    def size(self) -> int:
        return self.cayley.size

    @property
    def elements(self) -> tuple[CoxeterElement, ...]:
        return self.cayley.elements

    def word_str(self, word: tuple[int, ...]) -> str:
        if not word:
            return "e"
        return " ".join(f"s{self.colors[i]}" for i in word)


def build_coxeter_complex(
    cm: CoxeterMatrix, cap: int = 10_000, colors: tuple[int, ...] | None = None
) -> CoxeterComplex:
    """Materialise the complex; panels are the pairs {g, g s_i}.

    Colour names default to 1..|S| and map positionally onto the generators.
    """
    if colors is None:
        colors = tuple(range(1, cm.size + 1))
    if len(colors) != cm.size:
        raise ValueError("one colour name per generator is required")
    cayley = cayley_graph(cm, cap)
    partitions = {}
    for k, color in enumerate(colors):
        seen = [False] * cayley.size
        classes = []
        for g in range(cayley.size):
            if not seen[g]:
                h = cayley.succ[g][k]
                if h == g:
                    raise AssertionError("a generator fixed a chamber")
                seen[g] = seen[h] = True
                classes.append((g, h) if g < h else (h, g))
        partitions[color] = classes
    cc = CoxeterComplex(
        cayley,
        colors,
        ChamberSystem(
            cayley.size,
            colors,
            partitions,
            labels=[
                " ".join(f"s{colors[i]}" for i in w) if w else "e" for w in cayley.words
            ],
        ),
    )
    return cc


def delta_w(cc: CoxeterComplex, g: int, h: int) -> CoxeterElement:
    """The metric value g^-1 h as a canonical element."""
    return cc.elements[cc.cayley.delta(g, h)]


@lru_cache(maxsize=None)
def _delta_table_cached(cayley: CayleyGraph) -> "np.ndarray":
    n = cayley.size
    inv = [cayley.inverse_index(a) for a in range(n)]
    table = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(n):
            table[a, b] = cayley.walk(cayley.words[b], start=inv[a])
    return table


def delta_table(cc: CoxeterComplex) -> "np.ndarray":
    """The full N x N table of metric values, as element indices."""
    return _delta_table_cached(cc.cayley)


def residue_circuit_lengths(cc: CoxeterComplex) -> dict[frozenset[int], int]:
    """Size of the {i,j}-residues for each colour pair.

    Every {i,j}-residue is a circuit of 2*m(i,j) chambers; the sizes are
    verified to agree across residues of one pair.
    """
    out: dict[frozenset[int], int] = {}
    for a in range(len(cc.colors)):
        for b in range(a + 1, len(cc.colors)):
            J = (cc.colors[a], cc.colors[b])
            sizes = {len(comp) for comp in cc.cs.residues(J)}
            if len(sizes) != 1:
                raise AssertionError(f"residues over {J} have mixed sizes {sizes}")
            out[frozenset(J)] = sizes.pop()
    return out
