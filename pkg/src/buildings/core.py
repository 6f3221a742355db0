"""Group-metric buildings and the exhaustive axiom checkers.

A building here is a finite chamber system together with a table of
group-valued distances.  The checkers are deliberately brute force:

* B1 inspects every panel size (thin = exactly 2, thick = at least 3);
* B2 compares, for every reduced word f up to the gallery diameter, the
  typed-gallery reachability relation against the fibre of the metric;
* B1'/B2' verify an apartment system: pair coverage, and for overlapping
  apartments an isomorphism fixing the overlap, searched over the group
  translations of the embeddings.

Reachability relations are boolean matrices, so B2 is a chain of matrix
products over the panel adjacency matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .chamber_system import ChamberSystem
from .coxeter import CoxeterElement, CoxeterMatrix, cayley_graph, reduced_words
from .coxeter_complex import CoxeterComplex, delta_table

MAX_REPORTED_VIOLATIONS = 20


@dataclass
class Report:
    """Outcome of one axiom check, JSON-friendly."""

    axiom: str
    passed: bool
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "pass": self.passed,
            "violations": self.violations,
            "counts": self.counts,
        }


class WMetricBuilding:
    """A chamber system with a group-valued metric table.

    `elements` is the alphabet of metric values (canonical elements,
    index 0 the identity) and `table[c, d]` indexes into it.
    """

    def __init__(
        self,
        cs: ChamberSystem,
        cm: CoxeterMatrix,
        elements: Sequence[CoxeterElement],
        table: "np.ndarray",
    ):
        self.cs = cs
        self.cm = cm
        self.elements: tuple[CoxeterElement, ...] = tuple(elements)
        if not self.elements or not self.elements[0].is_identity():
            raise ValueError("elements[0] must be the identity")
        if table.shape != (cs.size, cs.size):
            raise ValueError("metric table shape disagrees with the chamber count")
        self.table = table
        self.element_index: dict[tuple[int, ...], int] = {
            e.word: k for k, e in enumerate(self.elements)
        }

    @property
    def colors(self) -> tuple[int, ...]:
        return self.cs.colors

    def delta(self, c: int, d: int) -> CoxeterElement:
        return self.elements[self.table[c, d]]

    def word_str(self, word: tuple[int, ...]) -> str:
        if not word:
            return "e"
        return " ".join(f"s{self.colors[i]}" for i in word)

    def check_metric_laws(self) -> Report:
        """delta(c,c) = e, delta symmetry under inversion, and the rank-1 law:
        for c != d, delta(c,d) is the i-th generator exactly when c and d are
        i-adjacent."""
        violations = []
        n = self.cs.size
        gen_index = {}
        for k in range(self.cm.size):
            idx = self.element_index.get((k,))
            if idx is not None:
                gen_index[idx] = k
        inv_of = [self.element_index[e.inverse().word] for e in self.elements]
        for c in range(n):
            if self.table[c, c] != 0:
                violations.append({"kind": "diagonal", "chamber": c})
        for c in range(n):
            for d in range(n):
                if self.table[d, c] != inv_of[self.table[c, d]]:
                    violations.append({"kind": "inverse-symmetry", "pair": [c, d]})
                if c != d:
                    v = int(self.table[c, d])
                    is_gen = v in gen_index
                    adj = any(
                        self.cs.adjacent(c, d, self.colors[k])
                        for k in range(self.cm.size)
                    )
                    if is_gen:
                        k = gen_index[v]
                        if not self.cs.adjacent(c, d, self.colors[k]):
                            violations.append({"kind": "generator-not-adjacent", "pair": [c, d]})
                    elif adj:
                        violations.append({"kind": "adjacent-not-generator", "pair": [c, d]})
        return Report(
            axiom="metric-laws",
            passed=not violations,
            counts={"chambers": n},
            violations=violations[:MAX_REPORTED_VIOLATIONS],
        )


def building_from_complex(cc: CoxeterComplex) -> WMetricBuilding:
    """The complex itself as a (thin) building with its own metric."""
    return WMetricBuilding(cc.cs, cc.cm, cc.elements, delta_table(cc))


def check_b1(b: "WMetricBuilding | ChamberSystem", thick: bool = False) -> Report:
    """Panel-size axiom: every panel has >= 2 chambers (>= 3 when thick)."""
    cs = b.cs if isinstance(b, WMetricBuilding) else b
    need = 3 if thick else 2
    sizes: dict[int, dict[int, int]] = {}
    violations = []
    smallest = None
    for color in cs.colors:
        hist: dict[int, int] = {}
        for cl in cs.classes(color):
            hist[len(cl)] = hist.get(len(cl), 0) + 1
            smallest = len(cl) if smallest is None else min(smallest, len(cl))
            if len(cl) < need:
                violations.append({"color": color, "panel": list(cl), "size": len(cl)})
        sizes[color] = hist
    return Report(
        axiom="B1(thick)" if thick else "B1",
        passed=not violations,
        counts={
            "panel_sizes": {str(c): h for c, h in sizes.items()},
            "min_panel": smallest,
            "required": need,
        },
        violations=violations[:MAX_REPORTED_VIOLATIONS],
    )


def _adjacency_matrices(cs: ChamberSystem) -> dict[int, "np.ndarray"]:
    """0/1 matrices of the panel relations with the diagonal removed."""
    out = {}
    for color in cs.colors:
        m = np.zeros((cs.size, cs.size), dtype=np.int32)
        for cl in cs.classes(color):
            for a in cl:
                for bb in cl:
                    if a != bb:
                        m[a, bb] = 1
        out[color] = m
    return out


def gallery_relation(cs: ChamberSystem, word: Sequence[int]) -> "np.ndarray":
    """Boolean matrix of 'a typed gallery of this colour word runs c -> d'."""
    adj = _adjacency_matrices(cs)
    rel = np.eye(cs.size, dtype=np.int32)
    for color in word:
        rel = (rel @ adj[color] > 0).astype(np.int32)
    return rel.astype(bool)


def check_b2(b: WMetricBuilding, cap: int = 10_000) -> Report:
    """Metric axiom, checked exhaustively.

    For every group element w up to the gallery diameter and for every
    reduced word f spelling w: a typed gallery c -> d of type f exists
    exactly when delta(c, d) = w.  Words share work through a prefix cache
    of reachability matrices.
    """
    cs = b.cs
    cayley = cayley_graph(b.cm, cap)
    diam = cs.diameter()
    adj = _adjacency_matrices(cs)
    n = cs.size
    prefix_cache: dict[tuple[int, ...], "np.ndarray"] = {
        (): np.eye(n, dtype=np.int32)
    }

    def reach(word: tuple[int, ...]) -> "np.ndarray":
        if word in prefix_cache:
            return prefix_cache[word]
        prev = reach(word[:-1])
        color = b.colors[word[-1]]
        cur = (prev @ adj[color] > 0).astype(np.int32)
        prefix_cache[word] = cur
        return cur

    violations = []
    # no metric value can exceed the gallery diameter; longer ones would
    # dodge the word loop below, so screen them out first
    lengths = np.array([e.length for e in b.elements], dtype=np.int32)[b.table]
    if int(lengths.max(initial=0)) > diam:
        c, d = np.argwhere(lengths > diam)[0]
        violations.append(
            {
                "word": b.word_str(b.delta(int(c), int(d)).word),
                "kind": "delta-longer-than-diameter",
                "mismatches": int((lengths > diam).sum()),
                "example": [int(c), int(d)],
            }
        )
    words_checked = 0
    elements_checked = 0
    for w in cayley.words:
        if len(w) > diam:
            continue
        elements_checked += 1
        k = b.element_index.get(w)
        target = (
            (b.table == k) if k is not None else np.zeros((n, n), dtype=bool)
        )
        for f in sorted(reduced_words(w, b.cm)):
            words_checked += 1
            got = reach(f).astype(bool)
            if not np.array_equal(got, target):
                gw, t = got & ~target, target & ~got
                example = None
                kind = []
                if gw.any():
                    kind.append("gallery-without-delta")
                    c, d = np.argwhere(gw)[0]
                    example = [int(c), int(d)]
                if t.any():
                    kind.append("delta-without-gallery")
                    if example is None:
                        c, d = np.argwhere(t)[0]
                        example = [int(c), int(d)]
                violations.append(
                    {
                        "word": b.word_str(f),
                        "kind": "+".join(kind),
                        "mismatches": int((gw | t).sum()),
                        "example": example,
                    }
                )
    return Report(
        axiom="B2",
        passed=not violations,
        counts={
            "chambers": n,
            "pairs": n * n,
            "diameter": diam,
            "elements": elements_checked,
            "reduced_words": words_checked,
        },
        violations=violations[:MAX_REPORTED_VIOLATIONS],
    )


def non_reduced_caveat_check(b: WMetricBuilding) -> Report:
    """Exhibit why B2 quantifies over reduced words only.

    In any panel with three chambers there is a gallery of the doubled
    type i i between two distinct i-adjacent chambers, yet their distance
    stays the single generator: a witness that non-reduced gallery types
    do not determine the metric.
    """
    for pos, color in enumerate(b.colors):
        for cl in b.cs.classes(color):
            if len(cl) >= 3:
                c, mid, d = cl[0], cl[1], cl[2]
                # gallery c -> mid -> d has type (i, i)
                delta = b.delta(c, d)
                squared = delta * delta
                ok = delta.word == (pos,) and squared.is_identity()
                witness = {
                    "color": color,
                    "gallery": [c, mid, d],
                    "delta": b.word_str(delta.word),
                }
                return Report(
                    axiom="non-reduced-caveat",
                    passed=ok,
                    counts={"panel_size": len(cl), "witness": witness},
                    violations=[] if ok else [witness],
                )
    raise ValueError("no panel with at least three chambers is available")


class ApartmentEmbedding:
    """An injective adjacency-preserving image of a Coxeter complex."""

    def __init__(self, source: CoxeterComplex, target: ChamberSystem, chamber_map: Sequence[int]):
        self.source = source
        self.target = target
        self.chamber_map: tuple[int, ...] = tuple(chamber_map)
        if len(self.chamber_map) != source.size:
            raise ValueError("chamber map must cover the whole complex")
        self.image: frozenset[int] = frozenset(self.chamber_map)
        if len(self.image) != source.size:
            raise ValueError("apartment embedding is not injective")
        self.inverse: dict[int, int] = {c: g for g, c in enumerate(self.chamber_map)}

    def check_morphism(self) -> None:
        """Raise unless the map preserves every colour adjacency."""
        src = self.source
        if not set(src.colors) <= set(self.target.colors):
            raise ValueError("source colours are not colours of the target")
        for g in range(src.size):
            for k, color in enumerate(src.colors):
                h = src.cayley.succ[g][k]
                if not self.target.adjacent(self.chamber_map[g], self.chamber_map[h], color):
                    raise ValueError(
                        f"adjacency broken at element {g}, colour {color}"
                    )


def check_b1_prime(cs: ChamberSystem, apartments: Sequence[ApartmentEmbedding]) -> Report:
    """Every pair of chambers lies in the image of some apartment."""
    n = cs.size
    covered = [set() for _ in range(n)]
    for apt in apartments:
        for c in apt.image:
            covered[c].update(apt.image)
    violations = []
    uncovered = 0
    for c in range(n):
        for d in range(c, n):
            if d not in covered[c]:
                uncovered += 1
                if len(violations) < MAX_REPORTED_VIOLATIONS:
                    violations.append({"pair": [c, d]})
    return Report(
        axiom="B1'",
        passed=uncovered == 0,
        counts={"chambers": n, "apartments": len(apartments), "uncovered_pairs": uncovered},
        violations=violations,
    )


def check_b2_prime(cs: ChamberSystem, apartments: Sequence[ApartmentEmbedding]) -> Report:
    """Overlapping apartments are isomorphic by a map fixing the overlap.

    Candidate isomorphisms are beta o (left translation) o alpha^-1. A
    failure means no isomorphism exists within that translation class,
    which is conclusive for the apartment systems built here.
    """
    if not apartments:
        return Report(axiom="B2'", passed=True, counts={"apartments": 0})
    src = apartments[0].source
    for apt in apartments:
        if apt.source is not src and apt.source.cm != src.cm:
            raise ValueError("apartments must share one Coxeter system")
    cayley = src.cayley
    size = cayley.size
    mult = [[cayley.multiply(w, g) for g in range(size)] for w in range(size)]
    violations = []
    pairs_checked = 0
    for ai in range(len(apartments)):
        for bi in range(ai + 1, len(apartments)):
            a, b = apartments[ai], apartments[bi]
            overlap = a.image & b.image
            if not overlap:
                continue
            pairs_checked += 1
            found = False
            for w in range(size):
                if all(
                    b.chamber_map[mult[w][a.inverse[c]]] == c for c in overlap
                ):
                    found = True
                    break
            if not found:
                violations.append(
                    {
                        "apartments": [ai, bi],
                        "overlap": sorted(overlap),
                        "reason": "no isomorphism found within the translation class",
                    }
                )
    return Report(
        axiom="B2'",
        passed=not violations,
        counts={"apartments": len(apartments), "overlapping_pairs": pairs_checked},
        violations=violations[:MAX_REPORTED_VIOLATIONS],
    )


def check_apartment_axioms(
    cs: ChamberSystem, apartments: Sequence[ApartmentEmbedding]
) -> Report:
    """B1' and B2' together, after validating each embedding."""
    for apt in apartments:
        apt.check_morphism()
    r1 = check_b1_prime(cs, apartments)
    r2 = check_b2_prime(cs, apartments)
    return Report(
        axiom="B1'+B2'",
        passed=r1.passed and r2.passed,
        counts={"B1'": r1.counts, "B2'": r2.counts},
        violations=r1.violations + r2.violations,
    )


def delta_from_apartments(
    cs: ChamberSystem, apartments: Sequence[ApartmentEmbedding]
) -> WMetricBuilding:
    """Define the metric by pulling back through any shared apartment.

    Every pair must lie in a common apartment, and all common apartments
    must agree on the value; both are verified pair by pair.
    """
    if not apartments:
        raise ValueError("at least one apartment is required")
    src = apartments[0].source
    dt = delta_table(src)
    containing: list[list[int]] = [[] for _ in range(cs.size)]
    for k, apt in enumerate(apartments):
        for c in apt.image:
            containing[c].append(k)
    table = np.full((cs.size, cs.size), -1, dtype=np.int32)
    for c in range(cs.size):
        apts_c = containing[c]
        for d in range(cs.size):
            common = [k for k in apts_c if d in apartments[k].image]
            if not common:
                raise ValueError(f"no apartment contains the pair ({c}, {d})")
            values = {
                int(dt[apartments[k].inverse[c], apartments[k].inverse[d]])
                for k in common
            }
            if len(values) != 1:
                raise ValueError(
                    f"apartments disagree on the distance of ({c}, {d}): "
                    f"{sorted(values)}"
                )
            table[c, d] = values.pop()
    return WMetricBuilding(cs, src.cm, src.elements, table)


def is_isometry(
    mapping: Sequence[int] | Mapping[int, int] | Callable[[int], int],
    b1: WMetricBuilding,
    b2: WMetricBuilding,
) -> bool:
    """Whether the chamber map preserves the metrics on every pair."""
    if b1.cm != b2.cm:
        raise ValueError("buildings have different Coxeter systems")
    if callable(mapping):
        f = mapping
    elif isinstance(mapping, Mapping):
        f = mapping.__getitem__
    else:
        f = list(mapping).__getitem__
    for c in range(b1.cs.size):
        fc = f(c)
        for d in range(b1.cs.size):
            if b1.delta(c, d).word != b2.delta(fc, f(d)).word:
                return False
    return True
