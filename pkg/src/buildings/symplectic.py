"""The symplectic building: isotropic flags, signed-frame apartments,
and the rank-2 incidence graph of Sp_4(F_2) with its Sylvester model.

The metric is defined purely through the apartment system: the apartments
are the images of the standard signed frame under the group generated by
symplectic transvections, and the distance of a chamber pair is pulled
back through any apartment containing both (agreement across apartments
is verified during construction).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .chamber_system import ChamberSystem
from .core import ApartmentEmbedding, WMetricBuilding, delta_from_apartments
from .coxeter import CoxeterMatrix
from .coxeter_complex import CoxeterComplex, build_coxeter_complex
from .ff_linalg import (
    ENUMERATION_GUARD,
    FpMatrix,
    Subspace,
    check_prime,
    contains,
    enumerate_subspaces,
)


@dataclass(frozen=True)
class SymplecticSpace:
    """GF(p)^{2n} with the block form ((0, I), (-I, 0))."""

    n: int
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def gram(self) -> FpMatrix:
        n, p = self.n, self.p
        grid = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            grid[i][n + i] = 1
            grid[n + i][i] = (-1) % p
        return FpMatrix(tuple(tuple(r) for r in grid), p, 2 * n)

    def form(self, u, v) -> int:
        n, p = self.n, self.p
        total = 0
        for i in range(n):
            total += u[i] * v[n + i] - u[n + i] * v[i]
        return total % p


def is_totally_isotropic(sp: SymplecticSpace, u: Subspace) -> bool:
    """Whether the form vanishes on u x u.

    The form is alternating, so checking the basis pairwise suffices.
    """
    if u.n != sp.dim or u.p != sp.p:
        raise ValueError("subspace does not live in the symplectic space")
    rows = u.basis.entries
    return all(
        sp.form(rows[a], rows[b]) == 0
        for a in range(len(rows))
        for b in range(a + 1, len(rows))
    )


@lru_cache(maxsize=None)
def isotropic_subspaces(sp: SymplecticSpace, k: int) -> tuple[Subspace, ...]:
    return tuple(
        s for s in enumerate_subspaces(sp.dim, k, sp.p) if is_totally_isotropic(sp, s)
    )


@lru_cache(maxsize=None)
def transvections(sp: SymplecticSpace) -> tuple[FpMatrix, ...]:
    """The maps x -> x + t*(x, v)*v; they generate the symplectic group."""
    n2, p = sp.dim, sp.p
    out = []
    nonzero = [s.basis.entries[0] for s in enumerate_subspaces(n2, 1, p)]
    basis = FpMatrix.identity(n2, p).entries
    for v in nonzero:
        for t in range(1, p):
            cols = []
            for e in basis:
                x = [(a + t * sp.form(e, v) * b) % p for a, b in zip(e, v)]
                cols.append(x)
            # build the matrix acting on column vectors: image of e_j is column j
            grid = tuple(tuple(cols[j][i] for j in range(n2)) for i in range(n2))
            out.append(FpMatrix(grid, p, n2))
    return tuple(sorted(set(out), key=lambda m: m.entries))


@lru_cache(maxsize=None)
def symplectic_group(sp: SymplecticSpace) -> tuple[FpMatrix, ...]:
    """Closure of the transvections, sorted for reproducible orbits."""
    gens = transvections(sp)
    seen = set(gens)
    seen.add(FpMatrix.identity(sp.dim, sp.p))
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                x = a @ g
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        frontier = new
    group = tuple(sorted(seen, key=lambda m: m.entries))
    J = sp.gram
    for g in group:
        if (g.transpose() @ J) @ g != J:
            raise AssertionError("transvection closure left the symplectic group")
    return group


@dataclass(frozen=True)
class IsotropicFlag:
    """A chain of totally isotropic subspaces of dimensions 1..n."""

    chain: tuple[Subspace, ...]
    space: SymplecticSpace

    def __post_init__(self) -> None:
        if len(self.chain) != self.space.n:
            raise ValueError("flag is not maximal")
        for i, sub in enumerate(self.chain):
            if sub.dim != i + 1:
                raise ValueError("bad dimension in isotropic flag")
            if not is_totally_isotropic(self.space, sub):
                raise ValueError("flag member is not isotropic")
        for small, big in zip(self.chain, self.chain[1:]):
            if not contains(big, small):
                raise ValueError("chain is not increasing")

    def __str__(self) -> str:
        return " < ".join(str(s) for s in self.chain)


class SpBuilding:
    def __init__(
        self,
        space: SymplecticSpace,
        flags: tuple[IsotropicFlag, ...],
        building: WMetricBuilding,
        complex: CoxeterComplex,
        apartments: tuple[ApartmentEmbedding, ...],
    ):
        self.space = space
        self.flags = flags
        self.building = building
        self.complex = complex
        self.apartments = apartments
        self.index: dict[tuple[Subspace, ...], int] = {
            f.chain: k for k, f in enumerate(flags)
        }

    @property
    def cs(self) -> ChamberSystem:
        return self.building.cs

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def p(self) -> int:
        return self.space.p


def standard_frame(sp: SymplecticSpace) -> tuple[tuple[Subspace, Subspace], ...]:
    """The pairs (<e_i>, <e_{n+i}>) of the defining basis."""
    n2, p = sp.dim, sp.p

    def line(i: int) -> Subspace:
        return Subspace.from_vectors([[1 if t == i else 0 for t in range(n2)]], n2, p)

    return tuple((line(i), line(sp.n + i)) for i in range(sp.n))


def _signed_states(n: int, complex: CoxeterComplex) -> list[tuple[tuple[int, int], ...]]:
    """The signed ordering reached by each group element's canonical word.

    State slots hold (frame pair index, side); generator k < n-1 swaps
    slots k and k+1 and the last generator flips the side of the last slot.
    """
    states = []
    for word in complex.cayley.words:
        state = [(i, 0) for i in range(n)]
        for k in word:
            if k < n - 1:
                state[k], state[k + 1] = state[k + 1], state[k]
            else:
                idx, side = state[n - 1]
                state[n - 1] = (idx, 1 - side)
        states.append(tuple(state))
    return states


def _frame_chamber_map(
    sp: SymplecticSpace,
    complex: CoxeterComplex,
    index: dict[tuple[Subspace, ...], int],
    pairs: tuple[tuple[Subspace, Subspace], ...],
) -> list[int]:
    n = sp.n
    if len(pairs) != n:
        raise ValueError(f"need {n} pairs of lines")
    lines = [line for pair in pairs for line in pair]
    if len(set(lines)) != 2 * n:
        raise ValueError("frame lines are not distinct")
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            va = lines[a].basis.entries[0]
            vb = lines[b].basis.entries[0]
            paired = a // 2 == b // 2
            if (sp.form(va, vb) != 0) != paired:
                raise ValueError("lines do not form a symplectic frame")
    chamber_map = []
    for state in _signed_states(n, complex):
        vecs: list[tuple[int, ...]] = []
        chain = []
        for idx, side in state:
            vecs.extend(pairs[idx][side].basis.entries)
            chain.append(Subspace.from_vectors(vecs, sp.dim, sp.p))
        key = tuple(chain)
        if key not in index:
            raise ValueError("frame ordering produced a chamber outside the building")
        chamber_map.append(index[key])
    return chamber_map


def signed_frame_apartment(
    spb: SpBuilding, pairs: tuple[tuple[Subspace, Subspace], ...]
) -> ApartmentEmbedding:
    """Embed the thin complex as the orbit of the base chamber under
    signed reorderings of the frame pairs.

    The pairs must exhibit the standard pairing pattern: lines inside one
    pair meet the form non-trivially, all other line pairs are orthogonal.
    """
    chamber_map = _frame_chamber_map(spb.space, spb.complex, spb.index, pairs)
    return ApartmentEmbedding(spb.complex, spb.cs, chamber_map)


def _transform_line(g: FpMatrix, line: Subspace) -> Subspace:
    vec = line.basis.entries[0]
    img = g @ FpMatrix(tuple((x,) for x in vec), g.p, 1)
    return Subspace.from_vectors([tuple(r[0] for r in img.entries)], g.cols, g.p)


@lru_cache(maxsize=None)
def build_sp_building(n: int, p: int) -> SpBuilding:
    """Assemble the building of maximal isotropic flags of Sp_{2n}(GF(p)).

    The apartment system is the full orbit of the standard frame under the
    symplectic group; the metric is defined by apartment pullback, which
    also proves it well defined.
    """
    check_prime(p)
    if p ** (2 * n) > ENUMERATION_GUARD:
        raise ValueError(f"enumeration guard exceeded: {p}**{2 * n} > {ENUMERATION_GUARD}")
    sp = SymplecticSpace(n, p)
    by_dim = {k: isotropic_subspaces(sp, k) for k in range(1, n + 1)}
    chains: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        k = len(prefix)
        if k == n:
            chains.append(tuple(prefix))
            return
        smaller = by_dim[k][prefix[-1]] if k else None
        for idx, sub in enumerate(by_dim[k + 1]):
            if smaller is None or contains(sub, smaller):
                extend(prefix + [idx])

    extend([])
    chains.sort()
    flags = tuple(
        IsotropicFlag(tuple(by_dim[k + 1][i] for k, i in enumerate(chain)), sp)
        for chain in chains
    )
    colors = tuple(range(1, n + 1))
    partitions: dict[int, list[tuple[int, ...]]] = {}
    for pos, color in enumerate(colors):
        groups: dict[tuple[int, ...], list[int]] = {}
        for ci, chain in enumerate(chains):
            key = chain[:pos] + chain[pos + 1 :]
            groups.setdefault(key, []).append(ci)
        partitions[color] = [tuple(v) for v in sorted(groups.values())]
    cs = ChamberSystem(len(flags), colors, partitions, labels=[str(f) for f in flags])
    complex = build_coxeter_complex(CoxeterMatrix.type_c(n), colors=colors)
    index = {f.chain: k for k, f in enumerate(flags)}

    base = standard_frame(sp)
    seen_images = set()
    apartments = []
    for g in symplectic_group(sp):
        moved = tuple((_transform_line(g, a), _transform_line(g, b)) for a, b in base)
        apt = ApartmentEmbedding(
            complex, cs, _frame_chamber_map(sp, complex, index, moved)
        )
        if apt.image not in seen_images:
            seen_images.add(apt.image)
            apartments.append(apt)
    building = delta_from_apartments(cs, apartments)
    return SpBuilding(sp, flags, building, complex, tuple(apartments))


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph on labelled white and black vertices."""

    whites: tuple
    blacks: tuple
    edges: tuple[tuple[int, int], ...]  # (white index, black index)

    @property
    def size(self) -> int:
        return len(self.whites) + len(self.blacks)

    def adjacency(self) -> list[set[int]]:
        """Neighbour sets over the combined vertex range (whites first)."""
        w = len(self.whites)
        adj: list[set[int]] = [set() for _ in range(self.size)]
        for a, b in self.edges:
            adj[a].add(w + b)
            adj[w + b].add(a)
        return adj

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adjacency()]

    def girth(self) -> int:
        """Length of a shortest cycle, by BFS from every vertex."""
        adj = self.adjacency()
        best = 0
        for root in range(self.size):
            dist = {root: 0}
            parent = {root: -1}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        queue.append(v)
                    elif parent[u] != v:
                        cyc = dist[u] + dist[v] + 1
                        if best == 0 or cyc < best:
                            best = cyc
        return best

    def cycles_through_edge(self, edge: tuple[int, int], length: int) -> int:
        """Count simple cycles of the given length containing the edge."""
        adj = self.adjacency()
        w = len(self.whites)
        start, goal = edge[0], w + edge[1]
        count = 0
        stack = [(goal, (start, goal))]
        while stack:
            cur, path = stack.pop()
            if len(path) == length:
                if start in adj[cur]:
                    count += 1
                continue
            for nxt in adj[cur]:
                if nxt not in path:
                    stack.append((nxt, path + (nxt,)))
        return count

    def to_dot(self) -> str:
        lines = ["graph incidence {"]
        for i, lab in enumerate(self.whites):
            lines.append(f'  w{i} [label="{lab}", shape=circle, style=filled, fillcolor=white];')
        for i, lab in enumerate(self.blacks):
            lines.append(f'  b{i} [label="{lab}", shape=circle, style=filled, fillcolor=black, fontcolor=white];')
        for a, b in sorted(self.edges):
            lines.append(f"  w{a} -- b{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def incidence_graph(spb: SpBuilding) -> BipartiteGraph:
    """Lines versus isotropic planes of the rank-2 building."""
    if spb.n != 2:
        raise ValueError("the incidence graph is defined for n = 2")
    sp = spb.space
    lines = isotropic_subspaces(sp, 1)
    planes = isotropic_subspaces(sp, 2)
    plane_index = {pl: i for i, pl in enumerate(planes)}
    edges = []
    for li, line in enumerate(lines):
        for pl, plane in enumerate(planes):
            if contains(plane, line):
                edges.append((li, pl))
    return BipartiteGraph(
        tuple(str(l) for l in lines), tuple(str(p) for p in planes), tuple(edges)
    )


def sylvester_graph() -> BipartiteGraph:
    """Involutions of six points: transpositions versus triple products.

    A transposition is joined to the three fixed-point-free involutions
    that contain it as a factor.
    """
    duads = list(combinations(range(1, 7), 2))
    synthemes = []
    for perm_partition in _partitions_into_pairs(tuple(range(1, 7))):
        synthemes.append(perm_partition)
    synthemes.sort()
    edges = []
    for di, d in enumerate(duads):
        for si, s in enumerate(synthemes):
            if d in s:
                edges.append((di, si))
    return BipartiteGraph(
        tuple(str(d) for d in duads),
        tuple("".join(str(p) for p in s) for s in synthemes),
        tuple(edges),
    )


def _partitions_into_pairs(items: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    if not items:
        return [()]
    first = items[0]
    out = []
    for k in range(1, len(items)):
        pair = (first, items[k])
        rest = items[1:k] + items[k + 1 :]
        for sub in _partitions_into_pairs(rest):
            out.append((pair,) + sub)
    return out


def bipartite_isomorphism(g1: BipartiteGraph, g2: BipartiteGraph) -> dict[int, int] | None:
    """A vertex bijection preserving edges exactly, or None.

    Plain backtracking over vertices in a connectivity-friendly order,
    trying both the side-preserving and the side-swapping orientations.
    """
    if g1.size != g2.size or len(g1.edges) != len(g2.edges):
        return None
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    deg1 = [len(s) for s in adj1]
    deg2 = [len(s) for s in adj2]
    w1, w2 = len(g1.whites), len(g2.whites)

    def side1(v: int) -> int:
        return 0 if v < w1 else 1

    def side2(v: int) -> int:
        return 0 if v < w2 else 1

    order: list[int] = []
    seen = set()
    for root in range(g1.size):
        if root in seen:
            continue
        queue = deque([root])
        seen.add(root)
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in sorted(adj1[u]):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)

    for flip in (False, True):
        mapping: dict[int, int] = {}
        used: set[int] = set()

        def ok(v: int, cand: int) -> bool:
            if deg1[v] != deg2[cand]:
                return False
            want = side1(v) ^ int(flip)
            if side2(cand) != want:
                return False
            for u in adj1[v]:
                if u in mapping and mapping[u] not in adj2[cand]:
                    return False
            for u in range(g1.size):
                if u in mapping and u not in adj1[v] and mapping[u] in adj2[cand]:
                    return False
            return True

        def solve(k: int) -> bool:
            if k == len(order):
                return True
            v = order[k]
            for cand in range(g2.size):
                if cand in used:
                    continue
                if ok(v, cand):
                    mapping[v] = cand
                    used.add(cand)
                    if solve(k + 1):
                        return True
                    del mapping[v]
                    used.remove(cand)
            return False

        if solve(0):
            return dict(mapping)
    return None
