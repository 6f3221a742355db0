"""The flag building of GF(p)^n: maximal flags, position metric, frames.

Chambers are the maximal flags V_1 < ... < V_{n-1}; two flags are
i-adjacent when they agree away from position i.  The metric value of a
pair (c, c') is the permutation

    pi(i) = min { j : V'_i  is contained in  V'_{i-1} + V_j },

the position where c's chain first catches the i-th step of c'.  Frames
(sets of n independent lines) give the apartments: the n! flags built
from the orderings of one frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .chamber_system import ChamberSystem
from .core import ApartmentEmbedding, WMetricBuilding
from .coxeter import (
    CoxeterMatrix,
    permutation_to_word,
    type_a_permutation,
)
from .coxeter_complex import CoxeterComplex, build_coxeter_complex
from .ff_linalg import (
    ENUMERATION_GUARD,
    Subspace,
    check_prime,
    contains,
    enumerate_subspaces,
)


@dataclass(frozen=True)
class Flag:
    """A maximal flag: a chain of subspaces of dimensions 1..n-1."""

    chain: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        if not self.chain:
            raise ValueError("empty flag")
        n = self.chain[0].n
        for i, sub in enumerate(self.chain):
            if sub.n != n or sub.p != self.chain[0].p:
                raise ValueError("flag members live in different spaces")
            if sub.dim != i + 1:
                raise ValueError(f"flag member {i} has dimension {sub.dim}, wanted {i + 1}")
        for small, big in zip(self.chain, self.chain[1:]):
            if not contains(big, small):
                raise ValueError("flag chain is not increasing")
        if len(self.chain) != n - 1:
            raise ValueError("flag is not maximal")

    @property
    def n(self) -> int:
        return self.chain[0].n

    @property
    def p(self) -> int:
        return self.chain[0].p

    def __str__(self) -> str:
        return " < ".join(str(s) for s in self.chain)


@dataclass(frozen=True)
class Frame:
    """An unordered set of n independent lines, stored sorted."""

    lines: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        n = self.lines[0].n
        if len(self.lines) != n:
            raise ValueError("a frame needs exactly n lines")
        if any(line.dim != 1 for line in self.lines):
            raise ValueError("frame members must be lines")
        stacked = [row for line in self.lines for row in line.basis.entries]
        if Subspace.from_vectors(stacked, n, self.lines[0].p).dim != n:
            raise ValueError("frame lines do not span the space")


@lru_cache(maxsize=None)
def _vectors(sub: Subspace) -> frozenset[tuple[int, ...]]:
    return frozenset(sub.vectors())


@lru_cache(maxsize=None)
def _sum_vectors(a: Subspace, b: Subspace) -> frozenset[tuple[int, ...]]:
    # the union of two subspaces spans exactly the pairwise sums
    p = a.p
    return frozenset(
        tuple((x + y) % p for x, y in zip(u, v))
        for u in _vectors(a)
        for v in _vectors(b)
    )


def delta_flag(c: Flag, c_prime: Flag) -> tuple[int, ...]:
    """The metric permutation of the flag pair (1-based images)."""
    if c.n != c_prime.n or c.p != c_prime.p:
        raise ValueError("flags of different spaces")
    n, p = c.n, c.p
    lower = (Subspace.zero(n, p),) + c_prime.chain + (Subspace.full(n, p),)
    upper = c.chain + (Subspace.full(n, p),)
    perm = []
    for i in range(1, n + 1):
        target = _vectors(lower[i])  # V'_i
        prev = lower[i - 1]  # V'_{i-1}
        for j in range(1, n + 1):
            if target <= _sum_vectors(prev, upper[j - 1]):
                perm.append(j)
                break
        else:
            raise AssertionError("flag chain never absorbed the target")
    return tuple(perm)


class FlagBuilding:
    """The assembled building plus its flag- and frame-level bookkeeping."""

    def __init__(
        self,
        n: int,
        p: int,
        flags: tuple[Flag, ...],
        building: WMetricBuilding,
        complex: CoxeterComplex,
    ):
        self.n = n
        self.p = p
        self.flags = flags
        self.building = building
        self.complex = complex
        self.index: dict[Flag, int] = {f: k for k, f in enumerate(flags)}

    @property
    def cs(self) -> ChamberSystem:
        return self.building.cs


def _guard(n: int, p: int) -> None:
    check_prime(p)
    if p**n > ENUMERATION_GUARD:
        raise ValueError(f"enumeration guard exceeded: {p}**{n} > {ENUMERATION_GUARD}")


@lru_cache(maxsize=None)
def build_flag_building(n: int, p: int) -> FlagBuilding:
    """Construct the full building of maximal flags in GF(p)^n.

    Chambers are ordered lexicographically by the indices of their
    subspaces in the global per-dimension enumerations, so chamber ids are
    reproducible.
    """
    _guard(n, p)
    if n < 2:
        raise ValueError("flags need ambient dimension at least 2")
    by_dim = {k: enumerate_subspaces(n, k, p) for k in range(1, n)}
    chains: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        k = len(prefix)
        if k == n - 1:
            chains.append(tuple(prefix))
            return
        smaller = by_dim[k][prefix[-1]] if k else None
        for idx, sub in enumerate(by_dim[k + 1]):
            if smaller is None or contains(sub, smaller):
                extend(prefix + [idx])

    extend([])
    chains.sort()
    flags = tuple(
        Flag(tuple(by_dim[k + 1][idx] for k, idx in enumerate(chain))) for chain in chains
    )
    colors = tuple(range(1, n))
    partitions: dict[int, list[tuple[int, ...]]] = {}
    for pos, color in enumerate(colors):
        groups: dict[tuple[int, ...], list[int]] = {}
        for ci, chain in enumerate(chains):
            key = chain[:pos] + chain[pos + 1 :]
            groups.setdefault(key, []).append(ci)
        partitions[color] = [tuple(v) for v in sorted(groups.values())]
    cs = ChamberSystem(
        len(flags), colors, partitions, labels=[str(f) for f in flags]
    )
    complex = build_coxeter_complex(CoxeterMatrix.type_a(n - 1), colors=colors)
    word_index = {w: k for k, w in enumerate(complex.cayley.words)}
    perm_cache: dict[tuple[int, ...], int] = {}
    table = np.zeros((len(flags), len(flags)), dtype=np.int32)
    for a in range(len(flags)):
        for b in range(len(flags)):
            perm = delta_flag(flags[a], flags[b])
            k = perm_cache.get(perm)
            if k is None:
                k = word_index[
                    complex.cayley.words[complex.cayley.walk(permutation_to_word(perm))]
                ]
                perm_cache[perm] = k
            table[a, b] = k
    building = WMetricBuilding(cs, complex.cm, complex.elements, table)
    return FlagBuilding(n, p, flags, building, complex)


def enumerate_frames(n: int, p: int) -> tuple[Frame, ...]:
    """All frames, i.e. unordered sets of n jointly spanning lines."""
    _guard(n, p)
    lines = enumerate_subspaces(n, 1, p)
    frames = []
    for combo in combinations(range(len(lines)), n):
        stacked = [row for idx in combo for row in lines[idx].basis.entries]
        if Subspace.from_vectors(stacked, n, p).dim == n:
            frames.append(Frame(tuple(lines[idx] for idx in combo)))
    return tuple(frames)


def flag_of_ordering(lines: tuple[Subspace, ...]) -> Flag:
    """The flag whose i-th member spans the first i lines of the ordering."""
    n, p = lines[0].n, lines[0].p
    chain = []
    vecs: list[tuple[int, ...]] = []
    for line in lines[:-1]:
        vecs.extend(line.basis.entries)
        chain.append(Subspace.from_vectors(vecs, n, p))
    return Flag(tuple(chain))


def apartment_from_frame(fb: FlagBuilding, frame: Frame) -> ApartmentEmbedding:
    """Embed the thin complex as the n! flags built from the frame.

    The group element g maps to the flag of the ordering (L_g(1), ...,
    L_g(n)); the base chamber, at the identity, is the flag of the sorted
    ordering.
    """
    n = fb.n
    chamber_map = []
    for word in fb.complex.cayley.words:
        perm = type_a_permutation(word, n - 1)
        ordering = tuple(frame.lines[perm[k] - 1] for k in range(n))
        chamber_map.append(fb.index[flag_of_ordering(ordering)])
    return ApartmentEmbedding(fb.complex, fb.cs, chamber_map)


@lru_cache(maxsize=None)
def frame_apartments(n: int, p: int) -> tuple[ApartmentEmbedding, ...]:
    fb = build_flag_building(n, p)
    return tuple(apartment_from_frame(fb, f) for f in enumerate_frames(n, p))
