"""Bruhat decomposition and the coset building for GL_n(GF(p)).

B is the upper triangular invertible matrices, N the monomial matrices,
T = B intersect N the invertible diagonals.  Every invertible a lies in a
unique double coset B w B, and w can be read off the ranks of the
lower-left submatrices:

    r(i, j) = rank of rows i..n, columns 1..j   (1-based),
    w(j) = i  iff  r(i,j) - r(i+1,j) - r(i,j-1) + r(i+1,j-1) = 1.

That rank pattern is invariant under row operations from the bottom and
column operations from the left kind that B-multiplication performs, and
on a permutation matrix it returns the permutation itself; the test suite
re-derives it against brute-force double-coset membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .chamber_system import ChamberSystem
from .core import WMetricBuilding
from .coxeter import CoxeterMatrix, permutation_to_word
from .coxeter_complex import CoxeterComplex, build_coxeter_complex
from .ff_linalg import (
    ENUMERATION_GUARD,
    FpMatrix,
    Subspace,
    check_prime,
    inverse_mod,
)
from .flag import Flag, FlagBuilding


def _guard(n: int, p: int) -> None:
    check_prime(p)
    if p ** (n * n) > ENUMERATION_GUARD:
        raise ValueError(
            f"group enumeration guard exceeded: {p}**{n * n} > {ENUMERATION_GUARD}"
        )


@lru_cache(maxsize=None)
def general_linear_group(n: int, p: int) -> tuple[FpMatrix, ...]:
    """All invertible n x n matrices over GF(p), sorted by their grids."""
    _guard(n, p)
    out = []
    for flat in product(range(p), repeat=n * n):
        m = FpMatrix(tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n)), p, n)
        if m.is_invertible():
            out.append(m)
    out.sort(key=lambda m: m.entries)
    return tuple(out)


@lru_cache(maxsize=None)
def borel_subgroup(n: int, p: int) -> tuple[FpMatrix, ...]:
    """Upper triangular matrices with invertible diagonal, sorted."""
    check_prime(p)
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for vals in product(range(p), repeat=len(slots)):
        grid = [[0] * n for _ in range(n)]
        ok = True
        for (i, j), v in zip(slots, vals):
            grid[i][j] = v
            if i == j and v == 0:
                ok = False
                break
        if ok:
            out.append(FpMatrix(tuple(tuple(r) for r in grid), p, n))
    out.sort(key=lambda m: m.entries)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_subgroup(n: int, p: int) -> tuple[FpMatrix, ...]:
    """Matrices with one non-zero entry per row and column, sorted."""
    check_prime(p)
    out = []
    for perm in permutations(range(n)):
        for units in product(range(1, p), repeat=n):
            grid = [[0] * n for _ in range(n)]
            for j in range(n):
                grid[perm[j]][j] = units[j]
            out.append(FpMatrix(tuple(tuple(r) for r in grid), p, n))
    out.sort(key=lambda m: m.entries)
    return tuple(out)


def diagonal_subgroup(n: int, p: int) -> tuple[FpMatrix, ...]:
    out = []
    for units in product(range(1, p), repeat=n):
        grid = [[units[i] if i == j else 0 for j in range(n)] for i in range(n)]
        out.append(FpMatrix(tuple(tuple(r) for r in grid), p, n))
    return tuple(sorted(out, key=lambda m: m.entries))


def permutation_matrix(perm: tuple[int, ...], p: int) -> FpMatrix:
    """The matrix sending basis vector e_j to e_perm(j) (1-based images)."""
    n = len(perm)
    grid = [[0] * n for _ in range(n)]
    for j in range(n):
        grid[perm[j] - 1][j] = 1
    return FpMatrix(tuple(tuple(r) for r in grid), p, n)


def bruhat_permutation(a: FpMatrix) -> tuple[int, ...]:
    """The unique w with a in B w B, from the lower-left rank pattern."""
    n = a.rows
    if not a.is_invertible():
        raise ValueError("matrix is singular")
    r = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(n, 0, -1):
        for j in range(1, n + 1):
            sub = FpMatrix(tuple(row[:j] for row in a.entries[i - 1 :]), a.p, j)
            r[i][j] = sub.rank()
    perm = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if r[i][j] - r[i + 1][j] - r[i][j - 1] + r[i + 1][j - 1] == 1:
                perm[j - 1] = i
                break
        else:
            raise AssertionError("rank pattern produced no image")
    return tuple(perm)


@dataclass(frozen=True)
class BorelCoset:
    """A coset aB, carried by its column-reduced canonical representative.

    The representative is the unique member whose pivot (the lowest
    non-zero entry of each column) is 1 with only zeros to its right.
    """

    rep: FpMatrix
    n: int
    p: int


def coset_canonical(a: FpMatrix) -> BorelCoset:
    """Canonicalise aB by column operations from the right.

    Scaling a column and adding a column to a later one are exactly the
    right multiplications by upper triangular matrices.
    """
    n = a.rows
    if not a.is_invertible():
        raise ValueError("matrix is singular")
    p = a.p
    cols = [list(a.column(j)) for j in range(n)]
    for j in range(n):
        piv = max(i for i in range(n) if cols[j][i] != 0)
        inv = inverse_mod(cols[j][piv], p)
        cols[j] = [(e * inv) % p for e in cols[j]]
        for j2 in range(j + 1, n):
            f = cols[j2][piv]
            if f:
                cols[j2] = [(x - f * y) % p for x, y in zip(cols[j2], cols[j])]
    rep = FpMatrix(tuple(zip(*[tuple(c) for c in cols])), p, n)
    return BorelCoset(rep, n, p)


@dataclass(frozen=True)
class BruhatCell:
    """One double coset B w B and its cardinality."""

    w: tuple[int, ...]
    size: int


@lru_cache(maxsize=None)
def bruhat_cells(n: int, p: int) -> dict[tuple[int, ...], tuple[FpMatrix, ...]]:
    """The partition of the group into double cosets, by classification."""
    cells: dict[tuple[int, ...], list[FpMatrix]] = {}
    for a in general_linear_group(n, p):
        cells.setdefault(bruhat_permutation(a), []).append(a)
    return {w: tuple(ms) for w, ms in sorted(cells.items())}


def bruhat_cell_decomposition(n: int, p: int) -> tuple[BruhatCell, ...]:
    return tuple(BruhatCell(w, len(ms)) for w, ms in bruhat_cells(n, p).items())


def cell_sizes(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {cell.w: cell.size for cell in bruhat_cell_decomposition(n, p)}


class GBBuilding:
    """The coset chamber system of GL_n(GF(p)) with its Bruhat metric."""

    def __init__(
        self,
        n: int,
        p: int,
        cosets: tuple[BorelCoset, ...],
        building: WMetricBuilding,
        complex: CoxeterComplex,
    ):
        self.n = n
        self.p = p
        self.cosets = cosets
        self.building = building
        self.complex = complex
        self.index: dict[FpMatrix, int] = {c.rep: k for k, c in enumerate(cosets)}

    @property
    def cs(self) -> ChamberSystem:
        return self.building.cs

    def chamber_of(self, a: FpMatrix) -> int:
        return self.index[coset_canonical(a).rep]


@lru_cache(maxsize=None)
def build_gb_building(n: int, p: int) -> GBBuilding:
    """Chambers are the cosets aB; the metric of (a1 B, a2 B) is the
    double-coset class of a1^-1 a2, and i-adjacency is the union of the
    identity and s_i classes."""
    _guard(n, p)
    if n < 2:
        raise ValueError("need n >= 2 for a coset building")
    reps = sorted(
        {coset_canonical(a).rep for a in general_linear_group(n, p)},
        key=lambda m: m.entries,
    )
    cosets = tuple(BorelCoset(r, n, p) for r in reps)
    size = len(cosets)
    complex = build_coxeter_complex(CoxeterMatrix.type_a(n - 1), colors=tuple(range(1, n)))
    word_index = {w: k for k, w in enumerate(complex.cayley.words)}
    perm_elem: dict[tuple[int, ...], int] = {}
    inv = [r.inverse() for r in reps]
    table = np.zeros((size, size), dtype=np.int32)
    perm_table: list[list[tuple[int, ...]]] = [[()] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            w = bruhat_permutation(inv[a] @ reps[b])
            perm_table[a][b] = w
            k = perm_elem.get(w)
            if k is None:
                canon = complex.cayley.words[complex.cayley.walk(permutation_to_word(w))]
                k = word_index[canon]
                perm_elem[w] = k
            table[a, b] = k
    identity_perm = tuple(range(1, n + 1))
    partitions: dict[int, list[tuple[int, ...]]] = {}
    for pos, color in enumerate(complex.colors):
        s = tuple(
            identity_perm[:pos] + (pos + 2, pos + 1) + identity_perm[pos + 2 :]
        )
        seen = [False] * size
        classes = []
        for c in range(size):
            if not seen[c]:
                cls = tuple(
                    d for d in range(size) if perm_table[c][d] in (identity_perm, s)
                )
                for d in cls:
                    seen[d] = True
                classes.append(cls)
        partitions[color] = classes
    cs = ChamberSystem(size, complex.colors, partitions, labels=[str(r) for r in reps])
    building = WMetricBuilding(cs, complex.cm, complex.elements, table)
    return GBBuilding(n, p, cosets, building, complex)


def iso_to_flag(coset: BorelCoset) -> Flag:
    """The flag of leading column spans of the coset representative."""
    cols = [coset.rep.column(j) for j in range(coset.n)]
    chain = [
        Subspace.from_vectors(cols[: j + 1], coset.n, coset.p)
        for j in range(coset.n - 1)
    ]
    return Flag(tuple(chain))


def flag_isomorphism(gb: GBBuilding, fb: FlagBuilding) -> list[int]:
    """The chamber map coset -> flag, as a list over coset indices."""
    if (gb.n, gb.p) != (fb.n, fb.p):
        raise ValueError("buildings over different spaces")
    return [fb.index[iso_to_flag(c)] for c in gb.cosets]


def _closure(gens: list[FpMatrix], limit: int) -> set[FpMatrix]:
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                x = a @ g
                if x not in seen:
                    if len(seen) >= limit:
                        raise ValueError("closure exceeded the expected group order")
                    seen.add(x)
                    new.append(x)
        frontier = new
    return seen


def check_bn_axioms(n: int, p: int) -> "Report":
    """Exhaustively verify the four double-coset axioms for GL_n(GF(p)).

    BN0: B and N generate the group; BN1: T = B cap N is normal in N with
    N/T the symmetric group; BN2: BsB * BwB lands in BwB with BswB; BN3:
    sBs differs from B.  Feasible for n <= 3 and p <= 3.
    """
    from .core import Report

    _guard(n, p)
    G = general_linear_group(n, p)
    B = borel_subgroup(n, p)
    N = monomial_subgroup(n, p)
    T = diagonal_subgroup(n, p)
    checks: dict[str, bool] = {}
    details: list[dict] = []

    gen = sorted(set(B) | set(N), key=lambda m: m.entries)
    closed = _closure(gen, limit=len(G))
    checks["BN0"] = closed == set(G)

    t_set = set(T)
    checks["T=B&N"] = t_set == set(B) & set(N)
    normal = all((x @ t) @ x.inverse() in t_set for x in N for t in T)
    checks["BN1-normal"] = normal

    def monomial_perm(m: FpMatrix) -> tuple[int, ...]:
        return tuple(
            next(i + 1 for i in range(n) if m.entries[i][j] != 0) for j in range(n)
        )

    # N/T is the symmetric group: the pattern map is a homomorphism onto
    # S_n with kernel exactly T
    perms = {}
    hom = True
    for x in N:
        perms.setdefault(monomial_perm(x), []).append(x)
    for x in N:
        for y in N:
            px, py = monomial_perm(x), monomial_perm(y)
            composed = tuple(px[py[j] - 1] for j in range(n))
            if monomial_perm(x @ y) != composed:
                hom = False
    kernel_ok = set(perms.get(tuple(range(1, n + 1)), ())) == t_set
    checks["BN1-weyl"] = hom and kernel_ok and len(perms) == len(list(permutations(range(n))))

    cells = bruhat_cells(n, p)
    cell_of = {}
    for w, ms in cells.items():
        for m in ms:
            cell_of[m] = w
    gens_w = []
    identity_perm = tuple(range(1, n + 1))
    for pos in range(n - 1):
        gens_w.append(
            identity_perm[:pos] + (pos + 2, pos + 1) + identity_perm[pos + 2 :]
        )
    bn2 = True
    products = 0
    for s in gens_w:
        for w, ms in cells.items():
            sw = tuple(s[w[j] - 1] for j in range(n))
            allowed = {w, sw}
            for x in cells[s]:
                for y in ms:
                    products += 1
                    if cell_of[x @ y] not in allowed:
                        bn2 = False
                        details.append({"axiom": "BN2", "s": list(s), "w": list(w)})
    checks["BN2"] = bn2

    bn3 = True
    for s in gens_w:
        s_mat = permutation_matrix(s, p)
        if all((s_mat @ b) @ s_mat in set(B) for b in B):
            bn3 = False
            details.append({"axiom": "BN3", "s": list(s)})
    checks["BN3"] = bn3

    return Report(
        axiom="BN",
        passed=all(checks.values()),
        counts={
            "group_order": len(G),
            "borel_order": len(B),
            "monomial_order": len(N),
            "torus_order": len(T),
            "bn2_products": products,
            "checks": checks,
        },
        violations=details,
    )
