"""Exact linear algebra over prime fields GF(p).

Everything here is immutable and hashable.  A matrix is a tuple of tuples
of residues together with its modulus; a subspace is identified with its
reduced row echelon basis (zero rows removed), so two equal subspaces
compare and hash equal.  All operations are pure functions, safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

# Refuse enumerations once the ambient vector count p**n passes this bound.
ENUMERATION_GUARD = 2**20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def inverse_mod(v: int, p: int) -> int:
    """Multiplicative inverse of v modulo the prime p."""
    v %= p
    if v == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(v, p - 2, p)


@dataclass(frozen=True)
class FpScalar:
    """A validated residue in GF(p)."""

    value: int
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        if not 0 <= self.value < self.p:
            raise ValueError(f"residue {self.value} out of range for GF({self.p})")

    def _check(self, other: "FpScalar") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} != {other.p}")

    def __add__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value - other.value) % self.p, self.p)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value * other.value) % self.p, self.p)

    def __neg__(self) -> "FpScalar":
        return FpScalar((-self.value) % self.p, self.p)

    def inverse(self) -> "FpScalar":
        return FpScalar(inverse_mod(self.value, self.p), self.p)


@dataclass(frozen=True)
class FpMatrix:
    """A dense matrix over GF(p) with entries stored row-major.

    `cols` is kept explicitly so that matrices with zero rows (empty bases)
    still know their width.
    """

    entries: tuple[tuple[int, ...], ...]
    p: int
    cols: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged or mis-sized matrix rows")
            for e in row:
                if not 0 <= e < self.p:
                    raise ValueError(f"entry {e} not reduced mod {self.p}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "FpMatrix":
        rows = [tuple(e % p for e in row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        return cls(tuple(rows), p, cols)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), p, n)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)), p, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def scalar(self, i: int, j: int) -> FpScalar:
        return FpScalar(self.entries[i][j], self.p)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "FpMatrix":
        if not self.entries:
            return FpMatrix(tuple(() for _ in range(self.cols)), self.p, 0)
        return FpMatrix(tuple(zip(*self.entries)), self.p, self.rows)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} != {other.p}")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.p
        cols = list(zip(*other.entries))
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
            for row in self.entries
        )
        return FpMatrix(out, p, other.cols)

    def vstack(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p or self.cols != other.cols:
            raise ValueError("vstack requires equal width and modulus")
        return FpMatrix(self.entries + other.entries, self.p, self.cols)

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "FpMatrix":
        """Inverse via row reduction of the augmented matrix."""
        n = self.rows
        if n != self.cols:
            raise ValueError("only square matrices can be inverted")
        aug = FpMatrix.from_rows(
            [self.entries[i] + FpMatrix.identity(n, self.p).entries[i] for i in range(n)],
            self.p,
        )
        red, rank = rref(aug)
        if rank < n or any(red.entries[i][i] != 1 for i in range(n)):
            raise ValueError("matrix is singular")
        return FpMatrix(tuple(row[n:] for row in red.entries), self.p, n)

    def __str__(self) -> str:
        return ";".join(",".join(str(e) for e in row) for row in self.entries)


def rref(m: FpMatrix) -> tuple[FpMatrix, int]:
    """Reduced row echelon form and rank.

    Deterministic Gauss-Jordan elimination: pivots are normalised to 1 and
    cleared above and below, pivot columns strictly increase.
    """
    p = m.p
    rows = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = inverse_mod(rows[pivot_row][col], p)
        rows[pivot_row] = [(e * inv) % p for e in rows[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return FpMatrix.from_rows(rows, p, ncols), pivot_row


def nullspace(m: FpMatrix) -> FpMatrix:
    """A canonical (RREF) basis of the right kernel {x : m @ x = 0}."""
    red, rank = rref(m)
    pivots: list[int] = []
    for r in range(rank):
        pivots.append(next(c for c in range(m.cols) if red.entries[r][c] != 0))
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * m.cols
        vec[f] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-red.entries[r][f]) % m.p
        basis.append(vec)
    if not basis:
        return FpMatrix((), m.p, m.cols)
    return rref(FpMatrix.from_rows(basis, m.p, m.cols))[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^n, carried by its canonical RREF basis."""

    n: int
    basis: FpMatrix
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.basis.p != self.p or self.basis.cols != self.n:
            raise ValueError("basis shape or modulus disagrees with the subspace")
        red, rank = rref(self.basis)
        if rank != self.basis.rows or red.entries != self.basis.entries:
            raise ValueError("basis is not a reduced row echelon basis without zero rows")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], n: int, p: int) -> "Subspace":
        rows = [tuple(v % p for v in vec) for vec in vectors]
        red, rank = rref(FpMatrix.from_rows(rows, p, n) if rows else FpMatrix((), p, n))
        return cls(n, FpMatrix(red.entries[:rank], p, n), p)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(n, FpMatrix((), p, n), p)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(n, FpMatrix.identity(n, p), p)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All p**dim vectors, in lexicographic coefficient order."""
        for coeffs in product(range(self.p), repeat=self.dim):
            vec = [0] * self.n
            for c, row in zip(coeffs, self.basis.entries):
                if c:
                    vec = [(a + c * b) % self.p for a, b in zip(vec, row)]
            yield tuple(vec)

    def contains_vector(self, v: Sequence[int]) -> bool:
        stacked = self.basis.entries + (tuple(x % self.p for x in v),)
        return rref(FpMatrix(stacked, self.p, self.n))[1] == self.dim

    def __str__(self) -> str:
        if self.dim == 0:
            return "<0>"
        return "<" + ",".join("".join(str(e) for e in row) for row in self.basis.entries) + ">"


def _check_pair(u: Subspace, w: Subspace) -> None:
    if u.n != w.n or u.p != w.p:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    """Smallest subspace containing both u and w."""
    _check_pair(u, w)
    return Subspace.from_vectors(u.basis.entries + w.basis.entries, u.n, u.p)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Largest common subspace of u and w.

    Computed from the kernel of the stacked-basis system: a kernel vector
    (lam, mu) of [A; B]^T satisfies lam*A = -mu*B, and those products span
    the intersection.
    """
    _check_pair(u, w)
    a, b = u.basis, w.basis
    if a.rows == 0 or b.rows == 0:
        return Subspace.zero(u.n, u.p)
    stacked = a.vstack(b)
    kern = nullspace(stacked.transpose())
    vecs = []
    for z in kern.entries:
        lam = z[: a.rows]
        vec = [0] * u.n
        for c, row in zip(lam, a.entries):
            if c:
                vec = [(x + c * y) % u.p for x, y in zip(vec, row)]
        vecs.append(vec)
    return Subspace.from_vectors(vecs, u.n, u.p)


def contains(u: Subspace, w: Subspace) -> bool:
    """True iff w is a subspace of u."""
    _check_pair(u, w)
    stacked = u.basis.entries + w.basis.entries
    return rref(FpMatrix(stacked, u.p, u.n))[1] == u.dim


def enumerate_subspaces(n: int, k: int, p: int) -> list[Subspace]:
    """All k-dimensional subspaces of GF(p)^n, each exactly once.

    Ordered lexicographically on the RREF basis grids so every downstream
    enumeration that indexes into this list is deterministic.
    """
    check_prime(p)
    if not 0 <= k <= n:
        raise ValueError(f"dimension {k} out of range for ambient dimension {n}")
    if p**n > ENUMERATION_GUARD:
        raise ValueError(f"enumeration guard exceeded: {p}**{n} > {ENUMERATION_GUARD}")
    if k == 0:
        return [Subspace.zero(n, p)]
    grids = []
    for pivots in combinations(range(n), k):
        free_slots = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for fill in product(range(p), repeat=len(free_slots)):
            grid = [[0] * n for _ in range(k)]
            for r, c in zip(range(k), pivots):
                grid[r][c] = 1
            for (r, c), v in zip(free_slots, fill):
                grid[r][c] = v
            grids.append(tuple(tuple(row) for row in grid))
    grids.sort()
    return [Subspace(n, FpMatrix(g, p, n), p) for g in grids]
