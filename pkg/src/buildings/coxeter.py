"""Coxeter systems: matrices, words, canonical forms and group enumeration.

Elements are represented by their ShortLex-least reduced word.  Finite
groups are enumerated level by level from the identity; when a new element
is created, every dihedral relation (s_i s_j)^m = 1 through it is closed
immediately, which both identifies coincidences and records the full
successor table.  Canonical forms then come from walking that table, so
the word problem costs O(word length) after a one-off enumeration.

The two-generator system with m = infinity needs no enumeration at all:
its elements are exactly the alternating words, and free cancellation of
adjacent equal letters computes the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Word = tuple[int, ...]

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class CoxeterMatrix:
    """The symmetric order table m[i][j]; None encodes an infinite order.

    m[i][j] = 1 exactly on the diagonal (the generators are involutions),
    and every off-diagonal entry is at least 2.
    """

    m: tuple[tuple[int | None, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.m)
        for i in range(k):
            if len(self.m[i]) != k:
                raise ValueError("Coxeter matrix is not square")
            for j in range(k):
                mij = self.m[i][j]
                if mij != self.m[j][i]:
                    raise ValueError("Coxeter matrix is not symmetric")
                if i == j and mij != 1:
                    raise ValueError("diagonal entries must equal 1")
                if i != j and mij is not None and mij < 2:
                    raise ValueError("off-diagonal entries must be >= 2 or infinite")

    @property
    def size(self) -> int:
        return len(self.m)

    def order(self, i: int, j: int) -> int | None:
        return self.m[i][j]

    @classmethod
    def from_orders(cls, rows: Sequence[Sequence[int | None]]) -> "CoxeterMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def type_a(cls, n: int) -> "CoxeterMatrix":
        """The chain with n generators: adjacent orders 3, distant orders 2."""
        if n < 1:
            raise ValueError("type A needs at least one generator")
        return cls.from_orders(
            [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def type_c(cls, n: int) -> "CoxeterMatrix":
        """The chain with n generators whose last edge has order 4."""
        if n < 1:
            raise ValueError("type C needs at least one generator")
        rows = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
        if n >= 2:
            rows[n - 2][n - 1] = rows[n - 1][n - 2] = 4
        return cls.from_orders(rows)

    @classmethod
    def dihedral(cls, m: int | None) -> "CoxeterMatrix":
        """Two generators with product order m (None for the infinite one)."""
        if m is not None and m < 2:
            raise ValueError("dihedral order must be >= 2 or infinite")
        return cls.from_orders([[1, m], [m, 1]])

    def is_infinite_dihedral(self) -> bool:
        return self.size == 2 and self.m[0][1] is None


def symbol_to_matrix(edges: Iterable[tuple], size: int | None = None) -> CoxeterMatrix:
    """Build a Coxeter matrix from symbol edges.

    Each edge is (i, j) for an unlabeled edge (order 3) or (i, j, label)
    with label >= 4 or None for infinity.  Absent pairs get order 2.
    Labels 1, 2 and 3 violate the symbol convention and are rejected.
    """
    parsed: dict[frozenset[int], int | None] = {}
    top = -1
    for edge in edges:
        if len(edge) == 2:
            i, j = edge
            label: int | None = 3
        elif len(edge) == 3:
            i, j, label = edge
            if label is not None and label < 4:
                raise ValueError(
                    f"symbol label {label} is not allowed: orders 2 and 3 are encoded "
                    "by absent and unlabeled edges"
                )
        else:
            raise ValueError(f"bad symbol edge {edge!r}")
        if i == j:
            raise ValueError("symbol edges must join distinct nodes")
        if i < 0 or j < 0:
            raise ValueError("symbol nodes must be non-negative")
        key = frozenset((i, j))
        if key in parsed and parsed[key] != label:
            raise ValueError(f"conflicting labels for edge {tuple(sorted(key))}")
        parsed[key] = label
        top = max(top, i, j)
    if size is None:
        size = top + 1
    if size <= top:
        raise ValueError("size smaller than the largest node index")
    rows: list[list[int | None]] = [
        [1 if i == j else 2 for j in range(size)] for i in range(size)
    ]
    for key, label in parsed.items():
        i, j = sorted(key)
        rows[i][j] = rows[j][i] = label
    return CoxeterMatrix.from_orders(rows)


@dataclass(frozen=True)
class CoxeterElement:
    """A group element, carried by its ShortLex-least reduced word."""

    word: Word
    cm: CoxeterMatrix

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        if self.cm != other.cm:
            raise ValueError("elements of different Coxeter systems")
        return canonical(self.word + other.word, self.cm)

    def inverse(self) -> "CoxeterElement":
        return canonical(tuple(reversed(self.word)), self.cm)

    def __str__(self) -> str:
        if not self.word:
            return "e"
        return " ".join(f"s{i}" for i in self.word)


def shortlex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


class CayleyGraph:
    """An enumerated Coxeter group with its generator successor table.

    `words[k]` is the canonical word of element k (index 0 is the identity,
    elements sorted ShortLex) and `succ[k][i]` is the index of element
    k * s_i.
    """

    def __init__(self, cm: CoxeterMatrix, words: list[Word], succ: list[list[int]]):
        self.cm = cm
        self.words: tuple[Word, ...] = tuple(words)
        self.succ: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in succ)
        self.index: dict[Word, int] = {w: k for k, w in enumerate(self.words)}
        self._elements: tuple[CoxeterElement, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def elements(self) -> tuple[CoxeterElement, ...]:
        if self._elements is None:
            self._elements = tuple(CoxeterElement(w, self.cm) for w in self.words)
        return self._elements

    def walk(self, word: Iterable[int], start: int = 0) -> int:
        """Index of start * s_{i_1} * ... * s_{i_k}."""
        k = start
        for i in word:
            k = self.succ[k][i]
        return k

    def multiply(self, a: int, b: int) -> int:
        return self.walk(self.words[b], start=a)

    def inverse_index(self, a: int) -> int:
        return self.walk(reversed(self.words[a]))

    def delta(self, a: int, b: int) -> int:
        """Index of a^-1 * b."""
        return self.walk(self.words[b], start=self.inverse_index(a))

    def length(self, a: int) -> int:
        return len(self.words[a])


def _close_dihedral(
    cm: CoxeterMatrix,
    succ: list[list[int | None]],
    level: list[int],
    gi: int,
    i: int,
) -> tuple[int | None, list[tuple[int, int]]]:
    """Find the element g*s_i among already-created ones, if it exists.

    For each colour j the walk descends from g inside the {i,j} residue.
    If g*s_i tops off that 2m-gon, the element one step below the top on
    the far side already exists; the link from it identifies g*s_i.
    Returns (existing index or None, links (y, t) with y*s_t = g*s_i).
    """
    found: int | None = None
    links: list[tuple[int, int]] = []
    k = cm.size
    for j in range(k):
        if j == i:
            continue
        m = cm.order(i, j)
        if m is None:
            continue
        z = gi
        d = 0
        letters = (j, i)
        while True:
            t = letters[d % 2]
            nz = succ[z][t]
            if nz is not None and level[nz] < level[z]:
                z = nz
                d += 1
            else:
                break
        if d + 1 > m:
            raise AssertionError("dihedral residue deeper than its relation order")
        if d + 1 == m:
            # ascend the far side of the 2m-gon for m-1 steps
            y = z
            for s in range(1, m):
                b = j if (m - s) % 2 == 0 else i
                ny = succ[y][b]
                if ny is None:
                    raise AssertionError("incomplete successor table during closure")
                y = ny
            links.append((y, j))
            if succ[y][j] is not None:
                if found is not None and found != succ[y][j]:
                    raise AssertionError("inconsistent dihedral identifications")
                found = succ[y][j]
    return found, links


def enumerate_group(cm: CoxeterMatrix, cap: int = DEFAULT_CAP) -> CayleyGraph:
    """Enumerate the group by BFS from the identity.

    Raises ValueError when more than `cap` elements are created, which
    signals an infinite or too-large group.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    k = cm.size
    words: list[Word] = [()]
    level: list[int] = [0]
    succ: list[list[int | None]] = [[None] * k]
    frontier = [0]
    while frontier:
        next_frontier: list[int] = []
        # processing order is ShortLex within the level, generators ascending:
        # the first spelling that creates an element is its canonical word
        for gi in sorted(frontier, key=lambda x: words[x]):
            for i in range(k):
                if succ[gi][i] is not None:
                    continue
                found, links = _close_dihedral(cm, succ, level, gi, i)
                if found is None:
                    found = len(words)
                    if found >= cap:
                        raise ValueError(
                            f"group enumeration exceeded cap={cap}; "
                            "the group is infinite or too large"
                        )
                    words.append(words[gi] + (i,))
                    level.append(level[gi] + 1)
                    succ.append([None] * k)
                    next_frontier.append(found)
                succ[gi][i] = found
                succ[found][i] = gi
                for y, t in links:
                    if succ[y][t] is None:
                        succ[y][t] = found
                        succ[found][t] = y
                    elif succ[y][t] != found:
                        raise AssertionError("conflicting successor links")
        frontier = next_frontier
    order = sorted(range(len(words)), key=lambda x: shortlex_key(words[x]))
    rank = {old: new for new, old in enumerate(order)}
    out_words = [words[o] for o in order]
    out_succ = [[rank[succ[o][i]] for i in range(k)] for o in order]
    return CayleyGraph(cm, out_words, out_succ)


@lru_cache(maxsize=None)
def cayley_graph(cm: CoxeterMatrix, cap: int = DEFAULT_CAP) -> CayleyGraph:
    """Memoised group enumeration (the graph is immutable once built)."""
    return enumerate_group(cm, cap)


def _free_cancel(word: Word) -> Word:
    out: list[int] = []
    for i in word:
        if out and out[-1] == i:
            out.pop()
        else:
            out.append(i)
    return tuple(out)


def canonical_word(word: Sequence[int], cm: CoxeterMatrix, cap: int = DEFAULT_CAP) -> Word:
    """The ShortLex-least reduced word of the element spelt by `word`."""
    w = tuple(word)
    for i in w:
        if not 0 <= i < cm.size:
            raise ValueError(f"generator index {i} out of range")
    if cm.is_infinite_dihedral():
        # free product of two involutions: cancellation alone is confluent
        return _free_cancel(w)
    g = cayley_graph(cm, cap)
    return g.words[g.walk(w)]


def canonical(word: Sequence[int], cm: CoxeterMatrix, cap: int = DEFAULT_CAP) -> CoxeterElement:
    return CoxeterElement(canonical_word(word, cm, cap), cm)


def identity(cm: CoxeterMatrix) -> CoxeterElement:
    return CoxeterElement((), cm)


def generator(cm: CoxeterMatrix, i: int) -> CoxeterElement:
    if not 0 <= i < cm.size:
        raise ValueError(f"generator index {i} out of range")
    return CoxeterElement((i,), cm)


def words_equal(w1: Sequence[int], w2: Sequence[int], cm: CoxeterMatrix) -> bool:
    return canonical_word(w1, cm) == canonical_word(w2, cm)


def is_reduced(word: Sequence[int], cm: CoxeterMatrix) -> bool:
    return len(canonical_word(word, cm)) == len(word)


def _alternating(i: int, j: int, m: int) -> Word:
    return tuple(i if t % 2 == 0 else j for t in range(m))


def reduced_words(word: Sequence[int], cm: CoxeterMatrix) -> frozenset[Word]:
    """All reduced words of the element, by closing under braid moves.

    The input must be reduced; braid moves preserve length, and any two
    reduced words of one element are connected by them.
    """
    w = tuple(word)
    if not is_reduced(w, cm):
        raise ValueError("reduced_words needs a reduced input word")
    seen = {w}
    queue = [w]
    while queue:
        cur = queue.pop()
        for s in range(len(cur)):
            i = cur[s]
            for j in range(cm.size):
                if j == i:
                    continue
                m = cm.order(i, j)
                if m is None or s + m > len(cur):
                    continue
                if cur[s : s + m] == _alternating(i, j, m):
                    new = cur[:s] + _alternating(j, i, m) + cur[s + m :]
                    if new not in seen:
                        seen.add(new)
                        queue.append(new)
    return frozenset(seen)


def type_a_permutation(word: Sequence[int], n: int) -> tuple[int, ...]:
    """The permutation of {1..n+1} spelt by a word in the chain system.

    Generator i (0-based) is the transposition of i+1 and i+2; letters are
    composed right to left, acting on the left.  The result maps position
    x (1-based) to perm[x-1].
    """
    perm = list(range(1, n + 2))
    for i in word:
        if not 0 <= i < n:
            raise ValueError(f"generator index {i} out of range for n={n}")
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def permutation_to_word(perm: Sequence[int]) -> Word:
    """A reduced word for a permutation given as a tuple of 1-based images.

    Peels descents from the right; the result has length equal to the
    inversion number and spells the permutation under type_a_permutation.
    """
    p = list(perm)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {perm!r}")
    letters: list[int] = []
    done = False
    while not done:
        done = True
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                letters.append(i)
                done = False
                break
    return tuple(reversed(letters))


def inversions(perm: Sequence[int]) -> int:
    return sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )


def cycle_notation(perm: Sequence[int]) -> str:
    """Cycle notation with fixed points suppressed; identity prints as e."""
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start] - 1
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt] - 1
        if len(cyc) > 1:
            parts.append("(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) if parts else "e"
