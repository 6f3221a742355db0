"""Sign-vector chambers and panels of the braid arrangement.

The hyperplanes are x_i - x_j = 0 for i < j.  Chambers of the arrangement
are exactly the orderings of the coordinates, so sign vectors are computed
combinatorially from orderings rather than from real geometry.  Hyperplanes
are indexed with the adjacent pairs (1,2), (2,3), ... first and wider pairs
after, so for n = 3 the tuple positions read (1,2), (2,3), (1,3).
"""

from __future__ import annotations

from itertools import combinations, permutations

from .chamber_system import ChamberSystem
from .coxeter import type_a_permutation

SignVector = tuple[str, ...]

PLUS, MINUS, ZERO = "+", "-", "0"


def hyperplanes(n: int) -> tuple[tuple[int, int], ...]:
    """The index pairs (i, j), i < j, adjacent differences first."""
    pairs = [(i, j) for i, j in combinations(range(1, n + 1), 2)]
    pairs.sort(key=lambda ij: (ij[1] - ij[0], ij[0]))
    return tuple(pairs)


def _check_n(n: int) -> None:
    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6")


def _sign_of_ordering(ordering: tuple[int, ...], planes) -> SignVector:
    # ordering lists the coordinate indices from largest value to smallest
    rank = {coord: len(ordering) - pos for pos, coord in enumerate(ordering)}
    out = []
    for i, j in planes:
        out.append(PLUS if rank[i] > rank[j] else MINUS)
    return tuple(out)


def braid_chambers(n: int) -> list[SignVector]:
    """The realizable all-non-zero sign vectors, one per coordinate ordering."""
    _check_n(n)
    planes = hyperplanes(n)
    vectors = {
        _sign_of_ordering(ordering, planes)
        for ordering in permutations(range(1, n + 1))
    }
    return sorted(vectors)


def braid_panels(n: int) -> list[SignVector]:
    """The realizable one-zero sign vectors.

    A panel comes from a point with exactly one coordinate equality, i.e.
    an ordering of n-1 values with one merged pair.
    """
    _check_n(n)
    planes = hyperplanes(n)
    out: set[SignVector] = set()
    for a, b in combinations(range(1, n + 1), 2):
        rest = [c for c in range(1, n + 1) if c not in (a, b)]
        for ordering in permutations(rest + [a]):
            # coordinate b takes exactly the value of a
            rank = {coord: len(ordering) - pos for pos, coord in enumerate(ordering)}
            rank[b] = rank[a]
            vec = []
            for i, j in planes:
                if rank[i] == rank[j]:
                    vec.append(ZERO)
                else:
                    vec.append(PLUS if rank[i] > rank[j] else MINUS)
            if vec.count(ZERO) == 1:
                out.add(tuple(vec))
    return sorted(out)


def is_panel_of(panel: SignVector, chamber: SignVector) -> bool:
    """Tuples identical except one position where the panel is zero."""
    diff = [k for k in range(len(panel)) if panel[k] != chamber[k]]
    return len(diff) == 1 and panel[diff[0]] == ZERO


def chambers_adjacent(a: SignVector, b: SignVector, panels: list[SignVector]) -> bool:
    if a == b:
        return False
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diff) != 1:
        return False
    shared = a[: diff[0]] + (ZERO,) + a[diff[0] + 1 :]
    return shared in panels


def base_ordering(n: int) -> tuple[int, ...]:
    """The fundamental chamber: x_1 > x_2 > ... > x_n."""
    return tuple(range(1, n + 1))


def act(perm: tuple[int, ...], ordering: tuple[int, ...]) -> tuple[int, ...]:
    """The coordinate permutation applied to an ordering (a left action)."""
    return tuple(perm[c - 1] for c in ordering)


def braid_chamber_system(n: int) -> ChamberSystem:
    """The chambers with colours 1..n-1 given by adjacent transposition moves.

    Chamber indices follow the sorted sign-vector list; the i-classes pair
    each ordering with the ordering obtained by swapping positions i, i+1.
    """
    _check_n(n)
    planes = hyperplanes(n)
    chambers = braid_chambers(n)
    index = {v: k for k, v in enumerate(chambers)}
    orderings = {
        _sign_of_ordering(o, planes): o for o in permutations(range(1, n + 1))
    }
    partitions: dict[int, list[tuple[int, ...]]] = {}
    for color in range(1, n):
        classes = set()
        for vec, o in orderings.items():
            swapped = list(o)
            swapped[color - 1], swapped[color] = swapped[color], swapped[color - 1]
            other = _sign_of_ordering(tuple(swapped), planes)
            classes.add(tuple(sorted((index[vec], index[other]))))
        partitions[color] = sorted(classes)
    return ChamberSystem(
        len(chambers),
        tuple(range(1, n)),
        partitions,
        labels=["".join(v) for v in chambers],
    )


def regular_action_check(n: int) -> "Report":
    """Simple transitivity of the coordinate action, and the translation
    description of adjacency: the chambers adjacent to g c0 are exactly the
    (g s) c0 over the adjacent transpositions s, with matching colours."""
    from .core import Report

    _check_n(n)
    planes = hyperplanes(n)
    chambers = braid_chambers(n)
    c0 = base_ordering(n)
    orbit = {}
    violations = []
    for perm in permutations(range(1, n + 1)):
        vec = _sign_of_ordering(act(perm, c0), planes)
        if vec in orbit:
            violations.append({"kind": "stabiliser", "perm": list(perm)})
        orbit[vec] = perm
    transitive = set(orbit) == set(chambers)
    if not transitive:
        violations.append({"kind": "orbit-misses-chambers"})
    panels = braid_panels(n)
    adjacency_ok = True
    for vec, perm in orbit.items():
        translated = set()
        for pos in range(1, n):
            s = type_a_permutation((pos - 1,), n - 1)
            gs = tuple(perm[s[k] - 1] for k in range(n))
            translated.add(_sign_of_ordering(act(gs, c0), planes))
        shared_panel = {
            other for other in chambers if chambers_adjacent(vec, other, panels)
        }
        if translated != shared_panel:
            adjacency_ok = False
            violations.append({"kind": "adjacency", "chamber": "".join(vec)})
    return Report(
        axiom="regular-action",
        passed=transitive and adjacency_ok and not violations,
        counts={"chambers": len(chambers), "group_order": len(orbit)},
        violations=violations[:20],
    )
