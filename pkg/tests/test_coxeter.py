"""Coxeter systems: enumeration, canonical words, braid closure.

Dihedral groups get an independent model (symmetries of an m-gon acting
on vertex labels) and the chain systems get the symmetric group, so every
canonical-form claim is cross-checked against arithmetic that never
touches the word machinery.
"""

from itertools import product

import pytest

from buildings.coxeter import (
    CoxeterMatrix,
    canonical,
    canonical_word,
    cayley_graph,
    cycle_notation,
    enumerate_group,
    inversions,
    is_reduced,
    permutation_to_word,
    reduced_words,
    symbol_to_matrix,
    type_a_permutation,
    words_equal,
)

A2 = CoxeterMatrix.type_a(2)
A3 = CoxeterMatrix.type_a(3)
B2 = CoxeterMatrix.dihedral(4)
G2 = CoxeterMatrix.dihedral(6)
INF = CoxeterMatrix.dihedral(None)
H3 = CoxeterMatrix.from_orders([[1, 3, 2], [3, 1, 5], [2, 5, 1]])


def dihedral_action(m: int):
    """The reflections v -> -v and v -> 2 - v on Z/2m generate a faithful
    copy of the dihedral group of order 2m; their product is the rotation
    v -> v + 2 of order m.  (Acting on 2m points keeps m = 2 faithful.)"""

    mm = 2 * m

    def apply(word, v):
        for i in reversed(word):
            v = (-v) % mm if i == 0 else (2 - v) % mm
        return v

    def value(word):
        return tuple(apply(word, v) for v in range(mm))

    return value


class TestSymbols:
    def test_single_edge(self):
        cm = symbol_to_matrix([(0, 1)])
        assert cm.order(0, 1) == 3

    def test_infinite_edge(self):
        cm = symbol_to_matrix([(0, 1, None)])
        assert cm.order(0, 1) is None

    def test_labelled_path(self):
        cm = symbol_to_matrix([(0, 1), (1, 2, 5)])
        assert cm.order(0, 1) == 3
        assert cm.order(1, 2) == 5
        assert cm.order(0, 2) == 2
        assert cm == H3

    @pytest.mark.parametrize("label", [1, 2, 3])
    def test_forbidden_labels(self, label):
        with pytest.raises(ValueError):
            symbol_to_matrix([(0, 1, label)])

    def test_loops_rejected(self):
        with pytest.raises(ValueError):
            symbol_to_matrix([(1, 1)])

    def test_matrix_validation(self):
        with pytest.raises(ValueError):
            CoxeterMatrix.from_orders([[1, 3], [2, 1]])
        with pytest.raises(ValueError):
            CoxeterMatrix.from_orders([[2, 3], [3, 1]])


class TestWordProblem:
    def test_braid_equality(self):
        assert words_equal((0, 1, 0), (1, 0, 1), A2)

    def test_involution(self):
        assert words_equal((0, 0), (), A2)

    def test_infinite_dihedral_distinct(self):
        assert not words_equal((0, 1), (1, 0), INF)

    def test_canonical_cancellation(self):
        assert canonical((0, 0, 1), A2).word == (1,)

    def test_canonical_prefers_shortlex(self):
        assert canonical((1, 0, 1), A2).word == (0, 1, 0)

    def test_canonical_empty(self):
        assert canonical((), A2).is_identity()

    def test_is_reduced(self):
        assert is_reduced((0, 1, 0), A2)
        assert not is_reduced((0, 0), A2)
        assert not is_reduced((0, 1, 0, 1), A2)
        assert len(canonical_word((0, 1, 0, 1), A2)) == 2

    def test_infinite_dihedral_canonical(self):
        assert canonical_word((0, 0, 1, 1, 0), INF) == (0,)
        assert canonical_word((0, 1, 0, 1), INF) == (0, 1, 0, 1)

    @pytest.mark.parametrize("m", [2, 3, 4, 6])
    def test_canonical_matches_dihedral_model(self, m):
        """ShortLex-least among the model's minimal spellings, brute force."""
        cm = CoxeterMatrix.dihedral(m)
        value = dihedral_action(m)
        best: dict[tuple, tuple] = {}
        for length in range(0, 2 * m + 1):
            for word in product((0, 1), repeat=length):
                v = value(word)
                if v not in best:
                    best[v] = word
        for length in range(0, 6):
            for word in product((0, 1), repeat=length):
                assert canonical_word(word, cm) == best[value(word)]

    def test_out_of_range_letter(self):
        with pytest.raises(ValueError):
            canonical_word((2,), A2)


class TestEnumeration:
    @pytest.mark.parametrize(
        "cm,order",
        [(A2, 6), (A3, 24), (B2, 8), (G2, 12), (CoxeterMatrix.dihedral(2), 4), (H3, 120)],
    )
    def test_orders(self, cm, order):
        assert enumerate_group(cm).size == order

    def test_h3_coset_count(self):
        """|W| factors as (number of parabolic residues) x (residue size)."""
        g = enumerate_group(H3)
        # residues over the generators {1, 2}: orbits under right
        # multiplication by s_1, s_2
        seen = set()
        residues = []
        for start in range(g.size):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                cur = stack.pop()
                for i in (1, 2):
                    nxt = g.succ[cur][i]
                    if nxt not in comp:
                        comp.add(nxt)
                        stack.append(nxt)
            seen |= comp
            residues.append(len(comp))
        assert set(residues) == {10} and len(residues) == 12
        assert g.size == 12 * 10

    def test_more_known_orders(self):
        b3 = symbol_to_matrix([(0, 1, 4), (1, 2)])
        assert enumerate_group(b3).size == 48
        f4 = symbol_to_matrix([(0, 1), (1, 2, 4), (2, 3)])
        assert enumerate_group(f4, cap=2000).size == 1152
        a2xa1 = CoxeterMatrix.from_orders([[1, 3, 2], [3, 1, 2], [2, 2, 1]])
        assert enumerate_group(a2xa1).size == 12

    def test_cap_exceeded(self):
        with pytest.raises(ValueError, match="cap"):
            enumerate_group(INF, cap=100)

    def test_affine_triangle_is_infinite(self):
        aff = symbol_to_matrix([(0, 1), (1, 2), (0, 2)])
        with pytest.raises(ValueError, match="cap"):
            enumerate_group(aff, cap=500)

    def test_identity_first_and_shortlex_sorted(self):
        g = enumerate_group(A3)
        assert g.words[0] == ()
        keys = [(len(w), w) for w in g.words]
        assert keys == sorted(keys)

    def test_succ_involutive(self):
        for cm in (A2, A3, B2, G2, H3):
            g = enumerate_group(cm)
            for a in range(g.size):
                for i in range(cm.size):
                    assert g.succ[g.succ[a][i]][i] == a
                    assert g.succ[a][i] != a

    def test_words_are_walkable(self):
        g = enumerate_group(A3)
        for k, w in enumerate(g.words):
            assert g.walk(w) == k

    def test_cap_boundary_is_exact(self):
        with pytest.raises(ValueError):
            enumerate_group(A2, cap=5)
        assert enumerate_group(A2, cap=6).size == 6


class TestTypeAPermutations:
    def test_longest_element(self):
        assert type_a_permutation((0, 1, 0), 2) == (3, 2, 1)
        assert cycle_notation((3, 2, 1)) == "(1,3)"

    def test_identity(self):
        assert type_a_permutation((), 2) == (1, 2, 3)
        assert cycle_notation((1, 2, 3)) == "e"

    def test_right_to_left_composition(self):
        # (1,2) after (2,3): 1 -> 2, 2 -> 3, 3 -> 1
        assert type_a_permutation((0, 1), 2) == (2, 3, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            type_a_permutation((2,), 2)

    @pytest.mark.parametrize("cm,n", [(A2, 2), (A3, 3)])
    def test_words_equal_iff_permutations_equal(self, cm, n):
        for length in range(7):
            for word in product(range(n), repeat=length):
                c = canonical_word(word, cm)
                assert type_a_permutation(word, n) == type_a_permutation(c, n)

    def test_group_is_symmetric_group(self):
        g = enumerate_group(A3)
        perms = {type_a_permutation(w, 3) for w in g.words}
        assert len(perms) == 24

    def test_length_is_inversion_number(self):
        g = enumerate_group(A3)
        for w in g.words:
            assert len(w) == inversions(type_a_permutation(w, 3))

    def test_permutation_to_word_roundtrip(self):
        from itertools import permutations

        for perm in permutations(range(1, 5)):
            word = permutation_to_word(perm)
            assert type_a_permutation(word, 3) == perm
            assert len(word) == inversions(perm)
            assert is_reduced(word, A3)

    def test_permutation_to_word_rejects_garbage(self):
        with pytest.raises(ValueError):
            permutation_to_word((1, 1, 2))


class TestReducedWords:
    @pytest.mark.parametrize("m", [3, 4, 6])
    def test_braid_closure_is_matsumoto_complete(self, m):
        """All minimal spellings of an element are braid-connected."""
        cm = CoxeterMatrix.dihedral(m)
        value = dihedral_action(m)
        by_value: dict[tuple, list] = {}
        for length in range(0, m + 1):
            for word in product((0, 1), repeat=length):
                by_value.setdefault(value(word), []).append(word)
        g = enumerate_group(cm)
        for w in g.words:
            spellings = {
                word for word in by_value[value(w)] if len(word) == len(w)
            }
            assert reduced_words(w, cm) == spellings

    def test_a2_closure(self):
        assert reduced_words((0, 1, 0), A2) == {(0, 1, 0), (1, 0, 1)}

    def test_requires_reduced_input(self):
        with pytest.raises(ValueError):
            reduced_words((0, 0), A2)

    def test_longest_a3_element_has_sixteen(self):
        w0 = max(enumerate_group(A3).words, key=len)
        assert len(reduced_words(w0, A3)) == 16


class TestElementAlgebra:
    def test_group_laws_on_a3(self):
        g = cayley_graph(A3)
        els = g.elements
        for a in els:
            assert (a * a.inverse()).is_identity()
        e = els[0]
        assert all((e * a).word == a.word for a in els)

    def test_mixed_systems_rejected(self):
        a = canonical((0,), A2)
        b = canonical((0,), B2)
        with pytest.raises(ValueError):
            a * b

    def test_str(self):
        assert str(canonical((), A2)) == "e"
        assert str(canonical((0, 1), A2)) == "s0 s1"
