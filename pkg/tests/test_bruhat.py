"""Bruhat machinery for GL_n(GF(p)), validated against brute force.

The rank-pattern classifier is checked against literal double-coset
membership (enumerate B a B and find the permutation matrix inside), and
the coset building is checked to be an isometric copy of the flag one.
"""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buildings.bruhat import (
    borel_subgroup,
    bruhat_cells,
    bruhat_permutation,
    build_gb_building,
    cell_sizes,
    check_bn_axioms,
    coset_canonical,
    diagonal_subgroup,
    flag_isomorphism,
    general_linear_group,
    iso_to_flag,
    monomial_subgroup,
    permutation_matrix,
)
from buildings.core import check_b1, check_b2, is_isometry
from buildings.coxeter import inversions
from buildings.ff_linalg import FpMatrix, Subspace
from buildings.flag import Flag, build_flag_building


def brute_force_cell(a: FpMatrix) -> tuple[int, ...]:
    """Oracle: the permutation matrix inside BaB, found by enumeration."""
    n, p = a.rows, a.p
    B = borel_subgroup(n, p)
    perm_mats = {
        permutation_matrix(perm, p): perm for perm in permutations(range(1, n + 1))
    }
    found = set()
    for b1 in B:
        for b2 in B:
            m = (b1 @ a) @ b2
            if m in perm_mats:
                found.add(perm_mats[m])
    assert len(found) == 1, f"BaB met {len(found)} permutation matrices"
    return found.pop()


class TestGroups:
    def test_orders(self):
        assert len(general_linear_group(2, 2)) == 6
        assert len(general_linear_group(3, 2)) == 168
        assert len(general_linear_group(2, 3)) == 48
        assert len(borel_subgroup(3, 2)) == 8
        assert len(borel_subgroup(2, 3)) == 12
        assert len(monomial_subgroup(3, 2)) == 6
        assert len(monomial_subgroup(2, 3)) == 8
        assert len(diagonal_subgroup(2, 3)) == 4

    def test_guard(self):
        with pytest.raises(ValueError, match="guard"):
            general_linear_group(5, 3)


class TestBruhatPermutation:
    def test_identity(self):
        assert bruhat_permutation(FpMatrix.identity(3, 2)) == (1, 2, 3)

    def test_simple_reflection_matrix(self):
        assert bruhat_permutation(permutation_matrix((2, 1, 3), 2)) == (2, 1, 3)

    def test_antidiagonal_is_longest(self):
        anti = FpMatrix.from_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]], 2)
        assert bruhat_permutation(anti) == (3, 2, 1)
        assert brute_force_cell(anti) == (3, 2, 1)

    def test_permutation_matrices_classify_to_themselves(self):
        for p in (2, 3):
            for perm in permutations(range(1, 4)):
                assert bruhat_permutation(permutation_matrix(perm, p)) == perm

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            bruhat_permutation(FpMatrix.zeros(2, 2, 2))

    @pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
    def test_matches_brute_force_everywhere(self, n, p):
        for a in general_linear_group(n, p):
            assert bruhat_permutation(a) == brute_force_cell(a)

    def test_invariant_under_borel_multiplication(self):
        B = borel_subgroup(3, 2)
        sample = general_linear_group(3, 2)[::17]
        for a in sample:
            w = bruhat_permutation(a)
            for b1 in B:
                for b2 in B:
                    assert bruhat_permutation((b1 @ a) @ b2) == w


class TestCells:
    def test_sizes_gl3_f2(self):
        sizes = cell_sizes(3, 2)
        by_length = {}
        for w, s in sizes.items():
            by_length.setdefault(inversions(w), []).append(s)
        assert by_length == {0: [8], 1: [16, 16], 2: [32, 32], 3: [64]}
        assert sum(sizes.values()) == 168

    def test_sizes_gl2_f2(self):
        assert cell_sizes(2, 2) == {(1, 2): 2, (2, 1): 4}

    def test_identity_cell_is_borel(self):
        for n, p in ((2, 2), (2, 3), (3, 2)):
            identity = tuple(range(1, n + 1))
            assert cell_sizes(n, p)[identity] == len(borel_subgroup(n, p))

    @pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
    def test_size_formula(self, n, p):
        # each cell has |B| * p^length elements
        for w, size in cell_sizes(n, p).items():
            assert size == len(borel_subgroup(n, p)) * p ** inversions(w)

    @pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
    def test_cells_partition_the_group(self, n, p):
        cells = bruhat_cells(n, p)
        total = [m for ms in cells.values() for m in ms]
        assert len(total) == len(set(total)) == len(general_linear_group(n, p))


class TestCosets:
    def test_borel_elements_canonicalise_to_identity(self):
        for b in borel_subgroup(3, 2):
            assert coset_canonical(b).rep == FpMatrix.identity(3, 2)

    def test_right_multiplication_invariance_exhaustive(self):
        G = general_linear_group(3, 2)[::13]
        B = borel_subgroup(3, 2)
        for a in G:
            rep = coset_canonical(a).rep
            for b in B:
                assert coset_canonical(a @ b).rep == rep

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_right_multiplication_invariance_random_gl2_f3(self, data):
        G = general_linear_group(2, 3)
        B = borel_subgroup(2, 3)
        a = data.draw(st.sampled_from(G))
        b = data.draw(st.sampled_from(B))
        assert coset_canonical(a @ b).rep == coset_canonical(a).rep

    def test_coset_count(self):
        reps = {coset_canonical(a).rep for a in general_linear_group(3, 2)}
        assert len(reps) == 21

    def test_canonical_shape(self):
        # pivots are 1 and have only zeros to their right
        for a in general_linear_group(3, 2)[::7]:
            rep = coset_canonical(a).rep
            for j in range(3):
                col = rep.column(j)
                piv = max(i for i in range(3) if col[i] != 0)
                assert col[piv] == 1
                assert all(rep[piv, j2] == 0 for j2 in range(j + 1, 3))


class TestGBBuilding:
    def test_small_building(self):
        gb = build_gb_building(2, 2)
        assert gb.cs.size == 3
        assert gb.cs.classes(1) == ((0, 1, 2),)

    def test_gl3_f2_building(self):
        gb = build_gb_building(3, 2)
        assert gb.cs.size == 21
        for i in gb.cs.colors:
            assert all(len(cl) == 3 for cl in gb.cs.classes(i))

    def test_panels_have_p_plus_one(self):
        gb = build_gb_building(2, 3)
        assert all(len(cl) == 4 for cl in gb.cs.classes(1))

    def test_axioms(self):
        gb = build_gb_building(3, 2)
        assert check_b1(gb.building, thick=True).passed
        assert check_b2(gb.building).passed
        assert gb.building.check_metric_laws().passed


class TestIsoToFlag:
    def test_identity_coset_is_the_standard_flag(self):
        gb = build_gb_building(3, 2)
        c0 = gb.chamber_of(FpMatrix.identity(3, 2))
        e1 = Subspace.from_vectors([[1, 0, 0]], 3, 2)
        e12 = Subspace.from_vectors([[1, 0, 0], [0, 1, 0]], 3, 2)
        assert iso_to_flag(gb.cosets[c0]) == Flag((e1, e12))

    def test_simple_reflection_coset(self):
        gb = build_gb_building(3, 2)
        c = gb.chamber_of(permutation_matrix((2, 1, 3), 2))
        e2 = Subspace.from_vectors([[0, 1, 0]], 3, 2)
        e12 = Subspace.from_vectors([[1, 0, 0], [0, 1, 0]], 3, 2)
        assert iso_to_flag(gb.cosets[c]) == Flag((e2, e12))

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2)])
    def test_bijective_isometry(self, n, p):
        gb = build_gb_building(n, p)
        fb = build_flag_building(n, p)
        mapping = flag_isomorphism(gb, fb)
        assert sorted(mapping) == list(range(fb.cs.size))
        assert is_isometry(mapping, gb.building, fb.building)

    def test_adjacency_preserved(self):
        gb = build_gb_building(3, 2)
        fb = build_flag_building(3, 2)
        mapping = flag_isomorphism(gb, fb)
        for i in gb.cs.colors:
            for c in range(gb.cs.size):
                got = sorted(mapping[d] for d in gb.cs.panel(c, i))
                assert got == list(fb.cs.panel(mapping[c], i))


class TestBNAxioms:
    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3)])
    def test_all_pass(self, n, p):
        report = check_bn_axioms(n, p)
        assert report.passed
        assert all(report.counts["checks"].values())

    def test_gl2_f3_torus(self):
        assert check_bn_axioms(2, 3).counts["torus_order"] == 4

    def test_weyl_group_is_symmetric_group(self):
        report = check_bn_axioms(3, 2)
        assert report.counts["monomial_order"] // report.counts["torus_order"] == 6


class TestOrbitTransitivity:
    def test_borel_acts_transitively_on_fixed_distance_spheres(self):
        """The stabiliser of the base chamber is transitive on each metric
        fibre around it."""
        gb = build_gb_building(3, 2)
        base = gb.chamber_of(FpMatrix.identity(3, 2))
        B = borel_subgroup(3, 2)
        fibres: dict[tuple[int, ...], set[int]] = {}
        for c in range(gb.cs.size):
            w = bruhat_permutation(gb.cosets[c].rep)
            fibres.setdefault(w, set()).add(c)
        assert gb.cs.size == sum(len(v) for v in fibres.values())
        for w, chambers in fibres.items():
            start = min(chambers)
            orbit = {gb.chamber_of(b @ gb.cosets[start].rep) for b in B}
            assert orbit == chambers
