"""The rank-2 symplectic building, its incidence graph, and Sylvester."""

from itertools import combinations

import pytest

from buildings.core import (
    check_apartment_axioms,
    check_b1,
    check_b2,
)
from buildings.coxeter import CoxeterMatrix
from buildings.coxeter_complex import build_coxeter_complex, residue_circuit_lengths
from buildings.ff_linalg import Subspace, contains, enumerate_subspaces
from buildings.symplectic import (
    SymplecticSpace,
    bipartite_isomorphism,
    build_sp_building,
    incidence_graph,
    is_totally_isotropic,
    isotropic_subspaces,
    signed_frame_apartment,
    standard_frame,
    sylvester_graph,
    symplectic_group,
    transvections,
)

SP42 = SymplecticSpace(2, 2)


def vec_line(vec, sp=SP42):
    return Subspace.from_vectors([vec], sp.dim, sp.p)


class TestForm:
    def test_gram_matrix_shape(self):
        J = SP42.gram
        assert J.entries == (
            (0, 0, 1, 0),
            (0, 0, 0, 1),
            (1, 0, 0, 0),
            (0, 1, 0, 0),
        )

    def test_pairing_of_standard_basis(self):
        e1, eb1 = (1, 0, 0, 0), (0, 0, 1, 0)
        assert SP42.form(e1, eb1) == 1
        assert SP42.form(e1, e1) == 0

    def test_sign_over_gf3(self):
        sp = SymplecticSpace(1, 3)
        assert sp.form((1, 0), (0, 1)) == 1
        assert sp.form((0, 1), (1, 0)) == 2  # -1 mod 3


class TestIsotropic:
    def test_every_line_is_isotropic(self):
        lines = enumerate_subspaces(4, 1, 2)
        assert len(lines) == 15
        assert all(is_totally_isotropic(SP42, l) for l in lines)

    def test_hyperbolic_plane_is_not(self):
        u = Subspace.from_vectors([[1, 0, 0, 0], [0, 0, 1, 0]], 4, 2)
        assert not is_totally_isotropic(SP42, u)

    def test_zero_subspace(self):
        assert is_totally_isotropic(SP42, Subspace.zero(4, 2))

    def test_fifteen_isotropic_planes(self):
        assert len(isotropic_subspaces(SP42, 2)) == 15

    def test_each_line_in_three_planes(self):
        lines = isotropic_subspaces(SP42, 1)
        planes = isotropic_subspaces(SP42, 2)
        for line in lines:
            assert sum(1 for pl in planes if contains(pl, line)) == 3
        for pl in planes:
            assert sum(1 for line in lines if contains(pl, line)) == 3

    @pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 2)])
    def test_maximal_isotropic_dimension_is_n(self, n, p):
        sp = SymplecticSpace(n, p)
        assert isotropic_subspaces(sp, n)
        assert not isotropic_subspaces(sp, n + 1) if n + 1 <= 2 * n else True
        # and every isotropic chain tops out at dimension n
        for k in range(n + 1, 2 * n + 1):
            assert len(isotropic_subspaces(sp, k)) == 0


class TestGroup:
    def test_transvection_count(self):
        assert len(transvections(SP42)) == 15

    def test_transvections_preserve_the_form(self):
        J = SP42.gram
        for t in transvections(SP42):
            assert (t.transpose() @ J) @ t == J

    def test_group_order(self):
        assert len(symplectic_group(SP42)) == 720

    def test_sl2_f3(self):
        assert len(symplectic_group(SymplecticSpace(1, 3))) == 24


class TestBuilding:
    def test_chamber_count(self):
        spb = build_sp_building(2, 2)
        assert spb.cs.size == 45

    def test_panel_sizes(self):
        spb = build_sp_building(2, 2)
        for i in spb.cs.colors:
            assert all(len(cl) == 3 for cl in spb.cs.classes(i))

    def test_rank_one_case(self):
        spb = build_sp_building(1, 2)
        assert spb.cs.size == 3
        assert len(spb.apartments[0].image) == 2

    def test_apartments_are_octagons(self):
        spb = build_sp_building(2, 2)
        assert len(spb.apartments) == 90
        for apt in spb.apartments:
            assert len(apt.image) == 8
            # inside the apartment every chamber touches exactly two others
            for c in apt.image:
                inside = [
                    d
                    for i in spb.cs.colors
                    for d in spb.cs.panel(c, i)
                    if d != c and d in apt.image
                ]
                assert len(inside) == 2

    def test_base_apartment_vertices(self):
        spb = build_sp_building(2, 2)
        base = signed_frame_apartment(spb, standard_frame(spb.space))
        lines = {spb.flags[c].chain[0] for c in base.image}
        expected = {
            vec_line([1, 0, 0, 0]),
            vec_line([0, 1, 0, 0]),
            vec_line([0, 0, 1, 0]),
            vec_line([0, 0, 0, 1]),
        }
        assert lines == expected
        planes = {spb.flags[c].chain[1] for c in base.image}
        assert len(planes) == 4

    def test_frame_validation(self):
        spb = build_sp_building(2, 2)
        pairs = standard_frame(spb.space)
        bad = ((pairs[0][0], pairs[1][0]), pairs[1])
        with pytest.raises(ValueError):
            signed_frame_apartment(spb, bad)

    def test_axioms(self):
        spb = build_sp_building(2, 2)
        assert check_b1(spb.building, thick=True).passed
        assert check_apartment_axioms(spb.cs, spb.apartments).passed
        assert check_b2(spb.building).passed
        assert spb.building.check_metric_laws().passed

    def test_weyl_octagon(self):
        cc = build_coxeter_complex(CoxeterMatrix.type_c(2))
        assert cc.size == 8
        assert residue_circuit_lengths(cc) == {frozenset({1, 2}): 8}

    def test_opposite_chambers_have_length_four(self):
        spb = build_sp_building(2, 2)
        base = signed_frame_apartment(spb, standard_frame(spb.space))
        lengths = {
            spb.building.delta(base.chamber_map[0], c).length for c in base.image
        }
        assert lengths == {0, 1, 2, 3, 4}
        opposite = [
            c
            for c in base.image
            if spb.building.delta(base.chamber_map[0], c).length == 4
        ]
        assert len(opposite) == 1

    def test_guard(self):
        with pytest.raises(ValueError, match="guard"):
            build_sp_building(11, 2)


class TestIncidenceGraph:
    def test_shape(self):
        graph = incidence_graph(build_sp_building(2, 2))
        assert len(graph.whites) == 15 and len(graph.blacks) == 15
        assert len(graph.edges) == 45
        assert set(graph.degrees()) == {3}

    def test_girth_eight(self):
        assert incidence_graph(build_sp_building(2, 2)).girth() == 8

    def test_eight_cycles_are_the_apartments(self):
        spb = build_sp_building(2, 2)
        graph = incidence_graph(spb)
        lines = isotropic_subspaces(spb.space, 1)
        planes = isotropic_subspaces(spb.space, 2)
        edge = graph.edges[0]
        chamber = spb.index[(lines[edge[0]], planes[edge[1]])]
        through = sum(1 for apt in spb.apartments if chamber in apt.image)
        assert graph.cycles_through_edge(edge, 8) == through

    def test_needs_rank_two(self):
        with pytest.raises(ValueError):
            incidence_graph(build_sp_building(1, 2))


class TestSylvester:
    def test_vertex_counts(self):
        graph = sylvester_graph()
        assert len(graph.whites) == 15  # transpositions
        assert len(graph.blacks) == 15  # triple products

    def test_cubic(self):
        assert set(sylvester_graph().degrees()) == {3}

    def test_every_transposition_has_three_hosts(self):
        graph = sylvester_graph()
        duads = list(combinations(range(1, 7), 2))
        for di in range(len(duads)):
            assert sum(1 for a, b in graph.edges if a == di) == 3

    def test_girth(self):
        assert sylvester_graph().girth() == 8

    def test_isomorphic_to_incidence_graph(self):
        g1 = sylvester_graph()
        g2 = incidence_graph(build_sp_building(2, 2))
        mapping = bipartite_isomorphism(g1, g2)
        assert mapping is not None
        adj1, adj2 = g1.adjacency(), g2.adjacency()
        assert sorted(mapping.values()) == list(range(30))
        for v in range(30):
            assert {mapping[u] for u in adj1[v]} == adj2[mapping[v]]

    def test_isomorphism_rejects_wrong_graphs(self):
        g1 = sylvester_graph()
        # a 30-vertex cubic bipartite graph of girth 4: K_3,3 x 5 is not
        # even connected; simpler: the incidence graph of a 15-cycle pairing
        edges = tuple((i, i) for i in range(15)) + tuple(
            (i, (i + 1) % 15) for i in range(15)
        ) + tuple((i, (i + 3) % 15) for i in range(15))
        from buildings.symplectic import BipartiteGraph

        g3 = BipartiteGraph(tuple(range(15)), tuple(range(15)), edges)
        assert bipartite_isomorphism(g1, g3) is None
