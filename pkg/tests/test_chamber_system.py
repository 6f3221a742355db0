"""Chamber systems: partitions, residues, galleries, nerve, DOT."""

from itertools import combinations

import pytest

from buildings.chamber_system import ChamberSystem, Gallery, is_gallery
from buildings.coxeter import CoxeterMatrix
from buildings.coxeter_complex import build_coxeter_complex
from buildings.flag import build_flag_building

H3 = CoxeterMatrix.from_orders([[1, 3, 2], [3, 1, 5], [2, 5, 1]])


def hexagon() -> ChamberSystem:
    return build_coxeter_complex(CoxeterMatrix.type_a(2)).cs


def single_chamber() -> ChamberSystem:
    return ChamberSystem(1, (1,), {1: [(0,)]})


class TestConstruction:
    def test_partition_must_cover(self):
        with pytest.raises(ValueError, match="missing"):
            ChamberSystem(3, (1,), {1: [(0, 1)]})

    def test_partition_no_overlap(self):
        with pytest.raises(ValueError, match="two classes"):
            ChamberSystem(2, (1,), {1: [(0, 1), (1,)]})

    def test_colors_must_match_partitions(self):
        with pytest.raises(ValueError):
            ChamberSystem(1, (1, 2), {1: [(0,)]})

    def test_every_chamber_in_one_class_per_color(self):
        cs = hexagon()
        for color in cs.colors:
            seen = sorted(c for cl in cs.classes(color) for c in cl)
            assert seen == list(range(cs.size))


class TestPanelsAndResidues:
    def test_hexagon_panels_have_two_chambers(self):
        cs = hexagon()
        for c in range(cs.size):
            for i in cs.colors:
                assert len(cs.panel(c, i)) == 2
                assert c in cs.panel(c, i)

    def test_flag_building_panels_have_three(self):
        cs = build_flag_building(3, 2).cs
        for c in range(cs.size):
            for i in cs.colors:
                assert len(cs.panel(c, i)) == 3

    def test_single_chamber_panel(self):
        cs = single_chamber()
        assert cs.panel(0, 1) == (0,)

    def test_panel_bad_input(self):
        cs = hexagon()
        with pytest.raises(ValueError):
            cs.panel(0, 9)
        with pytest.raises(ValueError):
            cs.panel(99, 1)

    def test_empty_residue_is_the_chamber(self):
        cs = hexagon()
        assert cs.residue(3, ()) == (3,)

    def test_full_residue_is_everything(self):
        cs = hexagon()
        assert cs.residue(0, (1, 2)) == tuple(range(6))

    def test_residue_monotone_in_colors(self):
        for cm in (CoxeterMatrix.type_a(2), CoxeterMatrix.type_a(3)):
            cs = build_coxeter_complex(cm).cs
            colors = cs.colors
            for c in range(cs.size):
                for r in range(len(colors) + 1):
                    for J in combinations(colors, r):
                        for J2 in combinations(colors, r):
                            if set(J) <= set(J2):
                                assert set(cs.residue(c, J)) <= set(cs.residue(c, J2))

    def test_residue_membership_means_gallery_reachable(self):
        cs = build_coxeter_complex(CoxeterMatrix.type_a(3)).cs
        for c in range(cs.size):
            for J in [(1,), (1, 2), (2, 3), (1, 3)]:
                comp = cs.residue(c, J)
                # BFS over J-panels only, reconstructing reachability
                reach = {c}
                stack = [c]
                while stack:
                    cur = stack.pop()
                    for i in J:
                        for nxt in cs.panel(cur, i):
                            if nxt not in reach:
                                reach.add(nxt)
                                stack.append(nxt)
                assert set(comp) == reach


class TestGalleries:
    def test_length_zero(self):
        assert is_gallery(hexagon(), Gallery((0,), ()))

    def test_hexagon_walk(self):
        cs = hexagon()
        c1 = next(d for d in cs.panel(0, 1) if d != 0)
        c2 = next(d for d in cs.panel(c1, 2) if d != c1)
        assert is_gallery(cs, Gallery((0, c1, c2), (1, 2)))

    def test_repeated_chamber_rejected(self):
        cs = hexagon()
        assert not is_gallery(cs, Gallery((0, 0), (1,)))

    def test_wrong_color_rejected(self):
        cs = hexagon()
        c1 = next(d for d in cs.panel(0, 1) if d != 0)
        assert not is_gallery(cs, Gallery((0, c1), (2,)))
        assert not is_gallery(cs, Gallery((0, c1), (7,)))

    def test_length_mismatch_rejected(self):
        assert not is_gallery(hexagon(), Gallery((0, 1), ()))


class TestNerve:
    def test_hexagon_nerve_is_a_cycle(self):
        nerve = hexagon().nerve()
        assert nerve.f_vector() == (6, 6)

    def test_a3_nerve_has_24_triangles(self):
        cs = build_coxeter_complex(CoxeterMatrix.type_a(3)).cs
        nerve = cs.nerve()
        assert len(nerve.simplices_of_dim(2)) == 24

    def test_single_chamber_single_vertex(self):
        nerve = single_chamber().nerve()
        assert nerve.f_vector() == (1,)

    def test_downward_closed_with_singletons(self):
        for cs in (hexagon(), build_flag_building(3, 2).cs):
            assert cs.nerve().is_downward_closed()


class TestResidueIntersections:
    def test_coxeter_complex_passes(self):
        assert hexagon().residue_intersection_check()

    def test_flag_building_passes(self):
        assert build_flag_building(3, 2).cs.residue_intersection_check()

    def test_counterexample(self):
        # two colours whose classes agree: panels intersect in a pair,
        # but the rank-0 residues are single chambers
        cs = ChamberSystem(
            4, (1, 2), {1: [(0, 1), (2, 3)], 2: [(0, 1), (2, 3)]}
        )
        assert not cs.residue_intersection_check()


class TestDot:
    def test_hexagon_dot(self):
        dot = hexagon().to_dot()
        lines = dot.strip().splitlines()
        vertices = [l for l in lines if "[label=" in l and "--" not in l]
        edges = [l for l in lines if "--" in l]
        assert len(vertices) == 6 and len(edges) == 6
        assert sum('color="red"' in e for e in edges) == 3
        assert sum('color="blue"' in e for e in edges) == 3

    def test_h3_cayley_graph_dot(self):
        cs = build_coxeter_complex(H3).cs
        dot = cs.to_dot()
        edges = [l for l in dot.splitlines() if "--" in l]
        assert len(edges) == 180  # 120 chambers x 3 colours / 2

    def test_single_chamber_dot(self):
        dot = single_chamber().to_dot()
        assert "--" not in dot
        assert "c0" in dot

    def test_deterministic(self):
        assert hexagon().to_dot() == hexagon().to_dot()


class TestDiameter:
    def test_hexagon_diameter(self):
        assert hexagon().diameter() == 3

    def test_disconnected_raises(self):
        cs = ChamberSystem(2, (1,), {1: [(0,), (1,)]})
        with pytest.raises(ValueError, match="connected"):
            cs.diameter()
