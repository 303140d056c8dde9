# tests/test_clusters.py
"""Tests for polyominoes, embedding and the cluster atlas."""

import numpy as np
import pytest

from pdgrid.clusters import (
    ADJ_TRANSIT_A, ADJ_TRANSIT_B, ADJ_TRANSIT_C, ADJACENT_EVEN, BASIC_KINDS, DOUBLE_EVEN_TRANSIT,
    DOUBLY_EVEN, KIND_ORDER, MAX_ORDER, OPPOSITE_EVEN, STABLE, SYMMETRIES, TRANSIT_KINDS,
    DFamilyKind, Polyomino, SeedSpecies, atlas, classify, cluster_shape, clusters_of, embed,
    enumerate_fixed_polyominoes, generate, is_convex, reembed, sample_kinds, transform,
    window_cells,
)
from pdgrid.core import CheatAdvantage, Configuration, Strategy, Topology, weak_set
from pdgrid.errors import InvalidParams

C, D = Strategy.COOPERATE, Strategy.DEFECT


@pytest.fixture
def cheat():
    """Default cheating advantage."""
    return CheatAdvantage()


class TestPolyominoes:
    """Test polyomino enumeration and geometry."""

    @pytest.mark.parametrize('k,count', [(1, 1), (2, 2), (3, 6), (4, 19), (5, 63), (6, 216)])
    def test_fixed_counts(self, k, count):
        """Test the number of fixed polyominoes of each order."""
        assert len(enumerate_fixed_polyominoes(k)) == count

    def test_order_limits(self):
        """Test that orders outside 1..MAX_ORDER are rejected."""
        for k in (0, MAX_ORDER + 1):
            with pytest.raises(InvalidParams):
                enumerate_fixed_polyominoes(k)

    def test_rejects_disconnected(self):
        """Test that polyominoes must be edge-connected."""
        with pytest.raises(InvalidParams):
            Polyomino.of(((0, 0), (1, 1)))

    def test_canonical_form_ignores_symmetry(self):
        """Test that all eight images share one canonical form."""
        hat = generate(SeedSpecies.HAT4)
        forms = {hat.image(s).canonical_form() for s in range(len(SYMMETRIES))}
        assert len(forms) == 1

    def test_free_tetrominoes(self):
        """Test that the 19 fixed tetrominoes form 5 free shapes."""
        forms = {p.canonical_form() for p in enumerate_fixed_polyominoes(4)}
        assert len(forms) == 5

    def test_symmetry_to(self):
        """Test finding the symmetry between two images."""
        corner = generate(SeedSpecies.CORNER3)
        for s in range(len(SYMMETRIES)):
            image = corner.image(s)
            assert Polyomino(transform(corner.cells, corner.symmetry_to(image))) == image

    def test_convexity(self):
        """Test path-distance convexity."""
        assert is_convex(generate(SeedSpecies.CORNER3))
        assert is_convex(generate(SeedSpecies.SQUARE4))
        u_shape = Polyomino.of(((0, 0), (0, 2), (1, 0), (1, 1), (1, 2)))
        assert not is_convex(u_shape)

    def test_render(self):
        """Test drawing a polyomino."""
        assert generate(SeedSpecies.HAT4).render('#', '.') == ['###', '.#.']


class TestEmbedding:
    """Test windows built around cell sets."""

    def test_embed_dimensions(self):
        """Test that the margin surrounds the cells on every side."""
        config = embed(SeedSpecies.LINE4.cells, D, 3)
        assert (config.topology.rows, config.topology.cols) == (7, 10)
        assert config.field == D
        assert window_cells(config) == SeedSpecies.LINE4.cells

    def test_embed_margin_checked(self):
        """Test that a margin below 2 is rejected."""
        with pytest.raises(InvalidParams):
            embed(SeedSpecies.LINE3.cells, D, 1)

    def test_reembed_recentres(self):
        """Test that clusters near the edge are moved back to the middle."""
        config = embed(SeedSpecies.SQUARE4.cells, D, 2)
        moved = reembed(config, 4)
        assert moved.topology.rows == 10
        assert window_cells(moved) == SeedSpecies.SQUARE4.cells
        assert reembed(moved, 4) is moved

    def test_clusters_of(self):
        """Test splitting a window into clusters."""
        config = embed(((0, 0), (0, 1), (3, 3)), D, 2)
        sizes = sorted(len(c) for c in clusters_of(config, C))
        assert sizes == [1, 2]

    def test_cluster_shape_unwraps_torus(self):
        """Test that clusters across the torus seam keep their shape."""
        arr = np.zeros(25, dtype=np.uint8)
        arr[[4, 0, 20]] = 1
        config = Configuration(Topology.torus(5), arr)
        (component,) = clusters_of(config, C)
        assert cluster_shape(config, component).canonical_form() == \
            generate(SeedSpecies.CORNER3).canonical_form()


class TestAtlas:
    """Test the parametrised cluster kinds."""

    @pytest.mark.parametrize('kind', [
        DFamilyKind(STABLE, 3, 3),
        DFamilyKind(STABLE, 7, 5),
        DFamilyKind(DOUBLY_EVEN, 4, 5),
        DFamilyKind(DOUBLY_EVEN, 6, 5),
        DFamilyKind(OPPOSITE_EVEN, 4, 4),
        DFamilyKind(OPPOSITE_EVEN, 7, 6),
        DFamilyKind(ADJACENT_EVEN, 6, 6),
        DFamilyKind(ADJACENT_EVEN, 8, 6),
    ])
    def test_skew_rectangles(self, kind, cheat):
        """Test the size, convexity and weak count of the basic kinds."""
        shape = generate(kind)
        assert shape.width == kind.w
        assert max(shape.columns()) in (kind.h - 1, kind.h)
        assert is_convex(shape)
        config = embed(shape.cells, D, 3)
        assert len(weak_set(config, cheat)) == kind.expected_weak

    def test_stable_is_stable(self, cheat):
        """Test that stable kinds have no weak vertices."""
        assert generate(DFamilyKind(STABLE, 3, 3)).size == 5
        for kind in sample_kinds(8):
            if kind.is_stable:
                assert weak_set(embed(generate(kind).cells, D, 3), cheat) == set()

    def test_every_sampled_kind_generates(self):
        """Test that every accepted parameter set up to side 12 builds a shape."""
        for kind in sample_kinds(12):
            assert generate(kind).size > 4, kind.label()

    def test_transits_have_three_weak(self, cheat):
        """Test the weak count of every transit kind up to side 10."""
        for kind in sample_kinds(10):
            if kind.kind not in TRANSIT_KINDS:
                continue
            config = embed(generate(kind).cells, D, 3)
            assert len(weak_set(config, cheat)) == kind.expected_weak == 3, kind.label()

    @pytest.mark.parametrize('kind,base', [
        (DFamilyKind(DOUBLE_EVEN_TRANSIT, 8, 8, 2), DFamilyKind(OPPOSITE_EVEN, 8, 8)),
        (DFamilyKind(ADJ_TRANSIT_B, 9, 8, 2), DFamilyKind(ADJACENT_EVEN, 9, 8)),
        (DFamilyKind(ADJ_TRANSIT_A, 9, 8, 3), DFamilyKind(ADJACENT_EVEN, 9, 8)),
    ])
    def test_transits_add_ell_cells(self, kind, base):
        """Test that a transit is its base rectangle plus ell cells."""
        assert generate(kind).size == generate(base).size + kind.ell

    def test_long_layer_switches_label(self):
        """Test that the layer along OppositeEven(9, 6) is split between two labels."""
        base = generate(DFamilyKind(OPPOSITE_EVEN, 9, 6)).size
        assert generate(DFamilyKind(DOUBLE_EVEN_TRANSIT, 9, 6, 2)).size == base + 2
        assert generate(DFamilyKind(ADJ_TRANSIT_C, 9, 7, 3)).size == base + 3
        assert generate(DFamilyKind(ADJ_TRANSIT_C, 9, 7, 5)).size == base + 5

    @pytest.mark.parametrize('name,w,h,ell', [
        (STABLE, 4, 4, 0),
        (STABLE, 2, 3, 0),
        (DOUBLY_EVEN, 3, 5, 0),
        (OPPOSITE_EVEN, 6, 5, 0),
        (ADJACENT_EVEN, 5, 6, 0),
        (ADJACENT_EVEN, 8, 6, 1),
        (ADJ_TRANSIT_A, 8, 6, 0),
        (ADJ_TRANSIT_A, 8, 6, 5),
        (DOUBLE_EVEN_TRANSIT, 8, 6, 3),
        (ADJ_TRANSIT_C, 8, 6, 3),
        (ADJ_TRANSIT_C, 9, 7, 2),
        (ADJ_TRANSIT_C, 9, 7, 6),
        ('hexagon', 6, 6, 0),
    ])
    def test_constraints(self, name, w, h, ell):
        """Test that invalid parameters are rejected."""
        with pytest.raises(InvalidParams):
            DFamilyKind(name, w, h, ell)

    def test_labels(self):
        """Test kind labels."""
        assert DFamilyKind(ADJACENT_EVEN, 8, 6).label() == 'adjacent-even(8,6)'
        assert DFamilyKind(ADJ_TRANSIT_C, 9, 7, 3).label() == 'adj-transit-c(9,7,3)'

    def test_sample_kinds_cover_every_kind(self):
        """Test that the sample includes every kind and only valid parameters."""
        kinds = sample_kinds(8)
        assert {k.kind for k in kinds} == set(KIND_ORDER)
        assert all(max(k.w, k.h) <= 8 for k in kinds)

    def test_atlas_entries(self):
        """Test that atlas entries are windows labelled by kind."""
        entries = atlas(6)
        labels = [label for label, _ in entries]
        assert labels[:len(SeedSpecies)] == [s.value for s in SeedSpecies]
        assert all(config.topology.kind == 'window' for _, config in entries)


class TestClassify:
    """Test recognising kinds from cell sets."""

    @pytest.mark.parametrize('species', list(SeedSpecies))
    def test_species(self, species):
        """Test that seed species classify as themselves."""
        found = classify(species.cells)
        assert found.kind is species
        assert found.label() == species.value

    def test_basic_kinds_under_symmetry(self):
        """Test that basic kinds classify back under every symmetry."""
        for kind in sample_kinds(8):
            if kind.kind not in BASIC_KINDS:
                continue
            shape = generate(kind)
            if shape.size <= 4:
                continue
            for s in (0, 3, 5):
                image = shape.image(s)
                found = classify(image.cells)
                assert found is not None and found.kind == kind, kind.label()
                assert generate(found.kind).image(found.symmetry) == image

    def test_transits_under_symmetry(self):
        """Test that transit shapes are recognised as transits under symmetry."""
        for kind in sample_kinds(8):
            if kind.kind not in TRANSIT_KINDS:
                continue
            shape = generate(kind)
            for s in (0, 6):
                image = shape.image(s)
                found = classify(image.cells)
                assert found is not None, kind.label()
                assert found.kind.kind in TRANSIT_KINDS, kind.label()
                assert generate(found.kind).image(found.symmetry) == image

    def test_unknown_shape(self):
        """Test that shapes outside the atlas are not classified."""
        u_shape = ((0, 0), (0, 2), (1, 0), (1, 1), (1, 2))
        assert classify(u_shape) is None

    def test_small_shapes_are_species(self):
        """Test that every shape of at most four cells is a species."""
        for k in range(1, 5):
            for poly in enumerate_fixed_polyominoes(k):
                assert classify(poly.cells) is not None
