# pdgrid/clusters/__init__.py
"""Polyomino machinery and the atlas of named cluster kinds."""

from pdgrid.clusters.polyomino import (
    MAX_ORDER, SYMMETRIES, Polyomino, enumerate_fixed_polyominoes, is_convex, normalize, transform,
)
from pdgrid.clusters.embedding import (
    cluster_shape, clusters_of, embed, reembed, vertex_cells, window_cells,
)
from pdgrid.clusters.atlas import (
    ADJ_TRANSIT_A, ADJ_TRANSIT_B, ADJ_TRANSIT_C, ADJACENT_EVEN, BASIC_KINDS,
    DOUBLE_EVEN_TRANSIT, DOUBLY_EVEN, EXPECTED_WEAK, KIND_ORDER, OPPOSITE_EVEN, STABLE,
    TRANSIT_KINDS, DFamilyKind, SeedSpecies, atlas, generate, sample_kinds,
)
from pdgrid.clusters.classify import Classification, classify

__all__ = [
    'MAX_ORDER', 'SYMMETRIES', 'Polyomino', 'enumerate_fixed_polyominoes', 'is_convex',
    'normalize', 'transform', 'cluster_shape', 'clusters_of', 'embed', 'reembed',
    'vertex_cells', 'window_cells', 'ADJ_TRANSIT_A', 'ADJ_TRANSIT_B', 'ADJ_TRANSIT_C',
    'ADJACENT_EVEN', 'BASIC_KINDS', 'DOUBLE_EVEN_TRANSIT', 'DOUBLY_EVEN', 'EXPECTED_WEAK',
    'KIND_ORDER', 'OPPOSITE_EVEN', 'STABLE', 'TRANSIT_KINDS', 'DFamilyKind', 'SeedSpecies',
    'atlas', 'generate', 'sample_kinds', 'Classification', 'classify',
]
