"""NBC sets of integral gain graphs K_n^{ab} and the regions of their affinographic arrangements."""

from .bijection import (
    ABForest,
    ABParams,
    ABTree,
    braid_correspondence,
    decode_forest,
    decode_tree,
    encode_forest,
    encode_tree,
    shi_correspondence,
    validate_ab_tree,
)
from .gain import (
    ExpansionParams,
    GainedEdge,
    GainGraph,
    HeightFunction,
    build_expansion,
    circle_gain,
    coherent_subgraph,
    compare_edges,
    compare_vertices,
    enumerate_height_functions,
    expansion,
    height_of_balanced_tree,
)
from .nbc import (
    EdgeCountProfile,
    NbcForest,
    NbcTree,
    enumerate_nbc_sets,
    enumerate_nbc_trees,
    nbc_edge_profile,
)
from .polynomials import (
    IntPolynomial,
    ab_forest_polynomial,
    ab_tree_count,
    charpoly_closed_form,
    charpoly_from_poincare,
    poincare,
    region_count,
    stirling1_unsigned,
)

__version__ = "0.1.0"
