"""Exact combinatorial invariants behind action-dimension bounds."""

from .errors import InputError
from .scomplex import (
    SimplicialComplex,
    SimplexPoset,
    build_from_facets,
    flag_check_and_complete,
    full_subcomplex,
    link,
    star,
    cone,
    join,
    order_complex,
    barycentric_subdivision,
)
from .chains import (
    BoundaryMatrices,
    HomologySummary,
    EdceVerdict,
    boundary_matrices,
    betti_z2,
    smith_normal_form,
    integral_homology,
    edce_verdict,
    find_z2_cycle,
)
from .polyjoin import (
    LabeledVertex,
    OctaComplex,
    polyhedral_join,
    octahedralization,
    doubled_complex,
)
from .vk import (
    ConfigComplex,
    VertexOrdering,
    Gf2Chain,
    Gf2Cochain,
    VkVerdict,
    config_complex,
    meshed,
    vk_cocycle,
    evaluate,
    coboundary_certificate,
    vk_nontrivial,
    omega_chain,
    star_condition,
    canonical_doubling_order,
)

__version__ = "0.1.0"
