"""Invariants of weighted circle actions on C^k: the Newton cone, the Hilbert map,
and Poisson brackets on the invariants together with their lifts.

Indices are 0-based in the library; text forms and the command line are 1-based.
"""

from .weights import (
    BasisCoords,
    LatticePoint,
    NotInLatticeError,
    NotMinimalError,
    WeightError,
    WeightSystem,
    basis_elements,
    build_weight_system,
    extend_weights,
    from_basis_coords,
    in_lattice,
    in_semigroup,
    iota,
    iota_inverse,
    to_basis_coords,
)
from .cone import (
    Face,
    dual_rays,
    enumerate_faces,
    face_count,
    face_graph,
    generators,
    hilbert_basis_oracle,
    is_face,
    pairing,
    smallest_face,
    supporting_functional,
)
from .hilbert import (
    Check,
    FkMap,
    HomPoint,
    check_hom_conditions,
    fk_kernel,
    fk_matrix,
    hilbert_eval,
    kernel_hnf,
    project_pi,
    reconstruct_orbit,
    same_orbit,
)
from .polys import Poly, RealPoly, XPoly
from .poisson import (
    BracketSpec,
    SpecError,
    bracket,
    bracket_generator,
    constant_rank,
    corollary1_check,
    epsilon_delta_spec,
    epsilon_spec,
    face_spec,
    invariance_check,
    jacobiator,
    pointwise_rank,
    standard_spec,
    to_real_bivector,
)
from .lift import (
    LiftSpec,
    check_fk_related,
    check_jacobi_lift,
    embed_extended,
    fk_pushforward,
    intertwine_check,
    lift_bracket,
    linear_lift,
    mixed_lift,
    quadratic_lift,
    reality_check,
)

__version__ = "0.1.0"
