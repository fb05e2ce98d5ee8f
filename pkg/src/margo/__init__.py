"""Marginal polytopes of hierarchical models: moves, fibers, and face checks."""

from .characters import (
    CharacterVector,
    Move,
    character,
    character_cylinder_sum,
    interval_move,
    interval_move_sum,
    interval_moves,
    kernel_basis,
    move_supports,
)
from .collapse import (
    Collapsing,
    all_collapsings,
    collapse_commutes,
    collapse_config,
    collapse_move,
    collapse_table,
    identity_collapsing,
    verify_phi_identity,
)
from .complexes import (
    SimplicialComplex,
    from_facets,
    full_simplex,
    interval_complement,
    uniform_complex,
)
from .expfam import Density, density, multiinformation, point_mixture, satisfies_binomials, uniform_density
from .fiber import (
    ConnectivityReport,
    Fiber,
    MarkovReport,
    enumerate_fiber,
    fiber_connected,
    min_binomial_degree,
    tableau,
    verify_markov_basis,
)
from .guards import DEFAULT_CEILING, ResourceCeilingError
from .polytope import (
    FacialityCertificate,
    LPResult,
    NeighborlinessReport,
    is_facial,
    lp_solve,
    neighborliness,
    polytope_dimension,
)
from .spaces import (
    Config,
    ConfigSpace,
    ContingencyTable,
    MarginalMatrix,
    MarginalVector,
    binary_space,
    cylinder,
    kernel_check,
    marginal,
    marginal_map,
    marginal_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
