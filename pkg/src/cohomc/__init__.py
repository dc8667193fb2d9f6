"""Compactly supported cohomology of curves and surfaces glued from
charts with Laurent-monomial transition maps.

The package computes graded groups H^q_c three ways -- solving the long
exact sequence of a closed decomposition, the product formula, and
catalog lookup -- and cross-checks derivations against each other with
a lattice-enumeration oracle.
"""

from .atlas import (
    Chart,
    ClosedSubspace,
    Decomposition,
    DisjointChartsError,
    MonomialMap,
    Space,
    SpaceSpecError,
    builtin_decompositions,
    make_builtin,
    space_from_spec,
    transition,
)
from .catalog import Catalog, ConflictingEntryError, NotRegisteredError
from .groups import (
    ZERO,
    CohomologyGroup,
    DirectSum,
    FiniteDim,
    GradedCohomology,
    MissingDegreeError,
    Series,
    Zero,
    direct_sum,
    finite_dim,
)
from .kunneth import kunneth_degree, kunneth_graded, tensor
from .lattice import (
    DEFAULT_BOUND,
    DimensionMismatchError,
    ExponentSupport,
    LinearConstraint,
    full_lattice,
    nonnegative_orthant,
)
from .les import (
    ExactSequence,
    InconsistentFragmentError,
    Known,
    UnderdeterminedError,
    Unknown,
    build_les,
    compute_additive,
    solve,
)
from .oracle import Verdict, groups_equal, truncated_dimension
from .pipeline import NoDecompositionError, compute, resolve_space, verify
from .sections import (
    SectionSpace,
    UnsupportedSubspaceError,
    holomorphy_constraints,
    point_germs,
    subspace_sections,
)

__version__ = "0.1.0"
