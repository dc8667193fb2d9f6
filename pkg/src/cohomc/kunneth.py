"""Graded groups of a product space from the groups of its factors.

For vector-space coefficients the torsion correction term vanishes
identically, so degree n of the product is the direct sum over p+q = n
of tensor products of the factors' groups.  Tensor products follow the
shape of the operands: finite times finite multiplies dimensions, a
one-dimensional factor is the unit, two series spaces concatenate their
supports, and everything distributes over direct sums.
"""

from __future__ import annotations

from .atlas import merge_coordinate_names
from .groups import (
    ZERO,
    CohomologyGroup,
    DirectSum,
    FiniteDim,
    GradedCohomology,
    Series,
    Zero,
    direct_sum,
    finite_dim,
)
from .lattice import product_support


def tensor(a: CohomologyGroup, b: CohomologyGroup) -> CohomologyGroup:
    if isinstance(a, Zero) or isinstance(b, Zero):
        return ZERO
    if isinstance(a, DirectSum):
        return direct_sum(tensor(s, b) for s in a.summands)
    if isinstance(b, DirectSum):
        return direct_sum(tensor(a, s) for s in b.summands)
    if isinstance(a, FiniteDim) and isinstance(b, FiniteDim):
        return finite_dim(a.dim * b.dim)
    if isinstance(a, FiniteDim):
        return b if a.dim == 1 else direct_sum([b] * a.dim)
    if isinstance(b, FiniteDim):
        return a if b.dim == 1 else direct_sum([a] * b.dim)
    support = product_support(a.support, b.support)
    return Series(
        support,
        f"({a.reference_chart},{b.reference_chart})",
        merge_coordinate_names(a.coordinates, b.coordinates),
    )


def kunneth_degree(hx: GradedCohomology, hy: GradedCohomology, n: int) -> CohomologyGroup:
    """Degree n of the product; raises MissingDegreeError when a needed
    factor degree was never recorded."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    parts = []
    for p in range(n + 1):
        parts.append(tensor(hx.group(p), hy.group(n - p)))
    return direct_sum(parts)


def kunneth_summands(hx: GradedCohomology, hy: GradedCohomology, n: int) -> list[dict]:
    """The (p, q) terms feeding degree n, for explain output."""
    return [
        {"p": p, "q": n - p, "group": tensor(hx.group(p), hy.group(n - p)).to_json()}
        for p in range(n + 1)
    ]


def kunneth_graded(
    hx: GradedCohomology, hy: GradedCohomology, max_q: int | None = None
) -> GradedCohomology:
    dim = hx.space_dim + hy.space_dim
    if max_q is None:
        max_q = dim
    groups = {n: kunneth_degree(hx, hy, n) for n in range(max_q + 1)}
    return GradedCohomology.build(dim, groups, "kunneth")
