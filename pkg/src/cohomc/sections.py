"""Global sections of the pullback sheaf on a closed subspace.

This is the engine behind every cone derivation in the package.  For a
point the sections are the germs of holomorphic functions at the point:
a series space over the full nonnegative orthant in the ambient chart
coordinates.  For a projective-line curve the candidate series lives
over the orthant of a reference chart, and pulling each monomial
through the transition into every other chart the curve meets must
again give nonnegative exponents; each transition therefore contributes
one linear constraint per coordinate, and monomials violating any of
them are discarded.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import atlas, intmat
from .atlas import ClosedSubspace, MonomialMap, Space
from .groups import CohomologyGroup, Series, direct_sum, finite_dim
from .lattice import DEFAULT_BOUND, ExponentSupport, LinearConstraint, nonnegative_orthant

GERM_NOTE = "germ at the point in local coordinates"


class UnsupportedSubspaceError(ValueError):
    """The subspace does not fit the supported grammar (a finite set of
    points, or a curve cut out by one vanishing coordinate per chart)."""


@dataclass(frozen=True)
class SectionSpace:
    value: CohomologyGroup

    def to_json(self) -> dict:
        return self.value.to_json()


def point_germs(
    ambient_dim: int,
    chart: str = "local",
    coordinates: tuple[str, ...] | None = None,
) -> SectionSpace:
    """Germs of holomorphic functions at a point of a d-dimensional space.

    The degenerate d = 0 case (a point inside a point, no normal
    directions) leaves only the constants.
    """
    if ambient_dim < 0:
        raise ValueError("ambient dimension must be nonnegative")
    if ambient_dim == 0:
        return SectionSpace(finite_dim(1))
    if coordinates is None:
        coordinates = tuple(f"x{i}" for i in range(1, ambient_dim + 1))
    support = nonnegative_orthant(ambient_dim, GERM_NOTE)
    return SectionSpace(Series(support, chart, coordinates))


def holomorphy_constraints(transition_map: MonomialMap) -> list[LinearConstraint]:
    """Constraints on target-chart exponent vectors under which the monomial
    pulls back holomorphically along the map.

    A monomial with exponents v in the target coordinates reads, in the
    source coordinates, as the monomial with exponents M^T.v; every source
    coordinate must carry a nonnegative exponent, giving one constraint
    per column of the exponent matrix.
    """
    return [LinearConstraint(row, 0) for row in intmat.transpose(transition_map.matrix)]


def _only_origin(support: ExponentSupport) -> bool:
    if any(c.bound > 0 for c in support.constraints):
        return False
    origin = (0,) * support.dim
    if not support.contains(origin):
        return False
    # The support is a cone.  For plane cones every extreme ray has
    # coordinates no larger than the largest normal entry, so a box probe
    # of that size decides whether anything besides the origin survives.
    biggest = max(
        (abs(x) for c in support.constraints for x in c.normal), default=1
    )
    probe = max(DEFAULT_BOUND, 2 * biggest) if support.dim <= 2 else DEFAULT_BOUND
    return support.enumerate_box(probe) == [origin]


def subspace_sections(space: Space, subspace: ClosedSubspace) -> SectionSpace:
    """H^0 with compact supports of the pullback sheaf on a closed subspace.

    Points give germ spaces (one summand per point).  A curve gives the
    series space over the reference chart's orthant cut down by the
    holomorphy constraints of every transition between charts meeting
    the curve; if only the zero exponent survives the space collapses to
    the constants.
    """
    meeting = sorted(subspace.meets(), key=space.chart_index)
    if not meeting:
        raise UnsupportedSubspaceError(f"{subspace.name} meets no chart of {space.name}")
    eq_counts = {len(subspace.equations_in(cid)) for cid in meeting}
    if len(eq_counts) != 1:
        raise UnsupportedSubspaceError(
            f"{subspace.name} has inconsistent equation counts across charts"
        )
    for cid in meeting:
        chart = space.chart(cid)
        for coord in subspace.equations_in(cid):
            if coord not in chart.coordinates:
                raise UnsupportedSubspaceError(
                    f"{subspace.name}: {coord} is not a coordinate of chart {cid}"
                )
    n_eq = eq_counts.pop()

    if n_eq == space.dim:
        # Zero-dimensional: one point per meeting chart, sitting at the
        # chart origin.  Distinct chart origins never glue in these
        # atlases (a transition identifying them would be a plain
        # coordinate permutation, making the charts redundant).
        for cid in meeting:
            for other in meeting:
                if other <= cid:
                    continue
                m = atlas.transition(space, cid, other).matrix
                if all(x >= 0 for row in m for x in row):
                    raise UnsupportedSubspaceError(
                        f"{subspace.name}: chart origins {cid} and {other} glue; "
                        "points must be listed in disjoint charts"
                    )
        germs = [
            point_germs(space.dim, cid, space.chart(cid).coordinates).value
            for cid in meeting
        ]
        return SectionSpace(direct_sum(germs))

    if n_eq == 1 and space.dim >= 2:
        ref = meeting[0]
        chart = space.chart(ref)
        constraints = list(nonnegative_orthant(space.dim).constraints)
        for cid in meeting[1:]:
            constraints.extend(holomorphy_constraints(atlas.transition(space, cid, ref)))
        support = ExponentSupport(
            space.dim,
            tuple(constraints),
            note=f"converges in a neighborhood of {subspace.name}",
        )
        if _only_origin(support):
            return SectionSpace(finite_dim(1))
        return SectionSpace(Series(support, ref, chart.coordinates))

    raise UnsupportedSubspaceError(
        f"{subspace.name}: {n_eq} equations in dimension {space.dim} is outside "
        "the supported grammar"
    )
