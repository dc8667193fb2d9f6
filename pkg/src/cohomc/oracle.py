"""Brute-force comparison of cohomology groups by lattice enumeration.

Two descriptions are compared inside a box of configurable half-width:
finite dimensions by equality, series by their enumerated supports
(allowing a coordinate permutation in dimension up to 3), direct sums
by multiset matching of summands.  Structurally different shapes whose
truncated dimensions happen to agree are reported as incomparable, not
equal: a matching count must never masquerade as confirmation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import CohomologyGroup, DirectSum, FiniteDim, Series, Zero
from .lattice import DEFAULT_BOUND

_PERMUTE_MAX_DIM = 3


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equal" | "differ" | "incomparable"
    witness: object = None

    @property
    def equal(self) -> bool:
        return self.kind == "equal"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = (
                list(self.witness) if isinstance(self.witness, tuple) else self.witness
            )
        return out


EQUAL = Verdict("equal")
INCOMPARABLE = Verdict("incomparable")


def _differ(witness: object) -> Verdict:
    return Verdict("differ", witness)


def _normalized_series(s: Series) -> Series:
    support, kept = s.support.drop_pinned_axes()
    if len(kept) == s.support.dim:
        return s
    return Series(support, s.reference_chart, tuple(s.coordinates[i] for i in kept))


def truncated_dimension(g: CohomologyGroup, bound: int = DEFAULT_BOUND) -> int:
    """Dimension of the group truncated to exponents inside the box."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if isinstance(g, Zero):
        return 0
    if isinstance(g, FiniteDim):
        return g.dim
    if isinstance(g, Series):
        return len(g.support.enumerate_box(bound))
    return sum(truncated_dimension(s, bound) for s in g.summands)


def _series_equal(a: Series, b: Series, bound: int) -> Verdict:
    a, b = _normalized_series(a), _normalized_series(b)
    if a.support.dim != b.support.dim:
        return _count_verdict(a, b, bound)
    pa = a.support.enumerate_box(bound)
    pb = b.support.enumerate_box(bound)
    if pa == pb:
        return EQUAL
    d = a.support.dim
    if d <= _PERMUTE_MAX_DIM:
        sb = set(pb)
        for perm in itertools.permutations(range(d)):
            if perm == tuple(range(d)):
                continue
            if {tuple(p[i] for i in perm) for p in sb} == set(pa):
                return EQUAL
    witness = min(set(pa) ^ set(pb))
    return _differ(witness)


def _count_verdict(a: CohomologyGroup, b: CohomologyGroup, bound: int) -> Verdict:
    ta, tb = truncated_dimension(a, bound), truncated_dimension(b, bound)
    if ta != tb:
        return _differ(f"truncated dimensions {ta} != {tb}")
    return INCOMPARABLE


def _match_multisets(
    la: tuple[CohomologyGroup, ...], lb: tuple[CohomologyGroup, ...], bound: int
) -> bool:
    if not la:
        return not lb
    head = la[0]
    for j, candidate in enumerate(lb):
        if groups_equal(head, candidate, bound).equal:
            if _match_multisets(la[1:], lb[:j] + lb[j + 1 :], bound):
                return True
    return False


def groups_equal(a: CohomologyGroup, b: CohomologyGroup, bound: int = DEFAULT_BOUND) -> Verdict:
    """Compare two group descriptions inside the enumeration box."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if isinstance(a, Zero) and isinstance(b, Zero):
        return EQUAL
    if isinstance(a, FiniteDim) and isinstance(b, FiniteDim):
        return EQUAL if a.dim == b.dim else _differ(f"dimensions {a.dim} != {b.dim}")
    if isinstance(a, Series) and isinstance(b, Series):
        return _series_equal(a, b, bound)
    if isinstance(a, DirectSum) and isinstance(b, DirectSum):
        if len(a.summands) == len(b.summands) and _match_multisets(
            a.summands, b.summands, bound
        ):
            return EQUAL
        return _count_verdict(a, b, bound)
    # Mixed shapes: decisive only when the truncated dimensions differ.
    return _count_verdict(a, b, bound)
