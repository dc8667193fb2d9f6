"""Subsets of the integer lattice Z^d cut out by linear inequalities,
minus finitely many points.

Every series-type cohomology group in this package is carried by such a
set: a (possibly shifted) rational cone intersected with the lattice,
with a finite list of excluded exponent vectors.  Constraints are kept
in a canonical form (non-strict sense, gcd-reduced, sorted) so that the
common equalities are syntactic; `equals_up_to` is the enumeration
oracle that arbitrates everything else.

All values are immutable and every operation is a pure function, so
concurrent readers need no coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass, field
from math import gcd

from . import intmat
from .intmat import Vector

#: Box half-width used by enumeration cross-checks unless callers override it.
#: Every cone this package produces is distinguished well below this bound.
DEFAULT_BOUND = 16


class DimensionMismatchError(ValueError):
    """Vectors, matrices or supports of different dimensions were mixed."""


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class LinearConstraint:
    """The half-space condition ``normal . v >= bound`` on lattice points.

    A strict inequality is folded into the bound at construction time
    (``normal . v > b`` becomes ``normal . v >= b + 1``, which is the same
    set of integer points), and the whole constraint is divided by the gcd
    of the normal's entries, rounding the bound up.
    """

    normal: tuple[int, ...]
    bound: int = 0
    strict: InitVar[bool] = False

    def __post_init__(self, strict: bool) -> None:
        normal = tuple(int(x) for x in self.normal)
        if not normal or not any(normal):
            raise ValueError("constraint normal must be a nonzero integer vector")
        bound = int(self.bound) + (1 if strict else 0)
        g = 0
        for x in normal:
            g = gcd(g, abs(x))
        object.__setattr__(self, "normal", tuple(x // g for x in normal))
        object.__setattr__(self, "bound", _ceil_div(bound, g))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def holds(self, v: Vector) -> bool:
        return sum(a * x for a, x in zip(self.normal, v)) >= self.bound

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "bound": self.bound}


@dataclass(frozen=True)
class ExponentSupport:
    """A conjunction of linear constraints on Z^dim minus a finite point set.

    Excluded points that fail the constraints are redundant and pruned at
    construction, so membership is simply: all constraints hold and the
    point is not excluded.  The convergence note is inert bookkeeping text,
    carried verbatim into output and ignored by equality.
    """

    dim: int
    constraints: tuple[LinearConstraint, ...] = ()
    excluded: frozenset[Vector] = frozenset()
    note: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("supports live in Z^d with d >= 1")
        cons = tuple(self.constraints)
        for c in cons:
            if c.dim != self.dim:
                raise DimensionMismatchError(
                    f"constraint in dimension {c.dim} inside a {self.dim}-dimensional support"
                )
        canonical = tuple(sorted(set(cons), key=lambda c: (c.normal, c.bound)))
        pts = frozenset(tuple(int(x) for x in p) for p in self.excluded)
        for p in pts:
            if len(p) != self.dim:
                raise DimensionMismatchError(
                    f"excluded point {p} does not match dimension {self.dim}"
                )
        pruned = frozenset(p for p in pts if all(c.holds(p) for c in canonical))
        object.__setattr__(self, "constraints", canonical)
        object.__setattr__(self, "excluded", pruned)
        object.__setattr__(self, "note", str(self.note))

    # -- membership and enumeration -------------------------------------

    def contains(self, v: Vector) -> bool:
        v = tuple(int(x) for x in v)
        if len(v) != self.dim:
            raise DimensionMismatchError(
                f"point of dimension {len(v)} tested against a {self.dim}-dimensional support"
            )
        return all(c.holds(v) for c in self.constraints) and v not in self.excluded

    def enumerate_box(self, bound: int) -> list[Vector]:
        """All members with every coordinate in [-bound, bound], in
        lexicographic order (the order is part of the contract)."""
        if bound < 1:
            raise ValueError("enumeration bound must be >= 1")
        rng = range(-bound, bound + 1)
        return [v for v in itertools.product(rng, repeat=self.dim) if self.contains(v)]

    def equals_up_to(self, other: "ExponentSupport", bound: int = DEFAULT_BOUND) -> bool:
        """Enumeration-oracle equality inside the box of half-width `bound`."""
        if other.dim != self.dim:
            raise DimensionMismatchError("cannot compare supports of different dimensions")
        return self.enumerate_box(bound) == other.enumerate_box(bound)

    # -- algebra ---------------------------------------------------------

    def intersect(self, other: "ExponentSupport") -> "ExponentSupport":
        if other.dim != self.dim:
            raise DimensionMismatchError("cannot intersect supports of different dimensions")
        note = self.note or other.note
        return ExponentSupport(
            self.dim,
            self.constraints + other.constraints,
            self.excluded | other.excluded,
            note,
        )

    def remove_point(self, v: Vector) -> "ExponentSupport":
        """Exclude one current member.  Removing a non-member is rejected,
        since in this package it always signals a solver logic error."""
        v = tuple(int(x) for x in v)
        if not self.contains(v):
            raise ValueError(f"cannot remove {v}: not a member of the support")
        return ExponentSupport(self.dim, self.constraints, self.excluded | {v}, self.note)

    def transform(self, matrix, unimodular: bool = True) -> "ExponentSupport":
        """The image of the support under v -> M.v.

        Constraints are rewritten through the inverse, so membership
        satisfies contains(image, M.v) == contains(self, v).  When M is
        not unimodular the rewrite is still exact on image points, but a
        finite exclusion set has no expressible image; that combination
        is rejected.
        """
        m = intmat.freeze(matrix)
        if len(m) != self.dim:
            raise DimensionMismatchError("matrix dimension does not match the support")
        d = intmat.det(m)
        if d == 0:
            raise ValueError("transform matrix is singular")
        if unimodular and abs(d) != 1:
            raise ValueError(f"matrix asserted unimodular but det = {d}")
        if abs(d) != 1 and self.excluded:
            raise ValueError(
                "cannot transform a support with exclusions through a non-unimodular map"
            )
        adj = intmat.adjugate(m)
        # a.(M^-1 w) >= b  <=>  (a.adj).w >= b*det, with the sense flipped
        # when det < 0.
        new_cons = []
        for c in self.constraints:
            row = intmat.vec_mat(c.normal, adj)
            if d > 0:
                new_cons.append(LinearConstraint(row, c.bound * d))
            else:
                new_cons.append(LinearConstraint(tuple(-x for x in row), -c.bound * d))
        new_excluded = frozenset(intmat.mat_vec(m, p) for p in self.excluded)
        return ExponentSupport(self.dim, tuple(new_cons), new_excluded, self.note)

    # -- presentation ----------------------------------------------------

    def pinned_axes(self) -> dict[int, int]:
        """Coordinates forced to a single value by opposite unit-normal
        constraints, as {axis: value}."""
        lo: dict[int, int] = {}
        hi: dict[int, int] = {}
        for c in self.constraints:
            nz = [j for j, a in enumerate(c.normal) if a]
            if len(nz) != 1:
                continue
            j = nz[0]
            a = c.normal[j]
            if a == 1:
                lo[j] = max(lo.get(j, c.bound), c.bound)
            elif a == -1:
                hi[j] = min(hi.get(j, -c.bound), -c.bound)
        return {j: lo[j] for j in lo if j in hi and lo[j] == hi[j]}

    def drop_pinned_axes(self) -> tuple["ExponentSupport", tuple[int, ...]]:
        """Project away pinned coordinates, returning (support, kept axes).

        Purely presentational: the projection is a bijection on members.
        If nothing can be safely dropped (no pinned axis, every axis
        pinned, or an infeasibility is detected) the support is returned
        unchanged with all axes kept.
        """
        everything = (self, tuple(range(self.dim)))
        pinned = self.pinned_axes()
        if not pinned or len(pinned) == self.dim:
            return everything
        kept = tuple(j for j in range(self.dim) if j not in pinned)
        new_cons = []
        for c in self.constraints:
            bound = c.bound - sum(c.normal[j] * u for j, u in pinned.items())
            row = tuple(c.normal[j] for j in kept)
            if not any(row):
                if bound > 0:
                    return everything
                continue
            new_cons.append(LinearConstraint(row, bound))
        new_excluded = frozenset(tuple(p[j] for j in kept) for p in self.excluded)
        return (
            ExponentSupport(len(kept), tuple(new_cons), new_excluded, self.note),
            kept,
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "constraints": [c.to_json() for c in self.constraints],
            "excluded": sorted(list(p) for p in self.excluded),
            "note": self.note,
        }


def full_lattice(dim: int, note: str = "") -> ExponentSupport:
    return ExponentSupport(dim, (), frozenset(), note)


def nonnegative_orthant(dim: int, note: str = "") -> ExponentSupport:
    cons = tuple(
        LinearConstraint(tuple(1 if j == i else 0 for j in range(dim)), 0)
        for i in range(dim)
    )
    return ExponentSupport(dim, cons, frozenset(), note)


def product_support(a: ExponentSupport, b: ExponentSupport) -> ExponentSupport:
    """Concatenate two supports into Z^(da+db).

    Exclusions are rejected: the set (A minus E) x B would need a whole
    slab of excluded points, which a finite exclusion list cannot express.
    """
    if a.excluded or b.excluded:
        raise ValueError("cannot form a product of supports with excluded points")
    cons = [
        LinearConstraint(c.normal + (0,) * b.dim, c.bound) for c in a.constraints
    ] + [
        LinearConstraint((0,) * a.dim + c.normal, c.bound) for c in b.constraints
    ]
    note = "; ".join(n for n in (a.note, b.note) if n)
    return ExponentSupport(a.dim + b.dim, tuple(cons), frozenset(), note)
