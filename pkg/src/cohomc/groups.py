"""Values of compactly supported cohomology groups.

A group is either zero, a finite-dimensional vector space, a formal
series space over an exponent support (with the chart whose coordinates
the exponents refer to), or a finite direct sum of these.  The smart
constructors `finite_dim` and `direct_sum` keep the representation
normalized: FiniteDim(0) collapses to zero, sums are flat and never
contain zero summands.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .lattice import ExponentSupport


@dataclass(frozen=True)
class Zero:
    def to_json(self) -> dict:
        return {"type": "zero"}


ZERO = Zero()


@dataclass(frozen=True)
class FiniteDim:
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("use finite_dim() so that dimension 0 normalizes to ZERO")

    def to_json(self) -> dict:
        return {"type": "finite", "dim": self.dim}


@dataclass(frozen=True)
class Series:
    """A formal series space: one basis monomial per support member.

    `coordinates` names the exponent axes; they come from the reference
    chart of the space where the series lives.
    """

    support: ExponentSupport
    reference_chart: str
    coordinates: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.coordinates) != self.support.dim:
            raise ValueError("coordinate names must match the support dimension")

    def to_json(self) -> dict:
        return {
            "type": "series",
            "reference_chart": self.reference_chart,
            "coordinates": list(self.coordinates),
            "support": self.support.to_json(),
        }


@dataclass(frozen=True)
class DirectSum:
    summands: tuple["CohomologyGroup", ...]

    def __post_init__(self) -> None:
        if len(self.summands) < 2:
            raise ValueError("a direct sum needs at least two summands; use direct_sum()")
        for s in self.summands:
            if isinstance(s, (Zero, DirectSum)):
                raise ValueError("direct sums are flat and contain no zero summands")

    def to_json(self) -> dict:
        return {"type": "sum", "summands": [s.to_json() for s in self.summands]}


CohomologyGroup = Zero | FiniteDim | Series | DirectSum


def finite_dim(n: int) -> CohomologyGroup:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return ZERO if n == 0 else FiniteDim(n)


def direct_sum(parts: Iterable[CohomologyGroup]) -> CohomologyGroup:
    """Flatten, drop zero summands and fold finite pieces into one."""
    flat: list[CohomologyGroup] = []
    for p in parts:
        if isinstance(p, Zero):
            continue
        if isinstance(p, DirectSum):
            flat.extend(p.summands)
        else:
            flat.append(p)
    finite_total = sum(p.dim for p in flat if isinstance(p, FiniteDim))
    rest = [p for p in flat if not isinstance(p, FiniteDim)]
    merged = ([FiniteDim(finite_total)] if finite_total else []) + rest
    if not merged:
        return ZERO
    if len(merged) == 1:
        return merged[0]
    return DirectSum(tuple(merged))


def summands(g: CohomologyGroup) -> tuple[CohomologyGroup, ...]:
    if isinstance(g, Zero):
        return ()
    if isinstance(g, DirectSum):
        return g.summands
    return (g,)


class MissingDegreeError(KeyError):
    """A graded object was asked for a degree it does not record."""


@dataclass(frozen=True)
class GradedCohomology:
    """Map from degree q to a group, with a provenance tag per entry.

    Degrees above the complex dimension of the space are implicitly
    zero; degrees at or below it that were never recorded raise
    MissingDegreeError, which is how genuinely unknown groups surface.
    """

    space_dim: int
    entries: tuple[tuple[int, CohomologyGroup, str], ...]

    @classmethod
    def build(
        cls,
        space_dim: int,
        groups: Mapping[int, CohomologyGroup],
        provenance: str | Mapping[int, str],
    ) -> "GradedCohomology":
        rows = []
        for q in sorted(groups):
            if q < 0:
                raise ValueError("degrees are nonnegative")
            if q > space_dim and not isinstance(groups[q], Zero):
                raise ValueError(
                    f"degree {q} exceeds the space dimension {space_dim} but is nonzero"
                )
            tag = provenance if isinstance(provenance, str) else provenance[q]
            rows.append((q, groups[q], tag))
        return cls(space_dim, tuple(rows))

    def degrees(self) -> tuple[int, ...]:
        return tuple(q for q, _, _ in self.entries)

    def has(self, q: int) -> bool:
        return q > self.space_dim or any(d == q for d, _, _ in self.entries)

    def group(self, q: int) -> CohomologyGroup:
        for d, g, _ in self.entries:
            if d == q:
                return g
        if q > self.space_dim:
            return ZERO
        raise MissingDegreeError(q)

    def provenance(self, q: int) -> str:
        for d, _, tag in self.entries:
            if d == q:
                return tag
        if q > self.space_dim:
            return "axiom"
        raise MissingDegreeError(q)

    def to_json(self) -> dict:
        return {
            "dim": self.space_dim,
            "groups": {
                str(q): {"group": g.to_json(), "provenance": tag}
                for q, g, tag in self.entries
            },
        }
