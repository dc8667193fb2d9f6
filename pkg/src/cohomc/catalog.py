"""Registry of known graded compactly supported cohomology.

Seeded with the base facts the computations rest on, and extended by
solved results so later pipelines can consume earlier ones:

* compact spaces have the constants in degree 0 and nothing above
  (synthesized for every compact space, including all Hirzebruch
  surfaces, whose vanishing in positive degree enters as an axiom the
  sequence simplifications rely on);
* noncompact spaces have no nonzero compactly supported functions;
* the affine line records its degree-1 series in the coordinate at the
  removed point, and the affine plane its degree-1 vanishing -- its
  degree 2 is deliberately left unregistered.

Registration is serialized by a lock (lookups are read-only); an
attempt to register a value that disagrees with an existing entry under
the enumeration oracle is rejected, since it signals an inconsistency
between two derivations.
"""

from __future__ import annotations

import threading

from . import oracle
from .atlas import Space, affine, cstar
from .groups import ZERO, FiniteDim, GradedCohomology, Series, finite_dim
from .lattice import ExponentSupport, LinearConstraint

CONSISTENCY_BOUND = 16


class NotRegisteredError(KeyError):
    def __init__(self, key: str, degree: int | None = None):
        self.key = key
        self.degree = degree
        msg = f"no catalog entry for {key}"
        if degree is not None:
            msg += f" at degree {degree}"
        super().__init__(msg)

    def __str__(self) -> str:
        return self.args[0]


class ConflictingEntryError(Exception):
    """Two derivations produced different groups for the same space."""


def _affine_line_h1() -> Series:
    # Exponents >= 1 in the coordinate at the point removed from the
    # projective line; the same group in the affine coordinate has
    # exponents <= -1.
    support = ExponentSupport(
        1,
        (LinearConstraint((1,), 1),),
        note="converges in a neighborhood of the removed point",
    )
    return Series(support, "U1", ("w",))


def _seed_entries() -> dict[str, GradedCohomology]:
    return {
        affine(1).name: GradedCohomology.build(
            1, {0: ZERO, 1: _affine_line_h1()}, {0: "axiom", 1: "paper"}
        ),
        affine(2).name: GradedCohomology.build(
            2, {0: ZERO, 1: ZERO}, {0: "axiom", 1: "paper"}
        ),
        cstar().name: GradedCohomology.build(1, {0: ZERO}, {0: "axiom"}),
    }


class Catalog:
    def __init__(self, seed: bool = True):
        self._entries: dict[str, GradedCohomology] = _seed_entries() if seed else {}
        self._lock = threading.Lock()

    def known_keys(self) -> list[str]:
        return sorted(self._entries)

    def lookup(self, space: Space) -> GradedCohomology:
        entry = self._entries.get(space.name)
        if entry is not None:
            return entry
        if space.compact:
            # Compact spaces never need registration: constants in degree
            # 0, zero above.
            groups = {0: finite_dim(1)}
            for q in range(1, space.dim + 1):
                groups[q] = ZERO
            return GradedCohomology.build(space.dim, groups, "axiom")
        raise NotRegisteredError(space.name)

    def register(self, space: Space, graded: GradedCohomology) -> None:
        """Store an entry, merging degrees into any existing one.

        The compactness invariant is enforced (degree 0 is the constants
        exactly for compact spaces) and every degree shared with an
        existing entry must agree under the enumeration oracle."""
        if graded.has(0):
            h0 = graded.group(0)
            if space.compact and not (isinstance(h0, FiniteDim) and h0.dim == 1):
                raise ConflictingEntryError(
                    f"{space.name} is compact but degree 0 is not the constants"
                )
            if not space.compact and not h0 == ZERO:
                raise ConflictingEntryError(
                    f"{space.name} is noncompact but degree 0 is nonzero"
                )
        with self._lock:
            existing = self._entries.get(space.name)
            if existing is None:
                self._entries[space.name] = graded
                return
            merged: dict[int, object] = {}
            provenance: dict[int, str] = {}
            for q, g, tag in existing.entries:
                merged[q] = g
                provenance[q] = tag
            for q, g, tag in graded.entries:
                if q in merged:
                    verdict = oracle.groups_equal(merged[q], g, CONSISTENCY_BOUND)
                    if not verdict.equal:
                        raise ConflictingEntryError(
                            f"{space.name} degree {q}: re-registration disagrees "
                            f"with the stored entry ({verdict.kind})"
                        )
                else:
                    merged[q] = g
                    provenance[q] = tag
            self._entries[space.name] = GradedCohomology.build(
                existing.space_dim, merged, provenance
            )

    def to_json(self) -> dict:
        return {
            "entries": {key: self._entries[key].to_json() for key in sorted(self._entries)}
        }
