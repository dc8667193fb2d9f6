"""Long exact sequence construction and solving for closed decompositions.

Writing a space X as a closed subspace Y plus its open complement gives
the exact sequence

    0 -> U^0 -> H^0_c(X) -> H^0_c(Y) -> U^1 -> H^1_c(X) -> ... -> 0

where U^q stands for the unknown groups of the complement.  The solver
splits the sequence at every known zero term and resolves each fragment
by pattern matching; exactness alone does not determine extensions in
general, so anything outside the recognized patterns is reported as
underdetermined rather than guessed.

Fragment patterns (between two zeros, with exactly one unknown):

  (a)  0 -> U -> 0                          U = 0
  (b)  0 -> A -> U -> 0  (either side)      U = A
  (c)  0 -> FiniteDim(c) -> K -> U -> 0     quotient: U is K with the
       origin exponent removed from every series summand (K finite
       dimensional works by dimension count)
  (d)  0 -> U -> A -> B -> 0, A, B finite   U = FiniteDim(dim A - dim B)

Pattern (c) on a direct sum removes the origin from each summand even
when the quotient is only c-dimensional; the bookkeeping discrepancy is
surfaced as a note instead of hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .atlas import Decomposition
from .catalog import Catalog
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
    summands,
)
from .sections import subspace_sections


class UnderdeterminedError(Exception):
    """Exactness does not force the requested group."""

    def __init__(self, degrees: tuple[int, ...], space: str = ""):
        self.degrees = degrees
        self.space = space
        names = ", ".join(str(q) for q in degrees)
        where = f" of {space}" if space else ""
        super().__init__(f"degree(s) {names}{where} not determined by the exact sequence")


class InconsistentFragmentError(Exception):
    """A fragment matched a pattern but its dimensions contradict exactness."""


@dataclass(frozen=True)
class Known:
    group: CohomologyGroup
    label: str = ""
    provenance: str = ""

    def to_json(self) -> dict:
        doc = {"label": self.label, "group": self.group.to_json()}
        if self.provenance:
            doc["provenance"] = self.provenance
        return doc


@dataclass(frozen=True)
class Unknown:
    uid: str
    label: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "unknown": self.uid}


Term = Known | Unknown


@dataclass(frozen=True)
class ExactSequence:
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("an exact sequence has at least one term")
        first, last = self.terms[0], self.terms[-1]
        for boundary in (first, last):
            if not (isinstance(boundary, Known) and isinstance(boundary.group, Zero)):
                raise ValueError("exact sequences start and end with a known zero")

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.terms]


def build_les(
    dec: Decomposition,
    hx: GradedCohomology,
    hy: GradedCohomology,
    max_q: int,
    complement_known: dict[int, CohomologyGroup] | None = None,
) -> ExactSequence:
    """Interleave complement / total / subspace groups into the sequence.

    Degrees of the total space the catalog does not know become unknown
    terms themselves.  `complement_known` supplies complement degrees
    that are known a priori (degree 0 vanishes whenever the complement
    is noncompact)."""
    complement_known = complement_known or {}
    comp, total, sub = dec.complement.name, dec.total.name, dec.closed.name
    terms: list[Term] = [Known(ZERO, "0")]
    for q in range(max_q + 1):
        if q in complement_known:
            terms.append(Known(complement_known[q], f"H^{q}_c({comp})", "axiom"))
        else:
            terms.append(Unknown(f"U{q}", f"H^{q}_c({comp})"))
        try:
            terms.append(Known(hx.group(q), f"H^{q}_c({total})", hx.provenance(q)))
        except MissingDegreeError:
            terms.append(Unknown(f"X{q}", f"H^{q}_c({total})"))
        try:
            terms.append(Known(hy.group(q), f"H^{q}_c({sub})", hy.provenance(q)))
        except MissingDegreeError:
            terms.append(Unknown(f"Y{q}", f"H^{q}_c({sub})"))
    terms.append(Known(ZERO, "0"))
    return ExactSequence(tuple(terms))


@dataclass
class SolveResult:
    assignments: dict[str, CohomologyGroup] = field(default_factory=dict)
    unresolved: dict[str, str] = field(default_factory=dict)
    notes: list[dict] = field(default_factory=list)
    fragments: list[dict] = field(default_factory=list)


def _is_zero(term: Term) -> bool:
    return isinstance(term, Known) and isinstance(term.group, Zero)


def _origin_quotient(k: CohomologyGroup, codim: int, notes: list[dict]) -> CohomologyGroup | None:
    """Remove `codim` worth of origin exponents from a series-type group.

    Returns None when the pattern does not apply (some summand is not a
    series containing its origin)."""
    parts = summands(k)
    if not parts or not all(isinstance(p, Series) for p in parts):
        return None
    origins = []
    for p in parts:
        origin = (0,) * p.support.dim
        if not p.support.contains(origin):
            return None
        origins.append(origin)
    if codim > len(parts):
        raise InconsistentFragmentError(
            f"quotient by dimension {codim} exceeds the {len(parts)} available origin(s)"
        )
    reduced = [
        Series(p.support.remove_point(origin), p.reference_chart, p.coordinates)
        for p, origin in zip(parts, origins)
    ]
    if len(parts) > codim:
        notes.append(
            {
                "code": "quotient-spread-across-summands",
                "detail": (
                    f"a {codim}-dimensional quotient removed the origin exponent from "
                    f"all {len(parts)} summands; the truncated dimension drops by "
                    f"{len(parts)} rather than {codim}"
                ),
            }
        )
    return direct_sum(reduced)


def _check_known_fragment(groups: list[CohomologyGroup], label: str) -> None:
    if all(isinstance(g, (FiniteDim, Zero)) for g in groups):
        alternating = 0
        for i, g in enumerate(groups):
            dim = g.dim if isinstance(g, FiniteDim) else 0
            alternating += (-1) ** i * dim
        if alternating != 0:
            raise InconsistentFragmentError(
                f"fully known fragment {label} has nonzero alternating dimension sum"
            )


def _solve_fragment(frag: list[Term], result: SolveResult) -> None:
    record = {"terms": [t.to_json() for t in frag]}
    unknowns = [i for i, t in enumerate(frag) if isinstance(t, Unknown)]

    if not unknowns:
        _check_known_fragment([t.group for t in frag], " -> ".join(t.label for t in frag))
        record["status"] = "known"
        result.fragments.append(record)
        return

    if len(unknowns) > 1:
        record["status"] = "underdetermined"
        result.fragments.append(record)
        for i in unknowns:
            result.unresolved[frag[i].uid] = "multiple unknowns share a fragment"
        return

    idx = unknowns[0]
    uid = frag[idx].uid
    known = [t.group for t in frag if isinstance(t, Known)]
    solved: CohomologyGroup | None = None
    reason = "fragment shape outside the solvable patterns"

    if len(frag) == 1:
        solved = ZERO
    elif len(frag) == 2:
        solved = known[0]
    elif len(frag) == 3 and idx == 2:
        a, k = known
        if isinstance(a, FiniteDim):
            if isinstance(k, FiniteDim):
                if k.dim < a.dim:
                    raise InconsistentFragmentError(
                        f"cokernel of an injection C^{a.dim} -> C^{k.dim} is negative"
                    )
                solved = finite_dim(k.dim - a.dim)
            elif isinstance(k, (Series, DirectSum)):
                solved = _origin_quotient(k, a.dim, result.notes)
                if solved is None:
                    reason = "quotient target is not a series containing its origin"
    elif len(frag) == 3 and idx == 0:
        a, b = known
        a_fin = isinstance(a, FiniteDim) or isinstance(a, Zero)
        b_fin = isinstance(b, FiniteDim) or isinstance(b, Zero)
        if a_fin and b_fin:
            da = a.dim if isinstance(a, FiniteDim) else 0
            db = b.dim if isinstance(b, FiniteDim) else 0
            if da < db:
                raise InconsistentFragmentError(
                    f"kernel of a surjection C^{da} -> C^{db} is negative"
                )
            solved = finite_dim(da - db)

    if solved is None:
        record["status"] = "underdetermined"
        result.unresolved[uid] = reason
    else:
        record["status"] = "solved"
        record["solved"] = {uid: solved.to_json()}
        result.assignments[uid] = solved
    result.fragments.append(record)


def solve(seq: ExactSequence) -> SolveResult:
    """Split at known zeros, then resolve each fragment independently."""
    result = SolveResult()
    fragment: list[Term] = []
    for term in seq.terms:
        if _is_zero(term):
            if fragment:
                _solve_fragment(fragment, result)
                fragment = []
        else:
            fragment.append(term)
    if fragment:
        _solve_fragment(fragment, result)
    return result


@dataclass
class AdditiveResult:
    graded: GradedCohomology
    underdetermined: tuple[int, ...]
    notes: list[dict]
    sequence: ExactSequence
    fragments: list[dict]


def compute_additive(
    dec: Decomposition,
    catalog: Catalog,
    max_q: int | None = None,
    project: bool = True,
) -> AdditiveResult:
    """Graded groups of the complement in a registered decomposition.

    The total space's groups come from the catalog and the subspace's
    degree-0 sections from the section engine (its positive degrees
    vanish for dimension reasons).  The complement is never compact
    here, so its degree 0 vanishes and is injected as a known term.
    Solved series are presented with pinned coordinates projected away
    (a series in z alone is reported over Z^1, not over a line in Z^2).
    """
    if dec.complement.compact:
        raise ValueError("complement of a nonempty closed subspace is not compact")
    total_dim = dec.total.dim
    if max_q is None:
        max_q = total_dim
    hx = catalog.lookup(dec.total)
    section_value = subspace_sections(dec.total, dec.closed).value
    hy_groups: dict[int, CohomologyGroup] = {0: section_value}
    for q in range(1, max_q + 1):
        hy_groups[q] = ZERO
    hy = GradedCohomology.build(total_dim, hy_groups, "sections")

    seq = build_les(dec, hx, hy, max_q, complement_known={0: ZERO})
    res = solve(seq)

    groups: dict[int, CohomologyGroup] = {0: ZERO}
    provenance: dict[int, str] = {0: "axiom"}
    missing: list[int] = []
    for q in range(1, max_q + 1):
        uid = f"U{q}"
        if uid in res.assignments:
            value = res.assignments[uid]
            groups[q] = _project(value) if project else value
            provenance[q] = "solved"
        else:
            missing.append(q)
    graded = GradedCohomology.build(total_dim, groups, provenance)
    return AdditiveResult(graded, tuple(missing), res.notes, seq, res.fragments)


def _project(group: CohomologyGroup) -> CohomologyGroup:
    if isinstance(group, Series):
        support, kept = group.support.drop_pinned_axes()
        if len(kept) == group.support.dim:
            return group
        coords = tuple(group.coordinates[i] for i in kept)
        return Series(support, group.reference_chart, coords)
    if isinstance(group, DirectSum):
        return direct_sum(_project(s) for s in group.summands)
    return group
