"""Orchestration shared by the HTTP service and the command line client.

Resolves space descriptions, picks decomposition routes, runs the
additive / product / catalog pipelines, cross-checks methods against
each other with the enumeration oracle, and renders everything as
deterministic JSON-ready dictionaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import atlas, kunneth, oracle
from .atlas import Decomposition, Space, SpaceSpecError, space_from_spec
from .catalog import Catalog, ConflictingEntryError, NotRegisteredError
from .groups import CohomologyGroup, GradedCohomology, MissingDegreeError
from .les import UnderdeterminedError, compute_additive

METHODS = ("additive", "kunneth", "catalog")

NOTE_REMOVED_POINT_CHART = {
    "code": "removed-point-chart",
    "detail": (
        "series exponents are recorded in the coordinate at the removed point; "
        "the same group in the affine coordinate has exponents <= -1"
    ),
}
NOTE_ORIGIN_INCLUDED = {
    "code": "origin-exponent-included",
    "detail": (
        "the degree-1 series keeps the full germ support including the constant "
        "term: the ambient plane has no nonzero compactly supported functions, so "
        "nothing is quotiented and exponents start at 0, not 1"
    ),
}
NOTE_FACTOR_CONVENTION = {
    "code": "factor-series-convention",
    "detail": (
        "the affine-line factor contributes its series with exponents >= 1 in the "
        "coordinate at its removed point; an origin-inclusive affine presentation "
        "of the same group differs by the constant monomial"
    ),
}
NOTE_REGISTRATION_SKIPPED = {
    "code": "registration-skipped",
    "detail": (
        "an entry with a different chart presentation is already registered for "
        "this space; the catalog keeps the earlier entry"
    ),
}


class NoDecompositionError(LookupError):
    pass


class MethodNotApplicableError(LookupError):
    pass


# ---------------------------------------------------------------------------
# builtin vocabulary
# ---------------------------------------------------------------------------

def resolve_builtin(name: str, k: int | None = None, n: int | None = None) -> Space:
    """Map a command-line builtin name (with aliases) to a space."""
    if name in ("P1", "P2", "CStar"):
        return atlas.make_builtin(name)
    if name == "C1":
        return atlas.affine(1)
    if name == "C2":
        return atlas.affine(2)
    if name == "Affine":
        return atlas.affine(n if n is not None else 1)
    if name in ("E", "LineBundle"):
        if k is None:
            raise SpaceSpecError(f"builtin {name} needs -k")
        return atlas.line_bundle(k)
    if name in ("H", "Hirzebruch"):
        if k is None:
            raise SpaceSpecError(f"builtin {name} needs -k")
        return atlas.hirzebruch(k)
    if name == "P1xC1":
        return atlas.product(atlas.p1(), atlas.affine(1))
    if name == "C2minus0":
        return atlas.punctured_plane()
    raise atlas.UnknownBuiltinError(f"unknown builtin space {name!r}")


def resolve_space(
    builtin: str | None = None,
    k: int | None = None,
    n: int | None = None,
    spec: dict | None = None,
) -> Space:
    if (builtin is None) == (spec is None):
        raise SpaceSpecError("give exactly one of a builtin name or a space spec")
    if builtin is not None:
        return resolve_builtin(builtin, k=k, n=n)
    return space_from_spec(spec)


# ---------------------------------------------------------------------------
# decomposition routes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Route:
    decomposition: Decomposition
    notes: tuple[dict, ...] = ()


def routes_for(space: Space) -> list[Route]:
    """Registered decompositions whose complement is the given space, in
    the order the pipeline prefers them."""
    name = space.name
    if name == "Affine(1)":
        dec = atlas.builtin_decompositions(atlas.p1())[0]
        return [Route(dec, (NOTE_REMOVED_POINT_CHART,))]
    if name == "CStar":
        dec = atlas.builtin_decompositions(atlas.p1())[1]
        return [Route(dec)]
    if name == "C2minus0":
        dec = atlas.builtin_decompositions(atlas.affine(2))[0]
        return [Route(dec, (NOTE_ORIGIN_INCLUDED,))]
    if name.startswith("LineBundle("):
        k = int(space.params["k"])
        routes = []
        if k == -1:
            routes.append(Route(atlas.builtin_decompositions(atlas.p2())[0]))
        if k <= 0:
            routes.append(Route(atlas.builtin_decompositions(atlas.hirzebruch(-k))[1]))
        if k >= 0:
            routes.append(Route(atlas.builtin_decompositions(atlas.hirzebruch(k))[3]))
        return routes
    if name == "Product(P1,Affine(1))":
        dec = atlas.builtin_decompositions(atlas.hirzebruch(1))[0]
        return [Route(dec)]
    return []


def product_factors(space: Space) -> tuple[Space, Space] | None:
    factors = space.params.get("factors")
    if isinstance(factors, tuple) and len(factors) == 2:
        return factors
    return None


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

@dataclass
class ComputeOutcome:
    space: Space
    method: str
    max_q: int
    groups: dict[int, CohomologyGroup | None]  # None = underdetermined
    provenance: dict[int, str]
    notes: list[dict] = field(default_factory=list)
    explain: dict | None = None

    def graded(self) -> GradedCohomology:
        known = {q: g for q, g in self.groups.items() if g is not None}
        tags = {q: self.provenance[q] for q in known}
        return GradedCohomology.build(self.space.dim, known, tags)

    def to_json(self) -> dict:
        doc: dict = {
            "space": self.space.name,
            "method": self.method,
            "groups": {},
            "notes": list(self.notes),
        }
        for q in sorted(self.groups):
            g = self.groups[q]
            if g is None:
                doc["groups"][str(q)] = {
                    "group": {"type": "underdetermined"},
                    "provenance": "underdetermined",
                }
            else:
                doc["groups"][str(q)] = {
                    "group": g.to_json(),
                    "provenance": self.provenance[q],
                }
        if self.explain is not None:
            doc["explain"] = self.explain
        return doc


def _register_quietly(catalog: Catalog, space: Space, outcome: ComputeOutcome) -> None:
    try:
        catalog.register(space, outcome.graded())
    except ConflictingEntryError:
        outcome.notes.append(NOTE_REGISTRATION_SKIPPED)


def compute(
    space: Space,
    method: str,
    catalog: Catalog,
    via: str | None = None,
    max_q: int | None = None,
    explain: bool = False,
    partial: bool = False,
) -> ComputeOutcome:
    if method not in METHODS:
        raise SpaceSpecError(f"unknown method {method!r}")
    if max_q is None:
        max_q = space.dim

    if method == "catalog":
        graded = catalog.lookup(space)
        groups: dict[int, CohomologyGroup | None] = {}
        provenance: dict[int, str] = {}
        missing = []
        for q in range(max_q + 1):
            try:
                groups[q] = graded.group(q)
                provenance[q] = graded.provenance(q)
            except MissingDegreeError:
                groups[q] = None
                missing.append(q)
        outcome = ComputeOutcome(space, method, max_q, groups, provenance)
        _finish_partial(outcome, tuple(missing), partial)
        return outcome

    if method == "additive":
        routes = routes_for(space)
        if not routes:
            raise NoDecompositionError(f"no registered decomposition yields {space.name}")
        route = _pick_route(routes, via, space)
        result = compute_additive(route.decomposition, catalog, max_q=max_q)
        groups = {q: result.graded.group(q) for q in result.graded.degrees()}
        provenance = {q: result.graded.provenance(q) for q in result.graded.degrees()}
        for q in result.underdetermined:
            groups[q] = None
        outcome = ComputeOutcome(
            space,
            method,
            max_q,
            groups,
            provenance,
            notes=list(route.notes) + result.notes,
        )
        if explain:
            outcome.explain = {
                "decomposition": route.decomposition.to_json(),
                "sequence": result.sequence.to_json(),
                "fragments": result.fragments,
            }
        _register_quietly(catalog, space, outcome)
        _finish_partial(outcome, result.underdetermined, partial)
        return outcome

    # method == "kunneth"
    factors = product_factors(space)
    if factors is None:
        raise MethodNotApplicableError(
            f"{space.name} is not a registered product; the product formula does not apply"
        )
    fa, fb = factors
    ha, hb = catalog.lookup(fa), catalog.lookup(fb)
    try:
        graded = kunneth.kunneth_graded(ha, hb, max_q)
    except MissingDegreeError as exc:
        raise NotRegisteredError(f"a factor of {space.name}", exc.args[0]) from exc
    groups = {q: graded.group(q) for q in range(max_q + 1)}
    provenance = {q: "kunneth" for q in range(max_q + 1)}
    notes = []
    if "Affine(1)" in (fa.name, fb.name):
        notes.append(NOTE_FACTOR_CONVENTION)
    outcome = ComputeOutcome(space, method, max_q, groups, provenance, notes=notes)
    if explain:
        outcome.explain = {
            "factors": [fa.name, fb.name],
            "degree_terms": {
                str(n): kunneth.kunneth_summands(ha, hb, n) for n in range(max_q + 1)
            },
        }
    _register_quietly(catalog, space, outcome)
    return outcome


def _pick_route(routes: list[Route], via: str | None, space: Space) -> Route:
    if via is None:
        return routes[0]
    for route in routes:
        if route.decomposition.total.name == via:
            return route
    names = ", ".join(r.decomposition.total.name for r in routes)
    raise NoDecompositionError(
        f"no decomposition of {via!r} yields {space.name}; available: {names}"
    )


def _finish_partial(outcome: ComputeOutcome, missing: tuple[int, ...], partial: bool) -> None:
    if not missing:
        return
    if not partial:
        raise UnderdeterminedError(missing, outcome.space.name)
    for q in missing:
        outcome.notes.append(
            {
                "code": "underdetermined",
                "detail": f"degree {q} is not determined by the available data",
            }
        )


def verify(
    space: Space,
    methods: tuple[str, str],
    catalog: Catalog,
    bound: int = 16,
    max_q: int | None = None,
) -> dict:
    """Run two pipelines on the same space and oracle-compare per degree."""
    if len(methods) != 2:
        raise SpaceSpecError("verify needs exactly two methods")
    if max_q is None:
        max_q = space.dim
    outcomes = [compute(space, m, catalog, max_q=max_q) for m in methods]
    degrees: dict[str, dict] = {}
    all_equal = True
    for q in range(max_q + 1):
        ga, gb = outcomes[0].groups[q], outcomes[1].groups[q]
        verdict = oracle.groups_equal(ga, gb, bound)
        degrees[str(q)] = verdict.to_json()
        all_equal = all_equal and verdict.equal
    return {
        "space": space.name,
        "methods": list(methods),
        "bound": bound,
        "degrees": degrees,
        "all_equal": all_equal,
    }


# ---------------------------------------------------------------------------
# listings
# ---------------------------------------------------------------------------

def builtin_inventory() -> list[dict]:
    """The builtin spaces, their parameters and registered decompositions."""
    rows = [
        {"name": "P1", "parameters": [], "decompositions": _dec_rows(atlas.p1())},
        {"name": "P2", "parameters": [], "decompositions": _dec_rows(atlas.p2())},
        {"name": "Affine", "parameters": ["n"], "decompositions": _dec_rows(atlas.affine(2))},
        {"name": "CStar", "parameters": [], "decompositions": []},
        {"name": "LineBundle (alias E)", "parameters": ["k"], "decompositions": []},
        {
            "name": "Hirzebruch (alias H)",
            "parameters": ["k"],
            "decompositions": _dec_rows(atlas.hirzebruch(1), generic_k=True),
        },
        {"name": "Product (builtin P1xC1)", "parameters": [], "decompositions": []},
        {"name": "C2minus0", "parameters": [], "decompositions": []},
    ]
    return rows


def _dec_rows(space: Space, generic_k: bool = False) -> list[dict]:
    rows = []
    for dec in atlas.builtin_decompositions(space):
        row = dec.to_json()
        if generic_k:
            for key in ("total", "complement"):
                row[key] = (
                    row[key]
                    .replace("Hirzebruch(1)", "Hirzebruch(k)")
                    .replace("LineBundle(-1)", "LineBundle(-k)")
                    .replace("LineBundle(1)", "LineBundle(k)")
                )
        rows.append(row)
    return rows


_BUILTIN_KEY_PREFIXES = (
    "Affine(",
    "CStar",
    "P1",
    "P2",
    "LineBundle(",
    "Hirzebruch(",
    "Product(",
    "C2minus0",
)


def format_inventory(rows: list[dict], catalog: Catalog) -> str:
    lines = ["builtin spaces:"]
    for row in rows:
        params = f" [{', '.join(row['parameters'])}]" if row["parameters"] else ""
        lines.append(f"  {row['name']}{params}")
        for dec in row["decompositions"]:
            lines.append(
                f"    {dec['total']} = {dec['complement']} + {dec['subspace']}"
            )
    keys = catalog.known_keys()
    custom = [k for k in keys if not k.startswith(_BUILTIN_KEY_PREFIXES)]
    for title, names in (("catalog entries:", keys), ("custom spaces:", custom)):
        lines.append(title)
        if names:
            lines.extend(f"  {name}" for name in names)
        else:
            lines.append("  (none)")
    return "\n".join(lines)
