"""Spaces as atlases of coordinate charts glued by Laurent-monomial maps.

A chart is purely combinatorial: a name, a dimension and coordinate
names.  A transition is an integer exponent matrix M with
``t_i = prod_j s_j**M[i][j]`` for source coordinates s and target
coordinates t; all transitions here are unimodular.  Builtin
constructors cover the affine spaces, the punctured line, the
projective line and plane, the line bundles over the projective line,
the Hirzebruch surfaces and binary products.

Closed subspaces are recorded chart by chart as lists of vanishing
coordinates, with the charts they miss listed explicitly; builtin
decompositions pair each such subspace with the registered
identification of its complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import intmat
from .intmat import Matrix


class SpaceSpecError(ValueError):
    """A space description (builtin parameters or custom atlas) is malformed."""


class UnknownBuiltinError(LookupError):
    """The requested space name does not resolve to anything registered."""


class DisjointChartsError(ValueError):
    """Two charts of a space have no transition path between them."""


@dataclass(frozen=True)
class Chart:
    id: str
    dim: int
    coordinates: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.coordinates) != self.dim:
            raise SpaceSpecError(f"chart {self.id}: expected {self.dim} coordinate names")
        if len(set(self.coordinates)) != self.dim:
            raise SpaceSpecError(f"chart {self.id}: coordinate names must be unique")


@dataclass(frozen=True)
class MonomialMap:
    """target coordinate t_i = prod_j source_j ** matrix[i][j]."""

    source: str
    target: str
    matrix: Matrix

    def __post_init__(self) -> None:
        m = intmat.freeze(self.matrix)
        if abs(intmat.det(m)) != 1:
            raise SpaceSpecError(
                f"transition {self.source}->{self.target} must be unimodular"
            )
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> "MonomialMap":
        return MonomialMap(self.target, self.source, intmat.inverse_unimodular(self.matrix))

    def compose(self, earlier: "MonomialMap") -> "MonomialMap":
        """The map source(earlier) -> target(self); exponent matrices multiply."""
        if earlier.target != self.source:
            raise ValueError("maps do not chain")
        return MonomialMap(earlier.source, self.target, intmat.mat_mul(self.matrix, earlier.matrix))


@dataclass(frozen=True)
class Space:
    name: str
    charts: tuple[Chart, ...]
    transitions: tuple[MonomialMap, ...]
    compact: bool
    params: Mapping[str, object] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.charts[0].dim

    def chart(self, chart_id: str) -> Chart:
        for c in self.charts:
            if c.id == chart_id:
                return c
        raise KeyError(chart_id)

    def chart_index(self, chart_id: str) -> int:
        for i, c in enumerate(self.charts):
            if c.id == chart_id:
                return i
        raise KeyError(chart_id)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "charts": [
                {"id": c.id, "dim": c.dim, "coordinates": list(c.coordinates)}
                for c in self.charts
            ],
            "transitions": [
                {"from": t.source, "to": t.target, "matrix": [list(r) for r in t.matrix]}
                for t in self.transitions
            ],
            "compact": self.compact,
        }


def make_space(
    name: str,
    charts: list[Chart],
    transitions: list[MonomialMap],
    compact: bool,
    params: Mapping[str, object] | None = None,
) -> Space:
    """Build a space, closing the transition list under inversion and
    checking that composites are path independent (cocycle condition)."""
    ids = [c.id for c in charts]
    if len(set(ids)) != len(ids):
        raise SpaceSpecError("chart ids must be unique")
    if len({c.dim for c in charts}) > 1:
        raise SpaceSpecError("all charts of a space must share one dimension")
    edges: dict[tuple[str, str], MonomialMap] = {}
    for t in transitions:
        if t.source not in ids or t.target not in ids:
            raise SpaceSpecError(f"transition {t.source}->{t.target} names an unknown chart")
        if t.source == t.target:
            if t.matrix != intmat.identity(len(t.matrix)):
                raise SpaceSpecError("self transitions must be the identity")
            continue
        if len(t.matrix) != charts[0].dim:
            raise SpaceSpecError("transition matrix does not match the chart dimension")
        key = (t.source, t.target)
        if key in edges and edges[key].matrix != t.matrix:
            raise SpaceSpecError(f"conflicting transitions for {key}")
        edges[key] = t
    for t in list(edges.values()):
        back = (t.target, t.source)
        inv = t.inverse()
        if back in edges:
            if edges[back].matrix != inv.matrix:
                raise SpaceSpecError(
                    f"transitions {t.source}<->{t.target} are not mutually inverse"
                )
        else:
            edges[back] = inv
    _check_cocycle(ids, edges, charts[0].dim)
    return Space(name, tuple(charts), tuple(edges.values()), compact, dict(params or {}))


def _check_cocycle(ids: list[str], edges: dict[tuple[str, str], MonomialMap], dim: int) -> None:
    # Path independence of composites: explore every edge from every
    # reached chart and demand agreement on revisits.  This checks all
    # fundamental cycles, hence all cycles.
    for start in ids:
        reached: dict[str, Matrix] = {start: intmat.identity(dim)}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for (a, b), t in edges.items():
                if a != cur:
                    continue
                candidate = intmat.mat_mul(t.matrix, reached[cur])
                if b in reached:
                    if reached[b] != candidate:
                        raise SpaceSpecError(
                            f"inconsistent transitions: two paths {start}->{b} disagree"
                        )
                else:
                    reached[b] = candidate
                    frontier.append(b)


def transition(space: Space, source: str, target: str) -> MonomialMap:
    """The transition from one chart to another, composed along registered
    maps when no direct one exists."""
    space.chart(source), space.chart(target)
    if source == target:
        return MonomialMap(source, target, intmat.identity(space.dim))
    edges = {(t.source, t.target): t for t in space.transitions}
    if (source, target) in edges:
        return edges[(source, target)]
    reached: dict[str, MonomialMap] = {
        source: MonomialMap(source, source, intmat.identity(space.dim))
    }
    frontier = [source]
    while frontier:
        cur = frontier.pop(0)
        for (a, b), t in edges.items():
            if a == cur and b not in reached:
                reached[b] = t.compose(reached[cur])
                frontier.append(b)
    if target not in reached:
        raise DisjointChartsError(f"no transition path {source}->{target} in {space.name}")
    return reached[target]


# ---------------------------------------------------------------------------
# builtin spaces
# ---------------------------------------------------------------------------

def affine(n: int) -> Space:
    if n < 1:
        raise SpaceSpecError("affine space needs n >= 1")
    if n == 1:
        coords = ("z",)
    elif n == 2:
        coords = ("z", "w")
    else:
        coords = tuple(f"z{i}" for i in range(1, n + 1))
    return make_space(f"Affine({n})", [Chart("U", n, coords)], [], compact=False, params={"n": n})


def cstar() -> Space:
    # Combinatorial stand-in: only the name, dimension and compactness
    # flag are ever consumed (the space appears as a complement, never as
    # a computation domain in its own right).
    return make_space("CStar", [Chart("U", 1, ("z",))], [], compact=False)


def punctured_plane() -> Space:
    # Same stand-in role as cstar(): the plane minus its origin.
    return make_space("C2minus0", [Chart("U", 2, ("z", "w"))], [], compact=False)


def p1() -> Space:
    charts = [Chart("U0", 1, ("z",)), Chart("U1", 1, ("w",))]
    trans = [MonomialMap("U0", "U1", ((-1,),))]  # w = 1/z
    return make_space("P1", charts, trans, compact=True)


def p2() -> Space:
    charts = [
        Chart("U0", 2, ("z", "w")),
        Chart("U1", 2, ("u", "v")),
        Chart("U2", 2, ("s", "t")),
    ]
    trans = [
        MonomialMap("U0", "U1", ((-1, 0), (-1, 1))),  # u = 1/z,  v = w/z
        MonomialMap("U0", "U2", ((0, -1), (1, -1))),  # s = 1/w,  t = z/w
        MonomialMap("U1", "U2", ((1, -1), (0, -1))),  # s = u/v,  t = 1/v
    ]
    return make_space("P2", charts, trans, compact=True)


def line_bundle(k: int) -> Space:
    """Total space of the degree-k line bundle over the projective line:
    two planes glued by z1 = 1/z2, w1 = z2**k * w2."""
    charts = [Chart("X1", 2, ("z1", "w1")), Chart("X2", 2, ("z2", "w2"))]
    trans = [MonomialMap("X2", "X1", ((-1, 0), (k, 1)))]
    return make_space(f"LineBundle({k})", charts, trans, compact=False, params={"k": k})


def hirzebruch(k: int) -> Space:
    """Four-chart surface compactifying the degree-k bundle by a section
    at infinity (charts 2 and 3 invert the fiber coordinate)."""
    charts = [Chart(f"X{i}", 2, (f"z{i}", f"w{i}")) for i in range(4)]
    trans = [
        MonomialMap("X0", "X1", ((-1, 0), (k, 1))),   # z1 = 1/z0, w1 = z0^k w0
        MonomialMap("X1", "X2", ((1, 0), (0, -1))),   # z2 = z1,   w2 = 1/w1
        MonomialMap("X2", "X3", ((-1, 0), (-k, 1))),  # z3 = 1/z2, w3 = z2^-k w2
        MonomialMap("X0", "X3", ((1, 0), (0, -1))),   # z3 = z0,   w3 = 1/w0
    ]
    return make_space(f"Hirzebruch({k})", charts, trans, compact=True, params={"k": k})


def merge_coordinate_names(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    merged = list(a)
    for name in b:
        candidate = name
        while candidate in merged:
            candidate += "_"
        merged.append(candidate)
    return tuple(merged)


def product(a: Space, b: Space) -> Space:
    """Product atlas: chart pairs with block-diagonal exponent matrices."""
    charts = [
        Chart(f"({ca.id},{cb.id})", ca.dim + cb.dim,
              merge_coordinate_names(ca.coordinates, cb.coordinates))
        for ca in a.charts
        for cb in b.charts
    ]
    trans = []
    for ca in a.charts:
        for cb in b.charts:
            for ca2 in a.charts:
                for cb2 in b.charts:
                    if (ca.id, cb.id) >= (ca2.id, cb2.id):
                        continue
                    try:
                        ta = transition(a, ca.id, ca2.id)
                        tb = transition(b, cb.id, cb2.id)
                    except DisjointChartsError:
                        continue
                    block = tuple(
                        tuple(row) + (0,) * b.dim for row in ta.matrix
                    ) + tuple(
                        (0,) * a.dim + tuple(row) for row in tb.matrix
                    )
                    trans.append(
                        MonomialMap(f"({ca.id},{cb.id})", f"({ca2.id},{cb2.id})", block)
                    )
    return make_space(
        f"Product({a.name},{b.name})",
        charts,
        trans,
        compact=a.compact and b.compact,
        params={"factors": (a, b)},
    )


_BUILTINS = ("Affine", "CStar", "P1", "P2", "LineBundle", "Hirzebruch", "Product")


def make_builtin(name: str, **params) -> Space:
    if name == "Affine":
        return affine(int(params.get("n", 1)))
    if name == "CStar":
        return cstar()
    if name == "P1":
        return p1()
    if name == "P2":
        return p2()
    if name == "LineBundle":
        if "k" not in params:
            raise SpaceSpecError("LineBundle needs parameter k")
        return line_bundle(int(params["k"]))
    if name == "Hirzebruch":
        if "k" not in params:
            raise SpaceSpecError("Hirzebruch needs parameter k")
        return hirzebruch(int(params["k"]))
    if name == "Product":
        factors = params.get("factors")
        if not factors or len(factors) != 2:
            raise SpaceSpecError("Product needs exactly two factor spaces")
        return product(factors[0], factors[1])
    raise UnknownBuiltinError(f"unknown builtin space {name!r}")


# ---------------------------------------------------------------------------
# closed subspaces and decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedSubspace:
    """A closed subspace given per chart by vanishing coordinates.

    chart_equations lists, for every chart the subspace meets, the chart
    coordinates that vanish on it; charts it misses appear in
    disjoint_charts.  The intrinsic space records what the subspace is on
    its own (a point, a pair of points, a projective line).
    """

    name: str
    ambient: str
    chart_equations: tuple[tuple[str, tuple[str, ...]], ...]
    disjoint_charts: tuple[str, ...]
    intrinsic: Space

    def meets(self) -> tuple[str, ...]:
        return tuple(cid for cid, _ in self.chart_equations)

    def equations_in(self, chart_id: str) -> tuple[str, ...]:
        for cid, eqs in self.chart_equations:
            if cid == chart_id:
                return eqs
        raise KeyError(chart_id)


@dataclass(frozen=True)
class Decomposition:
    total: Space
    closed: ClosedSubspace
    complement: Space

    def to_json(self) -> dict:
        return {
            "total": self.total.name,
            "subspace": self.closed.name,
            "subspace_equations": {
                cid: list(eqs) for cid, eqs in self.closed.chart_equations
            },
            "complement": self.complement.name,
        }


def _point_space(n: int = 1) -> Space:
    charts = [Chart(f"pt{i}" if n > 1 else "pt", 0, ()) for i in range(n)]
    name = "point" if n == 1 else f"points({n})"
    return Space(name, tuple(charts), (), compact=True, params={})


def builtin_decompositions(space: Space) -> list[Decomposition]:
    """All registered ways of writing the space as (complement) + (closed
    subspace), with the complement identified by name."""
    name = space.name
    if name == "P1":
        infinity = ClosedSubspace(
            "{infinity}", "P1", (("U1", ("w",)),), ("U0",), _point_space()
        )
        both = ClosedSubspace(
            "{0,infinity}", "P1", (("U0", ("z",)), ("U1", ("w",))), (), _point_space(2)
        )
        return [
            Decomposition(space, infinity, affine(1)),
            Decomposition(space, both, cstar()),
        ]
    if name == "P2":
        p = ClosedSubspace(
            "{p}", "P2", (("U0", ("z", "w")),), ("U1", "U2"), _point_space()
        )
        return [Decomposition(space, p, line_bundle(-1))]
    if name == "Affine(2)":
        origin = ClosedSubspace(
            "{origin}", "Affine(2)", (("U", ("z", "w")),), (), _point_space()
        )
        return [Decomposition(space, origin, punctured_plane())]
    if name.startswith("Hirzebruch("):
        k = int(space.params["k"])
        y = [
            ClosedSubspace("Y0", name, (("X0", ("z0",)), ("X3", ("z3",))), ("X1", "X2"), p1()),
            ClosedSubspace("Y1", name, (("X0", ("w0",)), ("X1", ("w1",))), ("X2", "X3"), p1()),
            ClosedSubspace("Y2", name, (("X1", ("z1",)), ("X2", ("z2",))), ("X0", "X3"), p1()),
            ClosedSubspace("Y3", name, (("X2", ("w2",)), ("X3", ("w3",))), ("X0", "X1"), p1()),
        ]
        complements = [
            product(p1(), affine(1)),
            line_bundle(-k),
            product(p1(), affine(1)),
            line_bundle(k),
        ]
        return [Decomposition(space, yj, cj) for yj, cj in zip(y, complements)]
    return []


# ---------------------------------------------------------------------------
# space-spec files
# ---------------------------------------------------------------------------

def space_from_spec(data: dict) -> Space:
    """Parse a space description: either {"builtin": name, ...params} or a
    custom atlas {"charts": [...], "transitions": [...], "compact": bool}."""
    if not isinstance(data, dict):
        raise SpaceSpecError("space spec must be a JSON object")
    if "builtin" in data:
        params = {key: val for key, val in data.items() if key != "builtin"}
        if data["builtin"] == "Product" and isinstance(params.get("factors"), list):
            params["factors"] = [
                space_from_spec(f) if isinstance(f, dict) else f
                for f in params["factors"]
            ]
        return make_builtin(str(data["builtin"]), **params)
    if "charts" not in data or "transitions" not in data or "compact" not in data:
        raise SpaceSpecError(
            "custom atlas needs 'charts', 'transitions' and 'compact' fields"
        )
    try:
        charts = [
            Chart(str(c["id"]), int(c["dim"]), tuple(str(x) for x in c["coordinates"]))
            for c in data["charts"]
        ]
        trans = [
            MonomialMap(
                str(t["from"]),
                str(t["to"]),
                intmat.freeze(t["matrix"]),
            )
            for t in data["transitions"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpaceSpecError(f"malformed atlas: {exc}") from exc
    name = str(data.get("name", "custom"))
    return make_space(name, charts, trans, bool(data["compact"]))
