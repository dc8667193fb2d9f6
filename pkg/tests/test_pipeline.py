"""End-to-end pipelines: routes, compute, verify, inventory."""

import pytest

from cohomc.atlas import SpaceSpecError, UnknownBuiltinError
from cohomc.catalog import Catalog, NotRegisteredError
from cohomc.groups import ZERO, DirectSum, Series
from cohomc.les import UnderdeterminedError
from cohomc.oracle import truncated_dimension
from cohomc.pipeline import (
    MethodNotApplicableError,
    NoDecompositionError,
    builtin_inventory,
    compute,
    format_inventory,
    resolve_builtin,
    resolve_space,
    routes_for,
    verify,
)


# ---------------------------------------------------------------------------
# space resolution
# ---------------------------------------------------------------------------

def test_builtin_aliases():
    assert resolve_builtin("C1").name == "Affine(1)"
    assert resolve_builtin("C2").name == "Affine(2)"
    assert resolve_builtin("E", k=-2).name == "LineBundle(-2)"
    assert resolve_builtin("H", k=3).name == "Hirzebruch(3)"
    assert resolve_builtin("P1xC1").name == "Product(P1,Affine(1))"
    assert resolve_builtin("C2minus0").name == "C2minus0"


def test_builtin_parameter_validation():
    with pytest.raises(SpaceSpecError):
        resolve_builtin("E")
    with pytest.raises(UnknownBuiltinError):
        resolve_builtin("Torus")
    with pytest.raises(SpaceSpecError):
        resolve_space()
    with pytest.raises(SpaceSpecError):
        resolve_space(builtin="P1", spec={"builtin": "P1"})


# ---------------------------------------------------------------------------
# routes
# ---------------------------------------------------------------------------

def test_negative_unit_bundle_has_two_routes_plane_first():
    routes = routes_for(resolve_builtin("E", k=-1))
    totals = [r.decomposition.total.name for r in routes]
    assert totals == ["P2", "Hirzebruch(1)"]


def test_positive_bundles_route_through_the_infinity_section():
    routes = routes_for(resolve_builtin("E", k=2))
    assert [r.decomposition.total.name for r in routes] == ["Hirzebruch(2)"]
    assert routes[0].decomposition.closed.name == "Y3"


def test_degree_zero_bundle_routes_both_ways():
    routes = routes_for(resolve_builtin("E", k=0))
    assert [r.decomposition.closed.name for r in routes] == ["Y1", "Y3"]


def test_spaces_without_routes():
    assert routes_for(resolve_builtin("P1")) == []


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def test_compute_additive_registers_result_for_catalog_reuse():
    cat = Catalog()
    space = resolve_builtin("E", k=1)
    compute(space, "additive", cat)
    relooked = compute(space, "catalog", cat)
    assert relooked.groups[1] == ZERO
    assert relooked.provenance[1] == "solved"


def test_compute_underdetermined_raises_without_partial():
    with pytest.raises(UnderdeterminedError) as err:
        compute(resolve_builtin("C2minus0"), "additive", Catalog())
    assert err.value.degrees == (2,)


def test_compute_partial_marks_underdetermined():
    out = compute(resolve_builtin("C2minus0"), "additive", Catalog(), partial=True)
    assert out.groups[2] is None
    doc = out.to_json()
    assert doc["groups"]["2"]["group"] == {"type": "underdetermined"}
    assert any(n["code"] == "underdetermined" for n in doc["notes"])


def test_compute_via_selects_the_route():
    cat = Catalog()
    space = resolve_builtin("E", k=-1)
    via_plane = compute(space, "additive", cat, via="P2")
    assert truncated_dimension(via_plane.groups[1], 10) == 120
    via_surface = compute(space, "additive", Catalog(), via="Hirzebruch(1)")
    assert truncated_dimension(via_surface.groups[1], 10) == 65
    with pytest.raises(NoDecompositionError):
        compute(space, "additive", Catalog(), via="Hirzebruch(2)")


def test_compute_conflicting_presentations_keep_the_catalog_entry():
    cat = Catalog()
    space = resolve_builtin("E", k=-1)
    first = compute(space, "additive", cat, via="P2")
    second = compute(space, "additive", cat, via="Hirzebruch(1)")
    assert any(n["code"] == "registration-skipped" for n in second.notes)
    assert not any(n["code"] == "registration-skipped" for n in first.notes)
    # The stored entry is still the first derivation.
    stored = compute(space, "catalog", cat)
    assert truncated_dimension(stored.groups[1], 10) == 120


def test_compute_kunneth_routes_and_errors():
    cat = Catalog()
    out = compute(resolve_builtin("P1xC1"), "kunneth", cat)
    assert isinstance(out.groups[1], Series)
    assert out.groups[2] == ZERO
    with pytest.raises(MethodNotApplicableError):
        compute(resolve_builtin("P1"), "kunneth", cat)


def test_compute_catalog_unregistered_space():
    with pytest.raises(NotRegisteredError):
        compute(resolve_builtin("E", k=5), "catalog", Catalog())


def test_compute_no_decomposition():
    with pytest.raises(NoDecompositionError):
        compute(resolve_builtin("P2"), "additive", Catalog())


def test_explain_payloads():
    out = compute(resolve_builtin("C1"), "additive", Catalog(), explain=True)
    assert out.explain["decomposition"]["total"] == "P1"
    assert any(f["status"] == "solved" for f in out.explain["fragments"])
    labels = [t["label"] for t in out.explain["sequence"]]
    assert labels[0] == "0" and labels[-1] == "0"
    by_label = {t["label"]: t for t in out.explain["sequence"]}
    assert by_label["H^0_c(P1)"]["provenance"] == "axiom"
    assert by_label["H^0_c({infinity})"]["provenance"] == "sections"
    assert by_label["H^0_c(Affine(1))"]["provenance"] == "axiom"
    assert "unknown" in by_label["H^1_c(Affine(1))"]

    kun = compute(resolve_builtin("P1xC1"), "kunneth", Catalog(), explain=True)
    assert kun.explain["factors"] == ["P1", "Affine(1)"]
    assert len(kun.explain["degree_terms"]["1"]) == 2


def test_cstar_output_shape_and_notes():
    out = compute(resolve_builtin("CStar"), "additive", Catalog())
    h1 = out.groups[1]
    assert isinstance(h1, DirectSum) and len(h1.summands) == 2
    assert {s.reference_chart for s in h1.summands} == {"U0", "U1"}
    assert any(n["code"] == "quotient-spread-across-summands" for n in out.notes)


def test_every_registered_route_solves_except_the_open_top_degree():
    requests = [
        ("C1", None, None),
        ("CStar", None, None),
        ("C2minus0", None, None),
        ("E", -1, "P2"),
        ("E", -1, "Hirzebruch(1)"),
        ("E", 0, None),
        ("P1xC1", None, None),
    ]
    requests += [("E", k, None) for k in (-4, -3, -2, 1, 2, 3, 4)]
    for builtin, k, via in requests:
        space = resolve_builtin(builtin, k=k)
        out = compute(space, "additive", Catalog(), via=via, partial=True)
        open_degrees = [q for q, g in out.groups.items() if g is None]
        if builtin == "C2minus0":
            assert open_degrees == [2]
        else:
            assert open_degrees == [], (builtin, k, via)


def test_kunneth_and_additive_register_compatibly():
    cat = Catalog()
    space = resolve_builtin("P1xC1")
    first = compute(space, "kunneth", cat)
    second = compute(space, "additive", cat)
    assert not any(n["code"] == "registration-skipped" for n in first.notes)
    assert not any(n["code"] == "registration-skipped" for n in second.notes)
    stored = compute(space, "catalog", cat)
    assert stored.provenance[1] == "kunneth"  # the first registration wins


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_product_both_ways():
    report = verify(
        resolve_builtin("P1xC1"), ("additive", "kunneth"), Catalog(), bound=16
    )
    assert report["all_equal"]
    assert set(report["degrees"]) == {"0", "1", "2"}
    assert all(v["verdict"] == "equal" for v in report["degrees"].values())


def test_verify_additive_against_catalog_self_consistency():
    report = verify(resolve_builtin("E", k=1), ("additive", "catalog"), Catalog())
    assert report["all_equal"]


def test_verify_with_inapplicable_method_propagates():
    with pytest.raises(MethodNotApplicableError):
        verify(resolve_builtin("E", k=1), ("additive", "kunneth"), Catalog())


def test_verify_needs_exactly_two_methods():
    with pytest.raises(SpaceSpecError):
        verify(resolve_builtin("P1xC1"), ("additive",), Catalog())


# ---------------------------------------------------------------------------
# inventory
# ---------------------------------------------------------------------------

def test_inventory_lists_surface_decompositions():
    rows = {row["name"]: row for row in builtin_inventory()}
    surface = rows["Hirzebruch (alias H)"]
    assert [d["complement"] for d in surface["decompositions"]] == [
        "Product(P1,Affine(1))",
        "LineBundle(-k)",
        "Product(P1,Affine(1))",
        "LineBundle(k)",
    ]
    plane = rows["P2"]
    assert plane["decompositions"][0]["complement"] == "LineBundle(-1)"


def test_inventory_formats_deterministically():
    cat = Catalog()
    text1 = format_inventory(builtin_inventory(), cat)
    text2 = format_inventory(builtin_inventory(), cat)
    assert text1 == text2
    assert "builtin spaces:" in text1
    assert "P2 = LineBundle(-1) + {p}" in text1
