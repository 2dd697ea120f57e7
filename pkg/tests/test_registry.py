import pytest

from graphseries.errors import UnknownIdentity
from graphseries.registry import (
    REGISTRY,
    Check,
    IdentityRecord,
    Variant,
    graph_side,
    list_identities,
    verify,
    verify_all,
)
from graphseries.series import Series

from oracles import graph_series


def test_a2_pass_with_values():
    r = verify("A2")
    assert r.status == "pass"
    assert [graph_side("A2", 10).coeff(e) for e in range(5)] == [1, 2, 4, 7, 12]
    assert [graph_side("A2", 8).coeff(e) for e in range(9)] == graph_series(2, [(1, 2)], 8)


def test_c5_prefactor_resolution():
    r = verify("C5")
    assert r.status == "resolved-variant"
    assert "(q)^2" in r.variant
    (rej,) = r.rejected
    assert (rej["exponent"], rej["lhs"], rej["rhs"]) == ("1", "5", "4")


def test_tail_at_thirty():
    assert verify("TAIL", 30).status == "pass"


def test_toolkit_has_eight_passes():
    reports = verify_all(tags=["TOOLKIT"])
    assert len(reports) == 8
    assert all(r.status == "pass" for r in reports)


def test_d_series():
    reports = {r.id: r for r in verify_all(tags=["D-series"])}
    assert set(reports) == {"D4-LERCH", "D4-U", "D4-THETA", "D5-LERCH", "D5-REWRITE", "D5-THETA", "BAILEY-D5"}
    assert all(r.ok for r in reports.values())


def test_empty_registry():
    assert verify_all(registry={}) == []


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify("NOPE")


def test_failure_is_data():
    bad = IdentityRecord(
        "TMP-BAD",
        (Check("1/(1-q) vs 1+q", lambda N: (1 - Series.monomial(1)).invert(order=N), lambda N: 1 + Series.monomial(1)),),
        5,
        "deliberately false",
    )
    (r,) = verify_all(registry={"TMP-BAD": bad})
    assert r.status == "fail"
    assert r.mismatch == {"check": "1/(1-q) vs 1+q", "exponent": "2", "lhs": "1", "rhs": "0"}
    assert "TMP-BAD" not in REGISTRY


def test_ambiguous_variants_fail():
    one = lambda N: Series.constant(1).truncate(N)
    rec = IdentityRecord("TMP-AMBIG", (), 5, "two identical variants", variants=(
        Variant("a", (Check("x", one, one),)), Variant("b", (Check("x", one, one),))))
    (r,) = verify_all(registry={"TMP-AMBIG": rec})
    assert r.status == "fail"
    assert r.mismatch["matched"] == ["a", "b"]


def test_deterministic_reports():
    assert verify("D4-U").as_dict() == verify("D4-U").as_dict()
    assert "wall_time" not in verify("A3").as_dict()
    assert verify("A3", timing=True).wall_time is not None


EXPECTED_VARIANTS = {
    "C5": "derived",
    "GAMMA8": "derived",
    "E6": "derived",
    "D4-LERCH": "expansion",
    "D5-THETA": "theorem",
    "D5-TE": "factor 1",
    "T2-A": "tree",
    "T2-B": "tree",
    "SEC9": "q^-1",
    "P42-3": "relation",
    "EE-FINITE": "(-1)^k",
    "B3-H1": "n >= 0",
}


@pytest.mark.parametrize("ident", sorted(EXPECTED_VARIANTS))
def test_variant_choices(ident):
    r = verify(ident)
    assert r.status == "resolved-variant"
    assert EXPECTED_VARIANTS[ident] in r.variant
    assert len(r.rejected) == len(REGISTRY[ident].variants) - 1


def test_listing_and_anchors():
    items = list_identities()
    ids = {i["id"] for i in items}
    required = {
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A7-BOSONIC", "SHIFT-3", "SHIFT-4", "EE", "ID3",
        "C5", "GAMMA8", "P42-1", "P42-2", "P42-3", "FRAME-5-5", "BELL", "BELL-CURIOUS", "STACKS-MIN",
        "D4-LERCH", "D4-U", "D4-THETA", "E2-LEMMA", "D5-LERCH", "D5-REWRITE", "D5-THETA", "BAILEY-D5",
        "E6", "EULER", "AF", "GUPTA", "TAIL", "AGL", "FINE-1", "FINE-2", "LERCH", "Z-IDENTITY",
        "F1", "F2", "F3", "B3-H1", "B3-H2", "SIGMA-REL", "C3-CHI1", "C3-CHI0", "HGRAPH", "T2-A", "T2-B",
        "LSTAR-3", "LSTAR-4", "LSTAR-5", "JACOBI", "SEC9", "FOLD-I1", "FOLD-I2", "FOLD-F",
    }
    assert required <= ids
    assert all(i["anchor"] for i in items)


def test_default_orders_follow_graph_size():
    assert REGISTRY["A8"].default_order == 24
    assert REGISTRY["A6"].default_order == 30
    assert REGISTRY["C5"].default_order == 50
    assert REGISTRY["EULER"].default_order == 40


@pytest.mark.parametrize("ident", sorted(REGISTRY))
def test_every_identity(ident):
    r = verify(ident)
    assert r.ok, r.as_dict()
