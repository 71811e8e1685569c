import json
from importlib import resources

import jsonschema

from grminfo.tables import (
    build_table_report,
    diff_rows,
    golden_inconsistencies,
    load_golden,
    regenerate,
)


def test_golden_files_are_complete():
    assert len(load_golden(1)) == 16
    assert len(load_golden(2)) == 13


def test_second_table_regenerates_exactly():
    rep = build_table_report(2, verify=False)
    assert rep.rows == load_golden(2)
    assert rep.diffs == [] and rep.notes == []
    # (3, 9) and (5, 9) appear twice with different (r1, a)
    assert sum(1 for r in rep.rows if r[:2] == (3, 9)) == 2
    assert sum(1 for r in rep.rows if r[:2] == (5, 9)) == 2


def test_first_table_rows():
    rep = build_table_report(1, verify=False)
    golden = load_golden(1)
    assert len(rep.rows) == len(golden) == 16
    differing = [i for i, (g, r) in enumerate(zip(golden, rep.rows)) if g != r]
    assert differing == [13]
    assert golden[13] == (5, 8, 313, 1284) and rep.rows[13] == (5, 8, 313, 1248)
    # the published entry cannot be a factorization of 5^8 - 1 at all
    assert golden_inconsistencies(1, golden) == [
        "published row (5, 8, 313, 1284): r1*r2 = 401892 != n = 390624"
    ]


def test_first_table_rule():
    """Each first-order row is the smallest odd r1 whose order Ord_r1(q) is m."""
    for d in regenerate(1):
        assert d.r1 % 2 == 1 and d.a == d.m
        assert d.r1 * d.r2 == d.q**d.m - 1


def test_every_row_engines_agree():
    for order in (1, 2):
        rep = build_table_report(order, verify=False)
        assert all(c["engines_agree"] for c in rep.checks)
        assert all(c["gamma_size"] >= c["row"][1] for c in rep.checks)


def test_diff_rows():
    assert diff_rows([(1, 2, 3, 4)], [(1, 2, 3, 4)]) == []
    assert diff_rows([(1, 2, 3, 4)], []) == ["row 1: published (1, 2, 3, 4), regenerated None"]


def test_report_json_schema():
    schema = json.loads(resources.files("grminfo").joinpath("data").joinpath("tables.schema.json").read_text())
    for order in (1, 2):
        doc = build_table_report(order, verify=True, max_size=800).to_json()
        jsonschema.validate(doc, schema)
        assert json.loads(json.dumps(doc)) == doc
        verified = [r for r in doc["rows"] if r["verified"] is not None]
        assert verified and all(r["verified"] for r in verified)
        assert all(r["ranks"] is None for r in doc["rows"] if r["verified"] is None)
