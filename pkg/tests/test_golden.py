import pytest

from wahlkit.golden import load_examples, run_example

RECORDS = load_examples()


@pytest.mark.parametrize("rec", RECORDS, ids=[r["id"] for r in RECORDS])
def test_example(rec):
    out = run_example(rec)
    assert out.ok, f"expected {out.expect}, got {out.got}"


def test_ids_unique():
    ids = [r["id"] for r in RECORDS]
    assert len(ids) == len(set(ids))


def test_printed_variants_differ_from_expectations():
    for rec in RECORDS:
        if "printed" in rec:
            assert rec["printed"] != rec["expect"]
            assert rec.get("note")
