import pytest

from nambulie.catalog import CATALOG, WITNESS_LIMIT, fi_label, record, run_entry, seeded_functions
from nambulie.extcalc import Chart


@pytest.mark.parametrize("name", list(CATALOG))
def test_entry_meets_expectation(name):
    res = run_entry(name, suite_size=3)
    assert res.met, [r.as_dict() for r in res.records if not r.passed]
    if res.expected == "fail":
        assert any(r.witness for r in res.records if not r.passed)


def test_expected_failures_have_notes():
    for e in CATALOG.values():
        if e.expected == "fail" and not e.id.startswith("negative-"):
            assert e.note


def test_unknown_entry():
    with pytest.raises(KeyError):
        run_entry("no-such-entry")


def test_witness_truncated():
    r = record("x", "y", False, "w" * (WITNESS_LIMIT + 50))
    assert len(r.witness) <= WITNESS_LIMIT + 3
    assert r.as_dict()["verdict"] == "fail"
    assert "witness" not in record("x", "y", True).as_dict()


def test_fi_labels_are_one_based():
    P = Chart.standard(4).basis_multivector((0, 1, 2))
    assert fi_label(((0, 1), (0, 2, 3)), P) == "f=(x1, x2) g=(x1, x3, x4)"
    assert fi_label(("random", 2), P) == "random tuple #2"


def test_seeded_functions_deterministic():
    ch = Chart(("w",))
    assert seeded_functions(ch, 3, 1, "t") == seeded_functions(ch, 3, 1, "t")
    assert seeded_functions(ch, 3, 1, "t") != seeded_functions(ch, 3, 2, "t")
