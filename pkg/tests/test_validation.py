"""Tests for the oracle-equivalence suite."""
from corrperf.models import Topology
from corrperf.validation import closed_form_deviation, holder_deviation, oracle_instances, run_validation


def test_oracle_instances_cover_catalog():
    """Every topology, both interaction families and n = 1..3 appear within the spin cap."""
    models = list(oracle_instances())
    assert {m.bath.topology for m in models} == set(Topology)
    assert {m.g_prime for m in models} == {0.0, 0.1}
    assert {m.n for m in models} == {1, 2, 3}
    assert all(m.n + m.total_bath_spins <= 8 for m in models)


def test_closed_form_checks():
    for p in (0.0, 0.01, 0.1):
        assert closed_form_deviation(p) < 1e-12


def test_holder_checks():
    assert holder_deviation("gaussian", 1e-10) < 1e-10
    assert holder_deviation("uniform", 1e-10) < 1e-10


def test_full_suite_passes():
    """All checks stay below 1e-9 on a coarse grid."""
    report = run_validation(tolerance=1e-9, grid_points=8)
    assert report.passed, [c.name for c in report.failures]
    assert report.max_deviation < 1e-9
    names = {c.name.split("[")[0] for c in report.checks}
    assert names == {
        "sector-vs-dense",
        "chi-vs-direct",
        "kraus-completeness",
        "omega-cancellation",
        "xy-summands",
        "closed-form",
        "holder",
    }
