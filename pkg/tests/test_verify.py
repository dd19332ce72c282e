import pytest

from medianswf.report import FAILS, HOLDS, INCONCLUSIVE
from medianswf.verify import CLAIM, DIAGNOSTIC, OPEN, SUITES, run_suite

EXPECTED_FAILED = {
    "structure": ["sum-median-semilattice"],
    "theorem1": ["sp-iff-monotone-independence"],
    "prop3": [],
    "impossibility": [],
    "counterexamples": [],
}


@pytest.fixture(scope="module", params=sorted(SUITES))
def suite(request):
    return run_suite(request.param, 42)


def test_claim_shape(suite):
    ids = [c.id for c in suite.claims]
    assert len(ids) == len(set(ids))
    for c in suite.claims:
        assert c.kind in (CLAIM, OPEN, DIAGNOSTIC)
        assert c.verdict in (HOLDS, FAILS, INCONCLUSIVE)
        assert c.anchor


def test_failed_claims_are_the_recorded_ones(suite):
    assert [c.id for c in suite.failed] == EXPECTED_FAILED[suite.suite]
    assert suite.ok == (not EXPECTED_FAILED[suite.suite])


def test_only_claims_count_as_failures(suite):
    for c in suite.claims:
        if c.kind != CLAIM and c.verdict == FAILS:
            assert c not in suite.failed


def test_suite_dict_is_seed_stamped(suite):
    d = suite.to_dict()
    assert d["seed"] == 42 and d["schema_version"] == "1.0"
    assert d["summary"]["claims"] == len(d["claims"])


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
