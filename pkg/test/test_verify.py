import numpy as np
import pytest

from cartanquot import domains, verify
from cartanquot.exceptions import ConfigurationException, InvalidPointException
from cartanquot.run_config import RunConfig
from cartanquot.verify import CheckOutcome, SuiteEntry

MODULES = {"domains", "proper_maps", "reflections", "biholomorphisms", "bergman", "automorphisms"}
FAST_ENTRIES = ["domains.eq1_equivalence", "proper_maps.deck_identities", "reflections.nonex_intertwining",
                "biholomorphisms.round_trip", "bergman.first_slot_constancy", "bergman.witness_zero",
                "automorphisms.rho_composition", "automorphisms.block_extension"]


class TestManifest:
    def test_names_are_unique_and_grouped_by_module(self):
        names = [entry["name"] for entry in verify.manifest()]
        assert len(names) == len(set(names)), "suite entry names must be unique"
        assert {entry["module"] for entry in verify.manifest()} == MODULES
        for entry in verify.manifest():
            assert entry["name"].startswith(entry["module"] + ".")
            assert entry["invariant"], "{} needs an invariant description".format(entry["name"])

    def test_only_the_volume_identity_is_slow(self):
        assert [entry.name for entry in verify.SUITE if entry.slow] == ["bergman.volume_identity"]

    def test_select(self):
        assert len(verify.select()) == len(verify.SUITE) - 1, "slow entries are skipped by default"
        assert len(verify.select(include_slow=True)) == len(verify.SUITE)
        picked = verify.select(["bergman.witness_zero", "domains.truncation"])
        assert [entry.name for entry in picked] == ["domains.truncation", "bergman.witness_zero"], \
            "selection keeps manifest order"

    def test_unknown_entry(self):
        with pytest.raises(ConfigurationException):
            verify.select(["domains.unknown"])


class TestOutcomes:
    def test_outcome_verdict(self):
        assert CheckOutcome(1e-13, 1e-12).passed
        assert not CheckOutcome(1e-11, 1e-12).passed
        assert not CheckOutcome(0.0, 1.0, passed=False).passed, "an explicit verdict wins"

    def test_exceptions_become_failed_results(self):
        def broken(samples, rng):
            raise InvalidPointException("bad point")

        entry = SuiteEntry("domains.broken", "always raises", broken, 10)
        result = verify.run_entry(entry, RunConfig())
        assert not result.passed
        assert result.residual is None
        assert result.to_json()["error"] == "bad point"
        assert result.module == "domains"

    def test_sample_count_follows_the_config(self):
        seen = []

        def record(samples, rng):
            seen.append(samples)
            return CheckOutcome(0.0, 0.0)

        entry = SuiteEntry("domains.record", "records its sample count", record, 1000, minimum=100)
        verify.run_entry(entry, RunConfig())
        verify.run_entry(entry, RunConfig(samples=10))
        verify.run_entry(entry, RunConfig(samples=500))
        assert seen == [1000, 100, 500]


class TestRunSuite:
    def test_fast_entries_pass(self):
        report = verify.run_suite(RunConfig(seed=3, samples=200), FAST_ENTRIES)
        failed = [str(result) for result in report.results if not result.passed]
        assert report.passed, "failed checks: {}".format(failed)
        json = report.to_json()
        assert json["command"] == "verify-suite"
        assert [check["name"] for check in json["checks"]] == [entry.name for entry in verify.select(FAST_ENTRIES)]

    def test_parallel_run_gives_the_same_results(self):
        serial = verify.run_suite(RunConfig(seed=5, samples=200, jobs=1), FAST_ENTRIES)
        parallel = verify.run_suite(RunConfig(seed=5, samples=200, jobs=4), FAST_ENTRIES)
        assert serial.to_json()["checks"] == parallel.to_json()["checks"], "jobs must not change the results"

    def test_seed_changes_sampled_residuals(self):
        first = verify.run_suite(RunConfig(seed=1, samples=200), ["automorphisms.rho_composition"])
        second = verify.run_suite(RunConfig(seed=2, samples=200), ["automorphisms.rho_composition"])
        assert first.passed and second.passed
        assert first.results[0].residual != second.results[0].residual

    @pytest.mark.slow
    def test_default_suite(self):
        report = verify.run_suite(RunConfig(jobs=4))
        failed = [str(result) for result in report.results if not result.passed]
        assert report.passed, "failed checks: {}".format(failed)


class TestShilovHelpers:
    def test_random_polynomials(self):
        exponents, coefficients = verify.random_polynomials(np.random.default_rng(0), 2, 7)
        assert exponents.shape == (10, 2), "ten monomials of degree at most 3 in 2 variables"
        assert coefficients.shape == (10, 7)
        assert np.all(exponents.sum(axis=1) <= 3)

    @pytest.mark.parametrize("domain", [domains.LieBall(2), domains.QuotientL(2)])
    def test_polynomials_peak_on_the_shilov_boundary(self, domain):
        ratio = verify.shilov_ratio(domain, 20, 2000, np.random.default_rng(1))
        assert ratio > 0.9, "sampled Shilov maxima should dominate interior values"
