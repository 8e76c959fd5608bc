import copy
import json

import pytest

from quasidet.catalog import (
    CATALOG,
    IdentityDescriptor,
    catalog,
    get_identity,
)
from quasidet.harness import (
    RunConfig,
    identity_lines,
    load_report,
    replay_counterexample,
    replay_from_report,
    run_identity,
    run_suite,
    write_report,
)

FAST = RunConfig(seed=0xC0FFEE, samples=3)


def strip_timing(report):
    out = copy.deepcopy(report)
    out.pop("elapsed_s", None)
    return out


class TestCatalog:
    def test_census_at_least_thirty(self):
        assert len(catalog()) >= 30

    def test_ids_unique(self):
        ids = [d.ident for d in catalog()]
        assert len(ids) == len(set(ids))

    def test_expected_ids_present(self):
        ids = {d.ident for d in catalog()}
        for wanted in (
            "SYLVESTER",
            "GAUSS-DECOMP",
            "PROD-QPC",
            "CAYLEY-HAMILTON",
            "ROGERS-RAMANUJAN",
            "FALSE-QDET-ENTRY",
        ):
            assert wanted in ids

    def test_listing_mentions_every_id(self):
        text = "\n".join(identity_lines())
        for desc in catalog():
            assert desc.ident in text

    def test_every_descriptor_names_operations(self):
        for desc in catalog():
            assert desc.operations, desc.ident


class TestDeterminism:
    def test_identical_reports_for_identical_config(self):
        cfg = RunConfig(seed=123, samples=2, modules=["core", "harness"])
        a = run_suite(cfg)
        b = run_suite(cfg)
        assert strip_timing(a) == strip_timing(b)

    def test_seed_changes_draws(self):
        c1 = run_identity(get_identity("FALSE-QDET-ENTRY"), RunConfig(seed=1, samples=2))
        c2 = run_identity(get_identity("FALSE-QDET-ENTRY"), RunConfig(seed=2, samples=2))
        assert c1.counterexample["draws"] != c2.counterexample["draws"]

    def test_verdicts_independent_of_execution_order(self):
        # per-(identity, n, d, sample) streams make any scheduling
        # (parallel included) produce the verdicts of a serial run
        cfg = RunConfig(seed=31, samples=2, modules=["contfrac"])
        report = run_suite(cfg)
        idents = [e["id"] for e in report["identities"]]
        reversed_runs = {
            ident: run_identity(get_identity(ident), cfg).to_json()
            for ident in reversed(idents)
        }
        for entry in report["identities"]:
            solo = reversed_runs[entry["id"]]
            assert solo["status"] == entry["status"]
            assert solo["cells"] == entry["cells"]


class TestControls:
    def test_negative_controls_produce_counterexamples(self):
        for ident in ("FALSE-QDET-ENTRY", "FALSE-COMMUTE"):
            verdict = run_identity(get_identity(ident), FAST)
            assert verdict.status == "counterexample"

    def test_witness_entries_find_their_witnesses(self):
        for ident in ("ASYMM-Y1Y2", "ASYMM-S2-MISORDERED"):
            verdict = run_identity(get_identity(ident), RunConfig(seed=5, samples=20))
            assert verdict.status == "counterexample"

    def test_controls_meeting_expectation_exit_zero(self):
        report = run_suite(RunConfig(seed=9, samples=2, only=["FALSE-QDET-ENTRY"]))
        assert report["exit_code"] == 0
        assert report["identities"][0]["status"] == "counterexample"
        assert report["identities"][0]["met_expectation"]

    def test_vacuous_witness_cells_fail_the_run(self):
        # filtering away the only cell leaves the witness unfound
        report = run_suite(RunConfig(seed=9, samples=2, only=["ASYMM-Y1Y2"], dims=[1]))
        assert report["exit_code"] == 1
        assert not report["identities"][0]["met_expectation"]


class TestReplay:
    def test_control_replays_bit_exactly(self):
        verdict = run_identity(get_identity("FALSE-QDET-ENTRY"), FAST)
        result = replay_counterexample(verdict.counterexample)
        assert result["reproduced"]
        assert result["lhs"] == verdict.counterexample["lhs"]

    def test_replay_across_serialization(self, tmp_path):
        cfg = RunConfig(seed=0xBEEF, samples=5, only=["FALSE-COMMUTE"])
        report = run_suite(cfg)
        path = tmp_path / "report.json"
        write_report(report, str(path))
        loaded = load_report(str(path))
        result = replay_from_report(loaded, "FALSE-COMMUTE")
        assert result["reproduced"]

    def test_synthetic_injected_mismatch(self):
        # a one-off descriptor whose check always mis-compares: the
        # recorded draw log must replay to the same mismatch
        def check(ctx):
            x = ctx.draw.scalar(ctx.ring)
            ctx.compare("off-by-one", x, x + ctx.ring.one)

        desc = IdentityDescriptor(
            ident="SYNTHETIC-MISMATCH",
            module="harness",
            statement="synthetic control",
            cells=((0, 1),),
            check=check,
            expect="counterexample",
            operations=("none",),
        )
        CATALOG.append(desc)
        try:
            verdict = run_identity(desc, FAST)
            assert verdict.status == "counterexample"
            result = replay_counterexample(verdict.counterexample)
            assert result["reproduced"]
        finally:
            CATALOG.remove(desc)

    def test_missing_counterexample_raises(self):
        report = run_suite(RunConfig(seed=9, samples=1, only=["RING-AXIOMS"]))
        with pytest.raises(KeyError):
            replay_from_report(report, "RING-AXIOMS")


class TestRunSemantics:
    def test_unknown_identity_rejected(self):
        with pytest.raises(KeyError):
            run_suite(RunConfig(only=["NOT-AN-ID"]))

    def test_filters_by_module(self):
        report = run_suite(RunConfig(seed=3, samples=1, modules=["contfrac"]))
        assert report["identities"]
        assert all(e["module"] == "contfrac" for e in report["identities"])

    def test_cells_record_successes(self):
        verdict = run_identity(get_identity("QDET-CLOSED-FORMS"), FAST)
        assert verdict.cells
        for cell in verdict.cells:
            assert cell["succeeded"] >= 1 or cell["status"] == "domain_exhausted"

    def test_non_vacuity_bookkeeping(self):
        verdict = run_identity(get_identity("CRAMER"), FAST)
        for cell in verdict.cells:
            assert cell["attempted"] >= cell["succeeded"] >= 1

    def test_report_schema_fields(self):
        report = run_suite(RunConfig(seed=3, samples=1, only=["RING-AXIOMS"]))
        assert report["schema_version"] == 1
        assert set(report["summary"]) == {
            "total",
            "verified",
            "counterexamples",
            "domain_exhausted",
            "unexpected",
        }
        entry = report["identities"][0]
        assert {"id", "module", "statement", "status", "cells"} <= set(entry)
        json.dumps(report)  # JSON-serializable end to end
