import copy
from fractions import Fraction

import pytest

from rhocert.certificate import (
    check_certificate,
    dumps,
    emit,
    loads,
    read_certificate,
    strip_timestamp,
)
from rhocert.pipeline import RunConfig, run_verify


@pytest.fixture(scope="module")
def outcome(oracle):
    return run_verify(RunConfig(sieve_limit=10**6), oracle=oracle)


def index_of(records, pred):
    return next(i for i, r in enumerate(records) if pred(r))


def test_default_run_passes(outcome):
    assert outcome.passed
    footer = outcome.records[-1]
    assert footer["verdict"] == "pass"
    assert footer["equality"] == [8, 9]
    assert footer["constant"] == 141


def test_checker_accepts(outcome):
    res = check_certificate(outcome.records)
    assert res.ok, res.errors[:5]


def test_round_trip_byte_identical(outcome, tmp_path):
    text = emit(outcome.records)
    path = tmp_path / "cert.jsonl"
    path.write_text(text)
    parsed = read_certificate(path)
    assert emit(parsed) == text
    assert all(dumps(loads(line)) == line for line in text.splitlines())


def test_deterministic_except_timestamp(oracle, outcome):
    again = run_verify(RunConfig(sieve_limit=10**6), oracle=oracle, timestamp="1970-01-01T00:00:00+00:00")
    assert again.records[0]["timestamp"] != outcome.records[0]["timestamp"]
    assert strip_timestamp(again.records) == strip_timestamp(outcome.records)


def test_records_in_pipeline_order(outcome):
    ns = [r["n"] for r in outcome.records if "n" in r]
    assert ns == sorted(ns)


def test_perturbed_pi_detected(outcome):
    records = copy.deepcopy(outcome.records)
    i = index_of(records, lambda r: r["type"] == "elimination_witness" and r["n"] == 9 and r["k"] == 50)
    records[i]["pi_k"] += 1
    res = check_certificate(records)
    assert not res.ok
    assert any(e.startswith(f"record {i}:") and "pi_k" in e for e in res.errors)


def test_perturbed_upper_detected(outcome):
    records = copy.deepcopy(outcome.records)
    i = index_of(records, lambda r: r["type"] == "bound_entry" and r["n"] == 9)
    records[i]["upper"] = 44
    res = check_certificate(records)
    assert any(e.startswith(f"record {i}:") for e in res.errors)


def test_skipped_candidate_detected(outcome):
    records = copy.deepcopy(outcome.records)
    i = index_of(records, lambda r: r["type"] == "elimination_witness" and r["n"] == 9 and r["k"] == 48)
    del records[i]
    assert not check_certificate(records).ok


def test_flipped_verdict_detected(oracle):
    out = run_verify(RunConfig(K=Fraction(4), sieve_limit=10**6), oracle=oracle)
    assert check_certificate(out.records).ok
    records = copy.deepcopy(out.records)
    records[-1]["verdict"] = "pass"
    assert not check_certificate(records).ok


def test_vacuous_certificate_rejected(outcome):
    records = [outcome.records[0], outcome.records[-1]]
    res = check_certificate(records)
    assert not res.ok


def test_missing_header_rejected(outcome):
    assert not check_certificate(outcome.records[1:]).ok
    assert not check_certificate([]).ok


def test_checker_does_not_use_engine(outcome, monkeypatch):
    from rhocert import elimination, ledger

    def boom(*a, **k):
        raise AssertionError("checker called into the engine")

    for mod, name in [(elimination, "plum_threshold"), (elimination, "refine_upper"),
                      (elimination, "eliminable"), (elimination, "mustard_check"),
                      (ledger, "build_ledger")]:
        monkeypatch.setattr(mod, name, boom)
    assert check_certificate(outcome.records).ok


@pytest.mark.parametrize(
    "config",
    [
        RunConfig(K=Fraction(17, 3), method="oboe", sieve_limit=10**6),
        RunConfig(slope=3, sieve_limit=10**6),
    ],
    ids=["oboe-17/3", "slope3"],
)
def test_variant_certificates_check(oracle, config):
    out = run_verify(config, oracle=oracle)
    assert out.passed
    assert check_certificate(out.records).ok


def test_slope3_labelled_conditional(oracle):
    out = run_verify(RunConfig(slope=3, sieve_limit=10**6), oracle=oracle)
    assert out.verdict == "conditional"
    records = copy.deepcopy(out.records)
    records[-1]["verdict"] = "pass"
    assert not check_certificate(records).ok
