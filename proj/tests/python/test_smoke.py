import math

import pytest

import plpcr


def test_special_functions():
    assert plpcr.ln_gamma(5.0) == pytest.approx(math.log(24.0), abs=1e-12)
    assert plpcr.reg_gamma_p(1.0, 1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-14)
    q = plpcr.gamma_quantile(10.5, 1.0, 0.975)
    assert plpcr.reg_gamma_p(10.5, q) == pytest.approx(0.975, abs=1e-10)


def test_harvester_posterior_and_interval():
    h = plpcr.harvester_fixture()
    assert len(h) == 48
    assert h.truncation_time == 254.0
    stats = plpcr.cause_stats(h)
    assert stats["counts"] == [10, 24, 14]
    laws = plpcr.posterior(h)
    assert laws["alpha1"] == (10.5, 1.0)
    lo, hi = plpcr.credible_interval(h, "alpha1", 0.95)
    assert abs(lo - 5.141) < 1e-3 and abs(hi - 17.739) < 1e-3


def test_fit_table():
    table = plpcr.fit(plpcr.harvester_fixture(), methods=["mle", "reference"])
    assert len(table["rows"]) == 12
    first = table["rows"][0]
    assert first["parameter"] == "beta1"
    assert first["point"] == pytest.approx(10 / plpcr.cause_stats(plpcr.harvester_fixture())["log_sums"][0])


def test_errors_carry_kind():
    with pytest.raises(plpcr.PlpcrError) as info:
        plpcr.FailureHistory([(2.0, 1), (1.0, 1)], 5.0)
    assert info.value.kind == "validation"
    with pytest.raises(plpcr.PlpcrError) as info:
        plpcr.fit(plpcr.FailureHistory([], 5.0))
    assert info.value.kind == "estimation"


def test_study_and_duane():
    report = plpcr.run_study("scenario3", replications=300, seed=5, workers=2)
    assert report["replications_used"] + report["replications_discarded"] == 300
    again = plpcr.run_study("scenario3", replications=300, seed=5, workers=1)
    assert report == again
    pts = plpcr.duane_points(plpcr.harvester_fixture(), 1)
    assert len(pts) == 10 and pts[0][1] == 0.0
