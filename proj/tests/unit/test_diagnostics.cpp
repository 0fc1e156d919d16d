#include <doctest.h>

#include <cmath>
#include <sstream>

#include "plpcr/diagnostics.hpp"
#include "plpcr/errors.hpp"
#include "plpcr/montecarlo.hpp"

using namespace plpcr;

TEST_CASE("duane_points examples") {
    const double e = std::exp(1.0);
    const FailureHistory h({{1.0, 1}, {e, 1}, {e * e, 1}}, 10.0);
    const auto s = duane_points(h, 1);
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[0].log_time == doctest::Approx(0.0));
    CHECK(s.points[0].log_count == 0.0);
    CHECK(s.points[1].log_time == doctest::Approx(1.0));
    CHECK(s.points[1].log_count == doctest::Approx(std::log(2.0)));
    CHECK(s.points[2].log_time == doctest::Approx(2.0));
    CHECK(s.points[2].log_count == doctest::Approx(std::log(3.0)));

    const auto harvester = duane_points(harvester_fixture(), 1);
    CHECK(harvester.points.size() == 10);
    CHECK(harvester.points[0].log_time == doctest::Approx(std::log(4.987)));
    CHECK(harvester.points[0].log_count == 0.0);

    CHECK_THROWS_AS(duane_points(FailureHistory({{1.0, 2}}, 5.0), 1), Error);
    CHECK_THROWS_AS(duane_points(h, 4), Error);
}

TEST_CASE("duane series counts strictly increase") {
    for (int j = 1; j <= 3; ++j) {
        const auto s = duane_points(harvester_fixture(), j);
        for (std::size_t i = 1; i < s.points.size(); ++i) {
            CHECK(s.points[i].log_count > s.points[i - 1].log_count);
            CHECK(s.points[i].log_time > s.points[i - 1].log_time);
        }
    }
}

TEST_CASE("duane points shift under time rescaling") {
    const auto base = harvester_fixture();
    const double c = 7.25;
    std::vector<FailureRecord> scaled;
    for (const auto& r : base.records()) scaled.push_back({r.time * c, r.cause});
    const FailureHistory h(scaled, base.truncation_time() * c, 3);
    for (int j = 1; j <= 3; ++j) {
        const auto a = duane_points(base, j);
        const auto b = duane_points(h, j);
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(b.points[i].log_time == doctest::Approx(a.points[i].log_time + std::log(c)));
            CHECK(b.points[i].log_count == a.points[i].log_count);
        }
    }
}

TEST_CASE("duane slope approximates beta on long simulated series") {
    for (double beta : {0.6, 1.0, 1.8}) {
        SystemParams truth{{{beta, 800.0, 1}}, 10.0, false};
        RandomSource rng(404, static_cast<std::uint64_t>(beta * 10));
        const auto h = simulate_history(truth, rng);
        REQUIRE(h.size() >= 500);
        const auto line = duane_fit(duane_points(h, 1));
        INFO("beta=" << beta);
        CHECK(std::fabs(line.slope - beta) < 0.1);
    }
}

TEST_CASE("failure_histogram") {
    auto bins = failure_histogram(FailureHistory({}, 50.0), 20.0);
    CHECK(bins.size() == 3);
    for (const auto& b : bins) CHECK(b.count == 0);

    bins = failure_histogram(FailureHistory({{5.0, 1}}, 50.0), 20.0);
    CHECK(bins[0].start == 0.0);
    CHECK(bins[0].count == 1);

    bins = failure_histogram(harvester_fixture(), 20.0);
    CHECK(bins.size() == 13);
    // rows per 20-day bin, tallied independently from the fixture rows
    const std::vector<std::size_t> expected = {4, 3, 4, 5, 6, 3, 6, 3, 3, 2, 6, 3, 0};
    std::size_t total = 0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        CHECK(bins[k].start == 20.0 * k);
        CHECK(bins[k].count == expected[k]);
        total += bins[k].count;
    }
    CHECK(total == 48);

    CHECK_THROWS_AS(failure_histogram(harvester_fixture(), 0.0), DomainError);
}

TEST_CASE("histogram counts always total n") {
    RandomSource rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        SystemParams truth{{{0.5 + sample_uniform(rng), 30.0, 1}}, 13.0, false};
        const auto h = simulate_history(truth, rng);
        const double w = 0.1 + 5.0 * sample_uniform(rng);
        std::size_t total = 0;
        for (const auto& b : failure_histogram(h, w)) total += b.count;
        CHECK(total == h.size());
    }
}

TEST_CASE("diagnostic CSV writers") {
    std::ostringstream out;
    write_duane_csv(out, {duane_points(FailureHistory({{1.0, 1}}, 2.0), 1)});
    CHECK(out.str() == "cause,log_time,log_count\n1,0,0\n");
    std::ostringstream hist;
    write_histogram_csv(hist, failure_histogram(FailureHistory({{1.0, 1}}, 2.0), 1.5));
    CHECK(hist.str() == "bin_start,count\n0,1\n1.5,0\n");
}
