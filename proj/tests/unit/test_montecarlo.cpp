#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/oracles.hpp"
#include "plpcr/errors.hpp"
#include "plpcr/montecarlo.hpp"

using namespace plpcr;

namespace {

std::vector<double> pooled_scaled_times(double beta, std::size_t target, std::uint64_t seed) {
    const double big_t = 1.0;
    SystemParams truth{{{beta, 1000.0, 1}}, big_t, false};
    std::vector<double> times;
    for (std::uint64_t r = 0; times.size() < target; ++r) {
        RandomSource rng(seed, r);
        for (const auto& rec : simulate_history(truth, rng).records()) times.push_back(rec.time / big_t);
    }
    times.resize(target);
    return times;
}

}  // namespace

TEST_CASE("simulated times follow the (t/T)^beta law") {
    for (double beta : {0.25, 1.0, 2.0}) {
        const auto times = pooled_scaled_times(beta, 100000, 5);
        const double d = oracle::ks_distance(times, [beta](double u) { return std::pow(u, beta); });
        INFO("beta=" << beta << " ks=" << d);
        CHECK(d < 0.01);
    }
}

TEST_CASE("simulated histories are valid and labelled") {
    const auto s = scenario_preset("scenario3");
    RandomSource rng(9);
    for (int r = 0; r < 200; ++r) {
        const auto h = simulate_history(s, rng);
        CHECK(h.num_causes() == 2);
        double prev = 0.0;
        for (const auto& rec : h.records()) {
            CHECK(rec.time > prev);
            CHECK(rec.time < s.truth.truncation_time);
            CHECK((rec.cause == 1 || rec.cause == 2));
            prev = rec.time;
        }
    }
}

TEST_CASE("mean failure count per cause matches alpha") {
    const auto s = scenario_preset("scenario1");
    const int reps = 100000;
    double total1 = 0.0;
    for (int r = 0; r < reps; ++r) {
        RandomSource rng(s.seed, static_cast<std::uint64_t>(r));
        total1 += cause_stats(simulate_history(s, rng)).count(1);
    }
    CHECK(std::fabs(total1 / reps - 6.45) < 3.0 * std::sqrt(6.45 / reps));
}

TEST_CASE("scenario presets") {
    const auto s1 = scenario_preset("scenario1");
    CHECK(s1.truth.causes.size() == 2);
    CHECK(s1.truth.causes[0].beta == 1.5);
    CHECK(s1.truth.causes[0].alpha == 6.45);
    CHECK(s1.truth.causes[1].beta == 1.0);
    CHECK(s1.truth.causes[1].alpha == 2.75);
    CHECK(s1.truth.truncation_time == 5.5);
    CHECK(s1.replications == 10000);
    const auto s5 = scenario_preset("scenario5");
    CHECK(s5.truth.causes[0].beta == 0.25);
    CHECK(s5.truth.causes[1].alpha == 100.0);
    CHECK(s5.truth.truncation_time == 20.0);
    CHECK(scenario_preset_names().size() == 5);
    CHECK_THROWS_AS(scenario_preset("scenario6"), DomainError);
}

TEST_CASE("scenario files round-trip") {
    const auto text = R"(# two causes
name = custom
beta = [1.2, 0.7]
alpha = [4.0, 9.5]
T = 3
replications = 500
seed = 11
level = 0.9
)";
    const auto s = parse_scenario(std::string_view(text));
    CHECK(s.name == "custom");
    CHECK(s.truth.causes[1].alpha == 9.5);
    CHECK(s.truth.truncation_time == 3.0);
    CHECK(s.replications == 500);
    CHECK(s.seed == 11);
    CHECK(s.level == 0.9);

    std::ostringstream out;
    write_scenario(out, s);
    const auto again = parse_scenario(std::string_view(out.str()));
    CHECK(again.truth.causes[0].beta == s.truth.causes[0].beta);
    CHECK(again.truth.causes[1].alpha == s.truth.causes[1].alpha);
    CHECK(again.replications == s.replications);
    CHECK(again.level == s.level);

    CHECK_THROWS(parse_scenario(std::string_view("beta = [1]\nalpha = [1, 2]\nT = 1\n")));
    CHECK_THROWS(parse_scenario(std::string_view("beta = [1]\nalpha = [-1]\nT = 1\n")));
    CHECK_THROWS(parse_scenario(std::string_view("beta = [1]\nalpha = [1]\nT = 1\nbogus = 3\n")));
}

TEST_CASE("run_study is identical for any worker count") {
    auto s = scenario_preset("scenario2");
    s.replications = 1500;
    const auto one = run_study(s, {.workers = 1});
    for (unsigned w : {2u, 3u, 8u}) {
        const auto many = run_study(s, {.workers = w});
        CHECK(many.replications_used == one.replications_used);
        REQUIRE(many.rows.size() == one.rows.size());
        for (std::size_t k = 0; k < one.rows.size(); ++k) {
            CHECK(many.rows[k].mre == one.rows[k].mre);
            CHECK(many.rows[k].mse == one.rows[k].mse);
            CHECK(many.rows[k].cp == one.rows[k].cp);
        }
    }
}

TEST_CASE("run_study bookkeeping") {
    auto s = scenario_preset("scenario1");
    s.replications = 2000;
    const auto r = run_study(s);
    CHECK(r.replications_used + r.replications_discarded == 2000);
    CHECK(r.replications_discarded > 0);
    CHECK(r.rows.size() == 4 * 4);
    for (const auto& row : r.rows) {
        CHECK(row.cp >= 0.0);
        CHECK(row.cp <= 1.0);
        CHECK(row.mse >= 0.0);
    }
    // alpha point is n_j for every method
    for (int j = 1; j <= 2; ++j) {
        const auto& mle = r.row(Parameter::alpha(j), Method::MLE);
        const auto& ref = r.row(Parameter::alpha(j), Method::ReferenceBayes);
        CHECK(mle.mre == ref.mre);
        CHECK(mle.mse == ref.mse);
    }
    // Bayes MAP beta equals CMLE beta, so the point metrics match too
    CHECK(r.row(Parameter::beta(1), Method::CMLE).mre ==
          doctest::Approx(r.row(Parameter::beta(1), Method::ReferenceBayes).mre).epsilon(1e-12));
    CHECK(r.row(Parameter::beta(2), Method::CMLE).cp < r.row(Parameter::beta(2), Method::MLE).cp);
}

TEST_CASE("run_study rejects studies with nothing usable") {
    Scenario s;
    s.name = "sparse";
    s.truth = SystemParams{{{1.0, 0.01, 1}}, 1.0, false};
    s.replications = 50;
    CHECK_THROWS_AS(run_study(s), StudyError);
    s.replications = 0;
    CHECK_THROWS_AS(run_study(s), DomainError);
}
