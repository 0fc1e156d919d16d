#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "plpcr/data.hpp"
#include "plpcr/errors.hpp"
#include "plpcr/numerics.hpp"

using namespace plpcr;

namespace {

FailureHistory random_history(RandomSource& rng, int causes, int n, double big_t) {
    std::vector<double> times;
    while (static_cast<int>(times.size()) < n) {
        times.push_back(big_t * sample_uniform(rng));
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
    }
    std::vector<FailureRecord> records;
    for (double t : times) {
        records.push_back({t, 1 + static_cast<int>(sample_uniform(rng) * causes)});
    }
    return FailureHistory(records, big_t, causes);
}

}  // namespace

TEST_CASE("harvester fixture") {
    const auto h = harvester_fixture();
    CHECK(h.size() == 48);
    CHECK(h.truncation_time() == 254.0);
    CHECK(h.num_causes() == 3);
    CHECK(h.records().front() == FailureRecord{4.987, 1});
    CHECK(h.records().back() == FailureRecord{234.641, 3});
    const auto stats = cause_stats(h);
    CHECK(stats.counts == std::vector<int>{10, 24, 14});
}

TEST_CASE("parse_history reads the harvester rows") {
    std::ostringstream csv;
    write_history(csv, harvester_fixture());
    const auto h = parse_history(csv.str(), 254.0);
    CHECK(h.size() == 48);
    CHECK(cause_stats(h).counts == std::vector<int>{10, 24, 14});
    CHECK(h == harvester_fixture());

    const auto partial =
        parse_history("time,cause\n4.987,1\n7.374,1\n15.716,1\n15.850,2\n", 254.0);
    CHECK(partial.size() == 4);
    CHECK(partial.num_causes() == 2);
}

TEST_CASE("parse_history accepts an empty body") {
    const auto h = parse_history("time,cause\n", 10.0);
    CHECK(h.empty());
    CHECK(h.num_causes() == 1);
    const auto h3 = parse_history("time,cause\n", 10.0, 3);
    CHECK(h3.num_causes() == 3);
}

TEST_CASE("parse_history validation errors name the row") {
    auto row_of = [](const char* text, double big_t) -> std::size_t {
        try {
            parse_history(text, big_t);
        } catch (const ValidationError& e) {
            return e.row();
        }
        return 9999;
    };
    CHECK(row_of("time,cause\n1,1\n300,1\n", 254.0) == 2);
    CHECK(row_of("time,cause\n5,1\n3,2\n", 254.0) == 2);
    CHECK(row_of("time,cause\n5,1\n5,2\n", 254.0) == 2);
    CHECK(row_of("time,cause\n0,1\n", 254.0) == 1);
    CHECK(row_of("time,cause\n-2,1\n", 254.0) == 1);
    CHECK(row_of("time,cause\n254,1\n", 254.0) == 1);
    CHECK(row_of("time,cause\n3,0\n", 254.0) == 1);
    CHECK(row_of("time,cause\n3,1.5\n", 254.0) == 1);
    CHECK(row_of("time,cause\n3,x\n", 254.0) == 1);
    CHECK(row_of("time,cause\n1,1\n2,1,4\n", 254.0) == 2);
    CHECK(row_of("time,cause\nabc,1\n", 254.0) == 1);
    CHECK_THROWS_AS(parse_history("t,c\n1,1\n", 10.0), ValidationError);
    CHECK_THROWS_AS(parse_history("", 10.0), ValidationError);
    CHECK_THROWS_AS(parse_history("time,cause\n1,3\n", 10.0, 2), ValidationError);
    CHECK_THROWS_AS(parse_history("time,cause\n1,1\n", 0.0), ValidationError);
}

TEST_CASE("parse_history tolerates CRLF and blank lines") {
    const auto h = parse_history("time,cause\r\n1.5,2\r\n\r\n2.5,1\r\n", 3.0);
    CHECK(h.size() == 2);
    CHECK(h.records()[0] == FailureRecord{1.5, 2});
}

TEST_CASE("write then parse is the identity") {
    RandomSource rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const double big_t = 0.5 + 1000.0 * sample_uniform(rng);
        const auto h = random_history(rng, 1 + trial % 4, trial, big_t);
        std::ostringstream out;
        write_history(out, h);
        CHECK(parse_history(out.str(), big_t, h.num_causes()) == h);
    }
}

TEST_CASE("cause_stats examples") {
    const double big_t = 12.0;
    const auto one = FailureHistory({{big_t / std::exp(1.0), 1}}, big_t);
    auto s = cause_stats(one);
    CHECK(s.count(1) == 1);
    CHECK(s.log_sum(1) == doctest::Approx(1.0).epsilon(1e-15));

    const auto two = FailureHistory({{big_t * std::exp(-2.0), 1}, {big_t * std::exp(-1.0), 1}}, big_t);
    s = cause_stats(two);
    CHECK(s.count(1) == 2);
    CHECK(s.log_sum(1) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("cause_stats of the harvester fixture") {
    const auto s = cause_stats(harvester_fixture());
    CHECK(s.total_count == 48);
    CHECK(s.log_sum(1) == doctest::Approx(17.962666641192).epsilon(1e-11));
    CHECK(s.log_sum(2) == doctest::Approx(21.96810943705326).epsilon(1e-11));
    CHECK(s.log_sum(3) == doctest::Approx(10.548708582328636).epsilon(1e-11));
    CHECK(s.total_log_sum == doctest::Approx(s.log_sum(1) + s.log_sum(2) + s.log_sum(3)));
}

TEST_CASE("cause_stats invariants on random histories") {
    RandomSource rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int p = 1 + trial % 5;
        const auto h = random_history(rng, p, trial % 30, 50.0);
        const auto s = cause_stats(h);
        CHECK(std::accumulate(s.counts.begin(), s.counts.end(), 0) == static_cast<int>(h.size()));
        for (int j = 1; j <= p; ++j) {
            CHECK(s.log_sum(j) >= 0.0);
            CHECK((s.log_sum(j) == 0.0) == (s.count(j) == 0));
        }
    }
}

TEST_CASE("cause_stats is equivariant under relabelling") {
    RandomSource rng(5);
    const auto h = random_history(rng, 4, 40, 9.0);
    const std::vector<int> perm = {3, 1, 4, 2};
    const auto s = cause_stats(h);
    const auto r = cause_stats(relabel_causes(h, perm));
    for (int j = 1; j <= 4; ++j) {
        CHECK(r.count(perm[j - 1]) == s.count(j));
        CHECK(r.log_sum(perm[j - 1]) == s.log_sum(j));
    }
}

TEST_CASE("warranty counts") { CHECK(warranty_counts() == std::vector<int>{99, 118, 155}); }
