#include "plpcr/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "plpcr/errors.hpp"

namespace plpcr {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string row_prefix(std::size_t row) { return "row " + std::to_string(row) + ": "; }

}  // namespace

FailureHistory::FailureHistory(std::vector<FailureRecord> records, double truncation_time,
                               std::optional<int> num_causes)
    : records_(std::move(records)), truncation_time_(truncation_time) {
    if (!(std::isfinite(truncation_time) && truncation_time > 0.0)) {
        throw ValidationError("truncation time must be finite and positive");
    }
    int max_label = 1;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        const std::size_t row = i + 1;
        if (!(std::isfinite(r.time) && r.time > 0.0)) {
            throw ValidationError(row_prefix(row) + "failure time must be positive", row);
        }
        if (r.time >= truncation_time) {
            throw ValidationError(row_prefix(row) + "failure time " + std::to_string(r.time) +
                                      " is not below the truncation time " +
                                      std::to_string(truncation_time),
                                  row);
        }
        if (r.cause < 1) {
            throw ValidationError(row_prefix(row) + "cause label must be >= 1", row);
        }
        if (i > 0) {
            const double prev = records_[i - 1].time;
            if (r.time == prev) {
                throw ValidationError(row_prefix(row) + "duplicate failure time", row);
            }
            if (r.time < prev) {
                throw ValidationError(row_prefix(row) + "failure times are not ascending", row);
            }
        }
        max_label = std::max(max_label, r.cause);
    }
    if (num_causes) {
        if (*num_causes < 1) throw ValidationError("number of causes must be >= 1");
        if (*num_causes < max_label) {
            const auto it = std::find_if(records_.begin(), records_.end(),
                                         [&](const auto& r) { return r.cause > *num_causes; });
            const std::size_t row = static_cast<std::size_t>(it - records_.begin()) + 1;
            throw ValidationError(row_prefix(row) + "cause label exceeds the declared " +
                                      std::to_string(*num_causes) + " causes",
                                  row);
        }
        num_causes_ = *num_causes;
    } else {
        num_causes_ = max_label;
    }
}

std::vector<double> FailureHistory::times_for(int cause) const {
    std::vector<double> out;
    for (const auto& r : records_) {
        if (r.cause == cause) out.push_back(r.time);
    }
    return out;
}

FailureHistory parse_history(std::istream& in, double truncation_time,
                             std::optional<int> num_causes) {
    std::string line;
    bool header_seen = false;
    std::size_t row = 0;
    std::vector<FailureRecord> records;
    while (std::getline(in, line)) {
        const auto text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != "time,cause") {
                throw ValidationError("expected header 'time,cause', got '" + std::string(text) +
                                      "'");
            }
            header_seen = true;
            continue;
        }
        ++row;
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw ValidationError(row_prefix(row) + "expected two fields 'time,cause'", row);
        }
        const auto time_field = trim(text.substr(0, comma));
        const auto cause_field = trim(text.substr(comma + 1));

        FailureRecord record;
        auto [tp, tec] =
            std::from_chars(time_field.data(), time_field.data() + time_field.size(), record.time);
        if (tec != std::errc{} || tp != time_field.data() + time_field.size()) {
            throw ValidationError(row_prefix(row) + "invalid time '" + std::string(time_field) + "'",
                                  row);
        }
        auto [cp, cec] = std::from_chars(cause_field.data(),
                                         cause_field.data() + cause_field.size(), record.cause);
        if (cec != std::errc{} || cp != cause_field.data() + cause_field.size() || record.cause < 1) {
            throw ValidationError(
                row_prefix(row) + "cause must be an integer >= 1, got '" + std::string(cause_field) + "'",
                row);
        }
        records.push_back(record);
    }
    if (!header_seen) throw ValidationError("missing header 'time,cause'");
    return FailureHistory(std::move(records), truncation_time, num_causes);
}

FailureHistory parse_history(std::string_view text, double truncation_time,
                             std::optional<int> num_causes) {
    std::istringstream in{std::string(text)};
    return parse_history(in, truncation_time, num_causes);
}

void write_history(std::ostream& out, const FailureHistory& history) {
    out << "time,cause\n";
    char buf[64];
    for (const auto& r : history.records()) {
        std::snprintf(buf, sizeof buf, "%.17g,%d\n", r.time, r.cause);
        out << buf;
    }
}

CauseStats cause_stats(const FailureHistory& history) {
    CauseStats stats;
    const auto p = static_cast<std::size_t>(history.num_causes());
    stats.counts.assign(p, 0);
    stats.log_sums.assign(p, 0.0);
    stats.truncation_time = history.truncation_time();
    for (const auto& r : history.records()) {
        const auto j = static_cast<std::size_t>(r.cause - 1);
        ++stats.counts[j];
        stats.log_sums[j] += std::log(history.truncation_time() / r.time);
    }
    for (std::size_t j = 0; j < p; ++j) {
        stats.total_count += stats.counts[j];
        stats.total_log_sum += stats.log_sums[j];
    }
    return stats;
}

FailureHistory relabel_causes(const FailureHistory& history, std::span<const int> permutation) {
    if (permutation.size() != static_cast<std::size_t>(history.num_causes())) {
        throw DomainError("relabel permutation must have one entry per cause");
    }
    std::vector<FailureRecord> records(history.records().begin(), history.records().end());
    for (auto& r : records) r.cause = permutation[static_cast<std::size_t>(r.cause - 1)];
    return FailureHistory(std::move(records), history.truncation_time(), history.num_causes());
}

FailureHistory harvester_fixture() {
    static const std::vector<FailureRecord> kRecords = {
        {4.987, 1},   {7.374, 1},   {15.716, 1},  {15.850, 2},  {20.776, 2},  {27.476, 3},
        {29.913, 1},  {42.747, 1},  {47.774, 2},  {52.722, 2},  {58.501, 2},  {65.258, 1},
        {71.590, 2},  {79.108, 2},  {79.688, 1},  {79.794, 3},  {80.886, 3},  {85.526, 2},
        {91.878, 2},  {93.541, 3},  {94.209, 3},  {96.234, 2},  {101.606, 3}, {103.567, 2},
        {117.981, 2}, {120.442, 1}, {120.769, 3}, {123.322, 3}, {124.158, 2}, {126.097, 2},
        {137.071, 2}, {142.037, 3}, {150.342, 2}, {150.467, 2}, {161.743, 2}, {161.950, 2},
        {162.399, 3}, {185.381, 1}, {193.435, 3}, {205.935, 1}, {206.310, 2}, {210.767, 3},
        {212.982, 2}, {216.284, 2}, {219.019, 2}, {222.831, 2}, {233.826, 3}, {234.641, 3},
    };
    return FailureHistory(kRecords, 254.0, 3);
}

std::vector<int> warranty_counts() { return {99, 118, 155}; }

}  // namespace plpcr
