#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace plpcr {

/// One observed failure: time in (0, T) and a cause label in 1..p.
struct FailureRecord {
    double time = 0.0;
    int cause = 1;

    friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

/// Time-truncated failure history of a single system. Always valid once
/// constructed: times strictly increasing inside (0, T), labels in 1..p.
class FailureHistory {
public:
    /// Validates and throws ValidationError naming the first offending row
    /// (1-based). `num_causes` defaults to the largest label seen, at least 1.
    FailureHistory(std::vector<FailureRecord> records, double truncation_time,
                   std::optional<int> num_causes = std::nullopt);

    std::span<const FailureRecord> records() const { return records_; }
    double truncation_time() const { return truncation_time_; }
    int num_causes() const { return num_causes_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Times belonging to `cause`, ascending.
    std::vector<double> times_for(int cause) const;

    friend bool operator==(const FailureHistory&, const FailureHistory&) = default;

private:
    std::vector<FailureRecord> records_;
    double truncation_time_;
    int num_causes_;
};

/// Per-cause sufficient statistics: n_j and S_j = sum log(T / t_i) over
/// failures of cause j. Vectors are indexed by cause - 1.
struct CauseStats {
    std::vector<int> counts;
    std::vector<double> log_sums;
    int total_count = 0;
    double total_log_sum = 0.0;
    double truncation_time = 1.0;

    int num_causes() const { return static_cast<int>(counts.size()); }
    int count(int cause) const { return counts.at(cause - 1); }
    double log_sum(int cause) const { return log_sums.at(cause - 1); }
};

/// Reads the `time,cause` CSV format. T is supplied by the caller, never
/// inferred from the data.
FailureHistory parse_history(std::istream& in, double truncation_time,
                             std::optional<int> num_causes = std::nullopt);
FailureHistory parse_history(std::string_view text, double truncation_time,
                             std::optional<int> num_causes = std::nullopt);

/// Writes the CSV format with round-trip precision.
void write_history(std::ostream& out, const FailureHistory& history);

CauseStats cause_stats(const FailureHistory& history);

/// Same failures with label j replaced by permutation[j - 1].
FailureHistory relabel_causes(const FailureHistory& history, std::span<const int> permutation);

/// Sugarcane harvester failures over a 254 day crop (48 failures, 3 causes:
/// electrical, engine, elevator).
FailureHistory harvester_fixture();

/// Cause counts of the automotive warranty claims data. Only the counts are
/// available for this data set.
std::vector<int> warranty_counts();

}  // namespace plpcr
