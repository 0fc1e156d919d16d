#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plpcr/inference.hpp"

namespace plpcr::cli {

enum class Command { Fit, Simulate, Duane, Fixtures };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Fit;
    std::string input;
    std::string fixture;
    std::optional<double> truncation_time;
    std::optional<int> num_causes;
    ShapeModel model = ShapeModel::Distinct;
    std::optional<PriorFamily> prior;  // both priors when unset
    PointConvention point = PointConvention::Map;
    double level = 0.95;
    Format format = Format::Csv;
    bool paper_compat = false;
    /// Digits after the decimal point in CSV; negative means full precision.
    std::optional<int> decimals;
    std::optional<std::uint64_t> seed;
    std::string scenario;
    std::optional<std::uint64_t> replications;
    std::optional<double> scenario_level;
    unsigned workers = 1;
    std::optional<int> cause;
    std::optional<double> histogram_width;
    bool slopes = false;
    std::string output;
};

/// Parses and runs a command line (args excludes the program name). Reports
/// go to `out` (or --output); warnings and a one-line JSON error record go to
/// `err`. Returns the process exit status.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace plpcr::cli
