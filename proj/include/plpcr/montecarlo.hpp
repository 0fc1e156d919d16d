#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "plpcr/data.hpp"
#include "plpcr/inference.hpp"
#include "plpcr/model.hpp"
#include "plpcr/numerics.hpp"

namespace plpcr {

/// True parameters plus study settings for one Monte Carlo experiment.
struct Scenario {
    std::string name;
    SystemParams truth;
    std::uint64_t replications = 10000;
    std::uint64_t seed = 42;
    double level = 0.95;
};

void validate(const Scenario& scenario);

/// Presets "scenario1" .. "scenario5" (two causes each).
Scenario scenario_preset(std::string_view name);
std::vector<std::string> scenario_preset_names();

/// Flat `key = value` format: beta = [..], alpha = [..], T, replications,
/// seed, level, and an optional name. `#` starts a comment.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario(std::string_view text);
void write_scenario(std::ostream& out, const Scenario& scenario);

/// One time-truncated history: n_j ~ Poisson(alpha_j), then
/// t = T * U^(1/beta_j) for n_j uniforms, merged and labelled by cause.
FailureHistory simulate_history(const SystemParams& truth, RandomSource& rng);
FailureHistory simulate_history(const Scenario& scenario, RandomSource& rng);

/// Accuracy of one (parameter, method) pair over the retained replications.
struct McRow {
    Parameter parameter;
    Method method = Method::MLE;
    double true_value = 0.0;
    double mre = 0.0;
    double mse = 0.0;
    double cp = 0.0;
};

struct McReport {
    std::string scenario;
    std::uint64_t seed = 0;
    double level = 0.95;
    std::uint64_t replications = 0;
    std::uint64_t replications_used = 0;
    std::uint64_t replications_discarded = 0;
    std::vector<McRow> rows;

    const McRow& row(const Parameter& parameter, Method method) const;
};

struct StudyOptions {
    std::vector<Method> methods = {Method::MLE, Method::CMLE, Method::JeffreysBayes,
                                   Method::ReferenceBayes};
    unsigned workers = 1;
};

/// Replication r draws from RandomSource(seed, r) and replications are
/// reduced in fixed blocks, so the report is bit-identical for any worker
/// count. A replication with fewer than 2 failures for any cause is
/// discarded for every method. Fits use the distinct-shape model; Bayes
/// points are posterior modes.
McReport run_study(const Scenario& scenario, const StudyOptions& options = {});

}  // namespace plpcr
