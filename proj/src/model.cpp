#include "plpcr/model.hpp"

#include <cmath>
#include <string>

#include "plpcr/errors.hpp"

namespace plpcr {

namespace {

void require_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw DomainError(std::string(what) + " must be finite and positive, got " +
                          std::to_string(v));
    }
}

}  // namespace

void validate(const PlpCauseParams& params) {
    require_positive(params.beta, "beta");
    require_positive(params.alpha, "alpha");
    if (params.cause_id < 1) throw DomainError("cause id must be >= 1");
}

void validate(const SystemParams& params) {
    if (params.causes.empty()) throw DomainError("system needs at least one cause");
    require_positive(params.truncation_time, "truncation time");
    for (std::size_t j = 0; j < params.causes.size(); ++j) {
        validate(params.causes[j]);
        if (params.causes[j].cause_id != static_cast<int>(j + 1)) {
            throw DomainError("cause ids must be contiguous 1..p in order");
        }
        if (params.shared_shape && params.causes[j].beta != params.causes.front().beta) {
            throw DomainError("shared-shape system has unequal beta values");
        }
    }
}

double intensity(const PlpCauseParams& params, double truncation_time, double t) {
    validate(params);
    require_positive(truncation_time, "truncation time");
    require_positive(t, "intensity time");
    return params.beta * params.alpha / truncation_time *
           std::pow(t / truncation_time, params.beta - 1.0);
}

double cumulative_intensity(const PlpCauseParams& params, double truncation_time, double t) {
    validate(params);
    require_positive(truncation_time, "truncation time");
    if (std::isnan(t) || t < 0.0) {
        throw DomainError("cumulative intensity time must be nonnegative");
    }
    if (t == 0.0) return 0.0;
    if (t == truncation_time) return params.alpha;
    return params.alpha * std::pow(t / truncation_time, params.beta);
}

double system_intensity(const SystemParams& params, double t) {
    double total = 0.0;
    for (const auto& cause : params.causes) total += intensity(cause, params.truncation_time, t);
    return total;
}

double system_cumulative_intensity(const SystemParams& params, double t) {
    double total = 0.0;
    for (const auto& cause : params.causes) {
        total += cumulative_intensity(cause, params.truncation_time, t);
    }
    return total;
}

double mu_from_alpha(double beta, double alpha, double truncation_time) {
    require_positive(beta, "beta");
    require_positive(alpha, "alpha");
    require_positive(truncation_time, "truncation time");
    return truncation_time * std::pow(alpha, -1.0 / beta);
}

double alpha_from_mu(double beta, double mu, double truncation_time) {
    require_positive(beta, "beta");
    require_positive(mu, "mu");
    require_positive(truncation_time, "truncation time");
    return std::pow(truncation_time / mu, beta);
}

}  // namespace plpcr
