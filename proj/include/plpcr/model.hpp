#pragma once

#include <vector>

namespace plpcr {

/// Power-law-process parameters for one failure cause in orthogonal form:
/// `beta` is the shape, `alpha` = E[N(T)] the expected count on (0, T].
/// The scale mu = T * alpha^(-1/beta) is derived on demand.
struct PlpCauseParams {
    double beta = 1.0;
    double alpha = 1.0;
    int cause_id = 1;
};

/// Superposition of independent PLP causes observed on (0, T].
struct SystemParams {
    std::vector<PlpCauseParams> causes;
    double truncation_time = 1.0;
    bool shared_shape = false;

    std::size_t num_causes() const { return causes.size(); }
};

/// Throws DomainError on non-positive values, non-contiguous cause ids, or
/// unequal shapes when `shared_shape` is set.
void validate(const PlpCauseParams& params);
void validate(const SystemParams& params);

/// lambda(t) = (beta alpha / T) (t / T)^(beta - 1); requires t > 0.
double intensity(const PlpCauseParams& params, double truncation_time, double t);

/// Lambda(t) = alpha (t / T)^beta; Lambda(0) = 0 and Lambda(T) = alpha.
double cumulative_intensity(const PlpCauseParams& params, double truncation_time, double t);

double system_intensity(const SystemParams& params, double t);
double system_cumulative_intensity(const SystemParams& params, double t);

double mu_from_alpha(double beta, double alpha, double truncation_time);
double alpha_from_mu(double beta, double mu, double truncation_time);

}  // namespace plpcr
