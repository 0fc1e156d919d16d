#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plpcr/data.hpp"
#include "plpcr/model.hpp"
#include "plpcr/numerics.hpp"

namespace plpcr {

enum class PriorFamily { Jeffreys, Reference };

/// DistinctShapes: one beta per cause. SharedShape: a single pooled beta.
enum class ShapeModel { Distinct, Shared };

enum class Method { MLE, CMLE, JeffreysBayes, ReferenceBayes };

/// Point reported for a gamma-posterior beta: the mode (MAP) or the mean.
enum class PointConvention { Map, Mean };

std::string_view to_string(PriorFamily prior);
std::string_view to_string(ShapeModel model);
std::string_view to_string(Method method);
std::string_view to_string(PointConvention point);

/// A model parameter. `cause == 0` with kind Beta names the pooled shape of
/// the shared-shape model.
struct Parameter {
    enum class Kind { Beta, Alpha };
    Kind kind = Kind::Beta;
    int cause = 1;

    static Parameter beta(int cause) { return {Kind::Beta, cause}; }
    static Parameter pooled_beta() { return {Kind::Beta, 0}; }
    static Parameter alpha(int cause) { return {Kind::Alpha, cause}; }

    /// "beta2", "alpha1", or "beta" for the pooled shape.
    std::string name() const;

    friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
};

struct CauseMle {
    int cause = 1;
    int count = 0;
    double beta_hat = 0.0;
    double alpha_hat = 0.0;
    double mu_hat = 0.0;
};

struct SharedMle {
    double beta_hat = 0.0;
    std::vector<double> alpha_hat;
    /// Empty for causes with no failures.
    std::vector<std::optional<double>> mu_hat;
};

struct ParameterPoint {
    Parameter parameter;
    double value = 0.0;
    /// Set when a gamma mode collapses to 0 (posterior shape <= 1).
    bool degenerate = false;
};

/// MLE for one cause; throws EstimationError when the cause has no failures.
CauseMle mle_cause(const CauseStats& stats, int cause);
/// Per-cause MLEs; every cause needs at least one failure.
std::vector<CauseMle> mle_distinct(const CauseStats& stats);
SharedMle mle_shared_shape(const CauseStats& stats);

/// Bias-corrected MLE ((n - 1) / n) beta_hat with alpha = n_j. Ordered
/// betas first, then alphas.
std::vector<ParameterPoint> cmle(const CauseStats& stats, ShapeModel model);

/// Independent gamma laws of a closed-form posterior. Laws are indexed by
/// cause - 1; the shared-shape model carries a single beta law.
struct PosteriorSpec {
    PriorFamily prior = PriorFamily::Reference;
    ShapeModel model = ShapeModel::Distinct;
    std::vector<int> counts;
    std::vector<GammaParams> beta_laws;
    std::vector<GammaParams> alpha_laws;

    const GammaParams& law(const Parameter& parameter) const;
    /// Betas first, then alphas.
    std::vector<Parameter> parameters() const;
};

PosteriorSpec reference_posterior(const CauseStats& stats, ShapeModel model);
/// Distinct-shape model only: the shared-shape Jeffreys posterior has no
/// closed form and raises UnsupportedModelError.
PosteriorSpec jeffreys_posterior(const CauseStats& stats, ShapeModel model);
PosteriorSpec posterior(const CauseStats& stats, PriorFamily prior, ShapeModel model);

/// Beta: mode (or mean) of its gamma law. Alpha: the unbiased n_j, which
/// lies between the posterior mode and mean.
std::vector<ParameterPoint> bayes_points(const PosteriorSpec& post,
                                         PointConvention convention = PointConvention::Map);

/// Equal-tail credible interval of the parameter's gamma law.
Interval credible_interval(const PosteriorSpec& post, const Parameter& parameter, double level);

/// Point estimate of `method` (MLE or CMLE) plus or minus z * se, with
/// se(beta) = point / sqrt(n) and se(alpha) = sqrt(n_j). Not truncated at 0.
Interval wald_interval(const CauseStats& stats, Method method, const Parameter& parameter,
                       double level);

/// Exact log-likelihood of a history under `params`, including the
/// parameter-free term -sum log t_i.
double log_likelihood(const SystemParams& params, const FailureHistory& history);

/// Diagonal of the expected Fisher information in (beta, alpha) order per
/// cause: alpha_j / beta_j^2 and 1 / alpha_j.
std::vector<double> fisher_information_diagonal(const SystemParams& params);

struct EstimateRow {
    std::string parameter;
    Method method = Method::MLE;
    double point = 0.0;
    double sd = 0.0;
    double sd_paper_compat = 0.0;
    Interval ci;
    double level = 0.95;
    bool degenerate = false;
};

struct EstimateTable {
    std::vector<EstimateRow> rows;
    std::vector<std::string> warnings;
};

struct FitOptions {
    ShapeModel model = ShapeModel::Distinct;
    std::vector<Method> methods = {Method::MLE, Method::CMLE, Method::JeffreysBayes,
                                   Method::ReferenceBayes};
    PointConvention point = PointConvention::Map;
    double level = 0.95;
    /// Report beta posterior means and the sd_paper_compat column as `sd`,
    /// the reference harvester table convention.
    bool paper_compat = false;
};

/// Runs every requested method. Causes that cannot support a method are
/// skipped with a warning instead of aborting the other causes; a history
/// with no failures at all raises EstimationError.
EstimateTable fit(const FailureHistory& history, const FitOptions& options = {});

}  // namespace plpcr
