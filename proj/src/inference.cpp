#include "plpcr/inference.hpp"

#include <cmath>

#include "plpcr/errors.hpp"

namespace plpcr {

namespace {

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("interval level must lie in (0,1), got " + std::to_string(level));
    }
}

void check_cause(const CauseStats& stats, int cause) {
    if (cause < 1 || cause > stats.num_causes()) {
        throw DomainError("cause " + std::to_string(cause) + " outside 1.." +
                          std::to_string(stats.num_causes()));
    }
}

int parameter_count(const CauseStats& stats, const Parameter& parameter) {
    if (parameter.kind == Parameter::Kind::Beta && parameter.cause == 0) return stats.total_count;
    check_cause(stats, parameter.cause);
    return stats.count(parameter.cause);
}

std::vector<Parameter> model_parameters(int num_causes, ShapeModel model) {
    std::vector<Parameter> out;
    if (model == ShapeModel::Shared) {
        out.push_back(Parameter::pooled_beta());
    } else {
        for (int j = 1; j <= num_causes; ++j) out.push_back(Parameter::beta(j));
    }
    for (int j = 1; j <= num_causes; ++j) out.push_back(Parameter::alpha(j));
    return out;
}

void require_all_observed(const CauseStats& stats) {
    for (int j = 1; j <= stats.num_causes(); ++j) {
        if (stats.count(j) == 0) {
            throw ImproperPosteriorError(
                "cause " + std::to_string(j) + " has no failures; the posterior is improper", j);
        }
    }
}

// Shape-parameter point of a method; alpha points are n_j for every method.
double mle_beta(const CauseStats& stats, const Parameter& parameter) {
    if (parameter.cause == 0) {
        if (stats.total_count == 0) throw EstimationError("no failures observed");
        return stats.total_count / stats.total_log_sum;
    }
    return mle_cause(stats, parameter.cause).beta_hat;
}

double cmle_beta(const CauseStats& stats, const Parameter& parameter) {
    const int n = parameter_count(stats, parameter);
    if (n < 2) {
        throw EstimationError(
            parameter.name() + ": bias correction needs at least 2 failures, got " +
                std::to_string(n),
            parameter.cause);
    }
    return (n - 1.0) / n * mle_beta(stats, parameter);
}

CauseStats restrict_to(const CauseStats& stats, const std::vector<int>& causes) {
    CauseStats out;
    out.truncation_time = stats.truncation_time;
    for (int j : causes) {
        out.counts.push_back(stats.count(j));
        out.log_sums.push_back(stats.log_sum(j));
        out.total_count += stats.count(j);
        out.total_log_sum += stats.log_sum(j);
    }
    return out;
}

}  // namespace

std::string_view to_string(PriorFamily prior) {
    return prior == PriorFamily::Jeffreys ? "Jeffreys" : "Reference";
}

std::string_view to_string(ShapeModel model) {
    return model == ShapeModel::Distinct ? "DistinctShapes" : "SharedShape";
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::MLE: return "MLE";
        case Method::CMLE: return "CMLE";
        case Method::JeffreysBayes: return "JeffreysBayes";
        case Method::ReferenceBayes: return "ReferenceBayes";
    }
    return "?";
}

std::string_view to_string(PointConvention point) {
    return point == PointConvention::Map ? "map" : "mean";
}

std::string Parameter::name() const {
    if (kind == Kind::Beta) return cause == 0 ? "beta" : "beta" + std::to_string(cause);
    return "alpha" + std::to_string(cause);
}

CauseMle mle_cause(const CauseStats& stats, int cause) {
    check_cause(stats, cause);
    const int n = stats.count(cause);
    if (n == 0) {
        throw EstimationError("cause " + std::to_string(cause) + ": no failures observed, MLE does not exist",
                              cause);
    }
    CauseMle out;
    out.cause = cause;
    out.count = n;
    out.beta_hat = n / stats.log_sum(cause);
    out.alpha_hat = n;
    out.mu_hat = mu_from_alpha(out.beta_hat, out.alpha_hat, stats.truncation_time);
    return out;
}

std::vector<CauseMle> mle_distinct(const CauseStats& stats) {
    std::vector<CauseMle> out;
    for (int j = 1; j <= stats.num_causes(); ++j) out.push_back(mle_cause(stats, j));
    return out;
}

SharedMle mle_shared_shape(const CauseStats& stats) {
    if (stats.total_count == 0) throw EstimationError("no failures observed");
    SharedMle out;
    out.beta_hat = stats.total_count / stats.total_log_sum;
    for (int j = 1; j <= stats.num_causes(); ++j) {
        const int n = stats.count(j);
        out.alpha_hat.push_back(n);
        if (n > 0) {
            out.mu_hat.emplace_back(mu_from_alpha(out.beta_hat, n, stats.truncation_time));
        } else {
            out.mu_hat.emplace_back();
        }
    }
    return out;
}

std::vector<ParameterPoint> cmle(const CauseStats& stats, ShapeModel model) {
    std::vector<ParameterPoint> out;
    for (const auto& p : model_parameters(stats.num_causes(), model)) {
        if (p.kind == Parameter::Kind::Beta) {
            out.push_back({p, cmle_beta(stats, p)});
        } else {
            const int n = stats.count(p.cause);
            if (n < 2) {
                throw EstimationError(p.name() + ": bias correction needs at least 2 failures",
                                      p.cause);
            }
            out.push_back({p, static_cast<double>(n)});
        }
    }
    return out;
}

const GammaParams& PosteriorSpec::law(const Parameter& parameter) const {
    if (parameter.kind == Parameter::Kind::Alpha) return alpha_laws.at(parameter.cause - 1);
    if (model == ShapeModel::Shared) {
        if (parameter.cause != 0) throw DomainError("shared-shape posterior has a single beta");
        return beta_laws.at(0);
    }
    if (parameter.cause == 0) throw DomainError("distinct-shape posterior has no pooled beta");
    return beta_laws.at(parameter.cause - 1);
}

std::vector<Parameter> PosteriorSpec::parameters() const {
    return model_parameters(static_cast<int>(counts.size()), model);
}

PosteriorSpec posterior(const CauseStats& stats, PriorFamily prior, ShapeModel model) {
    if (prior == PriorFamily::Jeffreys && model == ShapeModel::Shared) {
        throw UnsupportedModelError(
            "the shared-shape Jeffreys posterior has no closed form; use the reference prior");
    }
    require_all_observed(stats);
    PosteriorSpec post;
    post.prior = prior;
    post.model = model;
    post.counts = stats.counts;
    // Both priors carry 1/beta, so the beta factor is Gamma(n, n / beta_hat)
    // = Gamma(n, S). They differ only through alpha^(-1/2) in the reference prior.
    if (model == ShapeModel::Shared) {
        post.beta_laws.push_back({static_cast<double>(stats.total_count), stats.total_log_sum});
    } else {
        for (int j = 1; j <= stats.num_causes(); ++j) {
            post.beta_laws.push_back({static_cast<double>(stats.count(j)), stats.log_sum(j)});
        }
    }
    const double alpha_offset = prior == PriorFamily::Reference ? 0.5 : 1.0;
    for (int n : stats.counts) post.alpha_laws.push_back({n + alpha_offset, 1.0});
    return post;
}

PosteriorSpec reference_posterior(const CauseStats& stats, ShapeModel model) {
    return posterior(stats, PriorFamily::Reference, model);
}

PosteriorSpec jeffreys_posterior(const CauseStats& stats, ShapeModel model) {
    return posterior(stats, PriorFamily::Jeffreys, model);
}

std::vector<ParameterPoint> bayes_points(const PosteriorSpec& post, PointConvention convention) {
    std::vector<ParameterPoint> out;
    for (const auto& p : post.parameters()) {
        const auto& law = post.law(p);
        validate(law);
        if (p.kind == Parameter::Kind::Alpha) {
            out.push_back({p, static_cast<double>(post.counts.at(p.cause - 1))});
        } else if (convention == PointConvention::Mean) {
            out.push_back({p, law.mean()});
        } else {
            out.push_back({p, law.mode(), law.shape <= 1.0});
        }
    }
    return out;
}

Interval credible_interval(const PosteriorSpec& post, const Parameter& parameter, double level) {
    check_level(level);
    const auto& law = post.law(parameter);
    const double tail = 0.5 * (1.0 - level);
    return {gamma_quantile(law, tail), gamma_quantile(law, 1.0 - tail)};
}

Interval wald_interval(const CauseStats& stats, Method method, const Parameter& parameter,
                       double level) {
    check_level(level);
    if (method != Method::MLE && method != Method::CMLE) {
        throw DomainError("Wald intervals are defined for MLE and CMLE only");
    }
    const int n = parameter_count(stats, parameter);
    double point;
    double se;
    if (parameter.kind == Parameter::Kind::Beta) {
        point = method == Method::MLE ? mle_beta(stats, parameter) : cmle_beta(stats, parameter);
        se = point / std::sqrt(static_cast<double>(n));
    } else {
        if (n < (method == Method::MLE ? 1 : 2)) {
            throw EstimationError(parameter.name() + ": too few failures for a " +
                                      std::string(to_string(method)) + " interval",
                                  parameter.cause);
        }
        point = n;
        se = std::sqrt(static_cast<double>(n));
    }
    const double z = normal_quantile(0.5 * (1.0 + level));
    return {point - z * se, point + z * se};
}

double log_likelihood(const SystemParams& params, const FailureHistory& history) {
    validate(params);
    if (static_cast<int>(params.num_causes()) != history.num_causes()) {
        throw DomainError("parameter and history cause counts differ");
    }
    if (params.truncation_time != history.truncation_time()) {
        throw DomainError("parameter and history truncation times differ");
    }
    const auto stats = cause_stats(history);
    double value = 0.0;
    for (const auto& cause : params.causes) {
        const int n = stats.count(cause.cause_id);
        value += n * (std::log(cause.beta) + std::log(cause.alpha)) -
                 cause.beta * stats.log_sum(cause.cause_id) - cause.alpha;
    }
    for (const auto& r : history.records()) value -= std::log(r.time);
    return value;
}

std::vector<double> fisher_information_diagonal(const SystemParams& params) {
    validate(params);
    std::vector<double> out;
    for (const auto& cause : params.causes) {
        out.push_back(cause.alpha / (cause.beta * cause.beta));
        out.push_back(1.0 / cause.alpha);
    }
    return out;
}

EstimateTable fit(const FailureHistory& history, const FitOptions& options) {
    check_level(options.level);
    const auto stats = cause_stats(history);
    if (stats.total_count == 0) throw EstimationError("no failures observed");

    EstimateTable table;
    std::vector<int> active;
    for (int j = 1; j <= stats.num_causes(); ++j) {
        if (stats.count(j) > 0) {
            active.push_back(j);
        } else {
            table.warnings.push_back("cause " + std::to_string(j) +
                                     ": no failures observed; excluded from estimation");
        }
    }
    const auto sub = restrict_to(stats, active);
    const auto relabel = [&](Parameter p) {
        if (p.cause != 0) p.cause = active[static_cast<std::size_t>(p.cause - 1)];
        return p;
    };
    const PointConvention convention =
        options.paper_compat ? PointConvention::Mean : options.point;
    const double level = options.level;

    struct Cell {
        bool present = false;
        EstimateRow row;
    };
    const auto parameters = model_parameters(sub.num_causes(), options.model);
    // cells[parameter][method slot]
    std::vector<std::vector<Cell>> cells(parameters.size(),
                                         std::vector<Cell>(options.methods.size()));

    for (std::size_t m = 0; m < options.methods.size(); ++m) {
        const Method method = options.methods[m];
        if (method == Method::MLE || method == Method::CMLE) {
            for (std::size_t k = 0; k < parameters.size(); ++k) {
                const auto& p = parameters[k];
                const int n = parameter_count(sub, p);
                EstimateRow row;
                row.parameter = relabel(p).name();
                row.method = method;
                row.level = level;
                if (p.kind == Parameter::Kind::Beta) {
                    if (method == Method::CMLE && n < 2) {
                        table.warnings.push_back(relabel(p).name() +
                                                 ": CMLE needs at least 2 failures; row omitted");
                        continue;
                    }
                    row.point = method == Method::MLE ? mle_beta(sub, p) : cmle_beta(sub, p);
                    row.sd = row.point / std::sqrt(static_cast<double>(n));
                } else {
                    if (method == Method::CMLE && n < 2) {
                        table.warnings.push_back(relabel(p).name() +
                                                 ": CMLE needs at least 2 failures; row omitted");
                        continue;
                    }
                    row.point = n;
                    row.sd = std::sqrt(static_cast<double>(n));
                }
                row.sd_paper_compat = row.sd;
                row.ci = wald_interval(sub, method, p, level);
                cells[k][m] = {true, row};
            }
            continue;
        }

        const PriorFamily prior =
            method == Method::JeffreysBayes ? PriorFamily::Jeffreys : PriorFamily::Reference;
        if (prior == PriorFamily::Jeffreys && options.model == ShapeModel::Shared) {
            table.warnings.push_back(
                "JeffreysBayes: the shared-shape Jeffreys posterior has no closed form; rows omitted");
            continue;
        }
        const auto post = posterior(sub, prior, options.model);
        const auto points = bayes_points(post, convention);
        for (std::size_t k = 0; k < parameters.size(); ++k) {
            const auto& p = parameters[k];
            const auto& law = post.law(p);
            const int n = parameter_count(sub, p);
            EstimateRow row;
            row.parameter = relabel(p).name();
            row.method = method;
            row.level = level;
            row.point = points[k].value;
            row.degenerate = points[k].degenerate;
            row.sd = law.sd();
            row.sd_paper_compat = p.kind == Parameter::Kind::Beta
                                      ? row.point / std::sqrt(static_cast<double>(n))
                                      : std::sqrt(static_cast<double>(n));
            if (options.paper_compat) row.sd = row.sd_paper_compat;
            row.ci = credible_interval(post, p, level);
            if (row.degenerate) {
                table.warnings.push_back(row.parameter + " " + std::string(to_string(method)) +
                                         ": posterior mode is 0 (single failure)");
            }
            cells[k][m] = {true, row};
        }
    }

    for (auto& per_param : cells) {
        for (auto& cell : per_param) {
            if (cell.present) table.rows.push_back(std::move(cell.row));
        }
    }
    return table;
}

}  // namespace plpcr
