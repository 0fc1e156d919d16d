#pragma once

// Test-only reference computations. Nothing here calls into the library's
// special functions, so each oracle stays independent of the code it checks.

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <vector>

namespace plpcr::oracle {

/// P(a, x) by adaptive Gauss-Kronrod quadrature of the gamma density. For
/// a < 1 the singular factor t^(a-1) is removed by substituting t = v^(1/a).
inline double reg_gamma_p_quadrature(double a, double x) {
    using boost::math::quadrature::gauss_kronrod;
    if (x == 0.0) return 0.0;
    const double log_norm = std::lgamma(a);
    if (a < 1.0) {
        auto f = [a](double v) { return std::exp(-std::pow(v, 1.0 / a)); };
        const double upper = std::pow(x, a);
        return gauss_kronrod<double, 31>::integrate(f, 0.0, upper, 15, 1e-12) /
               std::exp(std::log(a) + log_norm);
    }
    auto f = [a, log_norm](double t) {
        if (t == 0.0) return a == 1.0 ? 1.0 : 0.0;
        return std::exp((a - 1.0) * std::log(t) - t - log_norm);
    };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, x, 15, 1e-12);
}

/// Central finite difference.
template <typename F>
double central_difference(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <typename Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

/// Chi-square goodness of fit of integer draws against Poisson(mean) mass,
/// pooling cells so every expected count is at least 5. Returns the p-value.
inline double poisson_chi_square_pvalue(const std::vector<std::uint64_t>& draws, double mean) {
    std::map<std::uint64_t, double> observed;
    for (auto k : draws) observed[k] += 1.0;
    const double n = static_cast<double>(draws.size());
    // pmf by recurrence from exp(-mean) in log space
    std::vector<double> pmf;
    const std::uint64_t kmax = static_cast<std::uint64_t>(mean + 20.0 * std::sqrt(mean) + 30.0);
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        pmf.push_back(std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0)));
    }
    std::vector<double> exp_cells;
    std::vector<double> obs_cells;
    double e_acc = 0.0;
    double o_acc = 0.0;
    double mass = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        e_acc += n * pmf[k];
        o_acc += observed.count(k) ? observed[k] : 0.0;
        mass += pmf[k];
        if (e_acc >= 5.0 && n * (1.0 - mass) >= 5.0) {
            exp_cells.push_back(e_acc);
            obs_cells.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    // upper tail cell absorbs everything left
    double tail_obs = o_acc;
    for (const auto& [k, c] : observed) {
        if (k > kmax) tail_obs += c;
    }
    exp_cells.push_back(e_acc + n * std::max(0.0, 1.0 - mass));
    obs_cells.push_back(tail_obs);

    double stat = 0.0;
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
        const double d = obs_cells[i] - exp_cells[i];
        stat += d * d / exp_cells[i];
    }
    const boost::math::chi_squared dist(static_cast<double>(exp_cells.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace plpcr::oracle
