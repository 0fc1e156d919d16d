#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace plpcr {

/// Gamma law with density b^a x^(a-1) e^(-b x) / Gamma(a); `rate` is b.
struct GammaParams {
    double shape = 1.0;
    double rate = 1.0;

    double mean() const { return shape / rate; }
    double sd() const;
    /// Mode, clamped at 0 when shape <= 1.
    double mode() const { return shape > 1.0 ? (shape - 1.0) / rate : 0.0; }

    friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

/// Throws DomainError unless shape and rate are finite and positive.
void validate(const GammaParams& params);

/// log Gamma(a) for a > 0.
double ln_gamma(double a);

/// Regularized lower incomplete gamma P(a, x).
double reg_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// without cancellation in the upper tail.
double reg_gamma_q(double a, double x);

double gamma_pdf(const GammaParams& params, double x);
double gamma_cdf(const GammaParams& params, double x);

/// Inverse of gamma_cdf; q must lie in (0, 1).
double gamma_quantile(const GammaParams& params, double q);

/// Standard normal quantile; p must lie in (0, 1).
double normal_quantile(double p);

/// Seedable 64-bit generator. Each (master_seed, stream_index) pair keys an
/// independent xoshiro256** stream; the key is expanded with SplitMix64 so
/// neighbouring indices give unrelated states.
///
/// Satisfies UniformRandomBitGenerator. Single owner: do not share across
/// threads, give each task its own stream index instead.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t master_seed, std::uint64_t stream_index = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::array<std::uint64_t, 4> state_{};
};

/// Uniform(0,1) draw; never returns exactly 0 or 1.
double sample_uniform(RandomSource& rng);

/// Poisson draw. Inversion below mean 30, PTRS transformed rejection above.
std::uint64_t sample_poisson(double mean, RandomSource& rng);

}  // namespace plpcr
