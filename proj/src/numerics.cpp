#include "plpcr/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "plpcr/errors.hpp"

namespace plpcr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 1000;

void require_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw DomainError(std::string(what) + " must be finite and positive, got " +
                          std::to_string(v));
    }
}

// Stirling series for x >= 10; truncation error below 1e-17.
double ln_gamma_stirling(double x) {
    static constexpr double kCoeff[] = {
        1.0 / 12.0,       -1.0 / 360.0,    1.0 / 1260.0,       -1.0 / 1680.0,
        1.0 / 1188.0,     -691.0 / 360360.0, 1.0 / 156.0,      -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double c : kCoeff) {
        series += c * power;
        power *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// exp(a ln x - x - lnGamma(a)), the common prefactor of P and Q.
double incomplete_prefactor(double a, double x) {
    return std::exp(a * std::log(x) - x - ln_gamma(a));
}

// P(a, x) by its power series; converges fast for x < a + 1.
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * incomplete_prefactor(a, x);
        }
    }
    throw NumericError("incomplete gamma series did not converge");
}

// Q(a, x) by modified Lentz continued fraction; used for x >= a + 1.
double upper_fraction(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return h * incomplete_prefactor(a, x);
        }
    }
    throw NumericError("incomplete gamma continued fraction did not converge");
}

void check_incomplete_args(double a, double x) {
    require_positive(a, "incomplete gamma shape");
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("incomplete gamma argument must be nonnegative, got " +
                          std::to_string(x));
    }
}

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t poisson_inversion(double mean, RandomSource& rng) {
    const double p0 = std::exp(-mean);
    for (;;) {
        const double u = sample_uniform(rng);
        double p = p0;
        double cdf = p0;
        std::uint64_t k = 0;
        // Rounding can leave cdf a hair below u far in the tail; redraw then.
        while (u > cdf && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        if (k < 1000) return k;
    }
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
std::uint64_t poisson_ptrs(double mean, RandomSource& rng) {
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = sample_uniform(rng) - 0.5;
        const double v = sample_uniform(rng);
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
        const double rhs = -mean + k * log_mean - ln_gamma(k + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(k);
    }
}

}  // namespace

double GammaParams::sd() const { return std::sqrt(shape) / rate; }

void validate(const GammaParams& params) {
    require_positive(params.shape, "gamma shape");
    require_positive(params.rate, "gamma rate");
}

double ln_gamma(double a) {
    require_positive(a, "ln_gamma argument");
    if (a >= 10.0) return ln_gamma_stirling(a);
    // Shift up with Gamma(a) = Gamma(a + k) / (a (a+1) ... (a+k-1)).
    double product = 1.0;
    double x = a;
    while (x < 10.0) {
        product *= x;
        x += 1.0;
    }
    return ln_gamma_stirling(x) - std::log(product);
}

double reg_gamma_p(double a, double x) {
    check_incomplete_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double reg_gamma_q(double a, double x) {
    check_incomplete_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double gamma_pdf(const GammaParams& params, double x) {
    validate(params);
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (params.shape < 1.0) return std::numeric_limits<double>::infinity();
        return params.shape == 1.0 ? params.rate : 0.0;
    }
    const double y = params.rate * x;
    return params.rate *
           std::exp((params.shape - 1.0) * std::log(y) - y - ln_gamma(params.shape));
}

double gamma_cdf(const GammaParams& params, double x) {
    validate(params);
    if (x <= 0.0) return 0.0;
    return reg_gamma_p(params.shape, params.rate * x);
}

double gamma_quantile(const GammaParams& params, double q) {
    validate(params);
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("gamma quantile level must lie in (0,1), got " + std::to_string(q));
    }
    const double a = params.shape;
    const bool upper = q > 0.5;
    // Solve on the unit-rate scale; work on the tail holding less mass.
    auto residual = [&](double y) {
        return upper ? (1.0 - q) - reg_gamma_q(a, y) : reg_gamma_p(a, y) - q;
    };

    // Wilson-Hilferty start, falling back to the small-x expansion
    // P(a, y) ~ y^a / Gamma(a + 1) when the cube goes non-positive.
    const double z = normal_quantile(q);
    const double c = 1.0 / (9.0 * a);
    double y = a * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
    if (!(y > 0.0) || !std::isfinite(y)) {
        y = std::exp((std::log(q) + ln_gamma(a + 1.0)) / a);
    }

    double lo = 0.0;
    double hi = std::max(y, 1.0);
    for (int i = 0; residual(hi) < 0.0; ++i) {
        if (i > 2000) throw NumericError("gamma quantile bracket expansion failed");
        lo = hi;
        hi *= 2.0;
    }

    for (int iter = 0; iter < 500; ++iter) {
        if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
        const double f = residual(y);
        if (f == 0.0) return y / params.rate;
        if (f < 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        if (hi - lo <= 4.0 * kEps * hi) return 0.5 * (lo + hi) / params.rate;

        const double density = std::exp((a - 1.0) * std::log(y) - y - ln_gamma(a));
        double next = y - f / density;
        if (!(density > 0.0) || !std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        if (std::fabs(next - y) <= 2.0 * kEps * y) return next / params.rate;
        y = next;
    }
    throw NumericError("gamma quantile did not converge for shape " + std::to_string(a) +
                       ", q " + std::to_string(q));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal quantile level must lie in (0,1), got " + std::to_string(p));
    }
    // Acklam's rational approximation, then one Halley step against erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t key = master_seed;
    key = splitmix64(key) ^ (stream_index * 0xD1B54A32D192ED03ULL);
    for (auto& word : state_) word = splitmix64(key);
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) state_[0] = 1;
}

RandomSource::result_type RandomSource::operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double sample_uniform(RandomSource& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t sample_poisson(double mean, RandomSource& rng) {
    if (!std::isfinite(mean) || mean < 0.0) {
        throw DomainError("Poisson mean must be finite and nonnegative, got " +
                          std::to_string(mean));
    }
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_inversion(mean, rng);
    return poisson_ptrs(mean, rng);
}

}  // namespace plpcr
