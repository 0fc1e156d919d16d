#include "plpcr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "plpcr/errors.hpp"

namespace plpcr {

namespace {

constexpr std::uint64_t kBlockSize = 256;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key) {
    text = trim(text);
    double value = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw ValidationError("scenario key '" + std::string(key) + "': invalid number '" +
                              std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
    text = trim(text);
    std::uint64_t value = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw ValidationError("scenario key '" + std::string(key) + "': invalid integer '" +
                              std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw ValidationError("scenario key '" + std::string(key) + "' expects a [..] list");
    }
    text = text.substr(1, text.size() - 2);
    std::vector<double> out;
    while (!trim(text).empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_double(text.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

Scenario make_scenario(std::string name, std::vector<double> beta, std::vector<double> alpha,
                       double truncation_time) {
    Scenario s;
    s.name = std::move(name);
    s.truth.truncation_time = truncation_time;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        s.truth.causes.push_back({beta[j], alpha[j], static_cast<int>(j + 1)});
    }
    return s;
}

// Running sums for every (parameter, method) cell.
struct Accumulator {
    std::vector<double> ratio_sum;
    std::vector<double> sq_err_sum;
    std::vector<std::uint64_t> covered;
    std::uint64_t used = 0;
    std::uint64_t discarded = 0;

    explicit Accumulator(std::size_t cells)
        : ratio_sum(cells, 0.0), sq_err_sum(cells, 0.0), covered(cells, 0) {}

    void merge(const Accumulator& other) {
        for (std::size_t i = 0; i < ratio_sum.size(); ++i) {
            ratio_sum[i] += other.ratio_sum[i];
            sq_err_sum[i] += other.sq_err_sum[i];
            covered[i] += other.covered[i];
        }
        used += other.used;
        discarded += other.discarded;
    }
};

// Unit-rate gamma quantiles keyed by shape; Gamma(a, b) quantiles are these
// divided by b, exactly as gamma_quantile computes them.
class QuantileCache {
public:
    explicit QuantileCache(double level) : tail_(0.5 * (1.0 - level)) {}

    const std::pair<double, double>& bounds(double shape) {
        auto it = cache_.find(shape);
        if (it == cache_.end()) {
            const GammaParams unit{shape, 1.0};
            it = cache_.emplace(shape, std::pair{gamma_quantile(unit, tail_),
                                                 gamma_quantile(unit, 1.0 - tail_)})
                     .first;
        }
        return it->second;
    }

private:
    double tail_;
    std::map<double, std::pair<double, double>> cache_;
};

struct StudyLayout {
    std::vector<Parameter> parameters;  // beta_1..beta_p, alpha_1..alpha_p
    std::vector<double> truth;
    std::vector<Method> methods;

    std::size_t cell(std::size_t param, std::size_t method) const {
        return param * methods.size() + method;
    }
    std::size_t cells() const { return parameters.size() * methods.size(); }
};

void run_replication(const Scenario& scenario, const StudyLayout& layout, double z,
                     std::uint64_t index, QuantileCache& cache, Accumulator& acc) {
    RandomSource rng(scenario.seed, index);
    const auto history = simulate_history(scenario.truth, rng);
    const auto stats = cause_stats(history);
    const int p = stats.num_causes();
    for (int j = 1; j <= p; ++j) {
        if (stats.count(j) < 2) {
            ++acc.discarded;
            return;
        }
    }
    ++acc.used;

    for (std::size_t k = 0; k < layout.parameters.size(); ++k) {
        const auto& param = layout.parameters[k];
        const double truth = layout.truth[k];
        const int n = stats.count(param.cause);
        const double root_n = std::sqrt(static_cast<double>(n));
        for (std::size_t m = 0; m < layout.methods.size(); ++m) {
            const Method method = layout.methods[m];
            double point;
            Interval ci;
            if (param.kind == Parameter::Kind::Beta) {
                const double s = stats.log_sum(param.cause);
                const double mle = n / s;
                const double corrected = (n - 1.0) / n * mle;
                if (method == Method::MLE || method == Method::CMLE) {
                    point = method == Method::MLE ? mle : corrected;
                    const double half = z * point / root_n;
                    ci = {point - half, point + half};
                } else {
                    // Posterior Gamma(n, S); mode ((n - 1) / n) beta_hat.
                    point = corrected;
                    const auto& unit = cache.bounds(static_cast<double>(n));
                    ci = {unit.first / s, unit.second / s};
                }
            } else {
                point = n;
                if (method == Method::MLE || method == Method::CMLE) {
                    ci = {n - z * root_n, n + z * root_n};
                } else {
                    const double offset = method == Method::ReferenceBayes ? 0.5 : 1.0;
                    ci = {cache.bounds(n + offset).first, cache.bounds(n + offset).second};
                }
            }
            const std::size_t c = layout.cell(k, m);
            acc.ratio_sum[c] += point / truth;
            acc.sq_err_sum[c] += (point - truth) * (point - truth);
            if (ci.contains(truth)) ++acc.covered[c];
        }
    }
}

}  // namespace

void validate(const Scenario& scenario) {
    validate(scenario.truth);
    if (scenario.truth.shared_shape) {
        throw DomainError("Monte Carlo studies use the distinct-shape model");
    }
    if (scenario.replications < 1) throw DomainError("replications must be >= 1");
    if (!(scenario.level > 0.0 && scenario.level < 1.0)) {
        throw DomainError("scenario level must lie in (0,1)");
    }
}

Scenario scenario_preset(std::string_view name) {
    if (name == "scenario1") return make_scenario("scenario1", {1.5, 1.0}, {6.45, 2.75}, 5.5);
    if (name == "scenario2") return make_scenario("scenario2", {1.75, 1.25}, {26.46, 3.11}, 6.5);
    if (name == "scenario3") return make_scenario("scenario3", {1.5, 0.8}, {5.59, 14.50}, 5.0);
    if (name == "scenario4") return make_scenario("scenario4", {1.6, 0.7}, {6.59, 15.12}, 5.0);
    if (name == "scenario5") return make_scenario("scenario5", {0.25, 2.0}, {8.46, 100.0}, 20.0);
    throw DomainError("unknown scenario preset '" + std::string(name) + "'");
}

std::vector<std::string> scenario_preset_names() {
    return {"scenario1", "scenario2", "scenario3", "scenario4", "scenario5"};
}

Scenario parse_scenario(std::istream& in) {
    std::vector<double> beta;
    std::vector<double> alpha;
    double truncation_time = 0.0;
    Scenario s;
    bool have_t = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("scenario line " + std::to_string(line_no) +
                                      ": expected 'key = value'",
                                  line_no);
        }
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key == "beta") {
            beta = parse_list(value, key);
        } else if (key == "alpha") {
            alpha = parse_list(value, key);
        } else if (key == "T") {
            truncation_time = parse_double(value, key);
            have_t = true;
        } else if (key == "replications") {
            s.replications = parse_unsigned(value, key);
        } else if (key == "seed") {
            s.seed = parse_unsigned(value, key);
        } else if (key == "level") {
            s.level = parse_double(value, key);
        } else if (key == "name") {
            s.name = std::string(value);
        } else {
            throw ValidationError("scenario line " + std::to_string(line_no) + ": unknown key '" +
                                      std::string(key) + "'",
                                  line_no);
        }
    }
    if (beta.empty() || beta.size() != alpha.size()) {
        throw ValidationError("scenario needs beta and alpha lists of equal, nonzero length");
    }
    if (!have_t) throw ValidationError("scenario is missing T");
    auto built = make_scenario(s.name.empty() ? "custom" : s.name, beta, alpha, truncation_time);
    built.replications = s.replications;
    built.seed = s.seed;
    built.level = s.level;
    validate(built);
    return built;
}

Scenario parse_scenario(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_scenario(in);
}

void write_scenario(std::ostream& out, const Scenario& scenario) {
    const auto list = [&](auto member) {
        std::string s = "[";
        char buf[32];
        for (std::size_t j = 0; j < scenario.truth.causes.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", scenario.truth.causes[j].*member);
            if (j > 0) s += ", ";
            s += buf;
        }
        return s + "]";
    };
    char t[32];
    std::snprintf(t, sizeof t, "%.17g", scenario.truth.truncation_time);
    char level[32];
    std::snprintf(level, sizeof level, "%.17g", scenario.level);
    out << "name = " << scenario.name << "\n"
        << "beta = " << list(&PlpCauseParams::beta) << "\n"
        << "alpha = " << list(&PlpCauseParams::alpha) << "\n"
        << "T = " << t << "\n"
        << "replications = " << scenario.replications << "\n"
        << "seed = " << scenario.seed << "\n"
        << "level = " << level << "\n";
}

FailureHistory simulate_history(const SystemParams& truth, RandomSource& rng) {
    validate(truth);
    const double big_t = truth.truncation_time;
    for (;;) {
        std::vector<FailureRecord> records;
        for (const auto& cause : truth.causes) {
            // Lambda_j(T) = alpha_j.
            const auto n = sample_poisson(cause.alpha, rng);
            for (std::uint64_t i = 0; i < n; ++i) {
                double t;
                do {
                    t = big_t * std::pow(sample_uniform(rng), 1.0 / cause.beta);
                } while (!(t > 0.0 && t < big_t));
                records.push_back({t, cause.cause_id});
            }
        }
        std::sort(records.begin(), records.end(),
                  [](const auto& a, const auto& b) { return a.time < b.time; });
        const bool tie = std::adjacent_find(records.begin(), records.end(),
                                            [](const auto& a, const auto& b) {
                                                return a.time == b.time;
                                            }) != records.end();
        if (!tie) {
            return FailureHistory(std::move(records), big_t,
                                  static_cast<int>(truth.causes.size()));
        }
    }
}

FailureHistory simulate_history(const Scenario& scenario, RandomSource& rng) {
    return simulate_history(scenario.truth, rng);
}

const McRow& McReport::row(const Parameter& parameter, Method method) const {
    for (const auto& r : rows) {
        if (r.parameter == parameter && r.method == method) return r;
    }
    throw DomainError("report has no row for " + parameter.name() + " / " +
                      std::string(to_string(method)));
}

McReport run_study(const Scenario& scenario, const StudyOptions& options) {
    validate(scenario);
    if (options.methods.empty()) throw DomainError("study needs at least one method");

    StudyLayout layout;
    layout.methods = options.methods;
    const int p = static_cast<int>(scenario.truth.causes.size());
    for (int j = 1; j <= p; ++j) {
        layout.parameters.push_back(Parameter::beta(j));
        layout.truth.push_back(scenario.truth.causes[j - 1].beta);
    }
    for (int j = 1; j <= p; ++j) {
        layout.parameters.push_back(Parameter::alpha(j));
        layout.truth.push_back(scenario.truth.causes[j - 1].alpha);
    }
    const double z = normal_quantile(0.5 * (1.0 + scenario.level));

    const std::uint64_t total = scenario.replications;
    const std::uint64_t blocks = (total + kBlockSize - 1) / kBlockSize;
    std::vector<Accumulator> partial(blocks, Accumulator(layout.cells()));
    std::atomic<std::uint64_t> next_block{0};

    auto worker = [&] {
        QuantileCache cache(scenario.level);
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const std::uint64_t end = std::min(total, (b + 1) * kBlockSize);
            for (std::uint64_t r = b * kBlockSize; r < end; ++r) {
                run_replication(scenario, layout, z, r, cache, partial[b]);
            }
        }
    };

    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    Accumulator acc(layout.cells());
    for (const auto& block : partial) acc.merge(block);
    if (acc.used == 0) {
        throw StudyError("all " + std::to_string(total) +
                         " replications were discarded (some cause had fewer than 2 failures)");
    }

    McReport report;
    report.scenario = scenario.name;
    report.seed = scenario.seed;
    report.level = scenario.level;
    report.replications = total;
    report.replications_used = acc.used;
    report.replications_discarded = acc.discarded;
    const double used = static_cast<double>(acc.used);
    for (std::size_t k = 0; k < layout.parameters.size(); ++k) {
        for (std::size_t m = 0; m < layout.methods.size(); ++m) {
            const std::size_t c = layout.cell(k, m);
            report.rows.push_back({layout.parameters[k], layout.methods[m], layout.truth[k],
                                   acc.ratio_sum[c] / used, acc.sq_err_sum[c] / used,
                                   static_cast<double>(acc.covered[c]) / used});
        }
    }
    return report;
}

}  // namespace plpcr
