#include "plpcr/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "plpcr/errors.hpp"

namespace plpcr {

DuaneSeries duane_points(const FailureHistory& history, int cause) {
    if (cause < 1 || cause > history.num_causes()) {
        throw Error("diagnostic", "cause " + std::to_string(cause) + " is not in the history");
    }
    DuaneSeries series{cause, {}};
    std::size_t i = 0;
    for (double t : history.times_for(cause)) {
        ++i;
        series.points.push_back({std::log(t), std::log(static_cast<double>(i))});
    }
    if (series.points.empty()) {
        throw Error("diagnostic", "cause " + std::to_string(cause) + " has no failures");
    }
    return series;
}

DuaneFit duane_fit(const DuaneSeries& series) {
    const auto& pts = series.points;
    if (pts.size() < 2) throw Error("diagnostic", "Duane fit needs at least two points");
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : pts) {
        mx += p.log_time;
        my += p.log_count;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& p : pts) {
        sxy += (p.log_time - mx) * (p.log_count - my);
        sxx += (p.log_time - mx) * (p.log_time - mx);
    }
    if (sxx == 0.0) throw Error("diagnostic", "Duane fit is degenerate (identical times)");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::vector<HistogramBin> failure_histogram(const FailureHistory& history, double bin_width) {
    if (!(std::isfinite(bin_width) && bin_width > 0.0)) {
        throw DomainError("histogram bin width must be positive");
    }
    const auto bins = static_cast<std::size_t>(std::ceil(history.truncation_time() / bin_width));
    std::vector<HistogramBin> out(bins);
    for (std::size_t k = 0; k < bins; ++k) out[k].start = static_cast<double>(k) * bin_width;
    for (const auto& r : history.records()) {
        auto k = static_cast<std::size_t>(std::floor(r.time / bin_width));
        if (k >= bins) k = bins - 1;
        ++out[k].count;
    }
    return out;
}

void write_duane_csv(std::ostream& out, const std::vector<DuaneSeries>& series) {
    out << "cause,log_time,log_count\n";
    char buf[96];
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", s.cause, p.log_time, p.log_count);
            out << buf;
        }
    }
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
    out << "bin_start,count\n";
    char buf[64];
    for (const auto& b : bins) {
        std::snprintf(buf, sizeof buf, "%.17g,%zu\n", b.start, b.count);
        out << buf;
    }
}

}  // namespace plpcr
