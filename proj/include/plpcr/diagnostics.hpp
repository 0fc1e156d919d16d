#pragma once

#include <iosfwd>
#include <vector>

#include "plpcr/data.hpp"

namespace plpcr {

struct DuanePoint {
    double log_time = 0.0;
    double log_count = 0.0;
};

/// Log cumulative failure count against log time for one cause.
struct DuaneSeries {
    int cause = 1;
    std::vector<DuanePoint> points;
};

/// Least-squares line through a Duane series; the slope estimates beta.
struct DuaneFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// i-th failure of `cause` at time t maps to (ln t, ln i). Throws an Error
/// of kind "diagnostic" when the cause has no failures.
DuaneSeries duane_points(const FailureHistory& history, int cause);

/// Requires at least two points.
DuaneFit duane_fit(const DuaneSeries& series);

struct HistogramBin {
    double start = 0.0;
    std::size_t count = 0;
};

/// Counts per bin [k w, (k+1) w), with ceil(T / w) bins so the last,
/// possibly partial, bin reaches T.
std::vector<HistogramBin> failure_histogram(const FailureHistory& history, double bin_width);

/// `cause,log_time,log_count`
void write_duane_csv(std::ostream& out, const std::vector<DuaneSeries>& series);
/// `bin_start,count`
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);

}  // namespace plpcr
