#include "plpcr/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace plpcr {

namespace {

std::string number(double v, int decimals) {
    char buf[64];
    if (decimals < 0) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    }
    return buf;
}

std::string level_text(double level, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, decimals < 0 ? "%.17g" : "%.12g", level);
    return buf;
}

}  // namespace

void write_table_csv(std::ostream& out, const EstimateTable& table, int decimals) {
    out << "parameter,method,point,sd,sd_paper_compat,ci_lo,ci_hi,level\n";
    for (const auto& r : table.rows) {
        out << r.parameter << ',' << to_string(r.method) << ',' << number(r.point, decimals) << ','
            << number(r.sd, decimals) << ',' << number(r.sd_paper_compat, decimals) << ','
            << number(r.ci.lo, decimals) << ',' << number(r.ci.hi, decimals) << ','
            << level_text(r.level, decimals) << '\n';
    }
}

nlohmann::ordered_json to_json(const EstimateTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"parameter", r.parameter},
                        {"method", to_string(r.method)},
                        {"point", r.point},
                        {"sd", r.sd},
                        {"sd_paper_compat", r.sd_paper_compat},
                        {"ci_lo", r.ci.lo},
                        {"ci_hi", r.ci.hi},
                        {"level", r.level},
                        {"degenerate", r.degenerate}});
    }
    return {{"rows", rows}, {"warnings", table.warnings}};
}

void write_report_csv(std::ostream& out, const McReport& report, int decimals) {
    out << "# scenario=" << report.scenario << " seed=" << report.seed
        << " level=" << level_text(report.level, 0) << " replications=" << report.replications
        << " used=" << report.replications_used
        << " discarded=" << report.replications_discarded << '\n';
    out << "parameter,method,true_value,mre,mse,cp\n";
    for (const auto& r : report.rows) {
        out << r.parameter.name() << ',' << to_string(r.method) << ','
            << level_text(r.true_value, 0) << ',' << number(r.mre, decimals) << ','
            << number(r.mse, decimals) << ',' << number(r.cp, decimals) << '\n';
    }
}

nlohmann::ordered_json to_json(const McReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"parameter", r.parameter.name()},
                        {"method", to_string(r.method)},
                        {"true_value", r.true_value},
                        {"mre", r.mre},
                        {"mse", r.mse},
                        {"cp", r.cp}});
    }
    return {{"scenario", report.scenario},
            {"seed", report.seed},
            {"level", report.level},
            {"replications", report.replications},
            {"replications_used", report.replications_used},
            {"replications_discarded", report.replications_discarded},
            {"rows", rows}};
}

}  // namespace plpcr
