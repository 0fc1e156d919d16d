#include "plpcr/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "plpcr/diagnostics.hpp"
#include "plpcr/errors.hpp"
#include "plpcr/montecarlo.hpp"
#include "plpcr/report.hpp"

namespace plpcr::cli {

namespace {

constexpr std::uint64_t kLargeStudy = 100000;

FailureHistory load_history(const RunConfig& config) {
    if (!config.fixture.empty()) {
        if (config.fixture != "harvester") {
            throw ValidationError("unknown fixture '" + config.fixture + "'");
        }
        auto history = harvester_fixture();
        if (config.truncation_time && *config.truncation_time != history.truncation_time()) {
            std::vector<FailureRecord> records(history.records().begin(), history.records().end());
            return FailureHistory(std::move(records), *config.truncation_time,
                                  config.num_causes.value_or(history.num_causes()));
        }
        return history;
    }
    if (config.input.empty()) throw ValidationError("either --input or --fixtures is required");
    if (!config.truncation_time) {
        throw ValidationError("--truncation is required with --input");
    }
    std::ifstream in(config.input);
    if (!in) throw Error("io", "cannot open input file '" + config.input + "'");
    return parse_history(in, *config.truncation_time, config.num_causes);
}

Scenario load_scenario(const RunConfig& config) {
    if (config.scenario.empty()) throw ValidationError("--scenario is required");
    Scenario scenario;
    const auto names = scenario_preset_names();
    if (std::find(names.begin(), names.end(), config.scenario) != names.end()) {
        scenario = scenario_preset(config.scenario);
    } else {
        std::ifstream in(config.scenario);
        if (!in) {
            throw Error("io", "'" + config.scenario + "' is neither a preset nor a readable file");
        }
        scenario = parse_scenario(in);
    }
    if (config.replications) scenario.replications = *config.replications;
    if (config.seed) scenario.seed = *config.seed;
    if (config.scenario_level) scenario.level = *config.scenario_level;
    validate(scenario);
    return scenario;
}

void emit_json(std::ostream& out, const nlohmann::ordered_json& doc) { out << doc.dump(2) << '\n'; }

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto history = load_history(config);
    FitOptions options;
    options.model = config.model;
    options.point = config.point;
    options.level = config.level;
    options.paper_compat = config.paper_compat;
    options.methods = {Method::MLE, Method::CMLE};
    if (!config.prior || *config.prior == PriorFamily::Jeffreys) {
        options.methods.push_back(Method::JeffreysBayes);
    }
    if (!config.prior || *config.prior == PriorFamily::Reference) {
        options.methods.push_back(Method::ReferenceBayes);
    }
    const auto table = fit(history, options);
    if (config.format == Format::Json) {
        emit_json(out, to_json(table));
    } else {
        for (const auto& w : table.warnings) err << "warning: " << w << '\n';
        write_table_csv(out, table, config.decimals.value_or(3));
    }
    return 0;
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto scenario = load_scenario(config);
    if (scenario.replications > kLargeStudy) {
        err << "warning: " << scenario.replications
            << " replications requested; expect a long run\n";
    }
    StudyOptions options;
    options.workers = config.workers;
    const auto report = run_study(scenario, options);
    if (report.replications_discarded > 0) {
        err << "warning: " << report.replications_discarded << " of " << report.replications
            << " replications discarded (a cause had fewer than 2 failures)\n";
    }
    if (config.format == Format::Json) {
        emit_json(out, to_json(report));
    } else {
        write_report_csv(out, report, config.decimals.value_or(4));
    }
    return 0;
}

int run_duane(const RunConfig& config, std::ostream& out) {
    const auto history = load_history(config);
    if (config.histogram_width) {
        write_histogram_csv(out, failure_histogram(history, *config.histogram_width));
        return 0;
    }
    std::vector<DuaneSeries> series;
    if (config.cause) {
        series.push_back(duane_points(history, *config.cause));
    } else {
        for (int j = 1; j <= history.num_causes(); ++j) {
            if (!history.times_for(j).empty()) series.push_back(duane_points(history, j));
        }
    }
    if (config.slopes) {
        out << "cause,slope,intercept\n";
        char buf[96];
        for (const auto& s : series) {
            if (s.points.size() < 2) continue;
            const auto line = duane_fit(s);
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", s.cause, line.slope, line.intercept);
            out << buf;
        }
        return 0;
    }
    write_duane_csv(out, series);
    return 0;
}

int run_fixtures(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::string name = config.fixture.empty() ? "harvester" : config.fixture;
    if (name == "harvester") {
        const auto history = harvester_fixture();
        err << "note: truncation time T = " << history.truncation_time() << '\n';
        write_history(out, history);
        return 0;
    }
    write_scenario(out, scenario_preset(name));
    return 0;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message,
                 const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
    nlohmann::ordered_json record = {{"kind", kind}, {"message", message}};
    for (const auto& [k, v] : extra.items()) record[k] = v;
    err << nlohmann::ordered_json{{"error", record}}.dump() << '\n';
}

template <typename Enum>
Enum lookup(const std::map<std::string, Enum>& table, const std::string& key) {
    return table.at(key);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (!config.output.empty()) {
            file.open(config.output);
            if (!file) throw Error("io", "cannot open output file '" + config.output + "'");
            sink = &file;
        }
        switch (config.command) {
            case Command::Fit: return run_fit(config, *sink, err);
            case Command::Simulate: return run_simulate(config, *sink, err);
            case Command::Duane: return run_duane(config, *sink);
            case Command::Fixtures: return run_fixtures(config, *sink, err);
        }
        return 1;
    } catch (const ValidationError& e) {
        nlohmann::ordered_json extra = nlohmann::ordered_json::object();
        if (e.row() > 0) extra["row"] = e.row();
        write_error(err, e.kind(), e.what(), extra);
    } catch (const EstimationError& e) {
        nlohmann::ordered_json extra = nlohmann::ordered_json::object();
        if (e.cause() > 0) extra["cause"] = e.cause();
        write_error(err, e.kind(), e.what(), extra);
    } catch (const Error& e) {
        write_error(err, e.kind(), e.what());
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
    }
    return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const std::map<std::string, ShapeModel> kModels = {{"distinct", ShapeModel::Distinct},
                                                              {"shared", ShapeModel::Shared}};
    static const std::map<std::string, PriorFamily> kPriors = {
        {"reference", PriorFamily::Reference}, {"jeffreys", PriorFamily::Jeffreys}};
    static const std::map<std::string, PointConvention> kPoints = {
        {"map", PointConvention::Map}, {"mean", PointConvention::Mean}};
    static const std::map<std::string, Format> kFormats = {{"csv", Format::Csv},
                                                           {"json", Format::Json}};

    RunConfig config;
    std::string model = "distinct";
    std::string prior;
    std::string point = "map";
    std::string format = "csv";

    CLI::App app{"Inference for repairable systems with competing power-law failure causes", "plpcr"};
    app.require_subcommand(1);

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", config.output, "Write the report to this path");
        sub->add_option("--decimals", config.decimals,
                        "Digits after the decimal point in CSV (negative: full precision)");
    };
    const auto add_history = [&](CLI::App* sub) {
        sub->add_option("--input,-i", config.input, "Failure history CSV (time,cause)");
        sub->add_option("--fixtures", config.fixture, "Built-in data set")
            ->check(CLI::IsMember({"harvester"}));
        sub->add_option("--truncation,-T", config.truncation_time, "Truncation time T")
            ->check(CLI::PositiveNumber);
        sub->add_option("--num-causes", config.num_causes, "Number of causes p (default: max label)")
            ->check(CLI::PositiveNumber);
    };

    auto* fit_cmd = app.add_subcommand("fit", "Estimate parameters with MLE, CMLE and Bayes methods");
    add_history(fit_cmd);
    fit_cmd->add_option("--model", model, "Shape model")->check(CLI::IsMember({"distinct", "shared"}));
    fit_cmd->add_option("--prior", prior, "Restrict Bayes rows to one prior")
        ->check(CLI::IsMember({"reference", "jeffreys"}));
    fit_cmd->add_option("--point", point, "Bayes beta point: posterior mode or mean")
        ->check(CLI::IsMember({"map", "mean"}));
    fit_cmd->add_option("--level", config.level, "Interval level")->check(CLI::Range(0.0, 1.0));
    fit_cmd->add_flag("--paper-compat", config.paper_compat,
                      "Posterior-mean beta points and sqrt(n) based SD column");
    add_format(fit_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of estimator accuracy");
    sim_cmd->add_option("--scenario", config.scenario, "Preset name (scenario1..5) or scenario file")
        ->required();
    sim_cmd->add_option("--replications,-M", config.replications, "Override replication count")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", config.seed, "Override master seed");
    sim_cmd->add_option("--level", config.scenario_level, "Override interval level")
        ->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--workers,-j", config.workers, "Worker threads")->check(CLI::PositiveNumber);
    add_format(sim_cmd);

    auto* duane_cmd = app.add_subcommand("duane", "Duane plot points or failure histogram as CSV");
    add_history(duane_cmd);
    duane_cmd->add_option("--cause", config.cause, "Only this cause")->check(CLI::PositiveNumber);
    duane_cmd->add_option("--histogram", config.histogram_width,
                          "Emit a histogram with this bin width instead")
        ->check(CLI::PositiveNumber);
    duane_cmd->add_flag("--slopes", config.slopes, "Emit least-squares slope per cause instead");
    duane_cmd->add_option("--output,-o", config.output, "Write the CSV to this path");

    auto* fixtures_cmd = app.add_subcommand("fixtures", "Print a built-in data set or scenario");
    fixtures_cmd->add_option("--name", config.fixture, "harvester or scenario1..5")
        ->check(CLI::IsMember({"harvester", "scenario1", "scenario2", "scenario3", "scenario4",
                               "scenario5"}));
    fixtures_cmd->add_option("--output,-o", config.output, "Write to this path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return 2;
    }

    if (fit_cmd->parsed()) config.command = Command::Fit;
    if (sim_cmd->parsed()) config.command = Command::Simulate;
    if (duane_cmd->parsed()) config.command = Command::Duane;
    if (fixtures_cmd->parsed()) config.command = Command::Fixtures;
    config.model = lookup(kModels, model);
    if (!prior.empty()) config.prior = lookup(kPriors, prior);
    config.point = lookup(kPoints, point);
    config.format = lookup(kFormats, format);
    if (!(config.level > 0.0 && config.level < 1.0)) {
        write_error(err, "usage", "--level must lie strictly between 0 and 1");
        return 2;
    }
    return run(config, out, err);
}

}  // namespace plpcr::cli
