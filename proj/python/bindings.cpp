#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "plpcr/data.hpp"
#include "plpcr/diagnostics.hpp"
#include "plpcr/errors.hpp"
#include "plpcr/inference.hpp"
#include "plpcr/montecarlo.hpp"
#include "plpcr/numerics.hpp"
#include "plpcr/report.hpp"

namespace py = pybind11;
using namespace plpcr;

namespace {

FailureHistory make_history(const std::vector<std::pair<double, int>>& records, double big_t,
                            std::optional<int> num_causes) {
    std::vector<FailureRecord> out;
    out.reserve(records.size());
    for (auto [t, c] : records) out.push_back({t, c});
    return FailureHistory(std::move(out), big_t, num_causes);
}

template <typename Enum>
Enum lookup(const std::map<std::string, Enum>& table, const std::string& key, const char* what) {
    const auto it = table.find(key);
    if (it == table.end()) throw DomainError(std::string("unknown ") + what + " '" + key + "'");
    return it->second;
}

PriorFamily parse_prior(const std::string& s) {
    return lookup<PriorFamily>({{"reference", PriorFamily::Reference}, {"jeffreys", PriorFamily::Jeffreys}},
                               s, "prior");
}

ShapeModel parse_model(const std::string& s) {
    return lookup<ShapeModel>({{"distinct", ShapeModel::Distinct}, {"shared", ShapeModel::Shared}}, s,
                              "model");
}

PointConvention parse_point(const std::string& s) {
    return lookup<PointConvention>({{"map", PointConvention::Map}, {"mean", PointConvention::Mean}}, s,
                                   "point convention");
}

Method parse_method(const std::string& s) {
    return lookup<Method>({{"mle", Method::MLE},
                           {"cmle", Method::CMLE},
                           {"jeffreys", Method::JeffreysBayes},
                           {"reference", Method::ReferenceBayes}},
                          s, "method");
}

}  // namespace

PYBIND11_MODULE(_plpcr, m) {
    m.doc() = "Power-law process estimation for competing failure causes";

    static PyObject* error_type = py::exception<Error>(m, "PlpcrError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type)(e.what());
            exc.attr("kind") = e.kind();
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    m.def("ln_gamma", &ln_gamma, py::arg("x"));
    m.def("reg_gamma_p", &reg_gamma_p, py::arg("a"), py::arg("x"));
    m.def("reg_gamma_q", &reg_gamma_q, py::arg("a"), py::arg("x"));
    m.def(
        "gamma_quantile",
        [](double shape, double rate, double q) { return gamma_quantile({shape, rate}, q); },
        py::arg("shape"), py::arg("rate"), py::arg("q"));
    m.def(
        "gamma_cdf", [](double shape, double rate, double x) { return gamma_cdf({shape, rate}, x); },
        py::arg("shape"), py::arg("rate"), py::arg("x"));

    py::class_<FailureHistory>(m, "FailureHistory")
        .def(py::init(&make_history), py::arg("records"), py::arg("truncation_time"),
             py::arg("num_causes") = py::none())
        .def_property_readonly("truncation_time", &FailureHistory::truncation_time)
        .def_property_readonly("num_causes", &FailureHistory::num_causes)
        .def("records",
             [](const FailureHistory& h) {
                 std::vector<std::pair<double, int>> out;
                 for (const auto& r : h.records()) out.emplace_back(r.time, r.cause);
                 return out;
             })
        .def("times_for", &FailureHistory::times_for, py::arg("cause"))
        .def("__len__", &FailureHistory::size);

    m.def("harvester_fixture", &harvester_fixture);
    m.def(
        "parse_history",
        [](const std::string& text, double big_t, std::optional<int> p) {
            return parse_history(std::string_view(text), big_t, p);
        },
        py::arg("text"), py::arg("truncation_time"), py::arg("num_causes") = py::none());

    m.def(
        "cause_stats",
        [](const FailureHistory& h) {
            const auto s = cause_stats(h);
            py::dict d;
            d["counts"] = s.counts;
            d["log_sums"] = s.log_sums;
            d["total_count"] = s.total_count;
            d["total_log_sum"] = s.total_log_sum;
            d["truncation_time"] = s.truncation_time;
            return d;
        },
        py::arg("history"));

    m.def(
        "posterior",
        [](const FailureHistory& h, const std::string& prior, const std::string& model) {
            const auto post = posterior(
                cause_stats(h),
                parse_prior(prior),
                parse_model(model));
            py::dict d;
            for (const auto& p : post.parameters()) {
                const auto& law = post.law(p);
                d[py::str(p.name())] = py::make_tuple(law.shape, law.rate);
            }
            return d;
        },
        py::arg("history"), py::arg("prior") = "reference", py::arg("model") = "distinct",
        "Posterior gamma laws as {parameter: (shape, rate)}.");

    m.def(
        "credible_interval",
        [](const FailureHistory& h, const std::string& parameter, double level,
           const std::string& prior) {
            const auto post = posterior(
                cause_stats(h),
                parse_prior(prior),
                ShapeModel::Distinct);
            for (const auto& p : post.parameters()) {
                if (p.name() == parameter) {
                    const auto ci = credible_interval(post, p, level);
                    return py::make_tuple(ci.lo, ci.hi);
                }
            }
            throw DomainError("unknown parameter '" + parameter + "'");
        },
        py::arg("history"), py::arg("parameter"), py::arg("level") = 0.95,
        py::arg("prior") = "reference");

    m.def(
        "_fit_json",
        [](const FailureHistory& h, const std::string& model, const std::vector<std::string>& methods,
           const std::string& point, double level, bool paper_compat) {
            FitOptions opts;
            opts.model = parse_model(model);
            opts.methods.clear();
            for (const auto& s : methods) opts.methods.push_back(parse_method(s));
            opts.point = parse_point(point);
            opts.level = level;
            opts.paper_compat = paper_compat;
            return to_json(fit(h, opts)).dump();
        });

    m.def(
        "_run_study_json",
        [](const std::string& preset, std::optional<std::uint64_t> replications,
           std::optional<std::uint64_t> seed, unsigned workers) {
            auto scenario = scenario_preset(preset);
            if (replications) scenario.replications = *replications;
            if (seed) scenario.seed = *seed;
            StudyOptions options;
            options.workers = workers;
            py::gil_scoped_release release;
            return to_json(run_study(scenario, options)).dump();
        });

    m.def(
        "duane_points",
        [](const FailureHistory& h, int cause) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : duane_points(h, cause).points) out.emplace_back(p.log_time, p.log_count);
            return out;
        },
        py::arg("history"), py::arg("cause"));
}
