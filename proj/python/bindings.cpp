#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuzzavail/availability.hpp"
#include "fuzzavail/config.hpp"
#include "fuzzavail/error.hpp"
#include "fuzzavail/events.hpp"
#include "fuzzavail/formats.hpp"
#include "fuzzavail/rulebase_dsl.hpp"

namespace py = pybind11;
namespace fa = fuzzavail;

namespace {

py::dict diagnostic_to_dict(const fa::Diagnostic& d) {
    py::dict out;
    out["severity"] = d.is_error() ? "error" : "warning";
    out["code"] = d.code;
    out["message"] = d.message;
    if (d.location) {
        out["line"] = d.location->line;
        out["column"] = d.location->column;
    } else {
        out["line"] = py::none();
        out["column"] = py::none();
    }
    return out;
}

py::list diagnostics_to_list(const fa::Diagnostics& diags) {
    py::list out;
    for (const auto& d : diags) out.append(diagnostic_to_dict(d));
    return out;
}

fa::InferenceConfig make_config(const std::string& tnorm, const std::string& implication, const std::string& defuzz,
                                std::size_t resolution) {
    fa::Diagnostics diags;
    auto cfg = fa::parse_config("tnorm=" + tnorm + "\nimplication=" + implication + "\ndefuzz=" + defuzz +
                                    "\nresolution=" + std::to_string(resolution) + "\n",
                                diags);
    if (!cfg) throw py::value_error(diags.front().message);
    return *cfg;
}

fa::AvailabilityModel make_model(const std::optional<std::string>& rulebase, const fa::InferenceConfig& cfg) {
    if (!rulebase) return fa::AvailabilityModel(fa::builtin_rulebase(), cfg);
    auto parsed = fa::parse_rulebase(*rulebase);
    if (!parsed.rulebase) {
        for (const auto& d : parsed.diagnostics) {
            if (d.is_error()) throw py::value_error(d.code + ": " + d.message);
        }
    }
    return fa::AvailabilityModel(std::move(*parsed.rulebase), cfg);
}

py::dict grid_to_dict(const fa::Grid& g) {
    py::dict out;
    out["kd"] = g.kd_samples;
    out["ks"] = g.ks_samples;
    py::list rows;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        std::vector<double> row(g.values.begin() + i * g.cols(), g.values.begin() + (i + 1) * g.cols());
        rows.append(row);
    }
    out["values"] = rows;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Security-aware availability model (C++ core)";

    static py::exception<fa::Error> fuzzavail_error(m, "FuzzavailError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const fa::Error& e) {
            py::set_error(fuzzavail_error, (e.code() + ": " + e.what()).c_str());
        }
    });

    m.def(
        "achieved_availability",
        [](double mtbf, double mtr) { return fa::achieved_availability({mtbf, mtr, 1}); },
        "MTBF / (MTBF + MTR) as a fraction", py::arg("mtbf"), py::arg("mtr"));

    m.def(
        "global_availability",
        [](double kd, double ks, const std::optional<std::string>& rulebase, const std::string& tnorm,
           const std::string& implication, const std::string& defuzz, std::size_t resolution) {
            return make_model(rulebase, make_config(tnorm, implication, defuzz, resolution)).evaluate({kd, ks});
        },
        "Global availability for one (kd, ks) pair", py::arg("kd"), py::arg("ks"), py::arg("rulebase") = py::none(),
        py::arg("tnorm") = "product", py::arg("implication") = "scale", py::arg("defuzz") = "centroid",
        py::arg("resolution") = 1001);

    m.def(
        "surface",
        [](std::size_t nx, std::size_t ny, const std::optional<std::string>& rulebase, const std::string& tnorm,
           const std::string& implication, const std::string& defuzz, std::size_t resolution) {
            auto model = make_model(rulebase, make_config(tnorm, implication, defuzz, resolution));
            fa::Grid g;
            {
                py::gil_scoped_release release;
                g = fa::surface(model, nx, ny);
            }
            return grid_to_dict(g);
        },
        "Grid of global availability over the unit square", py::arg("nx") = 101, py::arg("ny") = 101,
        py::arg("rulebase") = py::none(), py::arg("tnorm") = "product", py::arg("implication") = "scale",
        py::arg("defuzz") = "centroid", py::arg("resolution") = 1001);

    m.def(
        "slice",
        [](double ks, std::size_t n, const std::optional<std::string>& rulebase, const std::string& tnorm,
           const std::string& implication, const std::string& defuzz, std::size_t resolution) {
            auto s = fa::slice(make_model(rulebase, make_config(tnorm, implication, defuzz, resolution)), ks, n);
            py::dict out;
            out["ks"] = s.ks_fixed;
            out["kd"] = s.kd_samples;
            out["values"] = s.values;
            return out;
        },
        "Global availability versus kd at fixed ks", py::arg("ks"), py::arg("n") = 101,
        py::arg("rulebase") = py::none(), py::arg("tnorm") = "product", py::arg("implication") = "scale",
        py::arg("defuzz") = "centroid", py::arg("resolution") = 1001);

    m.def(
        "contours",
        [](const std::string& grid_csv, const std::vector<double>& levels) {
            py::list out;
            for (const auto& set : fa::contours(fa::read_grid_csv(grid_csv), levels)) {
                for (const auto& line : set.polylines) {
                    py::list verts;
                    for (const auto& p : line.vertices) verts.append(py::make_tuple(p.kd, p.ks));
                    py::dict rec;
                    rec["level"] = set.level;
                    rec["closed"] = line.closed;
                    rec["vertices"] = verts;
                    out.append(rec);
                }
            }
            return out;
        },
        "Level curves of a grid CSV", py::arg("grid_csv"), py::arg("levels"));

    m.def(
        "check_rulebase", [](const std::string& text) { return diagnostics_to_list(fa::parse_rulebase(text).diagnostics); },
        "Diagnostics for rule base source text", py::arg("text"));

    m.def(
        "format_rulebase",
        [](const std::string& text) {
            auto parsed = fa::parse_rulebase(text);
            if (!parsed.rulebase) {
                for (const auto& d : parsed.diagnostics) {
                    if (d.is_error()) throw py::value_error(d.code + ": " + d.message);
                }
            }
            return fa::serialize_rulebase(*parsed.rulebase);
        },
        "Canonical form of rule base source text", py::arg("text"));

    m.def("builtin_rulebase", [] { return fa::serialize_rulebase(fa::builtin_rulebase()); },
          "Source text of the built-in model");

    m.def(
        "ingest",
        [](const std::string& csv, std::optional<double> start, std::optional<double> end) {
            auto parsed = fa::parse_events(csv, {start, end});
            if (!parsed.timeline) {
                const auto& d = parsed.diagnostics.front();
                throw py::value_error(d.code + ": " + d.message);
            }
            auto stats = fa::compute_stats(*parsed.timeline);
            py::dict out;
            out["mtbf"] = stats.mtbf ? py::cast(*stats.mtbf) : py::none();
            out["mtr"] = stats.mtr;
            out["failures"] = stats.failure_count;
            out["kd"] = fa::achieved_availability(stats);
            return out;
        },
        "Reliability statistics from an events CSV", py::arg("csv"), py::arg("start") = py::none(),
        py::arg("end") = py::none());
}
