#include "fuzzavail/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "fuzzavail/availability.hpp"
#include "fuzzavail/config.hpp"
#include "fuzzavail/error.hpp"
#include "fuzzavail/events.hpp"
#include "fuzzavail/formats.hpp"
#include "fuzzavail/numfmt.hpp"
#include "fuzzavail/rulebase_dsl.hpp"

namespace fuzzavail {

namespace {

constexpr const char* kRulebaseEnv = "FUZZAVAIL_RULEBASE";

// Raised inside a command to leave with a given exit status after the
// message has been printed.
struct Exit {
    int code;
};

class Command {
public:
    Command(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    std::string read(const std::string& path) {
        if (path == "-") return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
        std::ifstream f(path, std::ios::binary);
        if (!f) fail("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        if (f.bad()) fail("error reading '" + path + "'");
        return ss.str();
    }

    // Writes `body` to `path`, or to stdout for "-". Returns true for a file.
    bool write(const std::string& path, const std::string& body) {
        if (path == "-") {
            out_ << body;
            return false;
        }
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) fail("cannot open '" + path + "' for writing");
        f << body;
        f.flush();
        if (!f) fail("error writing '" + path + "'");
        return true;
    }

    [[noreturn]] void fail(const std::string& message) {
        err_ << "error: " << message << '\n';
        throw Exit{kExitDiagnostics};
    }

    void report(const Diagnostics& diags, const std::string& origin = {}) {
        for (const auto& d : diags) print(err_, d, origin);
    }

    RuleBase load_rulebase(const std::string& flag_path) {
        std::string path = flag_path;
        if (path.empty()) {
            if (const char* env = std::getenv(kRulebaseEnv); env && *env) path = env;
        }
        if (path.empty()) return builtin_rulebase();
        auto parsed = parse_rulebase(read(path));
        std::erase_if(parsed.diagnostics, [](const Diagnostic& d) { return !d.is_error(); });
        report(parsed.diagnostics, path);
        if (!parsed.rulebase) throw Exit{kExitDiagnostics};
        return std::move(*parsed.rulebase);
    }

    InferenceConfig load_config(const std::string& path) {
        if (path.empty()) return {};
        Diagnostics diags;
        auto cfg = parse_config(read(path), diags);
        report(diags, path);
        if (!cfg) throw Exit{kExitDiagnostics};
        return *cfg;
    }

    AvailabilityModel load_model(const std::string& rulebase_path, const std::string& config_path) {
        auto rb = load_rulebase(rulebase_path);
        auto cfg = load_config(config_path);
        return AvailabilityModel(std::move(rb), cfg);
    }

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

struct ModelFlags {
    std::string rulebase;
    std::string config;

    void attach(CLI::App* app) {
        app->add_option("--rulebase", rulebase, "Rule base (.frb); defaults to $FUZZAVAIL_RULEBASE or the built-in model");
        app->add_option("--config", config, "Inference settings file (key = value)");
    }
};

std::vector<double> parse_levels(const std::string& text, Command& cmd) {
    std::vector<double> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = parse_number(item);
        if (!v) {
            cmd.err_ << "error: malformed level '" << item << "'\n";
            throw Exit{kExitUsage};
        }
        levels.push_back(*v);
    }
    if (levels.empty()) {
        cmd.err_ << "error: --levels needs at least one value\n";
        throw Exit{kExitUsage};
    }
    return levels;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Security-aware availability assessment with a Mamdani fuzzy model", "fuzzavail"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("fuzzavail 1.0.0"));

    Command cmd(in, out, err);

    // eval
    auto* eval = app.add_subcommand("eval", "Global availability for one (kd, ks) pair");
    std::optional<double> kd;
    std::optional<double> mtbf;
    std::optional<double> mtr;
    double ks = 0.0;
    bool percent = false;
    ModelFlags eval_model;
    auto* kd_opt = eval->add_option("--kd", kd, "Achieved availability coefficient in [0, 1]");
    auto* mtbf_opt = eval->add_option("--mtbf", mtbf, "Mean time between failures (hours)");
    auto* mtr_opt = eval->add_option("--mtr", mtr, "Mean time of repair (hours)");
    kd_opt->excludes(mtbf_opt)->excludes(mtr_opt);
    mtbf_opt->needs(mtr_opt);
    mtr_opt->needs(mtbf_opt);
    eval->add_option("--ks", ks, "Security level coefficient in [0, 1]")->required();
    eval->add_flag("--percent", percent, "Print the result as a percentage");
    eval_model.attach(eval);

    // surface
    auto* surf = app.add_subcommand("surface", "Sample the availability surface to a grid CSV");
    std::size_t nx = 101;
    std::size_t ny = 101;
    std::string surf_out;
    ModelFlags surf_model;
    surf->add_option("--nx", nx, "Samples along kd")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    surf->add_option("--ny", ny, "Samples along ks")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    surf->add_option("--out", surf_out, "Output CSV path, '-' for stdout")->required();
    surf_model.attach(surf);

    // slice
    auto* sl = app.add_subcommand("slice", "Availability versus kd at a fixed ks");
    double slice_ks = 0.0;
    std::size_t slice_n = 101;
    std::string slice_out;
    ModelFlags slice_model;
    sl->add_option("--ks", slice_ks, "Fixed security level in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
    sl->add_option("--n", slice_n, "Samples along kd")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    sl->add_option("--out", slice_out, "Output CSV path, '-' for stdout")->required();
    slice_model.attach(sl);

    // contour
    auto* con = app.add_subcommand("contour", "Level curves of a grid CSV");
    std::string grid_path;
    std::string levels_text;
    std::string con_out;
    std::string con_format = "text";
    con->add_option("--grid", grid_path, "Grid CSV produced by 'surface', '-' for stdin")->required();
    con->add_option("--levels", levels_text, "Comma-separated levels (default 0.1,...,0.9)");
    con->add_option("--out", con_out, "Output path, '-' for stdout")->required();
    con->add_option("--format", con_format, "Output format")->check(CLI::IsMember({"text", "json"}));

    // rulebase
    auto* rbc = app.add_subcommand("rulebase", "Rule base file tooling");
    rbc->require_subcommand(1);
    std::string check_path;
    std::string fmt_path;
    bool fmt_stdout = false;
    auto* check = rbc->add_subcommand("check", "Report diagnostics; exit 1 on any error");
    check->add_option("path", check_path, "Rule base file")->required();
    auto* fmt = rbc->add_subcommand("fmt", "Rewrite a rule base in canonical form");
    fmt->add_option("path", fmt_path, "Rule base file")->required();
    fmt->add_flag("--stdout", fmt_stdout, "Print instead of rewriting the file");

    // ingest
    auto* ing = app.add_subcommand("ingest", "MTBF, MTR and kd from a failure/restore event log");
    std::string events_path;
    std::optional<double> start;
    std::optional<double> end;
    ing->add_option("--events", events_path, "Events CSV (timestamp,kind), '-' for stdin")->required();
    ing->add_option("--start", start, "Observation window start (hours)");
    ing->add_option("--end", end, "Observation window end (hours)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const CLI::App* active = &app;
        for (auto* sub : app.get_subcommands()) {
            active = sub;
            for (auto* nested : sub->get_subcommands()) active = nested;
        }
        err << "run '" << (active == &app ? std::string("fuzzavail") : "fuzzavail " + active->get_name())
            << " --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            if (!kd && !mtbf) {
                err << "error: eval needs either --kd or both --mtbf and --mtr\n";
                return kExitUsage;
            }
            auto model = cmd.load_model(eval_model.rulebase, eval_model.config);
            Diagnostics notes;
            double kd_value = 0.0;
            if (kd) {
                kd_value = *kd;
            } else {
                kd_value = achieved_availability({mtbf, *mtr, 1}, &notes);
            }
            const double kg = model.evaluate({kd_value, ks}, &notes);
            cmd.report(notes);
            out << format_number(percent ? kg * 100.0 : kg) << '\n';
            return kExitOk;
        }

        if (surf->parsed()) {
            auto model = cmd.load_model(surf_model.rulebase, surf_model.config);
            const Grid grid = surface(model, nx, ny);
            std::ostringstream body;
            write_grid_csv(body, grid);
            if (cmd.write(surf_out, body.str())) {
                out << "wrote " << grid.values.size() << " samples (" << nx << 'x' << ny << ") to " << surf_out << '\n';
            }
            return kExitOk;
        }

        if (sl->parsed()) {
            auto model = cmd.load_model(slice_model.rulebase, slice_model.config);
            const Slice s = slice(model, slice_ks, slice_n);
            std::ostringstream body;
            write_slice_csv(body, s);
            if (cmd.write(slice_out, body.str())) {
                out << "wrote " << s.values.size() << " samples at ks=" << format_number(slice_ks) << " to " << slice_out
                    << '\n';
            }
            return kExitOk;
        }

        if (con->parsed()) {
            const auto levels = levels_text.empty() ? default_contour_levels() : parse_levels(levels_text, cmd);
            const Grid grid = read_grid_csv(cmd.read(grid_path));
            const auto sets = contours(grid, levels);
            std::ostringstream body;
            write_contours(body, sets, con_format == "json" ? ContourFormat::json : ContourFormat::text);
            if (cmd.write(con_out, body.str())) {
                std::size_t lines = 0;
                for (const auto& s : sets) lines += s.polylines.size();
                out << "wrote " << lines << " polylines for " << levels.size() << " levels to " << con_out << '\n';
            }
            return kExitOk;
        }

        if (check->parsed()) {
            auto parsed = parse_rulebase(cmd.read(check_path));
            cmd.report(parsed.diagnostics, check_path);
            return parsed.rulebase ? kExitOk : kExitDiagnostics;
        }

        if (fmt->parsed()) {
            const std::string source = cmd.read(fmt_path);
            auto parsed = parse_rulebase(source);
            std::erase_if(parsed.diagnostics, [](const Diagnostic& d) { return !d.is_error(); });
            cmd.report(parsed.diagnostics, fmt_path);
            if (!parsed.rulebase) return kExitDiagnostics;
            const std::string canonical = serialize_rulebase(*parsed.rulebase);
            if (fmt_stdout) {
                out << canonical;
            } else if (canonical != source) {
                cmd.write(fmt_path, canonical);
            }
            return kExitOk;
        }

        if (ing->parsed()) {
            auto parsed = parse_events(cmd.read(events_path), {start, end});
            cmd.report(parsed.diagnostics, events_path);
            if (!parsed.timeline) return kExitDiagnostics;
            Diagnostics notes;
            const auto stats = compute_stats(*parsed.timeline, &notes);
            const double kd_value = achieved_availability(stats, &notes);
            cmd.report(notes, events_path);
            out << "mtbf=" << (stats.mtbf ? format_number(*stats.mtbf) : std::string("none"))
                << " mtr=" << format_number(stats.mtr) << " failures=" << stats.failure_count
                << " kd=" << format_number(kd_value) << '\n';
            return kExitOk;
        }
    } catch (const Exit& e) {
        return e.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << " [" << e.code() << "]\n";
        return kExitDiagnostics;
    }
    return kExitUsage;
}

}  // namespace fuzzavail
