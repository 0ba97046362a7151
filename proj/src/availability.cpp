#include "fuzzavail/availability.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fuzzavail/error.hpp"
#include "fuzzavail/numfmt.hpp"

namespace fuzzavail {

double achieved_availability(const ReliabilityStats& stats, Diagnostics* notes) {
    if (!std::isfinite(stats.mtr) || stats.mtr < 0.0) throw Error("invalid-stats", "MTR must be a non-negative number");
    if (stats.failure_count == 0) {
        if (notes) notes->push_back({Severity::warning, "no-failures", "no failures observed; kd = 1", std::nullopt});
        return 1.0;
    }
    if (!stats.mtbf) throw Error("invalid-stats", "MTBF is required when failures were observed");
    const double mtbf = *stats.mtbf;
    if (!std::isfinite(mtbf) || mtbf < 0.0) throw Error("invalid-stats", "MTBF must be a non-negative number");
    if (mtbf == 0.0 && stats.mtr == 0.0) {
        throw Error("undefined-availability", "availability is undefined when MTBF and MTR are both zero");
    }
    return mtbf / (mtbf + stats.mtr);
}

const RuleBase& builtin_rulebase() {
    static const RuleBase rb = [] {
        std::vector<Rule> rules;
        for (int row = 0; row < 5; ++row) {
            for (int col = 0; col < 5; ++col) {
                rules.push_back({{{kAchievedName, std::string(kFiveTermNames[row])},
                                  {kSecurityName, std::string(kFiveTermNames[col])}},
                                 {kGlobalName, std::string(kFiveTermNames[kRuleTable[row][col]])},
                                 1.0});
            }
        }
        return RuleBase({five_term_partition(kAchievedName), five_term_partition(kSecurityName)},
                        {five_term_partition(kGlobalName)}, std::move(rules));
    }();
    return rb;
}

AvailabilityModel::AvailabilityModel() : AvailabilityModel(builtin_rulebase(), InferenceConfig{}) {}

AvailabilityModel::AvailabilityModel(RuleBase rulebase, InferenceConfig config)
    : rulebase_(std::move(rulebase)), config_(config) {
    config_.validate();
    if (!rulebase_.find_input(kAchievedName) || !rulebase_.find_input(kSecurityName)) {
        throw Error("incompatible-rulebase", "rule base must declare inputs 'kd' and 'ks'");
    }
    if (rulebase_.outputs().empty()) throw Error("incompatible-rulebase", "rule base declares no output variable");
}

double AvailabilityModel::evaluate(AvailabilityInputs in, Diagnostics* notes) const {
    auto out = infer(rulebase_, {{kAchievedName, in.kd}, {kSecurityName, in.ks}}, config_, notes);
    return out.at(rulebase_.outputs().front().name());
}

double global_availability(AvailabilityInputs in, const InferenceConfig& config, Diagnostics* notes) {
    auto out = infer(builtin_rulebase(), {{kAchievedName, in.kd}, {kSecurityName, in.ks}}, config, notes);
    return out.at(kGlobalName);
}

std::vector<double> unit_samples(std::size_t n) {
    if (n < 2) throw Error("invalid-argument", "sample count must be at least 2");
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

Grid surface(const AvailabilityModel& model, std::size_t nx, std::size_t ny) {
    Grid grid{unit_samples(nx), unit_samples(ny), std::vector<double>(nx * ny)};

    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, nx);
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < nx; i += workers) {
                        for (std::size_t j = 0; j < ny; ++j) {
                            grid.values[i * ny + j] = model.evaluate({grid.kd_samples[i], grid.ks_samples[j]});
                        }
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return grid;
}

Grid surface(std::size_t nx, std::size_t ny, const InferenceConfig& config) {
    return surface(AvailabilityModel(builtin_rulebase(), config), nx, ny);
}

Slice slice(const AvailabilityModel& model, double ks_fixed, std::size_t n) {
    if (!std::isfinite(ks_fixed) || ks_fixed < 0.0 || ks_fixed > 1.0) {
        throw Error("invalid-argument", "ks must lie in [0, 1], got " + format_number(ks_fixed));
    }
    Slice s{ks_fixed, unit_samples(n), {}};
    s.values.reserve(n);
    for (double kd : s.kd_samples) s.values.push_back(model.evaluate({kd, ks_fixed}));
    return s;
}

Slice slice(double ks_fixed, std::size_t n, const InferenceConfig& config) {
    return slice(AvailabilityModel(builtin_rulebase(), config), ks_fixed, n);
}

std::vector<double> default_contour_levels() {
    std::vector<double> levels;
    for (int i = 1; i <= 9; ++i) levels.push_back(i / 10.0);
    return levels;
}

}  // namespace fuzzavail
