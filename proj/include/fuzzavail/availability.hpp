#pragma once

// Availability model: achieved availability from MTBF/MTR, the 25-rule
// security/availability rule base, and sweeps of the resulting global
// availability surface. All coefficients are fractions in [0, 1].

#include <cstddef>
#include <optional>
#include <vector>

#include "fuzzavail/diagnostic.hpp"
#include "fuzzavail/fuzzy.hpp"

namespace fuzzavail {

// Hours. `mtbf` is absent exactly when no failure was observed.
struct ReliabilityStats {
    std::optional<double> mtbf;
    double mtr = 0.0;
    std::size_t failure_count = 0;

    friend bool operator==(const ReliabilityStats&, const ReliabilityStats&) = default;
};

// MTBF / (MTBF + MTR). Returns 1 with a "no-failures" warning when the
// failure count is zero. Throws Error("invalid-stats") for negative values
// and Error("undefined-availability") when MTBF = MTR = 0.
double achieved_availability(const ReliabilityStats& stats, Diagnostics* notes = nullptr);

// Input names: kd (achieved availability), ks (security level);
// output: ka (global availability).
inline constexpr const char* kAchievedName = "kd";
inline constexpr const char* kSecurityName = "ks";
inline constexpr const char* kGlobalName = "ka";

// Consequent term index (0 = VerySmall .. 4 = VeryBig) for each
// (kd term, ks term) cell. Equal to min(row, col) except (Medium, Small).
inline constexpr int kRuleTable[5][5] = {
    {0, 0, 0, 0, 0},
    {0, 1, 1, 1, 1},
    {0, 0, 2, 2, 2},
    {0, 1, 2, 3, 3},
    {0, 1, 2, 3, 4},
};

// 25 rules over kd, ks -> ka, ordered by kd term then ks term.
const RuleBase& builtin_rulebase();

struct AvailabilityInputs {
    double kd = 0.0;
    double ks = 0.0;
};

// A rule base with inputs kd, ks and at least one output, plus the config
// used to evaluate it. The first output is the global availability.
class AvailabilityModel {
public:
    AvailabilityModel();  // builtin rule base, reference config
    // Throws Error("incompatible-rulebase") if kd/ks inputs are missing.
    AvailabilityModel(RuleBase rulebase, InferenceConfig config);

    const RuleBase& rulebase() const { return rulebase_; }
    const InferenceConfig& config() const { return config_; }

    double evaluate(AvailabilityInputs in, Diagnostics* notes = nullptr) const;

private:
    RuleBase rulebase_;
    InferenceConfig config_;
};

double global_availability(AvailabilityInputs in, const InferenceConfig& config = {},
                           Diagnostics* notes = nullptr);

// values[i * ks_samples.size() + j] = f(kd_samples[i], ks_samples[j]).
struct Grid {
    std::vector<double> kd_samples;
    std::vector<double> ks_samples;
    std::vector<double> values;

    std::size_t rows() const { return kd_samples.size(); }
    std::size_t cols() const { return ks_samples.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
};

struct Slice {
    double ks_fixed = 0.0;
    std::vector<double> kd_samples;
    std::vector<double> values;
};

// n >= 2 uniform points on [0, 1] with exact endpoints.
std::vector<double> unit_samples(std::size_t n);

// Evaluated row-parallel; output is independent of thread count.
Grid surface(const AvailabilityModel& model, std::size_t nx, std::size_t ny);
Grid surface(std::size_t nx, std::size_t ny, const InferenceConfig& config = {});

Slice slice(const AvailabilityModel& model, double ks_fixed, std::size_t n);
Slice slice(double ks_fixed, std::size_t n, const InferenceConfig& config = {});

struct Point {
    double kd = 0.0;
    double ks = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Polyline {
    std::vector<Point> vertices;
    bool closed = false;
};

struct ContourSet {
    double level = 0.0;
    std::vector<Polyline> polylines;
};

// Marching squares with linear edge interpolation; saddle cells are split
// by comparing the cell-centre mean against the level. A level outside the
// grid's value range yields an empty set. Throws Error("empty-grid").
std::vector<ContourSet> contours(const Grid& grid, const std::vector<double>& levels);

// 0.1, 0.2, ..., 0.9
std::vector<double> default_contour_levels();

}  // namespace fuzzavail
