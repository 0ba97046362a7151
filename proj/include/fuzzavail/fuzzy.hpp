#pragma once

// Mamdani fuzzy inference over bounded scalar domains.
//
// The pipeline is fuzzify -> activate -> aggregate -> defuzzify. Every type
// here is an immutable value once constructed, so a RuleBase and an
// InferenceConfig can be shared freely between threads.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzavail/diagnostic.hpp"

namespace fuzzavail {

// Piecewise-linear membership function. Parameters are ordered
// a <= b <= c (triangle) or a <= b <= c <= d (trapezoid); a degenerate edge
// (a == b, say) gives a shoulder that is 1 at the coincident point.
class MembershipFunction {
public:
    enum class Shape { triangular, trapezoidal };

    // Both throw Error("mf-parameter-order") on unordered or non-finite input.
    static MembershipFunction triangular(double a, double b, double c);
    static MembershipFunction trapezoidal(double a, double b, double c, double d);

    Shape shape() const { return shape_; }
    std::span<const double> parameters() const {
        return {params_.data(), shape_ == Shape::triangular ? 3u : 4u};
    }
    double support_lo() const { return params_[0]; }
    double support_hi() const { return parameters().back(); }

    double operator()(double x) const;

    friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

private:
    MembershipFunction(Shape shape, std::array<double, 4> params) : shape_(shape), params_(params) {}

    Shape shape_;
    std::array<double, 4> params_;
};

inline double membership(const MembershipFunction& mf, double x) { return mf(x); }

struct Term {
    std::string name;
    MembershipFunction mf;

    friend bool operator==(const Term&, const Term&) = default;
};

// Case-insensitive ASCII comparison used for every variable/term lookup.
bool iequals(std::string_view a, std::string_view b);

class LinguisticVariable {
public:
    // Throws Error on an empty or inverted range, no terms, or duplicate
    // (case-insensitive) term names. Domain coverage is a semantic check
    // left to validate().
    LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

    const std::string& name() const { return name_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<Term>& terms() const { return terms_; }

    std::optional<std::size_t> find_term(std::string_view name) const;
    double clamp(double x) const;

    friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<Term> terms_;
};

// Five triangles peaked at lo, lo+w, ..., hi with w = (hi-lo)/4; the two end
// terms are shoulders that are 1 on the domain edge. Memberships sum to 1.
LinguisticVariable five_term_partition(std::string name, double lo = 0.0, double hi = 1.0);

inline const std::array<std::string_view, 5> kFiveTermNames = {"VerySmall", "Small", "Medium", "Big",
                                                               "VeryBig"};

struct Clause {
    std::string variable;
    std::string term;

    friend bool operator==(const Clause&, const Clause&) = default;
};

// IF a1 AND a2 ... THEN consequent, scaled by weight in (0, 1].
struct Rule {
    std::vector<Clause> antecedents;
    Clause consequent;
    double weight = 1.0;

    friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleBase {
public:
    struct Ref {
        std::size_t variable;
        std::size_t term;
        friend bool operator==(const Ref&, const Ref&) = default;
        friend auto operator<=>(const Ref&, const Ref&) = default;
    };
    struct ResolvedRule {
        std::vector<Ref> antecedents;  // variable indexes into inputs()
        Ref consequent;                // variable index into outputs()
        double weight;
    };

    // Checks referential integrity and throws Error("rule-resolution") or
    // Error("duplicate-variable") etc. on failure. Clause spellings are
    // rewritten to the declared names, so lookups are case-insensitive but
    // the stored base is canonical. Contradictions and coverage gaps are
    // not rejected here; see validate().
    RuleBase(std::vector<LinguisticVariable> inputs, std::vector<LinguisticVariable> outputs,
             std::vector<Rule> rules);

    const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
    const std::vector<LinguisticVariable>& outputs() const { return outputs_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<ResolvedRule>& resolved() const { return resolved_; }

    std::optional<std::size_t> find_input(std::string_view name) const;
    std::optional<std::size_t> find_output(std::string_view name) const;

    friend bool operator==(const RuleBase& a, const RuleBase& b) {
        return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.rules_ == b.rules_;
    }

private:
    std::vector<LinguisticVariable> inputs_;
    std::vector<LinguisticVariable> outputs_;
    std::vector<Rule> rules_;
    std::vector<ResolvedRule> resolved_;
};

enum class TNorm { min, product };
enum class Implication { clip, scale };
enum class Aggregation { max };
enum class Defuzzifier { centroid, mean_of_maxima };

// Defaults are the reference configuration: product conjunction with scaled
// consequents (Larsen), max aggregation and a centroid over 1001 samples.
struct InferenceConfig {
    static constexpr std::size_t kMinResolution = 101;

    TNorm tnorm = TNorm::product;
    Implication implication = Implication::scale;
    Aggregation aggregation = Aggregation::max;
    Defuzzifier defuzz = Defuzzifier::centroid;
    std::size_t resolution = 1001;

    // Throws Error("invalid-config") when resolution < kMinResolution.
    void validate() const;

    friend bool operator==(const InferenceConfig&, const InferenceConfig&) = default;
};

// Fuzzy set sampled at `mu.size()` uniform points spanning [lo, hi].
struct SampledSet {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> mu;

    double x(std::size_t i) const {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(mu.size() - 1);
    }
};

// Degrees aligned with var.terms(). `x` is clamped to the domain.
std::vector<double> fuzzify(const LinguisticVariable& var, double x);

using DegreeMap = std::map<std::string, std::map<std::string, double>>;

// Firing strength of a rule given per-variable degrees keyed by name.
// Throws Error("rule-resolution") if a clause names something absent.
double activate(const Rule& rule, const DegreeMap& fuzzified, TNorm tnorm);

// Fast path over resolved indexes; `fuzzified[v][t]` is input v, term t.
double activate(const RuleBase::ResolvedRule& rule, std::span<const std::vector<double>> fuzzified,
                TNorm tnorm);

// `activations` holds one strength per rule in rb.rules(); only rules whose
// consequent targets `output` contribute. Throws Error("empty-output") when
// no rule targets it.
SampledSet aggregate(const RuleBase& rb, std::span<const double> activations, std::size_t output,
                     const InferenceConfig& config);

// Centroid integrates x*mu over the samples with the trapezoid rule (end
// samples weighted 1/2); mean-of-maxima averages every x attaining max mu.
// Throws Error("no-activation") when every sample is zero.
double defuzzify(const SampledSet& set, Defuzzifier method);

// Crisp outputs for every output variable. Inputs are matched by name
// (case-insensitive); out-of-domain values are clamped and reported as an
// "input-clamped" warning in `notes` when provided.
// Throws Error("missing-input"), Error("invalid-input") or the errors of
// aggregate/defuzzify.
std::map<std::string, double> infer(const RuleBase& rb, const std::map<std::string, double>& inputs,
                                    const InferenceConfig& config, Diagnostics* notes = nullptr);

}  // namespace fuzzavail
