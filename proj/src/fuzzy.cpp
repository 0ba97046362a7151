#include "fuzzavail/fuzzy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fuzzavail/error.hpp"
#include "fuzzavail/numfmt.hpp"

namespace fuzzavail {

namespace {

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

bool ordered(std::span<const double> values) { return std::is_sorted(values.begin(), values.end()); }

std::string describe(std::span<const double> values) {
    std::string out;
    for (double v : values) {
        if (!out.empty()) out += ' ';
        out += format_number(v);
    }
    return out;
}

}  // namespace

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
    std::array<double, 4> p{a, b, c, c};
    std::span<const double> used(p.data(), 3);
    if (!all_finite(used) || !ordered(used)) {
        throw Error("mf-parameter-order", "triangle parameters must satisfy a <= b <= c, got " + describe(used));
    }
    return MembershipFunction(Shape::triangular, p);
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
    std::array<double, 4> p{a, b, c, d};
    if (!all_finite(p) || !ordered(p)) {
        throw Error("mf-parameter-order",
                    "trapezoid parameters must satisfy a <= b <= c <= d, got " + describe(p));
    }
    return MembershipFunction(Shape::trapezoidal, p);
}

double MembershipFunction::operator()(double x) const {
    const double a = params_[0];
    const double b = params_[1];
    // A triangle is a trapezoid with a zero-width plateau.
    const double c = shape_ == Shape::triangular ? params_[1] : params_[2];
    const double d = shape_ == Shape::triangular ? params_[2] : params_[3];

    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (d - x) / (d - c);
}

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    if (name_.empty()) throw Error("invalid-variable", "variable name must not be empty");
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
        throw Error("invalid-range", "variable '" + name_ + "' needs lo < hi, got " + format_number(lo_) + " " +
                                         format_number(hi_));
    }
    if (terms_.empty()) throw Error("empty-variable", "variable '" + name_ + "' has no terms");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].name.empty()) throw Error("invalid-term", "variable '" + name_ + "' has an unnamed term");
        for (std::size_t j = 0; j < i; ++j) {
            if (iequals(terms_[i].name, terms_[j].name)) {
                throw Error("duplicate-term", "variable '" + name_ + "' declares term '" + terms_[i].name + "' twice");
            }
        }
    }
}

std::optional<std::size_t> LinguisticVariable::find_term(std::string_view name) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (iequals(terms_[i].name, name)) return i;
    }
    return std::nullopt;
}

double LinguisticVariable::clamp(double x) const { return std::clamp(x, lo_, hi_); }

LinguisticVariable five_term_partition(std::string name, double lo, double hi) {
    const double w = (hi - lo) / 4.0;
    std::array<double, 5> peak{lo, lo + w, lo + 2 * w, lo + 3 * w, hi};
    std::vector<Term> terms;
    for (std::size_t i = 0; i < peak.size(); ++i) {
        const double left = i == 0 ? peak[0] : peak[i - 1];
        const double right = i + 1 == peak.size() ? peak[i] : peak[i + 1];
        terms.push_back({std::string(kFiveTermNames[i]), MembershipFunction::triangular(left, peak[i], right)});
    }
    return LinguisticVariable(std::move(name), lo, hi, std::move(terms));
}

namespace {

std::optional<std::size_t> find_variable(const std::vector<LinguisticVariable>& vars, std::string_view name) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (iequals(vars[i].name(), name)) return i;
    }
    return std::nullopt;
}

RuleBase::Ref resolve(const std::vector<LinguisticVariable>& vars, Clause& clause, std::size_t rule_no,
                      const char* role) {
    auto v = find_variable(vars, clause.variable);
    if (!v) {
        throw Error("rule-resolution", "rule " + std::to_string(rule_no) + ": unknown " + role + " variable '" +
                                           clause.variable + "'");
    }
    auto t = vars[*v].find_term(clause.term);
    if (!t) {
        throw Error("rule-resolution", "rule " + std::to_string(rule_no) + ": variable '" + vars[*v].name() +
                                           "' has no term '" + clause.term + "'");
    }
    clause.variable = vars[*v].name();
    clause.term = vars[*v].terms()[*t].name;
    return {*v, *t};
}

}  // namespace

RuleBase::RuleBase(std::vector<LinguisticVariable> inputs, std::vector<LinguisticVariable> outputs,
                   std::vector<Rule> rules)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), rules_(std::move(rules)) {
    std::vector<const LinguisticVariable*> all;
    for (const auto& v : inputs_) all.push_back(&v);
    for (const auto& v : outputs_) all.push_back(&v);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (iequals(all[i]->name(), all[j]->name())) {
                throw Error("duplicate-variable", "variable '" + all[i]->name() + "' declared twice");
            }
        }
    }

    resolved_.reserve(rules_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        Rule& rule = rules_[r];
        const std::size_t no = r + 1;
        if (rule.antecedents.empty()) {
            throw Error("rule-resolution", "rule " + std::to_string(no) + " has no antecedents");
        }
        if (!(rule.weight > 0.0 && rule.weight <= 1.0)) {
            throw Error("invalid-weight", "rule " + std::to_string(no) + ": weight must be in (0, 1]");
        }
        ResolvedRule resolved{{}, {}, rule.weight};
        for (auto& clause : rule.antecedents) {
            Ref ref = resolve(inputs_, clause, no, "input");
            for (const auto& prev : resolved.antecedents) {
                if (prev.variable == ref.variable) {
                    throw Error("rule-resolution", "rule " + std::to_string(no) + " tests variable '" +
                                                       clause.variable + "' twice");
                }
            }
            resolved.antecedents.push_back(ref);
        }
        resolved.consequent = resolve(outputs_, rule.consequent, no, "output");
        resolved_.push_back(std::move(resolved));
    }
}

std::optional<std::size_t> RuleBase::find_input(std::string_view name) const { return find_variable(inputs_, name); }

std::optional<std::size_t> RuleBase::find_output(std::string_view name) const {
    return find_variable(outputs_, name);
}

void InferenceConfig::validate() const {
    if (resolution < kMinResolution) {
        throw Error("invalid-config", "resolution must be at least " + std::to_string(kMinResolution) + ", got " +
                                          std::to_string(resolution));
    }
}

std::vector<double> fuzzify(const LinguisticVariable& var, double x) {
    const double cx = var.clamp(x);
    std::vector<double> degrees;
    degrees.reserve(var.terms().size());
    for (const auto& term : var.terms()) degrees.push_back(term.mf(cx));
    return degrees;
}

namespace {

double combine(double acc, double degree, TNorm tnorm) {
    return tnorm == TNorm::min ? std::min(acc, degree) : acc * degree;
}

}  // namespace

double activate(const Rule& rule, const DegreeMap& fuzzified, TNorm tnorm) {
    if (rule.antecedents.empty()) throw Error("rule-resolution", "rule has no antecedents");
    double strength = 1.0;
    for (const auto& clause : rule.antecedents) {
        auto var = std::find_if(fuzzified.begin(), fuzzified.end(),
                                [&](const auto& kv) { return iequals(kv.first, clause.variable); });
        if (var == fuzzified.end()) {
            throw Error("rule-resolution", "no degrees for variable '" + clause.variable + "'");
        }
        auto term = std::find_if(var->second.begin(), var->second.end(),
                                 [&](const auto& kv) { return iequals(kv.first, clause.term); });
        if (term == var->second.end()) {
            throw Error("rule-resolution", "variable '" + clause.variable + "' has no term '" + clause.term + "'");
        }
        strength = combine(strength, term->second, tnorm);
    }
    return strength * rule.weight;
}

double activate(const RuleBase::ResolvedRule& rule, std::span<const std::vector<double>> fuzzified, TNorm tnorm) {
    double strength = 1.0;
    for (const auto& ref : rule.antecedents) strength = combine(strength, fuzzified[ref.variable][ref.term], tnorm);
    return strength * rule.weight;
}

SampledSet aggregate(const RuleBase& rb, std::span<const double> activations, std::size_t output,
                     const InferenceConfig& config) {
    config.validate();
    if (activations.size() != rb.rules().size()) {
        throw Error("invalid-argument", "expected one activation per rule");
    }
    if (output >= rb.outputs().size()) throw Error("invalid-argument", "output index out of range");

    const auto& var = rb.outputs()[output];
    SampledSet set{var.lo(), var.hi(), std::vector<double>(config.resolution, 0.0)};

    bool targeted = false;
    for (std::size_t r = 0; r < rb.resolved().size(); ++r) {
        const auto& rule = rb.resolved()[r];
        if (rule.consequent.variable != output) continue;
        targeted = true;
        const double strength = activations[r];
        if (strength <= 0.0) continue;
        const auto& mf = var.terms()[rule.consequent.term].mf;
        for (std::size_t i = 0; i < set.mu.size(); ++i) {
            const double m = mf(set.x(i));
            const double shaped = config.implication == Implication::clip ? std::min(strength, m) : strength * m;
            set.mu[i] = std::max(set.mu[i], shaped);
        }
    }
    if (!targeted) throw Error("empty-output", "no rule targets output variable '" + var.name() + "'");
    return set;
}

double defuzzify(const SampledSet& set, Defuzzifier method) {
    if (set.mu.size() < 2) throw Error("invalid-argument", "sampled set needs at least two samples");
    const double peak = *std::max_element(set.mu.begin(), set.mu.end());
    if (!(peak > 0.0)) throw Error("no-activation", "no rule fired; the aggregated output set is empty");

    double num = 0.0;
    double den = 0.0;
    const std::size_t last = set.mu.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        if (method == Defuzzifier::centroid) {
            // trapezoid weights: end samples count half
            const double w = (i == 0 || i == last) ? 0.5 * set.mu[i] : set.mu[i];
            num += set.x(i) * w;
            den += w;
        } else if (set.mu[i] == peak) {
            num += set.x(i);
            den += 1.0;
        }
    }
    return num / den;
}

std::map<std::string, double> infer(const RuleBase& rb, const std::map<std::string, double>& inputs,
                                    const InferenceConfig& config, Diagnostics* notes) {
    config.validate();

    std::vector<std::vector<double>> fuzzified;
    fuzzified.reserve(rb.inputs().size());
    for (const auto& var : rb.inputs()) {
        auto it = std::find_if(inputs.begin(), inputs.end(), [&](const auto& kv) { return iequals(kv.first, var.name()); });
        if (it == inputs.end()) throw Error("missing-input", "no value supplied for input '" + var.name() + "'");
        const double x = it->second;
        if (!std::isfinite(x)) throw Error("invalid-input", "input '" + var.name() + "' is not a finite number");
        const double cx = var.clamp(x);
        if (cx != x && notes) {
            notes->push_back({Severity::warning, "input-clamped",
                              "input '" + var.name() + "' = " + format_number(x) + " clamped to " + format_number(cx),
                              std::nullopt});
        }
        fuzzified.push_back(fuzzify(var, cx));
    }

    std::vector<double> activations;
    activations.reserve(rb.resolved().size());
    for (const auto& rule : rb.resolved()) activations.push_back(activate(rule, fuzzified, config.tnorm));

    std::map<std::string, double> out;
    for (std::size_t o = 0; o < rb.outputs().size(); ++o) {
        out[rb.outputs()[o].name()] = defuzzify(aggregate(rb, activations, o, config), config.defuzz);
    }
    return out;
}

}  // namespace fuzzavail
