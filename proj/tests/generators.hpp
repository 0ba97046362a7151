#pragma once

// Random inputs shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fuzzavail/events.hpp"
#include "fuzzavail/fuzzy.hpp"

namespace testing {

using namespace fuzzavail;

// Random valid rule base: every variable's terms cover its range, rule
// antecedent sets are distinct so nothing contradicts.
struct RandomRuleBase {
    std::mt19937_64& rng;

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

    std::string name(char prefix, std::size_t index) {
        static const char letters[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789";
        std::string s(1, prefix);
        s += std::to_string(index);
        for (std::size_t k = pick(6); k > 0; --k) s += letters[pick(sizeof(letters) - 1)];
        return s;
    }

    LinguisticVariable variable(std::size_t index) {
        const double lo = uniform(-100.0, 100.0);
        const double hi = lo + uniform(1e-3, 50.0);
        const std::size_t k = 1 + pick(7);
        std::vector<double> peaks{lo};
        for (std::size_t t = 1; t + 1 < k; ++t) peaks.push_back(uniform(lo, hi));
        if (k > 1) peaks.push_back(hi);
        std::sort(peaks.begin(), peaks.end());

        std::vector<Term> terms;
        if (k == 1) {
            terms.push_back({name('T', 0), MembershipFunction::trapezoidal(lo, lo, hi, hi)});
            return LinguisticVariable(name('v', index), lo, hi, std::move(terms));
        }
        for (std::size_t t = 0; t < k; ++t) {
            const double a = t == 0 ? lo : peaks[t - 1];
            const double b = peaks[t];
            const double d = t + 1 == k ? hi : peaks[t + 1];
            const std::string term_name = name('T', t);
            if (pick(3) == 0) {
                const double c = b + (d - b) * uniform(0.0, 1.0);
                terms.push_back({term_name, MembershipFunction::trapezoidal(a, b, std::min(c, d), d)});
            } else {
                terms.push_back({term_name, MembershipFunction::triangular(a, b, d)});
            }
        }
        return LinguisticVariable(name('v', index), lo, hi, std::move(terms));
    }

    RuleBase operator()() {
        const std::size_t total = 2 + pick(3);  // 2..4 variables
        const std::size_t n_in = 1 + pick(total - 1);
        std::vector<LinguisticVariable> inputs, outputs;
        for (std::size_t v = 0; v < total; ++v) (v < n_in ? inputs : outputs).push_back(variable(v));

        std::vector<Rule> rules;
        std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
        const std::size_t want = pick(51);
        for (std::size_t attempt = 0; rules.size() < want && attempt < 4 * want; ++attempt) {
            std::vector<std::pair<std::size_t, std::size_t>> key;
            Rule r;
            for (std::size_t v = 0; v < inputs.size(); ++v) {
                if (pick(2) == 0 && !(v + 1 == inputs.size() && key.empty())) continue;
                const std::size_t t = pick(inputs[v].terms().size());
                key.push_back({v, t});
                r.antecedents.push_back({inputs[v].name(), inputs[v].terms()[t].name});
            }
            if (!seen.insert(key).second) continue;
            const auto& out = outputs[pick(outputs.size())];
            r.consequent = {out.name(), out.terms()[pick(out.terms().size())].name};
            if (pick(3) == 0) r.weight = uniform(1e-6, 1.0);
            rules.push_back(std::move(r));
        }
        return RuleBase(std::move(inputs), std::move(outputs), std::move(rules));
    }
};


// Alternating timeline starting with a failure. With `dyadic` every
// timestamp is a multiple of 1/64 hour, so sums are exact in binary.
inline Timeline random_timeline(std::mt19937_64& rng, bool dyadic) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(0, 40);
    auto step = [&] {
        const double x = u(rng) * 50.0 + 1.0 / 64;
        return dyadic ? std::floor(x * 64.0) / 64.0 + 1.0 / 64 : x;
    };
    const double start = dyadic ? std::floor(u(rng) * 64000.0) / 64.0 : u(rng) * 1000.0;
    double t = start;
    std::vector<EventRecord> events;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
        t += step();
        events.push_back({t, k % 2 == 0 ? EventKind::failure : EventKind::restore});
    }
    const double end = t + (u(rng) < 0.2 ? 0.0 : step());
    return Timeline(start, end, std::move(events));
}

}  // namespace testing
