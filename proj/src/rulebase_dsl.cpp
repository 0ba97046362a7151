#include "fuzzavail/rulebase_dsl.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "fuzzavail/error.hpp"
#include "fuzzavail/numfmt.hpp"
#include "text.hpp"

namespace fuzzavail {

namespace {

// ---------------------------------------------------------------- validation

// Where validate() findings point when the rule base came from text.
struct SourceMap {
    std::map<std::string, SourceLocation> variables;                    // lower(var)
    std::map<std::pair<std::string, std::string>, SourceLocation> terms;  // lower(var), lower(term)
    std::vector<SourceLocation> rules;
};

// Set of x where mf(x) > 0: an interval whose ends are closed only where
// the function is 1 at the end point (a shoulder).
struct PositiveSet {
    double lo, hi;
    bool lo_closed, hi_closed;
};

PositiveSet positive_set(const MembershipFunction& mf) {
    auto p = mf.parameters();
    const double a = p[0];
    const double b = p[1];
    const double c = p.size() == 3 ? p[1] : p[2];
    const double d = p.back();
    return {a, d, a == b, c == d};
}

bool covers_domain(const LinguisticVariable& var) {
    std::vector<PositiveSet> sets;
    for (const auto& t : var.terms()) sets.push_back(positive_set(t.mf));

    // Sweep right from lo; `pos_covered` says whether pos itself is covered.
    double pos = var.lo();
    bool pos_covered = false;
    while (true) {
        bool extended = false;
        for (const auto& s : sets) {
            bool reaches;
            if (pos_covered) {
                reaches = s.lo <= pos && s.hi > pos;
            } else {
                reaches = (s.lo < pos || (s.lo == pos && s.lo_closed)) && (pos < s.hi || (pos == s.hi && s.hi_closed));
            }
            if (!reaches) continue;
            if (s.hi > pos || (s.hi == pos && s.hi_closed && !pos_covered)) {
                pos = s.hi;
                pos_covered = s.hi_closed;
                extended = true;
            }
        }
        if (pos > var.hi() || (pos == var.hi() && pos_covered)) return true;
        if (!extended) return false;
    }
}

std::optional<SourceLocation> lookup(const std::map<std::string, SourceLocation>& m, const std::string& key) {
    auto it = m.find(to_lower(key));
    if (it == m.end()) return std::nullopt;
    return it->second;
}

constexpr std::size_t kMaxCellEnumeration = 100000;
constexpr std::size_t kMaxCellWarnings = 25;

Diagnostics validate_with(const RuleBase& rb, const SourceMap* src) {
    Diagnostics out;
    auto rule_loc = [&](std::size_t r) -> std::optional<SourceLocation> {
        if (src && r < src->rules.size()) return src->rules[r];
        return std::nullopt;
    };
    auto var_loc = [&](const std::string& name) -> std::optional<SourceLocation> {
        return src ? lookup(src->variables, name) : std::nullopt;
    };

    auto check_domain = [&](const LinguisticVariable& var) {
        if (!covers_domain(var)) {
            out.push_back({Severity::error, "domain-not-covered",
                           "terms of '" + var.name() + "' leave part of [" + format_number(var.lo()) + ", " +
                               format_number(var.hi()) + "] with zero membership",
                           var_loc(var.name())});
        }
    };
    for (const auto& v : rb.inputs()) check_domain(v);
    for (const auto& v : rb.outputs()) check_domain(v);

    // Contradictions: compare antecedents as sorted (variable, term) sets.
    const auto& resolved = rb.resolved();
    std::map<std::vector<RuleBase::Ref>, std::size_t> first_with;
    for (std::size_t r = 0; r < resolved.size(); ++r) {
        auto key = resolved[r].antecedents;
        std::sort(key.begin(), key.end());
        auto [it, fresh] = first_with.try_emplace(key, r);
        if (fresh) continue;
        const auto& other = resolved[it->second];
        if (other.consequent != resolved[r].consequent) {
            const auto& mine = rb.rules()[r].consequent;
            const auto& theirs = rb.rules()[it->second].consequent;
            out.push_back({Severity::error, "contradictory-rules",
                           "rule " + std::to_string(r + 1) + " concludes " + mine.variable + " is " + mine.term +
                               " but rule " + std::to_string(it->second + 1) + " with the same antecedents concludes " +
                               theirs.variable + " is " + theirs.term,
                           rule_loc(r)});
        }
    }

    // Coverage of the input-term product.
    std::size_t cells = 1;
    for (const auto& v : rb.inputs()) {
        cells *= v.terms().size();
        if (cells > kMaxCellEnumeration) break;
    }
    if (!rb.inputs().empty() && cells <= kMaxCellEnumeration) {
        std::vector<std::size_t> cell(rb.inputs().size(), 0);
        std::size_t reported = 0;
        std::size_t uncovered = 0;
        for (std::size_t n = 0; n < cells; ++n) {
            const bool covered = std::any_of(resolved.begin(), resolved.end(), [&](const auto& rule) {
                return std::all_of(rule.antecedents.begin(), rule.antecedents.end(),
                                   [&](const RuleBase::Ref& ref) { return cell[ref.variable] == ref.term; });
            });
            if (!covered) {
                ++uncovered;
                if (reported < kMaxCellWarnings) {
                    std::string names;
                    for (std::size_t v = 0; v < cell.size(); ++v) {
                        if (v) names += ", ";
                        names += rb.inputs()[v].terms()[cell[v]].name;
                    }
                    out.push_back({Severity::warning, "uncovered-cell", "uncovered-cell (" + names + "): no rule fires",
                                   std::nullopt});
                    ++reported;
                }
            }
            // odometer increment, last input fastest
            for (std::size_t v = cell.size(); v-- > 0;) {
                if (++cell[v] < rb.inputs()[v].terms().size()) break;
                cell[v] = 0;
            }
        }
        if (uncovered > reported) {
            out.push_back({Severity::warning, "uncovered-cell",
                           std::to_string(uncovered - reported) + " further uncovered cells not listed", std::nullopt});
        }
    }

    std::set<std::pair<bool, RuleBase::Ref>> used;  // (is_output, ref)
    std::vector<bool> targeted(rb.outputs().size(), false);
    for (const auto& rule : resolved) {
        for (const auto& ref : rule.antecedents) used.insert({false, ref});
        used.insert({true, rule.consequent});
        targeted[rule.consequent.variable] = true;
    }
    auto check_terms = [&](const std::vector<LinguisticVariable>& vars, bool is_output) {
        for (std::size_t v = 0; v < vars.size(); ++v) {
            for (std::size_t t = 0; t < vars[v].terms().size(); ++t) {
                if (used.count({is_output, {v, t}})) continue;
                const auto& var = vars[v];
                const auto& term = var.terms()[t];
                std::optional<SourceLocation> at;
                if (src) {
                    auto it = src->terms.find({to_lower(var.name()), to_lower(term.name)});
                    if (it != src->terms.end()) at = it->second;
                }
                out.push_back({Severity::warning, "unused-term",
                               "term '" + term.name + "' of '" + var.name() + "' is never used by a rule", at});
            }
        }
    };
    check_terms(rb.inputs(), false);
    check_terms(rb.outputs(), true);

    for (std::size_t o = 0; o < rb.outputs().size(); ++o) {
        if (!targeted[o]) {
            out.push_back({Severity::warning, "untargeted-output",
                           "no rule concludes on output '" + rb.outputs()[o].name() + "'", var_loc(rb.outputs()[o].name())});
        }
    }
    return out;
}

// ------------------------------------------------------------------- parsing

struct Token {
    std::string_view text;
    std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> out;
    std::size_t i = 0;
    auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (i < line.size()) {
        while (i < line.size() && space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !space(line[i])) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

constexpr std::array<std::string_view, 16> kReserved = {"var",  "range", "term", "tri",   "trap",  "rule",
                                                        "if",   "is",    "and",  "or",    "then",  "weight",
                                                        "not",  "very",  "input", "output"};
constexpr std::array<std::string_view, 8> kHedges = {"very",     "somewhat", "not",    "extremely",
                                                     "slightly", "more_or_less", "fairly", "rather"};

bool is_keyword(const Token& t, std::string_view kw) { return iequals(t.text, kw); }

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

bool is_reserved(std::string_view s) {
    return std::any_of(kReserved.begin(), kReserved.end(), [&](auto kw) { return iequals(kw, s); }) ||
           std::any_of(kHedges.begin(), kHedges.end(), [&](auto kw) { return iequals(kw, s); });
}

bool is_hedge(std::string_view s) {
    return std::any_of(kHedges.begin(), kHedges.end(), [&](auto kw) { return iequals(kw, s); });
}

enum class Role { unspecified, input, output };

struct TermDecl {
    std::string name;
    std::optional<MembershipFunction> mf;  // absent when its parameters were bad
    SourceLocation at;
};

struct VarDecl {
    std::string name;
    double lo = 0.0, hi = 1.0;
    Role role = Role::unspecified;
    std::vector<TermDecl> terms;
    SourceLocation at;
    bool valid = true;
};

struct ClauseRef {
    Token var;
    Token term;
    std::size_t line = 0;
};

struct RuleDecl {
    std::vector<ClauseRef> antecedents;
    ClauseRef consequent;
    double weight = 1.0;
    SourceLocation at;
};

class Parser {
public:
    ParseResult run(std::string_view text) {
        std::size_t line_no = 0;
        for (auto raw : split(text, '\n')) {
            ++line_no;
            line_ = line_no;
            auto tokens = tokenize(raw);
            if (tokens.empty()) continue;
            statement(tokens);
        }
        return finish();
    }

private:
    void error(std::string code, std::string message, std::size_t column) {
        result_.diagnostics.push_back({Severity::error, std::move(code), std::move(message), SourceLocation{line_, column}});
    }
    void error_at(std::string code, std::string message, SourceLocation at) {
        result_.diagnostics.push_back({Severity::error, std::move(code), std::move(message), at});
    }

    std::optional<double> number(const Token& t) {
        auto v = parse_number(t.text);
        if (!v) error("malformed-number", "malformed number '" + std::string(t.text) + "'", t.column);
        return v;
    }

    bool name_ok(const Token& t, const char* what) {
        if (!is_identifier(t.text)) {
            error("invalid-name", std::string(what) + " name '" + std::string(t.text) + "' is not an identifier", t.column);
            return false;
        }
        if (is_reserved(t.text)) {
            error("reserved-word", "'" + std::string(t.text) + "' is a keyword and cannot name a " + what, t.column);
            return false;
        }
        return true;
    }

    void statement(const std::vector<Token>& tk) {
        const Token& head = tk.front();
        if (is_keyword(head, "var")) return var_statement(tk);
        if (is_keyword(head, "term")) return term_statement(tk);
        if (is_keyword(head, "rule")) return rule_statement(tk);
        error("unknown-statement", "expected 'var', 'term' or 'rule', got '" + std::string(head.text) + "'", head.column);
    }

    void var_statement(const std::vector<Token>& tk) {
        // var <name> range <lo> <hi> [input|output]
        if (tk.size() < 5 || tk.size() > 6 || !is_keyword(tk[2], "range")) {
            error("syntax-error", "expected 'var <name> range <lo> <hi> [input|output]'", tk.front().column);
            current_ = std::nullopt;
            return;
        }
        VarDecl v;
        v.name = std::string(tk[1].text);
        v.at = {line_, tk[1].column};
        v.valid = name_ok(tk[1], "variable");
        auto lo = number(tk[3]);
        auto hi = number(tk[4]);
        if (lo && hi) {
            if (!(*lo < *hi)) {
                error("invalid-range", "range needs lo < hi", tk[3].column);
                v.valid = false;
            }
            v.lo = *lo;
            v.hi = *hi;
        } else {
            v.valid = false;
        }
        if (tk.size() == 6) {
            if (is_keyword(tk[5], "input")) {
                v.role = Role::input;
            } else if (is_keyword(tk[5], "output")) {
                v.role = Role::output;
            } else {
                error("syntax-error", "expected 'input' or 'output', got '" + std::string(tk[5].text) + "'", tk[5].column);
            }
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (iequals(vars_[i].name, v.name)) {
                error("duplicate-variable", "variable '" + v.name + "' already declared on line " +
                                                std::to_string(vars_[i].at.line),
                      tk[1].column);
                v.valid = false;
            }
        }
        vars_.push_back(std::move(v));
        current_ = vars_.size() - 1;
    }

    void term_statement(const std::vector<Token>& tk) {
        // term <name> tri a b c | term <name> trap a b c d
        if (!current_) {
            error("term-outside-var", "'term' must follow a 'var' declaration", tk.front().column);
            return;
        }
        const bool tri = tk.size() >= 3 && is_keyword(tk[2], "tri");
        const bool trap = tk.size() >= 3 && is_keyword(tk[2], "trap");
        if ((!tri && !trap) || tk.size() != (tri ? 6u : 7u)) {
            error("syntax-error", "expected 'term <name> tri <a> <b> <c>' or 'term <name> trap <a> <b> <c> <d>'",
                  tk.front().column);
            return;
        }
        VarDecl& var = vars_[*current_];
        TermDecl term{std::string(tk[1].text), std::nullopt, {line_, tk[1].column}};
        bool ok = name_ok(tk[1], "term");
        for (const auto& prev : var.terms) {
            if (iequals(prev.name, term.name)) {
                error("duplicate-term", "term '" + term.name + "' already declared for '" + var.name + "'", tk[1].column);
                ok = false;
            }
        }
        std::vector<double> p;
        for (std::size_t i = 3; i < tk.size(); ++i) {
            auto v = number(tk[i]);
            if (!v) ok = false;
            p.push_back(v.value_or(0.0));
        }
        if (ok) {
            if (!std::is_sorted(p.begin(), p.end())) {
                error("mf-parameter-order",
                      std::string(tri ? "triangle" : "trapezoid") + " parameters must be non-decreasing", tk[3].column);
                ok = false;
            } else {
                term.mf = tri ? MembershipFunction::triangular(p[0], p[1], p[2])
                              : MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3]);
            }
        }
        if (!ok) var.valid = false;
        var.terms.push_back(std::move(term));
    }

    void rule_statement(const std::vector<Token>& tk) {
        // rule if <v> is <t> (and <v> is <t>)* then <v> is <t> [weight <w>]
        RuleDecl rule;
        rule.at = {line_, tk.front().column};
        std::size_t i = 1;
        auto expect = [&](std::string_view kw) {
            if (i < tk.size() && is_keyword(tk[i], kw)) {
                ++i;
                return true;
            }
            const std::size_t col = i < tk.size() ? tk[i].column : tk.back().column + tk.back().text.size();
            const std::string got = i < tk.size() ? "'" + std::string(tk[i].text) + "'" : "end of line";
            if (i < tk.size() && is_keyword(tk[i], "or")) {
                error("unsupported-connective", "only 'and' may join antecedents", col);
            } else {
                error("syntax-error", "expected '" + std::string(kw) + "', got " + got, col);
            }
            return false;
        };
        auto clause = [&](ClauseRef& out) {
            if (i >= tk.size()) {
                error("syntax-error", "expected a variable name, got end of line", tk.back().column + tk.back().text.size());
                return false;
            }
            out.var = tk[i++];
            if (!expect("is")) return false;
            if (i >= tk.size()) {
                error("syntax-error", "expected a term name, got end of line", tk.back().column + tk.back().text.size());
                return false;
            }
            if (is_hedge(tk[i].text)) {
                error("unsupported-hedge", "hedge '" + std::string(tk[i].text) + "' is not supported", tk[i].column);
                return false;
            }
            out.term = tk[i++];
            return true;
        };

        if (!expect("if")) return;
        while (true) {
            ClauseRef c;
            if (!clause(c)) return;
            rule.antecedents.push_back(c);
            if (i < tk.size() && is_keyword(tk[i], "and")) {
                ++i;
                continue;
            }
            if (!expect("then")) return;
            break;
        }
        if (!clause(rule.consequent)) return;
        if (i < tk.size()) {
            if (is_keyword(tk[i], "and") || is_keyword(tk[i], "or")) {
                error("unsupported-connective", "a rule has exactly one consequent", tk[i].column);
                return;
            }
            if (!expect("weight")) return;
            if (i >= tk.size()) {
                error("syntax-error", "expected a weight value", tk.back().column + tk.back().text.size());
                return;
            }
            auto w = number(tk[i]);
            if (!w) return;
            if (!(*w > 0.0 && *w <= 1.0)) {
                error("invalid-weight", "weight must be in (0, 1]", tk[i].column);
                return;
            }
            rule.weight = *w;
            ++i;
            if (i < tk.size()) {
                error("syntax-error", "unexpected '" + std::string(tk[i].text) + "' after weight", tk[i].column);
                return;
            }
        }
        rules_.push_back(std::move(rule));
    }

    std::optional<std::size_t> find_var(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (iequals(vars_[i].name, name)) return i;
        }
        return std::nullopt;
    }

    // Returns (var index, term name) or reports unknown-variable / unknown-term.
    std::optional<std::pair<std::size_t, std::string>> resolve(const ClauseRef& c) {
        auto v = find_var(c.var.text);
        if (!v) {
            error_at("unknown-variable", "unknown variable '" + std::string(c.var.text) + "'", {c.line, c.var.column});
            return std::nullopt;
        }
        for (const auto& t : vars_[*v].terms) {
            if (iequals(t.name, c.term.text)) return std::pair{*v, t.name};
        }
        error_at("unknown-term", "variable '" + vars_[*v].name + "' has no term '" + std::string(c.term.text) + "'",
                 {c.line, c.term.column});
        return std::nullopt;
    }

    ParseResult finish() {
        for (auto& v : vars_) {
            if (v.terms.empty()) {
                error_at("empty-variable", "variable '" + v.name + "' declares no terms", v.at);
                v.valid = false;
            }
        }

        // Roles: explicit keyword wins; otherwise a consequent makes an output.
        std::vector<bool> in_antecedent(vars_.size(), false);
        std::vector<bool> in_consequent(vars_.size(), false);
        std::vector<Rule> rules;
        std::vector<SourceLocation> rule_locs;
        for (auto& rd : rules_) {
            Rule rule;
            rule.weight = rd.weight;
            bool ok = true;
            std::set<std::size_t> seen;
            for (auto& c : rd.antecedents) {
                c.line = rd.at.line;
                auto r = resolve(c);
                if (!r) {
                    ok = false;
                    continue;
                }
                if (!seen.insert(r->first).second) {
                    error_at("duplicate-antecedent", "variable '" + vars_[r->first].name + "' is tested twice",
                             {rd.at.line, c.var.column});
                    ok = false;
                }
                in_antecedent[r->first] = true;
                rule.antecedents.push_back({vars_[r->first].name, r->second});
            }
            rd.consequent.line = rd.at.line;
            if (auto r = resolve(rd.consequent)) {
                in_consequent[r->first] = true;
                rule.consequent = {vars_[r->first].name, r->second};
            } else {
                ok = false;
            }
            if (ok) {
                rules.push_back(std::move(rule));
                rule_locs.push_back(rd.at);
            }
        }

        std::vector<bool> is_output(vars_.size(), false);
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            const auto& var = vars_[v];
            is_output[v] = var.role == Role::output || (var.role == Role::unspecified && in_consequent[v]);
            if (is_output[v] && in_antecedent[v]) {
                error_at("role-conflict", "output variable '" + var.name + "' is used in a rule antecedent", var.at);
            } else if (!is_output[v] && in_consequent[v]) {
                error_at("role-conflict", "input variable '" + var.name + "' is used as a rule consequent", var.at);
            }
        }

        if (has_errors(result_.diagnostics)) return std::move(result_);

        SourceMap src;
        std::vector<LinguisticVariable> inputs;
        std::vector<LinguisticVariable> outputs;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            const auto& var = vars_[v];
            std::vector<Term> terms;
            for (const auto& t : var.terms) {
                terms.push_back({t.name, *t.mf});
                src.terms[{to_lower(var.name), to_lower(t.name)}] = t.at;
            }
            src.variables[to_lower(var.name)] = var.at;
            (is_output[v] ? outputs : inputs).emplace_back(var.name, var.lo, var.hi, std::move(terms));
        }
        src.rules = std::move(rule_locs);

        try {
            RuleBase rb(std::move(inputs), std::move(outputs), std::move(rules));
            auto findings = validate_with(rb, &src);
            const bool failed = has_errors(findings);
            result_.diagnostics.insert(result_.diagnostics.end(), findings.begin(), findings.end());
            if (!failed) result_.rulebase.emplace(std::move(rb));
        } catch (const Error& e) {
            // Pre-checks above should make this unreachable.
            error_at(e.code(), e.what(), {1, 1});
        }
        return std::move(result_);
    }

    ParseResult result_;
    std::vector<VarDecl> vars_;
    std::vector<RuleDecl> rules_;
    std::optional<std::size_t> current_;
    std::size_t line_ = 0;
};

}  // namespace

ParseResult parse_rulebase(std::string_view text) { return Parser().run(text); }

Diagnostics validate(const RuleBase& rb) { return validate_with(rb, nullptr); }

std::string serialize_rulebase(const RuleBase& rb) {
    std::ostringstream os;
    auto emit_var = [&](const LinguisticVariable& v, const char* role) {
        os << "var " << v.name() << " range " << format_number(v.lo()) << ' ' << format_number(v.hi()) << ' ' << role
           << '\n';
        for (const auto& t : v.terms()) {
            os << "  term " << t.name
               << (t.mf.shape() == MembershipFunction::Shape::triangular ? " tri" : " trap");
            for (double p : t.mf.parameters()) os << ' ' << format_number(p);
            os << '\n';
        }
    };
    bool first = true;
    for (const auto& v : rb.inputs()) {
        if (!first) os << '\n';
        first = false;
        emit_var(v, "input");
    }
    for (const auto& v : rb.outputs()) {
        if (!first) os << '\n';
        first = false;
        emit_var(v, "output");
    }
    if (!rb.rules().empty()) os << '\n';
    for (const auto& r : rb.rules()) {
        os << "rule if ";
        for (std::size_t k = 0; k < r.antecedents.size(); ++k) {
            if (k) os << " and ";
            os << r.antecedents[k].variable << " is " << r.antecedents[k].term;
        }
        os << " then " << r.consequent.variable << " is " << r.consequent.term;
        if (r.weight != 1.0) os << " weight " << format_number(r.weight);
        os << '\n';
    }
    return os.str();
}

}  // namespace fuzzavail
