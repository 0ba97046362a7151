#include "fuzzavail/config.hpp"

#include <cmath>
#include <sstream>

#include "fuzzavail/numfmt.hpp"
#include "text.hpp"

namespace fuzzavail {

std::optional<InferenceConfig> parse_config(std::string_view text, Diagnostics& diags) {
    InferenceConfig cfg;
    const std::size_t before = diags.size();
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;

        auto bad = [&](std::string code, std::string message) {
            diags.push_back({Severity::error, std::move(code), std::move(message), SourceLocation{line_no, 1}});
        };
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            bad("syntax-error", "expected key = value");
            continue;
        }
        const auto key = to_lower(trim(line.substr(0, eq)));
        const auto value = to_lower(trim(line.substr(eq + 1)));

        if (key == "tnorm") {
            if (value == "min") cfg.tnorm = TNorm::min;
            else if (value == "product" || value == "prod") cfg.tnorm = TNorm::product;
            else bad("invalid-value", "tnorm must be 'min' or 'product'");
        } else if (key == "implication") {
            if (value == "clip" || value == "min") cfg.implication = Implication::clip;
            else if (value == "scale" || value == "product") cfg.implication = Implication::scale;
            else bad("invalid-value", "implication must be 'clip' or 'scale'");
        } else if (key == "aggregation") {
            if (value == "max") cfg.aggregation = Aggregation::max;
            else bad("invalid-value", "aggregation must be 'max'");
        } else if (key == "defuzz") {
            if (value == "centroid") cfg.defuzz = Defuzzifier::centroid;
            else if (value == "mom" || value == "mean-of-maxima") cfg.defuzz = Defuzzifier::mean_of_maxima;
            else bad("invalid-value", "defuzz must be 'centroid' or 'mom'");
        } else if (key == "resolution") {
            auto v = parse_number(value);
            if (!v || *v != std::floor(*v) || *v < static_cast<double>(InferenceConfig::kMinResolution) || *v > 1e8) {
                bad("invalid-value", "resolution must be an integer >= " + std::to_string(InferenceConfig::kMinResolution));
            } else {
                cfg.resolution = static_cast<std::size_t>(*v);
            }
        } else {
            bad("unknown-key", "unknown setting '" + key + "'");
        }
    }
    if (diags.size() != before) return std::nullopt;
    return cfg;
}

std::string serialize_config(const InferenceConfig& config) {
    std::ostringstream os;
    os << "tnorm = " << (config.tnorm == TNorm::min ? "min" : "product") << '\n'
       << "implication = " << (config.implication == Implication::clip ? "clip" : "scale") << '\n'
       << "aggregation = max\n"
       << "defuzz = " << (config.defuzz == Defuzzifier::centroid ? "centroid" : "mom") << '\n'
       << "resolution = " << config.resolution << '\n';
    return os.str();
}

}  // namespace fuzzavail
