#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fuzzavail {

struct SourceLocation {
    std::size_t line = 1;    // 1-based
    std::size_t column = 1;  // 1-based

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    std::optional<SourceLocation> location;

    bool is_error() const { return severity == Severity::error; }
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& diags) {
    for (const auto& d : diags) {
        if (d.is_error()) return true;
    }
    return false;
}

// "<origin>:<line>:<col>: error: <message> [code]"
inline void print(std::ostream& os, const Diagnostic& d, const std::string& origin = {}) {
    if (!origin.empty()) os << origin << ':';
    if (d.location) os << d.location->line << ':' << d.location->column << ':';
    if (!origin.empty() || d.location) os << ' ';
    os << (d.is_error() ? "error: " : "warning: ") << d.message << " [" << d.code << "]\n";
}

}  // namespace fuzzavail
