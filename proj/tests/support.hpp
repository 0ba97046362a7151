#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "fuzzavail/diagnostic.hpp"
#include "fuzzavail/error.hpp"

namespace testing {

// Code of the fuzzavail::Error thrown by fn, or "" if it returns normally.
std::string error_code(auto&& fn) {
    try {
        fn();
    } catch (const fuzzavail::Error& e) {
        return e.code();
    }
    return "";
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t count_code(const fuzzavail::Diagnostics& diags, std::string_view code) {
    return static_cast<std::size_t>(
        std::count_if(diags.begin(), diags.end(), [&](const auto& d) { return d.code == code; }));
}

inline const fuzzavail::Diagnostic* find_code(const fuzzavail::Diagnostics& diags, std::string_view code) {
    for (const auto& d : diags) {
        if (d.code == code) return &d;
    }
    return nullptr;
}

}  // namespace testing
