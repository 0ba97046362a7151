#include "fuzzavail/formats.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "fuzzavail/error.hpp"
#include "fuzzavail/numfmt.hpp"
#include "text.hpp"

namespace fuzzavail {

void write_grid_csv(std::ostream& os, const Grid& grid) {
    os << "kd,ks,ka\n";
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            os << format_number(grid.kd_samples[i]) << ',' << format_number(grid.ks_samples[j]) << ','
               << format_number(grid.at(i, j)) << '\n';
        }
    }
}

namespace {

[[noreturn]] void fail(const char* code, std::size_t line, const std::string& what) {
    throw Error(code, "line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_row(std::string_view line, std::size_t width, std::size_t line_no, const char* code) {
    auto fields = split(line, ',');
    if (fields.size() != width) {
        fail(code, line_no, "expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> out;
    for (auto f : fields) {
        auto v = parse_number(trim(f));
        if (!v) fail(code, line_no, "malformed number '" + std::string(trim(f)) + "'");
        out.push_back(*v);
    }
    return out;
}

}  // namespace

Grid read_grid_csv(std::string_view text) {
    constexpr const char* code = "malformed-grid";
    bool header_seen = false;
    std::vector<std::array<double, 3>> rows;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (to_lower(line) != "kd,ks,ka") fail(code, line_no, "expected header 'kd,ks,ka'");
            header_seen = true;
            continue;
        }
        auto v = parse_row(line, 3, line_no, code);
        rows.push_back({v[0], v[1], v[2]});
    }
    if (!header_seen) fail(code, line_no, "missing header 'kd,ks,ka'");
    if (rows.empty()) throw Error("empty-grid", "grid file has no samples");

    Grid grid;
    for (const auto& r : rows) {
        if (r[0] != rows.front()[0]) break;
        grid.ks_samples.push_back(r[1]);
    }
    const std::size_t ny = grid.ks_samples.size();
    if (rows.size() % ny != 0) throw Error(code, "row count is not a multiple of the ks sample count");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t i = k / ny;
        const std::size_t j = k % ny;
        if (j == 0) grid.kd_samples.push_back(rows[k][0]);
        if (rows[k][0] != grid.kd_samples[i] || rows[k][1] != grid.ks_samples[j]) {
            throw Error(code, "sample " + std::to_string(k + 1) + " breaks the kd-major rectangular layout");
        }
        grid.values.push_back(rows[k][2]);
    }
    auto ascending = [](const std::vector<double>& xs) {
        return std::adjacent_find(xs.begin(), xs.end(), std::greater_equal<>()) == xs.end();
    };
    if (!ascending(grid.kd_samples) || !ascending(grid.ks_samples)) {
        throw Error(code, "kd and ks samples must be strictly ascending");
    }
    return grid;
}

void write_slice_csv(std::ostream& os, const Slice& s) {
    os << "# ks=" << format_number(s.ks_fixed) << "\nkd,ka\n";
    for (std::size_t i = 0; i < s.kd_samples.size(); ++i) {
        os << format_number(s.kd_samples[i]) << ',' << format_number(s.values[i]) << '\n';
    }
}

Slice read_slice_csv(std::string_view text) {
    constexpr const char* code = "malformed-slice";
    Slice s;
    bool ks_seen = false;
    bool header_seen = false;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string_view::npos && to_lower(trim(body.substr(0, eq))) == "ks") {
                auto v = parse_number(trim(body.substr(eq + 1)));
                if (!v) fail(code, line_no, "malformed ks value");
                s.ks_fixed = *v;
                ks_seen = true;
            }
            continue;
        }
        if (!header_seen) {
            if (to_lower(line) != "kd,ka") fail(code, line_no, "expected header 'kd,ka'");
            header_seen = true;
            continue;
        }
        auto v = parse_row(line, 2, line_no, code);
        s.kd_samples.push_back(v[0]);
        s.values.push_back(v[1]);
    }
    if (!ks_seen) fail(code, line_no, "missing '# ks=<value>' comment");
    if (!header_seen) fail(code, line_no, "missing header 'kd,ka'");
    return s;
}

void write_contours(std::ostream& os, const std::vector<ContourSet>& sets, ContourFormat format) {
    if (format == ContourFormat::json) {
        // ordered_json keeps "level" ahead of "vertices" for readable diffs.
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& set : sets) {
            for (const auto& line : set.polylines) {
                nlohmann::ordered_json verts = nlohmann::ordered_json::array();
                for (const auto& p : line.vertices) verts.push_back({p.kd, p.ks});
                records.push_back({{"level", set.level}, {"closed", line.closed}, {"vertices", std::move(verts)}});
            }
        }
        os << records.dump(1) << '\n';
        return;
    }

    bool first = true;
    for (const auto& set : sets) {
        for (const auto& line : set.polylines) {
            if (!first) os << '\n';
            first = false;
            os << "# level=" << format_number(set.level);
            if (line.closed) os << " closed";
            os << '\n';
            for (const auto& p : line.vertices) os << format_number(p.kd) << ',' << format_number(p.ks) << '\n';
        }
    }
}

}  // namespace fuzzavail
