#pragma once

// Text formats exchanged with plotting scripts and between CLI commands.
//
//   grid     kd,ks,ka header; one row per sample, kd-major.
//   slice    "# ks=<value>" comment, kd,ka header, one row per sample.
//   contour  text: "# level=<v>" then one "kd,ks" vertex per line, blank
//            line between polylines; or JSON (array of records).
//
// Numbers are written as the shortest decimal that round-trips exactly.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzavail/availability.hpp"

namespace fuzzavail {

void write_grid_csv(std::ostream& os, const Grid& grid);
// Throws Error("malformed-grid") with the offending line number.
Grid read_grid_csv(std::string_view text);

void write_slice_csv(std::ostream& os, const Slice& s);
Slice read_slice_csv(std::string_view text);

enum class ContourFormat { text, json };

void write_contours(std::ostream& os, const std::vector<ContourSet>& sets, ContourFormat format);

}  // namespace fuzzavail
