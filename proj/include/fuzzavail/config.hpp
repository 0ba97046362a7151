#pragma once

// key=value inference settings, one per line, '#' comments:
//
//   tnorm = product | min
//   implication = scale | clip
//   aggregation = max
//   defuzz = centroid | mom
//   resolution = 1001
//
// Missing keys keep the reference values (the first option listed).

#include <optional>
#include <string>
#include <string_view>

#include "fuzzavail/diagnostic.hpp"
#include "fuzzavail/fuzzy.hpp"

namespace fuzzavail {

std::optional<InferenceConfig> parse_config(std::string_view text, Diagnostics& diags);

std::string serialize_config(const InferenceConfig& config);

}  // namespace fuzzavail
