#pragma once

// Line-oriented text format for fuzzy rule bases (.frb).
//
//   # comment
//   var kd range 0 1 input
//     term VerySmall tri 0 0 0.25
//     term Wide trap 0 0.2 0.4 0.6
//   var ka range 0 1 output
//     ...
//   rule if kd is VerySmall and ks is Small then ka is VerySmall weight 0.5
//
// Keywords and names are case-insensitive. The trailing input/output role
// on a `var` line is optional; without it a variable is an output exactly
// when some rule concludes on it. `and` is the only connective.

#include <optional>
#include <string>
#include <string_view>

#include "fuzzavail/diagnostic.hpp"
#include "fuzzavail/fuzzy.hpp"

namespace fuzzavail {

struct ParseResult {
    std::optional<RuleBase> rulebase;  // set only when no error was reported
    Diagnostics diagnostics;           // errors and warnings, in source order per phase
};

// Never throws on malformed text; every problem becomes a located
// diagnostic with a stable code (unknown-term, malformed-number, ...).
// Warnings from validate() are included on success.
ParseResult parse_rulebase(std::string_view text);

// Canonical text: declaration order, explicit roles, shortest round-trip
// numbers, weight only when != 1.
std::string serialize_rulebase(const RuleBase& rb);

// Semantic checks that RuleBase construction does not enforce:
//   error   contradictory-rules   same antecedents, different consequent
//   error   domain-not-covered    some x in [lo, hi] has no positive term
//   warning uncovered-cell        an input-term combination with no rule
//   warning unused-term           a term no rule mentions
//   warning untargeted-output     an output no rule concludes on
Diagnostics validate(const RuleBase& rb);

}  // namespace fuzzavail
