#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fuzzavail {

// Thrown for contract violations. `code()` is a stable identifier such as
// "no-activation" or "missing-input" that callers may switch on.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace fuzzavail
