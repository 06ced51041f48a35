#pragma once

#include <stdexcept>
#include <string>

namespace greensfn {

// Library-wide error type. `code` is a stable kebab-case identifier suitable
// for machine consumption (the CLI prints "<code>: <message>" on failure).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace greensfn
