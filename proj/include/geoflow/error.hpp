#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace geoflow {

/// Failure raised by any geoflow operation. `token()` is a stable,
/// machine-readable name (e.g. "cfl-violation") that the CLI prints verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string token, const std::string& detail = {})
        : std::runtime_error(detail.empty() ? token : token + ": " + detail),
          token_(std::move(token)) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

}  // namespace geoflow
