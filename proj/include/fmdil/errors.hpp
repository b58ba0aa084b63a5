#pragma once

#include <stdexcept>
#include <string>

namespace fmdil {

// Bad user input: malformed descriptor, unparsable flag value. CLI exit 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input parsed fine but the construction failed: invalid multiplication
// table, kernel factorization inconsistent, non-cnd input fed to a builder.
// CLI exit 3.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fmdil
