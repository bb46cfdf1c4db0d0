#pragma once

#include <stdexcept>
#include <string>

namespace freelin {

/// Thrown when an operation's preconditions on its inputs are violated
/// (mismatched generator counts, wrong coefficient ring, malformed data).
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a term table would exceed the configured safety cap
/// (FREELIN_MAX_TERMS, default 10^6).
class LimitExceeded : public std::runtime_error {
public:
    explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Safety cap on term-table sizes, read once from FREELIN_MAX_TERMS.
std::size_t max_terms();

void check_term_budget(std::size_t count);

}  // namespace freelin
