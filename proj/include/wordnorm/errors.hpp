#pragma once

#include <stdexcept>
#include <string>

namespace wordnorm {

// Three failure families, kept apart so callers (and the CLI exit-code map)
// can tell bad input, blown budgets and broken preconditions apart.

struct MalformedInputError : std::runtime_error {
    explicit MalformedInputError(const std::string& what) : std::runtime_error(what) {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wordnorm
