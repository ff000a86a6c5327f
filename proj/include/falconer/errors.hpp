#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace falconer {

// Bad input: unparseable polynomial, contract violation, out-of-range
// parameter. The CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : ValidationError {
    ParseError(const std::string& msg, std::size_t position)
        : ValidationError(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

// Work-size cap exceeded; carries the budget the request would need.
struct BudgetError : ValidationError {
    BudgetError(const std::string& what_exceeded, std::uint64_t required_budget,
                std::uint64_t configured_budget)
        : ValidationError(what_exceeded + ": needs budget " + std::to_string(required_budget) +
                          ", configured " + std::to_string(configured_budget)),
          required(required_budget),
          configured(configured_budget) {}
    std::uint64_t required;
    std::uint64_t configured;
};

}  // namespace falconer
