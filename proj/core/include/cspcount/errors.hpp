#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cspcount {

/// Input could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// A configured enumeration or search bound was exceeded. Never silently
/// truncates: the caller either raises the bound or gets this.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation refused to produce a result because its correctness
/// precondition is not established (e.g. counting over a language that is
/// not certified tractable).
class NotApplicableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Limits for brute-force enumeration stages. Enumerating more than
/// `max_points` assignments raises ResourceError.
struct EnumLimits {
    std::uint64_t max_points = 10'000'000;
    int threads = 1;
};

/// Limits for the classifier search stages.
struct SearchLimits {
    int max_maltsev_domain = 3;                  // free entries number d^3 - 2d^2 + d
    std::uint64_t max_power_domain = 729;        // d^6; 729 covers d = 3
    std::uint64_t max_power_table_cells = 2'000'000;
    std::uint64_t max_search_nodes = 5'000'000;  // backtracking node budget
};

}  // namespace cspcount
