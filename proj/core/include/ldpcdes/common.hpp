#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldpcdes {

inline constexpr const char* kVersion = "0.1.0";

// Ternary symbol on the erasure channel.
enum class Bit : std::uint8_t { Zero = 0, One = 1, Erased = 2 };

inline bool is_known(Bit b) { return b != Bit::Erased; }

// Invalid user input: malformed files, distributions that fail their
// invariants, out-of-range parameters. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure at runtime: infeasible search brackets, non-convergence,
// construction stalls. The CLI maps this to exit code 1.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldpcdes
