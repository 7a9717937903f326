#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace hrr {

// rho(n) = 2^b + 8c where n = (2a + 1) 2^(b + 4c), 0 <= b < 4.
std::uint64_t hurwitz_radon(std::uint64_t n);

// Typical ranks over the reals as a contiguous interval [low, high], or
// unknown when the shape is outside every case with a closed-form answer.
struct TypicalRankAnswer {
    std::optional<std::uint64_t> low;
    std::optional<std::uint64_t> high;
    std::string citation;

    bool known() const noexcept { return low.has_value(); }
    std::string to_string() const;  // "{8, 9}", "{6}" or "unknown"
};

TypicalRankAnswer typical_ranks(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3);

}  // namespace hrr
