#include "hrrank/rank_tables.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "hrrank/errors.hpp"

namespace hrr {

std::uint64_t hurwitz_radon(std::uint64_t n) {
    if (n == 0) throw ArgumentError("hurwitz_radon: n must be positive");
    const auto twos = static_cast<std::uint64_t>(std::countr_zero(n));
    const std::uint64_t c = twos / 4, b = twos % 4;
    return (std::uint64_t{1} << b) + 8 * c;
}

std::string TypicalRankAnswer::to_string() const {
    if (!known()) return "unknown";
    std::string s = "{";
    for (std::uint64_t r = *low; r <= *high; ++r) {
        if (r != *low) s += ", ";
        s += std::to_string(r);
    }
    return s + "}";
}

namespace {

TypicalRankAnswer interval(std::uint64_t lo, std::uint64_t hi, const char* tag) { return {lo, hi, tag}; }

}  // namespace

TypicalRankAnswer typical_ranks(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3) {
    if (m1 == 0 || m2 == 0 || m3 == 0) throw ArgumentError("typical_ranks: dimensions must be positive");
    // Rank is invariant under mode permutation, so sort to m <= n <= p.
    std::array<std::uint64_t, 3> d{m1, m2, m3};
    std::sort(d.begin(), d.end());
    const auto [m, n, p] = d;

    if (m == 1) return interval(n, n, "matrix");
    if (m == 2) {
        if (p == n) return interval(p, p + 1, "two-slice-square");
        if (p <= 2 * n) return interval(p, p, "two-slice");
        return interval(2 * n, 2 * n, "two-slice-saturated");
    }
    if (p >= m * n) return interval(m * n, m * n, "saturated");
    if (p > (m - 1) * n) return interval(p, p, "tall");
    if (p == (m - 1) * n) {
        if (m > hurwitz_radon(n)) return interval(p, p, "hurwitz-radon-singleton");
        return interval(p, p + 1, "hurwitz-radon-pair");
    }
    return {std::nullopt, std::nullopt, "uncovered"};
}

}  // namespace hrr
