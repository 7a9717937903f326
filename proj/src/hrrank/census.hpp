#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrrank/generic.hpp"

namespace hrr {

enum class Outcome { RankP, RankExceedsP, NotGeneric, RankDeficient };
inline constexpr std::array<Outcome, 4> kAllOutcomes{Outcome::RankP, Outcome::RankExceedsP, Outcome::NotGeneric,
                                                     Outcome::RankDeficient};

const char* to_string(Outcome o) noexcept;
Outcome outcome_of(const GenericResult& r) noexcept;

struct TrialRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Outcome outcome = Outcome::RankP;
    std::optional<double> residual;  // RankP only
};

struct CensusReport {
    std::size_t m = 0, n = 0, p = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    DecomposeOptions options;
    std::vector<TrialRecord> per_trial;

    std::size_t count(Outcome o) const;
    double fraction(Outcome o) const;
    double max_residual() const;
    std::string to_json() const;
};

// Trial i decomposes randomGaussian((n, (m-1)n, m), derive_seed(seed, i)).
// Trials run on `threads` workers (0: hardware concurrency); the report is
// independent of the thread count.
CensusReport run_census(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed,
                        std::size_t threads = 0);

}  // namespace hrr
