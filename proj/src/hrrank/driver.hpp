#pragma once

#include <optional>
#include <string>

#include "hrrank/census.hpp"
#include "hrrank/generic.hpp"
#include "hrrank/tall.hpp"
#include "hrrank/tensor.hpp"

namespace hrr {

// Orientation search over the six mode permutations (identity first).
// Generic: n x (m-1)n x m with m >= 3 the smallest dimension.
std::optional<ModePerm> find_generic_orientation(const Shape3& shape);
// Tall: n x u x m with 3 <= m <= n <= u and (m-1)n < u < mn.
std::optional<ModePerm> find_tall_orientation(const Shape3& shape);

// "auto" -> nullopt; otherwise three distinct digits 0-2, e.g. "102".
std::optional<ModePerm> parse_orientation(const std::string& text);
std::string format_orientation(const ModePerm& perm);

enum class Mode { Auto, Tall, Generic };

struct DriveOptions {
    Mode mode = Mode::Auto;
    std::optional<ModePerm> orientation;  // nullopt: detect
    DecomposeOptions generic;
    TallOptions tall;
};

struct DriveResult {
    Mode mode_used = Mode::Generic;
    ModePerm orientation{0, 1, 2};
    Outcome outcome = Outcome::RankP;
    std::optional<Decomposition> decomposition;  // in the input's orientation
    double residual = 0.0;
    std::optional<Classification> classification;
    std::string message;
};

// Normalizes orientation, runs the tall or generic construction, and maps
// the decomposition back to the caller's mode order.
DriveResult decompose_tensor(const Tensor3& t, const DriveOptions& opts);

struct ClassifyResult {
    bool input_was_contraction = false;
    ModePerm orientation{0, 1, 2};
    Classification classification;
};

// n x n x l inputs (l >= 2) are taken as Y directly; anything else is
// oriented to the generic shape and contracted first.
ClassifyResult classify_tensor(const Tensor3& t, std::size_t directions, std::uint64_t seed);

}  // namespace hrr
