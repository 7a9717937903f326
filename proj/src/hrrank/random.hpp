#pragma once

#include <cstdint>

#include "hrrank/linalg.hpp"
#include "hrrank/tensor.hpp"

namespace hrr {

// Counter-based generator: the k-th 64-bit word of stream `key` is
// splitmix64_mix(key + (k + 1) * 0x9E3779B97F4A7C15). Uniforms take the top
// 53 bits, offset by half an ulp so they lie in (0, 1). Normals use
// Box-Muller on consecutive uniform pairs (cosine branch first).
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

// Independent stream key for sub-experiment `index` of a run seeded with
// `seed`: splitmix64_mix(splitmix64_mix(seed) ^ (index * 0xD1B54A32D192ED03 + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;
    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

Tensor3 random_gaussian(Shape3 shape, std::uint64_t seed);
Mat random_gaussian(std::size_t rows, std::size_t cols, CounterRng& rng);
Vec random_unit_vector(std::size_t n, CounterRng& rng);

}  // namespace hrr
