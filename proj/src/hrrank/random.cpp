#include "hrrank/random.hpp"

#include <cmath>
#include <numbers>

namespace hrr {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64_mix(splitmix64_mix(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Tensor3 random_gaussian(Shape3 shape, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> data(shape[0] * shape[1] * shape[2]);
    for (double& x : data) x = rng.normal();
    return Tensor3(shape, std::move(data));
}

Mat random_gaussian(std::size_t rows, std::size_t cols, CounterRng& rng) {
    std::vector<double> data(rows * cols);
    for (double& x : data) x = rng.normal();
    return Mat(rows, cols, std::move(data));
}

Vec random_unit_vector(std::size_t n, CounterRng& rng) {
    Vec v(n);
    double nv = 0.0;
    while (nv == 0.0) {
        for (double& x : v) x = rng.normal();
        nv = norm2(v);
    }
    for (double& x : v) x /= nv;
    return v;
}

}  // namespace hrr
