#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hrrank/linalg.hpp"

namespace hrr {

using Shape3 = std::array<std::size_t, 3>;

// Dense real d1 x d2 x d3 tensor, slice-major: entry (i, j, k) lives at
// k*d1*d2 + i*d2 + j, so slice k is a contiguous row-major d1 x d2 matrix.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(Shape3 shape);
    Tensor3(Shape3 shape, std::vector<double> data);

    static Tensor3 from_slices(std::span<const Mat> slices);

    const Shape3& shape() const noexcept { return shape_; }
    std::size_t d1() const noexcept { return shape_[0]; }
    std::size_t d2() const noexcept { return shape_[1]; }
    std::size_t d3() const noexcept { return shape_[2]; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[k * shape_[0] * shape_[1] + i * shape_[1] + j];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[k * shape_[0] * shape_[1] + i * shape_[1] + j];
    }

    std::span<const double> data() const noexcept { return data_; }
    Mat slice(std::size_t k) const;
    void set_slice(std::size_t k, const Mat& s);

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Shape3 shape_{0, 0, 0};
    std::vector<double> data_;
};

double frobenius_norm(const Tensor3& t);

struct RankOneTerm {
    Vec u, v, w;
};

struct Decomposition {
    Shape3 shape{0, 0, 0};
    std::vector<RankOneTerm> terms;

    std::size_t rank() const noexcept { return terms.size(); }
    // Throws DimensionError if any term's vector lengths disagree with shape.
    void validate() const;
};

inline constexpr double kResidualFloor = 1e-300;

// Vertical stack of the first `count` slices: (count*d1) x d2.
Mat slice_stack(const Tensor3& x, std::size_t count);

// n x (l n) x (l + 1) tensor whose first l slices are the block rows of the
// identity and whose last slice is (Y_1, ..., Y_l).
Tensor3 build_x_of_y(std::span<const Mat> ys);

Tensor3 reconstruct(const Decomposition& d);
double relative_residual(const Tensor3& t, const Decomposition& d);

// Slice w of the result is sum_u R(w,u) * P * slice_u * Q^T.
Tensor3 gl_action(const Mat& p, const Mat& q, const Mat& r, const Tensor3& t);

// perm[i] names the source mode that becomes mode i of the result.
using ModePerm = std::array<int, 3>;
bool is_valid_perm(const ModePerm& perm);
ModePerm inverse_perm(const ModePerm& perm);
Tensor3 permute_modes(const Tensor3& t, const ModePerm& perm);
Decomposition permute_modes(const Decomposition& d, const ModePerm& perm);

struct PdqResult {
    Tensor3 tensor;
    Decomposition decomposition;
};

// Slice k = P diag(D[k]) Q, with the matching rank-one terms
// (col j of P) x (row j of Q) x (D[0][j], ..., D[m3-1][j]).
PdqResult from_pdq(const Mat& p, std::span<const Vec> diagonals, const Mat& q);
Decomposition decomposition_from_pdq(const Mat& p, std::span<const Vec> diagonals, const Mat& q);

}  // namespace hrr
