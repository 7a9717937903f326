#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hrrank/errors.hpp"
#include "hrrank/linalg.hpp"
#include "hrrank/tensor.hpp"

namespace hrr {

// The l = m-1 matrices Y_k with (Y_1, ..., Y_l) = X_m H(X)^-1, together
// with the flattening H(X) they were computed from (identity when built
// directly from Y).
class ContractionY {
public:
    explicit ContractionY(std::vector<Mat> ys);
    ContractionY(std::vector<Mat> ys, Mat h);

    const std::vector<Mat>& ys() const noexcept { return ys_; }
    const Mat& h() const noexcept { return h_; }
    std::size_t n() const noexcept { return ys_.front().rows(); }
    std::size_t l() const noexcept { return ys_.size(); }
    std::size_t m() const noexcept { return ys_.size() + 1; }
    std::size_t p() const noexcept { return ys_.size() * n(); }

    Tensor3 x_of_y() const { return build_x_of_y(ys_); }

private:
    std::vector<Mat> ys_;
    Mat h_;
};

// Point (direction, a_m, v) of the real determinantal hypersurface:
// M((direction, eigenvalue), Y) v = 0.
struct HypersurfacePoint {
    Vec direction;  // unit, length l
    double eigenvalue = 0.0;
    Vec v;          // unit, length n
    double kernel_residual = 0.0;  // ||M v|| / ||M||_F
    double det_residual = 0.0;     // |det M| / ||M||_F^n
    std::size_t direction_index = 0;

    Vec coordinates() const;  // (direction..., eigenvalue)
};

enum class Verdict {
    NegativeWitness,                 // det M(a, Y) < 0 found: sign-changing class
    NoRealPointFound,                // probabilistic evidence of the absolutely nonsingular class
    RealPointsButNoNegativeWitness,  // suspected boundary
};

const char* to_string(Verdict v) noexcept;

struct Classification {
    Verdict verdict = Verdict::NoRealPointFound;
    Vec witness;               // a with det M(a, Y) < 0 (NegativeWitness only)
    double witness_det = 0.0;
    std::size_t directions_tried = 0;
    std::uint64_t seed = 0;
    std::vector<HypersurfacePoint> points;
};

struct DecomposeOptions {
    std::size_t initial_directions = 0;  // 0 means 8p
    std::size_t budget = 0;              // max directions, 0 means 64p
    std::uint64_t seed = 0;
    double tol_rec = 1e-8;
    double tol_pt = 1e-8;
    double pivot_ratio = 1e-10;
};

// Decomposition at rank p could not be assembled within the direction budget.
class NoDecompositionAtP : public Error {
public:
    NoDecompositionAtP(const std::string& what, Classification c) : Error(what), classification_(std::move(c)) {}
    const Classification& classification() const noexcept { return classification_; }

private:
    Classification classification_;
};

ContractionY contract(const Tensor3& x);

// sum_k a_k Y_k - a_m E_n
Mat eval_m(std::span<const double> a, const ContractionY& y);

// Directions [first, last) of the seeded direction stream; direction i is
// drawn from CounterRng(derive_seed(seed, i)). Ordered by (direction,
// eigenvalue ascending).
std::vector<HypersurfacePoint> sample_points(const ContractionY& y, std::size_t first, std::size_t last,
                                             std::uint64_t seed, double tol_pt = 1e-8);
inline std::vector<HypersurfacePoint> sample_points(const ContractionY& y, std::size_t directions,
                                                    std::uint64_t seed) {
    return sample_points(y, 0, directions, seed);
}

Classification classify(const ContractionY& y, std::size_t directions, std::uint64_t seed);
Classification classify_points(const ContractionY& y, std::vector<HypersurfacePoint> points,
                               std::size_t directions_tried, std::uint64_t seed);

struct BAssembly {
    Mat b;  // p x p, column j = direction_j (x) v_j
    std::vector<HypersurfacePoint> chosen;
    double pivot_ratio = 0.0;  // smallest / largest retained pivot
};

// Greedy pivoted Gram-Schmidt over the candidate columns. Throws
// RankDeficientError when fewer than p columns clear the pivot screen.
BAssembly assemble_b(std::span<const HypersurfacePoint> points, std::size_t p, double pivot_ratio = 1e-10);

// Rank-p decomposition of X(Y). Throws NoDecompositionAtP with the
// classification of Y once the direction budget is exhausted.
Decomposition decompose_x_of_y(const ContractionY& y, const DecomposeOptions& opts = {});

struct RankP {
    Decomposition decomposition;
    double residual = 0.0;
};
struct RankExceedsP {
    Classification classification;
};
struct RankDeficient {
    Classification classification;
    std::string reason;
};
struct NotGeneric {
    std::string reason;
};

using GenericResult = std::variant<RankP, RankExceedsP, RankDeficient, NotGeneric>;

// n x p x m tensor with p = (m-1)n, m >= 3.
GenericResult decompose_generic(const Tensor3& t, const DecomposeOptions& opts = {});

}  // namespace hrr
