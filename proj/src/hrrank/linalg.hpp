#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hrr {

using Vec = std::vector<double>;

// Relative pivot threshold below which inverse() reports SingularError.
inline constexpr double kTolLin = 1e-10;
// Tolerance used by identity-style checks.
inline constexpr double kTolId = 1e-8;
// realEigenpairs refuses matrices larger than this.
inline constexpr std::size_t kEigenSizeCap = 32;

// Dense row-major real matrix. Construction from data rejects NaN/Inf.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);
    Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Mat identity(std::size_t n);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Mat diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }
    Vec col(std::size_t j) const;

    // Copy of the block starting at (r0, c0).
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    Mat without_row_col(std::size_t r, std::size_t c) const;
    Mat without_col(std::size_t c) const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, std::span<const double> x);

Mat transpose(const Mat& a);
Mat vstack(std::span<const Mat> blocks);
double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// Partial-pivot LU of a square matrix, PA = LU packed in `lu`.
struct LuFactors {
    Mat lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    double min_pivot = 0.0;
    double max_pivot = 0.0;

    double determinant() const;
    double pivot_ratio() const { return max_pivot > 0.0 ? min_pivot / max_pivot : 0.0; }
    Vec solve(std::span<const double> b) const;
};

LuFactors lu_factor(const Mat& a);

double determinant(const Mat& m);
Mat inverse(const Mat& m);

// Signed maximal-minor vector of an (n-1) x n matrix: component j is
// (-1)^(n+j) det(W without column j), 1-based j.
Vec perp_vector(const Mat& w);

// psi_j = (-1)^(n+j) det(M without row n and column j); M psi = det(M) e_n.
Vec last_row_cofactors(const Mat& m);

struct KernelResult {
    Vec v;
    double residual = 0.0;
};

// Unit v minimizing ||M v|| (right singular vector of the smallest singular
// value). The largest-magnitude component of v is made positive.
KernelResult kernel_vector(const Mat& m);

// One-sided Jacobi SVD. Singular values descending, matching columns of v.
struct Svd {
    Vec singular;
    Mat v;
};
Svd jacobi_svd(const Mat& a);

struct EigenPair {
    double lambda = 0.0;
    Vec v;
};

// One pair per distinct real root of the characteristic polynomial, ascending.
std::vector<EigenPair> real_eigenpairs(const Mat& m, double tol = kTolId);

// Entry (i, k) = elementary symmetric polynomial of degree i in the alphas
// other than alpha_k (0-based i).
Mat elementary_symmetric_matrix(std::span<const double> alpha);

}  // namespace hrr
