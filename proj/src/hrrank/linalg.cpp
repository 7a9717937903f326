#include "hrrank/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hrrank/errors.hpp"
#include "hrrank/polynomial.hpp"

namespace hrr {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("Mat: data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    for (double x : data_) {
        if (!std::isfinite(x)) throw ArgumentError("Mat: non-finite entry");
    }
}

Mat Mat::identity(std::size_t n) {
    Mat e(n, n);
    for (std::size_t i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("Mat::from_rows: ragged rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return Mat(r, c, std::move(data));
}

Mat Mat::diagonal(std::span<const double> d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vec Mat::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("Mat::block out of range");
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("Mat::set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::without_row_col(std::size_t r, std::size_t c) const {
    Mat out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == c) continue;
            out(oi, oj++) = (*this)(i, j);
        }
        ++oi;
    }
    return out;
}

Mat Mat::without_col(std::size_t c) const {
    Mat out(rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == c) continue;
            out(i, oj++) = (*this)(i, j);
        }
    return out;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Mat +: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Mat -: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw DimensionError("Mat *: inner dimensions differ");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw DimensionError("Mat * vector: length mismatch");
    Vec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Mat vstack(std::span<const Mat> blocks) {
    if (blocks.empty()) return Mat{};
    const std::size_t c = blocks.front().cols();
    std::size_t r = 0;
    for (const Mat& b : blocks) {
        if (b.cols() != c) throw DimensionError("vstack: column counts differ");
        r += b.rows();
    }
    Mat out(r, c);
    std::size_t r0 = 0;
    for (const Mat& b : blocks) {
        out.set_block(r0, 0, b);
        r0 += b.rows();
    }
    return out;
}

double frobenius_norm(const Mat& a) { return norm2(a.data()); }

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double norm2(std::span<const double> x) {
    // Scaled accumulation so tiny/huge entries do not under/overflow.
    double scale = 0.0, ssq = 1.0;
    for (double v : x) {
        if (v == 0.0) continue;
        const double a = std::abs(v);
        if (scale < a) {
            ssq = 1.0 + ssq * (scale / a) * (scale / a);
            scale = a;
        } else {
            ssq += (a / scale) * (a / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

LuFactors lu_factor(const Mat& a) {
    if (!a.square()) throw DimensionError("lu_factor: matrix not square");
    const std::size_t n = a.rows();
    LuFactors f{a, std::vector<std::size_t>(n), 1, 0.0, 0.0};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    Mat& lu = f.lu;
    f.min_pivot = n == 0 ? 1.0 : INFINITY;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > best) {
                best = std::abs(lu(i, k));
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        f.min_pivot = std::min(f.min_pivot, best);
        f.max_pivot = std::max(f.max_pivot, best);
        if (best == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu(i, k) / lu(k, k);
            lu(i, k) = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
        }
    }
    return f;
}

double LuFactors::determinant() const {
    double d = sign;
    for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
}

Vec LuFactors::solve(std::span<const double> b) const {
    const std::size_t n = lu.rows();
    if (b.size() != n) throw DimensionError("LuFactors::solve: length mismatch");
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

double determinant(const Mat& m) {
    if (!m.square()) throw DimensionError("determinant: matrix not square");
    return lu_factor(m).determinant();
}

Mat inverse(const Mat& m) {
    if (!m.square()) throw DimensionError("inverse: matrix not square");
    const std::size_t n = m.rows();
    const LuFactors f = lu_factor(m);
    const double scale = max_abs(m);
    if (n > 0 && (scale == 0.0 || f.min_pivot <= kTolLin * scale)) {
        throw SingularError("inverse: matrix is numerically singular", f.pivot_ratio());
    }
    Mat inv(n, n);
    Vec e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const Vec x = f.solve(e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

namespace {

double sign_power(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Vec perp_vector(const Mat& w) {
    if (w.cols() == 0 || w.rows() + 1 != w.cols()) {
        throw DimensionError("perp_vector: expected (n-1) x n, got " + std::to_string(w.rows()) + "x" +
                             std::to_string(w.cols()));
    }
    const std::size_t n = w.cols();
    Vec a(n);
    for (std::size_t j = 0; j < n; ++j) {
        // 1-based exponent n + (j + 1)
        a[j] = sign_power(n + j + 1) * (n == 1 ? 1.0 : determinant(w.without_col(j)));
    }
    return a;
}

Vec last_row_cofactors(const Mat& m) {
    if (!m.square()) throw DimensionError("last_row_cofactors: matrix not square");
    const std::size_t n = m.rows();
    if (n < 2) throw DimensionError("last_row_cofactors: need n >= 2");
    Vec psi(n);
    for (std::size_t j = 0; j < n; ++j) psi[j] = sign_power(n + j + 1) * determinant(m.without_row_col(n - 1, j));
    return psi;
}

Svd jacobi_svd(const Mat& a) {
    // Hestenes one-sided Jacobi: orthogonalize the columns of U = A V.
    const std::size_t r = a.rows(), n = a.cols();
    Mat u = a;
    Mat v = Mat::identity(n);
    constexpr double eps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < r; ++i) {
                    alpha += u(i, p) * u(i, p);
                    beta += u(i, q) * u(i, q);
                    gamma += u(i, p) * u(i, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < r; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
    Vec sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(u.col(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    Svd out{Vec(n), Mat(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.singular[k] = sigma[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, order[k]);
    }
    return out;
}

KernelResult kernel_vector(const Mat& m) {
    if (!m.square()) throw DimensionError("kernel_vector: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    const Svd svd = jacobi_svd(m);
    Vec v = svd.v.col(n - 1);
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[big])) big = i;
    if (v[big] < 0.0)
        for (double& x : v) x = -x;
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    const double residual = norm2(m * v);
    return {std::move(v), residual};
}

namespace {

Mat shifted(const Mat& m, double lambda) {
    Mat s = m;
    for (std::size_t i = 0; i < m.rows(); ++i) s(i, i) -= lambda;
    return s;
}

// Newton steps on det(M - xE) using d/dx log det = -tr((M - xE)^{-1}).
// Steps are confined to [lo, hi]; keeps whichever iterate has the smallest
// kernel residual.
EigenPair polish(const Mat& m, double lambda, double lo, double hi) {
    KernelResult best = kernel_vector(shifted(m, lambda));
    double best_lambda = lambda;
    double x = lambda;
    for (int it = 0; it < 4; ++it) {
        const LuFactors f = lu_factor(shifted(m, x));
        if (f.min_pivot == 0.0) break;
        const std::size_t n = m.rows();
        double tr = 0.0;
        Vec e(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = 1.0;
            tr += f.solve(e)[j];
            e[j] = 0.0;
        }
        if (tr == 0.0 || !std::isfinite(tr)) break;
        const double next = x + 1.0 / tr;
        if (!(next > lo && next < hi)) break;
        x = next;
        KernelResult k = kernel_vector(shifted(m, x));
        if (k.residual < best.residual) {
            best = std::move(k);
            best_lambda = x;
        }
    }
    return {best_lambda, std::move(best.v)};
}

}  // namespace

std::vector<EigenPair> real_eigenpairs(const Mat& m, double tol) {
    if (!m.square()) throw DimensionError("real_eigenpairs: matrix not square");
    const std::size_t n = m.rows();
    if (n > kEigenSizeCap) throw DimensionError("real_eigenpairs: size exceeds cap");
    std::vector<EigenPair> out;
    if (n == 0) return out;
    const double scale = frobenius_norm(m);
    if (scale == 0.0) {
        out.push_back({0.0, kernel_vector(m).v});
        return out;
    }
    // Scaled matrix has spectral radius <= 1.
    const RealPoly p = characteristic_polynomial(m * (1.0 / scale));
    const std::vector<double> roots = isolate_real_roots(p, -1.0 - 1e-9, 1.0 + 1e-9, 1e-12);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double left = k == 0 ? -1.0 - 1e-6 : 0.5 * (roots[k - 1] + roots[k]);
        const double right = k + 1 == roots.size() ? 1.0 + 1e-6 : 0.5 * (roots[k] + roots[k + 1]);
        EigenPair pair = polish(m, roots[k] * scale, left * scale, right * scale);
        const double res = norm2(shifted(m, pair.lambda) * pair.v);
        if (res > tol * scale) continue;  // Sturm artifact, not an eigenvalue.
        out.push_back(std::move(pair));
    }
    return out;
}

Mat elementary_symmetric_matrix(std::span<const double> alpha) {
    const std::size_t n = alpha.size();
    if (n == 0) throw ArgumentError("elementary_symmetric_matrix: empty input");
    Mat s(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        // e[i] = elementary symmetric polynomial of degree i over alpha \ {alpha_k}
        Vec e(n, 0.0);
        e[0] = 1.0;
        std::size_t used = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (t == k) continue;
            ++used;
            for (std::size_t i = used; i >= 1; --i) e[i] += alpha[t] * e[i - 1];
        }
        for (std::size_t i = 0; i < n; ++i) s(i, k) = e[i];
    }
    return s;
}

}  // namespace hrr
