#include "hrrank/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hrrank/errors.hpp"

namespace hrr {

namespace {

std::string shape_str(const Shape3& s) {
    return std::to_string(s[0]) + "x" + std::to_string(s[1]) + "x" + std::to_string(s[2]);
}

}  // namespace

Tensor3::Tensor3(Shape3 shape) : shape_(shape), data_(shape[0] * shape[1] * shape[2], 0.0) {}

Tensor3::Tensor3(Shape3 shape, std::vector<double> data) : shape_(shape), data_(std::move(data)) {
    if (data_.size() != shape_[0] * shape_[1] * shape_[2]) {
        throw DimensionError("Tensor3: data length " + std::to_string(data_.size()) + " does not match " +
                             shape_str(shape_));
    }
    for (double x : data_)
        if (!std::isfinite(x)) throw ArgumentError("Tensor3: non-finite entry");
}

Tensor3 Tensor3::from_slices(std::span<const Mat> slices) {
    if (slices.empty()) throw DimensionError("Tensor3::from_slices: no slices");
    const std::size_t r = slices.front().rows(), c = slices.front().cols();
    Tensor3 t({r, c, slices.size()});
    for (std::size_t k = 0; k < slices.size(); ++k) t.set_slice(k, slices[k]);
    return t;
}

Mat Tensor3::slice(std::size_t k) const {
    if (k >= d3()) throw DimensionError("Tensor3::slice: index out of range");
    const std::size_t n = d1() * d2();
    return Mat(d1(), d2(), std::vector<double>(data_.begin() + k * n, data_.begin() + (k + 1) * n));
}

void Tensor3::set_slice(std::size_t k, const Mat& s) {
    if (k >= d3() || s.rows() != d1() || s.cols() != d2()) throw DimensionError("Tensor3::set_slice: shape mismatch");
    std::copy(s.data().begin(), s.data().end(), data_.begin() + k * d1() * d2());
}

double frobenius_norm(const Tensor3& t) { return norm2(t.data()); }

void Decomposition::validate() const {
    for (std::size_t r = 0; r < terms.size(); ++r) {
        const RankOneTerm& term = terms[r];
        if (term.u.size() != shape[0] || term.v.size() != shape[1] || term.w.size() != shape[2]) {
            throw DimensionError("Decomposition: term " + std::to_string(r) + " does not match shape " +
                                 shape_str(shape));
        }
    }
}

Mat slice_stack(const Tensor3& x, std::size_t count) {
    if (count < 1 || count > x.d3()) {
        throw DimensionError("slice_stack: count " + std::to_string(count) + " outside [1, " +
                             std::to_string(x.d3()) + "]");
    }
    // Slices are contiguous, so the stack is a prefix of the data.
    const std::size_t n = count * x.d1() * x.d2();
    return Mat(count * x.d1(), x.d2(), std::vector<double>(x.data().begin(), x.data().begin() + n));
}

Tensor3 build_x_of_y(std::span<const Mat> ys) {
    if (ys.size() < 2) throw DimensionError("build_x_of_y: need at least two matrices");
    const std::size_t n = ys.front().rows();
    for (const Mat& y : ys)
        if (y.rows() != n || y.cols() != n) throw DimensionError("build_x_of_y: matrices must be equal-size square");
    const std::size_t l = ys.size(), p = l * n;
    Tensor3 x({n, p, l + 1});
    for (std::size_t k = 0; k < l; ++k)
        for (std::size_t i = 0; i < n; ++i) x(i, k * n + i, k) = 1.0;
    for (std::size_t k = 0; k < l; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, k * n + j, l) = ys[k](i, j);
    return x;
}

Tensor3 reconstruct(const Decomposition& d) {
    d.validate();
    Tensor3 t(d.shape);
    for (const RankOneTerm& term : d.terms)
        for (std::size_t k = 0; k < d.shape[2]; ++k) {
            const double wk = term.w[k];
            if (wk == 0.0) continue;
            for (std::size_t i = 0; i < d.shape[0]; ++i) {
                const double uw = term.u[i] * wk;
                if (uw == 0.0) continue;
                for (std::size_t j = 0; j < d.shape[1]; ++j) t(i, j, k) += uw * term.v[j];
            }
        }
    return t;
}

double relative_residual(const Tensor3& t, const Decomposition& d) {
    if (t.shape() != d.shape) {
        throw DimensionError("relative_residual: tensor " + shape_str(t.shape()) + " vs decomposition " +
                             shape_str(d.shape));
    }
    const Tensor3 r = reconstruct(d);
    Vec diff(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) diff[k] = t.data()[k] - r.data()[k];
    const double num = norm2(diff);
    const double den = std::max(frobenius_norm(t), kResidualFloor);
    return num == 0.0 ? 0.0 : num / den;
}

Tensor3 gl_action(const Mat& p, const Mat& q, const Mat& r, const Tensor3& t) {
    if (!p.square() || !q.square() || !r.square() || p.rows() != t.d1() || q.rows() != t.d2() ||
        r.rows() != t.d3()) {
        throw DimensionError("gl_action: factor sizes do not match tensor " + shape_str(t.shape()));
    }
    for (const Mat* f : {&p, &q, &r}) {
        const LuFactors lu = lu_factor(*f);
        if (lu.min_pivot <= kTolLin * max_abs(*f)) throw SingularError("gl_action: singular factor", lu.pivot_ratio());
    }
    const Mat qt = transpose(q);
    std::vector<Mat> mapped;
    mapped.reserve(t.d3());
    for (std::size_t u = 0; u < t.d3(); ++u) mapped.push_back(p * t.slice(u) * qt);
    Tensor3 out(t.shape());
    for (std::size_t w = 0; w < t.d3(); ++w) {
        Mat s(t.d1(), t.d2());
        for (std::size_t u = 0; u < t.d3(); ++u) s += mapped[u] * r(w, u);
        out.set_slice(w, s);
    }
    return out;
}

bool is_valid_perm(const ModePerm& perm) {
    std::array<bool, 3> seen{false, false, false};
    for (int m : perm) {
        if (m < 0 || m > 2 || seen[m]) return false;
        seen[m] = true;
    }
    return true;
}

ModePerm inverse_perm(const ModePerm& perm) {
    if (!is_valid_perm(perm)) throw ArgumentError("invalid mode permutation");
    ModePerm inv{};
    for (int i = 0; i < 3; ++i) inv[perm[i]] = i;
    return inv;
}

Tensor3 permute_modes(const Tensor3& t, const ModePerm& perm) {
    if (!is_valid_perm(perm)) throw ArgumentError("invalid mode permutation");
    const Shape3 s = t.shape();
    Tensor3 out({s[perm[0]], s[perm[1]], s[perm[2]]});
    std::array<std::size_t, 3> src{};
    for (src[2] = 0; src[2] < s[2]; ++src[2])
        for (src[0] = 0; src[0] < s[0]; ++src[0])
            for (src[1] = 0; src[1] < s[1]; ++src[1])
                out(src[perm[0]], src[perm[1]], src[perm[2]]) = t(src[0], src[1], src[2]);
    return out;
}

Decomposition permute_modes(const Decomposition& d, const ModePerm& perm) {
    if (!is_valid_perm(perm)) throw ArgumentError("invalid mode permutation");
    d.validate();
    Decomposition out;
    out.shape = {d.shape[perm[0]], d.shape[perm[1]], d.shape[perm[2]]};
    out.terms.reserve(d.terms.size());
    for (const RankOneTerm& term : d.terms) {
        const std::array<const Vec*, 3> roles{&term.u, &term.v, &term.w};
        out.terms.push_back({*roles[perm[0]], *roles[perm[1]], *roles[perm[2]]});
    }
    return out;
}

Decomposition decomposition_from_pdq(const Mat& p, std::span<const Vec> diagonals, const Mat& q) {
    const std::size_t r = p.cols();
    if (q.rows() != r) throw DimensionError("from_pdq: P columns and Q rows differ");
    if (diagonals.empty()) throw DimensionError("from_pdq: need at least one slice");
    for (const Vec& d : diagonals)
        if (d.size() != r) throw DimensionError("from_pdq: diagonal length differs from inner size");
    Decomposition dec;
    dec.shape = {p.rows(), q.cols(), diagonals.size()};
    dec.terms.reserve(r);
    for (std::size_t j = 0; j < r; ++j) {
        Vec w(diagonals.size());
        for (std::size_t k = 0; k < diagonals.size(); ++k) w[k] = diagonals[k][j];
        const auto row = q.row(j);
        dec.terms.push_back({p.col(j), Vec(row.begin(), row.end()), std::move(w)});
    }
    return dec;
}

PdqResult from_pdq(const Mat& p, std::span<const Vec> diagonals, const Mat& q) {
    Decomposition dec = decomposition_from_pdq(p, diagonals, q);
    std::vector<Mat> slices;
    slices.reserve(diagonals.size());
    for (const Vec& d : diagonals) slices.push_back(p * Mat::diagonal(d) * q);
    return {Tensor3::from_slices(slices), std::move(dec)};
}

}  // namespace hrr
