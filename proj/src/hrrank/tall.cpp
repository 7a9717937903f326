#include "hrrank/tall.hpp"

#include <cmath>
#include <string>

#include "hrrank/errors.hpp"

namespace hrr {

bool TallShape::valid(std::size_t m, std::size_t n, std::size_t u) noexcept {
    return m >= 3 && m <= n && n <= u && (m - 1) * n < u && u < m * n;
}

TallShape::TallShape(std::size_t m, std::size_t n, std::size_t u) : m_(m), n_(n), u_(u) {
    if (!valid(m, n, u)) {
        throw DimensionError("TallShape: need 3 <= m <= n <= u and (m-1)n < u < mn, got m=" + std::to_string(m) +
                             " n=" + std::to_string(n) + " u=" + std::to_string(u));
    }
}

TallShape TallShape::of(const Tensor3& a) { return TallShape(a.d3(), a.d1(), a.d2()); }

Vec tall_nodes(std::size_t u, NodeChoice choice) {
    Vec t(u);
    for (std::size_t j = 0; j < u; ++j) {
        t[j] = choice == NodeChoice::Integers
                   ? static_cast<double>(j + 1)
                   : -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(u - 1);
    }
    return t;
}

namespace {

Mat build_yj_with_node(const Tensor3& a, const TallShape& s, std::size_t j, double node) {
    const std::size_t n = s.n(), u = s.u(), p = s.p(), q = s.q();
    Mat y(u - 1, u);
    const Mat a1 = a.slice(0);
    double power = 1.0;
    for (std::size_t k = 1; k < s.m(); ++k) {
        power *= node;
        const Mat ak = a.slice(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < u; ++c) y((k - 1) * n + i, c) = ak(i, c) - power * a1(i, c);
    }
    // Selector rows: row r picks column p+1+r, except for j >= p+2 where
    // row j-p-2 picks column p instead (0-based columns).
    for (std::size_t r = 0; r < q; ++r) {
        const bool swapped = j >= p + 2 && r == j - p - 2;
        y(p + r, swapped ? p : p + 1 + r) = 1.0;
    }
    return y;
}

}  // namespace

Mat build_yj(const Tensor3& a, std::size_t j, NodeChoice nodes) {
    const TallShape s = TallShape::of(a);
    if (j < 1 || j > s.u()) throw DimensionError("build_yj: j out of range");
    return build_yj_with_node(a, s, j, tall_nodes(s.u(), nodes)[j - 1]);
}

Mat build_h(const Tensor3& a, const TallOptions& opts) {
    const TallShape s = TallShape::of(a);
    const std::size_t u = s.u();
    const Vec nodes = tall_nodes(u, opts.nodes);
    Mat h(u, u);
    for (std::size_t j = 1; j <= u; ++j) {
        const Mat y = build_yj_with_node(a, s, j, nodes[j - 1]);
        Vec col;
        if (u <= opts.cofactor_limit) {
            col = perp_vector(y);
        } else {
            // Square up with a zero row so the kernel of Y_j is the kernel
            // of the padded matrix.
            Mat padded(u, u);
            padded.set_block(0, 0, y);
            // A full-rank Y_j has a one-dimensional kernel; otherwise the
            // perp vector is zero by definition.
            const Svd svd = jacobi_svd(padded);
            const double top = svd.singular.front();
            col = (top > 0.0 && svd.singular[u - 2] > kTolLin * top) ? svd.v.col(u - 1) : Vec(u, 0.0);
        }
        const double nc = norm2(col);
        for (std::size_t i = 0; i < u; ++i) h(i, j - 1) = nc > 0.0 ? col[i] / nc : 0.0;
    }
    return h;
}

Decomposition tall_decompose(const Tensor3& a, const TallOptions& opts) {
    const TallShape s = TallShape::of(a);
    const Mat h = build_h(a, opts);
    Mat h_inv;
    try {
        h_inv = inverse(h);
    } catch (const SingularError& e) {
        throw NotGenericError("tall_decompose: H is numerically singular (rcond ~ " + std::to_string(e.rcond()) +
                              "); input is not generic");
    }
    const Vec nodes = tall_nodes(s.u(), opts.nodes);
    std::vector<Vec> diagonals(s.m(), Vec(s.u(), 1.0));
    for (std::size_t k = 1; k < s.m(); ++k)
        for (std::size_t j = 0; j < s.u(); ++j) diagonals[k][j] = diagonals[k - 1][j] * nodes[j];
    Decomposition d = decomposition_from_pdq(a.slice(0) * h, diagonals, h_inv);
    const double res = relative_residual(a, d);
    if (res > opts.tol_rec) {
        throw NotGenericError("tall_decompose: residual " + std::to_string(res) +
                              " above tolerance; input is numerically degenerate");
    }
    return d;
}

Tensor3 canonical_witness(const TallShape& shape, NodeChoice nodes) {
    const std::size_t n = shape.n(), u = shape.u(), p = shape.p();
    Tensor3 a(shape.tensor_shape());
    Mat a1(n, u);
    for (std::size_t b = 0; b + 1 < shape.m(); ++b)
        for (std::size_t i = 0; i < n; ++i) a1(i, b * n + i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) a1(i, p) = 1.0;
    a.set_slice(0, a1);
    const Vec t = tall_nodes(u, nodes);
    for (std::size_t s = 1; s < shape.m(); ++s) {
        Mat as = a1;
        for (std::size_t c = 0; c < u; ++c) {
            const double scale = std::pow(t[c], static_cast<double>(s));
            for (std::size_t i = 0; i < n; ++i) as(i, c) *= scale;
        }
        a.set_slice(s, as);
    }
    return a;
}

}  // namespace hrr
