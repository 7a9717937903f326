#include <cmath>
#include <random>

#include "doctest.h"
#include "hrrank/errors.hpp"
#include "hrrank/random.hpp"
#include "hrrank/tall.hpp"
#include "oracles.hpp"

using namespace hrr;

TEST_CASE("tall shape invariants") {
    const TallShape s(3, 3, 7);
    CHECK(s.p() == 6);
    CHECK(s.q() == 0);
    CHECK(s.tensor_shape() == Shape3{3, 7, 3});
    CHECK(TallShape(3, 4, 11).q() == 2);
    CHECK_THROWS_AS(TallShape(3, 3, 6), DimensionError);   // u <= p
    CHECK_THROWS_AS(TallShape(3, 3, 9), DimensionError);   // u >= mn
    CHECK_THROWS_AS(TallShape(2, 3, 5), DimensionError);   // m < 3
    CHECK_THROWS_AS(TallShape(4, 3, 7), DimensionError);   // m > n
    CHECK_THROWS_AS(tall_decompose(random_gaussian(Shape3{3, 6, 3}, 1)), DimensionError);
    CHECK_THROWS_AS(tall_decompose(random_gaussian(Shape3{3, 9, 3}, 1)), DimensionError);
}

TEST_CASE("Y_j structure") {
    const Tensor3 a = random_gaussian(Shape3{3, 7, 3}, 3);
    // q = 0: Y_j is X_j alone.
    const Mat y = build_yj(a, 4, NodeChoice::Integers);
    CHECK(y.rows() == 6);
    for (std::size_t k = 1; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t c = 0; c < 7; ++c) {
                const double ref = a.slice(k)(i, c) - std::pow(4.0, static_cast<double>(k)) * a.slice(0)(i, c);
                CHECK(y((k - 1) * 3 + i, c) == doctest::Approx(ref));
            }

    // q = 2 at (3, 4, 11): p = 8, selector rows below X_j.
    const Tensor3 b = random_gaussian(Shape3{4, 11, 3}, 4);
    const Mat low = build_yj(b, 3);
    CHECK(low.rows() == 10);
    CHECK(low(8, 9) == 1.0);
    CHECK(low(9, 10) == 1.0);
    CHECK(low(8, 8) == 0.0);
    // j = p + 2 = 10 (1-based): its selector row points at column p + 1.
    const Mat high = build_yj(b, 10);
    CHECK(high(8, 8) == 1.0);
    CHECK(high(8, 9) == 0.0);
    CHECK(high(9, 10) == 1.0);
    const Mat last = build_yj(b, 11);
    CHECK(last(8, 9) == 1.0);
    CHECK(last(9, 8) == 1.0);
    CHECK(last(9, 10) == 0.0);
    CHECK_THROWS_AS(build_yj(b, 0), DimensionError);
    CHECK_THROWS_AS(build_yj(b, 12), DimensionError);
}

TEST_CASE("Y_j times its perp vector vanishes") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Tensor3 a = random_gaussian(Shape3{4, 9, 3}, seed);
        for (std::size_t j = 1; j <= 9; ++j) {
            const Mat y = build_yj(a, j);
            const Vec w = perp_vector(y);
            CHECK(norm2(y * w) <= 1e-9 * frobenius_norm(y) * norm2(w));
        }
    }
}

TEST_CASE("canonical witness") {
    const TallShape s(3, 3, 7);
    const Tensor3 w = canonical_witness(s);
    const Mat a1 = w.slice(0);
    CHECK(a1.block(0, 0, 3, 3) == Mat::identity(3));
    CHECK(a1.block(0, 3, 3, 3) == Mat::identity(3));
    for (std::size_t i = 0; i < 3; ++i) CHECK(a1(i, 6) == 1.0);
    for (std::size_t sidx = 1; sidx < 3; ++sidx)
        for (std::size_t c = 0; c < 7; ++c)
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(w.slice(sidx)(i, c) == std::pow(static_cast<double>(c + 1), static_cast<double>(sidx)) * a1(i, c));

    // Perp vectors of Y_j are multiples of e_j, so H is diagonal up to sign.
    TallOptions opts;
    opts.nodes = NodeChoice::Integers;
    const Mat h = build_h(w, opts);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) CHECK(std::abs(h(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
    CHECK(relative_residual(w, tall_decompose(w, opts)) <= 1e-10);

    // Witness built on the default nodes decomposes with the default options.
    const Tensor3 we = canonical_witness(TallShape(3, 4, 10), NodeChoice::Equispaced);
    CHECK(relative_residual(we, tall_decompose(we)) <= 1e-10);
}

TEST_CASE("Vandermonde guard blocks of the canonical witness") {
    // M_{j,t} = rows and columns {t, n+t, ..., (m-2)n+t} of Y_j has entries
    // (a_s^k - j^k), whose determinant is the Vandermonde-type f(a, j).
    const TallShape s(3, 3, 7);
    const std::size_t n = 3, m = 3;
    const Tensor3 w = canonical_witness(s);
    for (std::size_t j = 1; j <= 7; ++j) {
        const Mat y = build_yj(w, j, NodeChoice::Integers);
        for (std::size_t t = 1; t <= n; ++t) {
            std::vector<std::size_t> idx;
            for (std::size_t b = 0; b + 1 < m; ++b) idx.push_back(b * n + t - 1);
            Mat block(m - 1, m - 1);
            oracle::Dense f(m - 1, std::vector<double>(m - 1));
            bool distinct = true;
            for (std::size_t r = 0; r < m - 1; ++r)
                for (std::size_t c = 0; c < m - 1; ++c) {
                    block(r, c) = y(idx[r], idx[c]);
                    const double a = static_cast<double>(idx[c] + 1);
                    f[r][c] = std::pow(a, static_cast<double>(r + 1)) - std::pow(static_cast<double>(j), static_cast<double>(r + 1));
                    if (idx[c] + 1 == j) distinct = false;
                }
            const double det = determinant(block);
            CHECK(det == doctest::Approx(oracle::laplace_det(f)));
            if (distinct) {
                CHECK(std::abs(det) > 0.5);
            } else {
                CHECK(det == 0.0);
            }
        }
    }
}

TEST_CASE("zero tensor gives H = O") {
    CHECK(build_h(Tensor3({3, 7, 3})) == Mat(7, 7));
    CHECK(build_h(Tensor3({3, 8, 3})) == Mat(8, 8));
    CHECK_THROWS_AS(tall_decompose(Tensor3({3, 7, 3})), NotGenericError);
}

TEST_CASE("annihilation and diagonalization laws") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Tensor3 a = random_gaussian(Shape3{3, 8, 3}, 100 + seed);
        const Mat h = build_h(a);
        const Vec t = tall_nodes(8, NodeChoice::Equispaced);
        const Mat a1 = a.slice(0);
        const Mat a1h = a1 * h;
        for (std::size_t k = 1; k < 3; ++k) {
            const Mat akh = a.slice(k) * h;
            Vec d(8);
            for (std::size_t j = 0; j < 8; ++j) d[j] = std::pow(t[j], static_cast<double>(k));
            CHECK(oracle::mat_diff_norm(akh, a1h * Mat::diagonal(d)) <= 1e-8 * frobenius_norm(akh));
            for (std::size_t j = 0; j < 8; ++j) {
                Vec col = h.col(j);
                Vec lhs = a.slice(k) * col;
                const Vec rhs = a1 * col;
                for (std::size_t i = 0; i < 3; ++i) lhs[i] -= d[j] * rhs[i];
                CHECK(norm2(lhs) <= 1e-8 * (frobenius_norm(a.slice(k)) + std::abs(d[j]) * frobenius_norm(a1)));
            }
        }
    }
}

TEST_CASE("random tall tensors decompose at rank u") {
    for (const TallShape s : {TallShape(3, 3, 7), TallShape(3, 3, 8), TallShape(3, 4, 10), TallShape(4, 4, 13)}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Tensor3 a = random_gaussian(s.tensor_shape(), seed);
            const Decomposition d = tall_decompose(a);
            CHECK(d.rank() == s.u());
            CHECK(relative_residual(a, d) <= 1e-8);
            const Vec t = tall_nodes(s.u(), NodeChoice::Equispaced);
            for (std::size_t j = 0; j < s.u(); ++j) {
                // Third-mode vector is (1, t_j, t_j^2, ...).
                CHECK(d.terms[j].w[0] == 1.0);
                CHECK(d.terms[j].w[1] == doctest::Approx(t[j]));
            }
        }
    }
}

TEST_CASE("SVD route for perp vectors agrees with cofactors") {
    const Tensor3 a = random_gaussian(Shape3{4, 11, 3}, 8);
    TallOptions cof, svd;
    cof.cofactor_limit = 100;
    svd.cofactor_limit = 0;
    const Mat h1 = build_h(a, cof), h2 = build_h(a, svd);
    for (std::size_t j = 0; j < 11; ++j) CHECK(std::abs(oracle::cosine(h1.col(j), h2.col(j))) >= 1.0 - 1e-9);
    CHECK(relative_residual(a, tall_decompose(a, svd)) <= 1e-8);
}
