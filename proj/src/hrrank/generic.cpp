#include "hrrank/generic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "hrrank/random.hpp"

namespace hrr {

namespace {

void check_ys(const std::vector<Mat>& ys) {
    if (ys.size() < 2) throw DimensionError("ContractionY: need at least two matrices");
    const std::size_t n = ys.front().rows();
    if (n == 0) throw DimensionError("ContractionY: empty matrices");
    for (const Mat& y : ys)
        if (y.rows() != n || y.cols() != n) throw DimensionError("ContractionY: matrices must be equal-size square");
}

double det_scale(const Mat& m) { return std::pow(frobenius_norm(m), static_cast<double>(m.rows())); }

}  // namespace

ContractionY::ContractionY(std::vector<Mat> ys) : ys_(std::move(ys)) {
    check_ys(ys_);
    h_ = Mat::identity(p());
}

ContractionY::ContractionY(std::vector<Mat> ys, Mat h) : ys_(std::move(ys)), h_(std::move(h)) {
    check_ys(ys_);
    if (h_.rows() != p() || h_.cols() != p()) throw DimensionError("ContractionY: flattening has wrong size");
}

Vec HypersurfacePoint::coordinates() const {
    Vec a = direction;
    a.push_back(eigenvalue);
    return a;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::NegativeWitness: return "NegativeWitness";
        case Verdict::NoRealPointFound: return "NoRealPointFound";
        case Verdict::RealPointsButNoNegativeWitness: return "RealPointsButNoNegativeWitness";
    }
    return "?";
}

ContractionY contract(const Tensor3& x) {
    const std::size_t n = x.d1(), p = x.d2(), m = x.d3();
    if (m < 3 || n == 0 || p != (m - 1) * n) {
        throw DimensionError("contract: expected n x (m-1)n x m with m >= 3");
    }
    Mat h = slice_stack(x, m - 1);
    Mat h_inv;
    try {
        h_inv = inverse(h);
    } catch (const SingularError& e) {
        throw NotGenericError("contract: stacked slices are numerically singular (rcond ~ " +
                              std::to_string(e.rcond()) + ")");
    }
    const Mat row = x.slice(m - 1) * h_inv;
    std::vector<Mat> ys;
    ys.reserve(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) ys.push_back(row.block(0, k * n, n, n));
    return ContractionY(std::move(ys), std::move(h));
}

Mat eval_m(std::span<const double> a, const ContractionY& y) {
    if (a.size() != y.m()) throw DimensionError("eval_m: coordinate vector has wrong length");
    Mat out(y.n(), y.n());
    for (std::size_t k = 0; k < y.l(); ++k) {
        if (a[k] != 0.0) out += y.ys()[k] * a[k];
    }
    for (std::size_t i = 0; i < y.n(); ++i) out(i, i) -= a[y.l()];
    return out;
}

std::vector<HypersurfacePoint> sample_points(const ContractionY& y, std::size_t first, std::size_t last,
                                             std::uint64_t seed, double tol_pt) {
    std::vector<HypersurfacePoint> points;
    for (std::size_t d = first; d < last; ++d) {
        CounterRng rng(derive_seed(seed, d));
        const Vec dir = random_unit_vector(y.l(), rng);
        Vec a = dir;
        a.push_back(0.0);
        const Mat pencil = eval_m(a, y);
        for (EigenPair& pair : real_eigenpairs(pencil, tol_pt)) {
            a.back() = pair.lambda;
            const Mat m = eval_m(a, y);
            const double norm = frobenius_norm(m);
            HypersurfacePoint pt{dir, pair.lambda, std::move(pair.v), 0.0, 0.0, d};
            if (norm > 0.0) {
                pt.kernel_residual = norm2(m * pt.v) / norm;
                pt.det_residual = std::abs(determinant(m)) / det_scale(m);
            }
            if (pt.kernel_residual > tol_pt || pt.det_residual > tol_pt) continue;
            points.push_back(std::move(pt));
        }
    }
    return points;
}

namespace {

constexpr std::array<double, 7> kEpsLadder{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

}  // namespace

Classification classify_points(const ContractionY& y, std::vector<HypersurfacePoint> points,
                               std::size_t directions_tried, std::uint64_t seed) {
    Classification c;
    c.directions_tried = directions_tried;
    c.seed = seed;
    if (points.empty()) {
        c.verdict = Verdict::NoRealPointFound;
        return c;
    }
    for (const HypersurfacePoint& pt : points) {
        Vec a = pt.coordinates();
        for (double eps : kEpsLadder) {
            for (double side : {1.0, -1.0}) {
                a.back() = pt.eigenvalue + side * eps * (1.0 + std::abs(pt.eigenvalue));
                if (determinant(eval_m(a, y)) >= 0.0) continue;
                // Re-evaluate from the stored coordinates before trusting it.
                const Vec witness = a;
                const double det = lu_factor(eval_m(witness, y)).determinant();
                if (det < 0.0) {
                    c.verdict = Verdict::NegativeWitness;
                    c.witness = witness;
                    c.witness_det = det;
                    c.points = std::move(points);
                    return c;
                }
            }
        }
    }
    c.verdict = Verdict::RealPointsButNoNegativeWitness;
    c.points = std::move(points);
    return c;
}

Classification classify(const ContractionY& y, std::size_t directions, std::uint64_t seed) {
    if (directions == 0) throw ArgumentError("classify: directions must be positive");
    return classify_points(y, sample_points(y, 0, directions, seed), directions, seed);
}

BAssembly assemble_b(std::span<const HypersurfacePoint> points, std::size_t p, double pivot_ratio) {
    if (points.empty()) throw RankDeficientError("assemble_b: no hypersurface points");
    const std::size_t l = points.front().direction.size();
    const std::size_t n = points.front().v.size();
    if (l * n != p) throw DimensionError("assemble_b: point dimensions do not match p");
    if (points.size() < p) {
        throw RankDeficientError("assemble_b: " + std::to_string(points.size()) + " points cannot span dimension " +
                                 std::to_string(p));
    }

    const std::size_t count = points.size();
    std::vector<Vec> columns(count, Vec(p));
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t k = 0; k < l; ++k)
            for (std::size_t i = 0; i < n; ++i) columns[c][k * n + i] = points[c].direction[k] * points[c].v[i];

    std::vector<Vec> residual = columns;
    std::vector<bool> taken(count, false);
    std::vector<std::size_t> order;
    double largest = 0.0, smallest = INFINITY;
    for (std::size_t step = 0; step < p; ++step) {
        std::size_t best = count;
        double best_norm = -1.0;
        for (std::size_t c = 0; c < count; ++c) {
            if (taken[c]) continue;
            const double nr = norm2(residual[c]);
            if (nr > best_norm) {
                best_norm = nr;
                best = c;
            }
        }
        if (best == count || best_norm <= 0.0) {
            throw RankDeficientError("assemble_b: candidate span has dimension " + std::to_string(step) + " < " +
                                     std::to_string(p));
        }
        largest = std::max(largest, best_norm);
        smallest = std::min(smallest, best_norm);
        if (smallest < pivot_ratio * largest) {
            throw RankDeficientError("assemble_b: pivot ratio below screen at column " + std::to_string(step));
        }
        taken[best] = true;
        order.push_back(best);
        Vec qv = residual[best];
        for (double& x : qv) x /= best_norm;
        for (std::size_t c = 0; c < count; ++c) {
            if (taken[c]) continue;
            // Two passes of projection keep the residuals orthogonal.
            for (int pass = 0; pass < 2; ++pass) {
                const double coef = dot(qv, residual[c]);
                for (std::size_t i = 0; i < p; ++i) residual[c][i] -= coef * qv[i];
            }
        }
    }

    BAssembly out{Mat(p, p), {}, smallest / largest};
    out.chosen.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < p; ++i) out.b(i, j) = columns[order[j]][i];
        out.chosen.push_back(points[order[j]]);
    }
    return out;
}

namespace {

// Terms (v_j) x (row j of B^-1) x (direction_j, eigenvalue_j).
Decomposition decomposition_from_points(const BAssembly& b, std::size_t n, std::size_t m) {
    const Mat q = inverse(b.b);
    const std::size_t p = b.chosen.size();
    Decomposition d;
    d.shape = {n, p, m};
    d.terms.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        const auto row = q.row(j);
        d.terms.push_back({b.chosen[j].v, Vec(row.begin(), row.end()), b.chosen[j].coordinates()});
    }
    return d;
}

}  // namespace

Decomposition decompose_x_of_y(const ContractionY& y, const DecomposeOptions& opts) {
    const std::size_t p = y.p();
    const std::size_t budget = opts.budget == 0 ? 64 * p : opts.budget;
    std::size_t target = std::min(opts.initial_directions == 0 ? 8 * p : opts.initial_directions, budget);
    if (target == 0) throw ArgumentError("decompose_x_of_y: direction budget must be positive");

    const Tensor3 x = y.x_of_y();
    std::vector<HypersurfacePoint> points;
    std::size_t sampled = 0;
    std::string last_failure = "no points";
    for (;;) {
        std::vector<HypersurfacePoint> more = sample_points(y, sampled, target, opts.seed, opts.tol_pt);
        points.insert(points.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
        sampled = target;
        try {
            const BAssembly b = assemble_b(points, p, opts.pivot_ratio);
            Decomposition d = decomposition_from_points(b, y.n(), y.m());
            const double res = relative_residual(x, d);
            if (res <= opts.tol_rec) return d;
            last_failure = "residual " + std::to_string(res) + " above tolerance";
        } catch (const RankDeficientError& e) {
            last_failure = e.what();
        } catch (const SingularError& e) {
            last_failure = e.what();
        }
        if (target >= budget) break;
        target = std::min(2 * target, budget);
    }
    Classification c = classify_points(y, std::move(points), sampled, opts.seed);
    throw NoDecompositionAtP("decompose_x_of_y: no rank-p decomposition after " + std::to_string(sampled) +
                                 " directions (" + last_failure + ")",
                             std::move(c));
}

GenericResult decompose_generic(const Tensor3& t, const DecomposeOptions& opts) {
    const std::size_t n = t.d1(), m = t.d3();
    if (m < 3 || n == 0 || t.d2() != (m - 1) * n) {
        throw DimensionError("decompose_generic: expected n x (m-1)n x m with m >= 3");
    }
    std::optional<ContractionY> y;
    try {
        y.emplace(contract(t));
    } catch (const NotGenericError& e) {
        return NotGeneric{e.what()};
    }
    Decomposition d;
    try {
        d = decompose_x_of_y(*y, opts);
    } catch (const NoDecompositionAtP& e) {
        if (e.classification().verdict == Verdict::NoRealPointFound) return RankExceedsP{e.classification()};
        return RankDeficient{e.classification(), e.what()};
    }
    // X(Y) slices equal T_k H^-1, so T = X(Y) H: pull back the second mode.
    const Mat& h = y->h();
    for (RankOneTerm& term : d.terms) {
        Vec pulled(h.cols(), 0.0);
        for (std::size_t r = 0; r < h.rows(); ++r)
            for (std::size_t c = 0; c < h.cols(); ++c) pulled[c] += term.v[r] * h(r, c);
        term.v = std::move(pulled);
    }
    const double res = relative_residual(t, d);
    if (res > opts.tol_rec) {
        return RankDeficient{classify(*y, 8 * y->p(), opts.seed),
                             "pulled-back residual " + std::to_string(res) + " above tolerance"};
    }
    return RankP{std::move(d), res};
}

}  // namespace hrr
