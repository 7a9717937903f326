// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (exit status reflects it alone)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hrrank/census.hpp"
#include "hrrank/generic.hpp"
#include "hrrank/random.hpp"
#include "hrrank/rank_tables.hpp"
#include "hrrank/tall.hpp"
#include "oracles.hpp"

using namespace hrr;

namespace {

// Pinned thresholds.
constexpr double kRhoBudgetMs = 1.0;
constexpr double kTableBudgetMs = 1.0;
constexpr double kTallResidual = 1e-8;
constexpr int kTallRequiredPerShape = 99;
constexpr int kTallTrialsPerShape = 100;
constexpr double kTallBudgetS = 10.0;
constexpr double kWitnessResidual = 1e-10;
constexpr double kWitnessOffAxis = 1e-10;
constexpr double kSingletonRankPFraction = 0.99;
constexpr double kSingletonResidual = 1e-6;
constexpr double kSingletonBudgetS = 60.0;
constexpr double kPairMinFraction = 0.02;
constexpr std::size_t kQuaternionDirections = 1000;
constexpr double kQuaternionBudgetS = 5.0;
constexpr int kExamplePoints = 100;
constexpr double kExampleRelErr = 1e-9;
constexpr int kPropertyCases = 200;
constexpr int kGlPairs = 20;
constexpr double kPerpTol = 1e-9;
constexpr double kAdjugateTol = 1e-8;
constexpr double kVandermondeTol = 1e-8;
constexpr double kPointTol = 1e-8;
constexpr double kIdentityTol = 1e-8;
constexpr std::uint64_t kSeed = 7;

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CriterionResult criterion_1() {
    const std::uint64_t ns[] = {1, 2, 3, 4, 8, 12, 16, 32, 64, 128};
    const std::uint64_t expected[] = {1, 2, 1, 4, 8, 4, 9, 10, 12, 16};
    std::uint64_t got[10];
    const auto t0 = Clock::now();
    for (int i = 0; i < 10; ++i) got[i] = hurwitz_radon(ns[i]);
    const double ms = seconds_since(t0) * 1e3;
    int wrong = 0;
    for (int i = 0; i < 10; ++i) wrong += got[i] != expected[i];
    return {wrong == 0 && ms < kRhoBudgetMs, fmt("%d/10 values correct, %.4f ms", 10 - wrong, ms)};
}

CriterionResult criterion_2() {
    struct Case {
        std::uint64_t a, b, c, low, high;  // high = 0 means unknown
    };
    const std::vector<Case> cases{
        // 2 x n x p table
        {2, 3, 3, 3, 4}, {2, 2, 2, 2, 3}, {2, 4, 5, 5, 5}, {2, 4, 8, 8, 8}, {2, 4, 9, 8, 8}, {2, 3, 20, 6, 6},
        // m x m x 2 and m x n x 2, m < n < 2m
        {5, 5, 2, 5, 6}, {3, 3, 2, 3, 4}, {4, 6, 2, 6, 6}, {5, 9, 2, 9, 9},
        // tall singleton
        {3, 3, 7, 7, 7}, {3, 3, 8, 8, 8}, {3, 4, 9, 9, 9}, {3, 4, 10, 10, 10}, {3, 4, 11, 11, 11},
        // p >= mn
        {3, 3, 9, 9, 9}, {3, 3, 20, 9, 9}, {4, 5, 40, 20, 20},
        // main dichotomy
        {3, 3, 6, 6, 6}, {3, 4, 8, 8, 9}, {3, 5, 10, 10, 10}, {4, 4, 12, 12, 13}, {3, 8, 16, 16, 17},
        // uncovered
        {4, 5, 7, 0, 0}};
    int wrong = 0;
    double worst_ms = 0.0;
    for (const Case& c : cases) {
        const auto t0 = Clock::now();
        const TypicalRankAnswer r = typical_ranks(c.a, c.b, c.c);
        worst_ms = std::max(worst_ms, seconds_since(t0) * 1e3);
        const bool ok = c.high == 0 ? !r.known() : (r.known() && *r.low == c.low && *r.high == c.high);
        if (!ok) {
            ++wrong;
            std::fprintf(stderr, "  typical_ranks(%llu,%llu,%llu) = %s\n", static_cast<unsigned long long>(c.a),
                         static_cast<unsigned long long>(c.b), static_cast<unsigned long long>(c.c),
                         r.to_string().c_str());
        }
    }
    return {wrong == 0 && worst_ms < kTableBudgetMs,
            fmt("%zu/%zu cases exact, slowest %.4f ms", cases.size() - wrong, cases.size(), worst_ms)};
}

CriterionResult criterion_3() {
    const TallShape shapes[] = {TallShape(3, 3, 7), TallShape(3, 3, 8), TallShape(3, 4, 9), TallShape(3, 4, 11)};
    const auto t0 = Clock::now();
    bool all = true;
    std::string detail;
    for (const TallShape& s : shapes) {
        int ok = 0;
        double worst = 0.0;
        for (int i = 0; i < kTallTrialsPerShape; ++i) {
            const Tensor3 a = random_gaussian(s.tensor_shape(), derive_seed(kSeed, static_cast<std::uint64_t>(i)));
            try {
                const Decomposition d = tall_decompose(a);
                const double res = relative_residual(a, d);
                worst = std::max(worst, res);
                ok += d.rank() == s.u() && res <= kTallResidual;
            } catch (const NotGenericError&) {
            }
        }
        all = all && ok >= kTallRequiredPerShape;
        detail += fmt("(%zu,%zu,%zu) %d/%d max %.1e; ", s.m(), s.n(), s.u(), ok, kTallTrialsPerShape, worst);
    }
    const double secs = seconds_since(t0);
    return {all && secs < kTallBudgetS, detail + fmt("%.2f s", secs)};
}

CriterionResult criterion_4() {
    const TallShape s(3, 3, 7);
    const Tensor3 w = canonical_witness(s, NodeChoice::Integers);
    TallOptions opts;
    opts.nodes = NodeChoice::Integers;
    const double res = relative_residual(w, tall_decompose(w, opts));
    double worst_off = 0.0;
    for (std::size_t j = 1; j <= s.u(); ++j) {
        const Vec perp = perp_vector(build_yj(w, j, NodeChoice::Integers));
        const double scale = norm2(perp);
        if (scale == 0.0) {
            worst_off = INFINITY;
            continue;
        }
        for (std::size_t i = 0; i < s.u(); ++i)
            if (i + 1 != j) worst_off = std::max(worst_off, std::abs(perp[i]) / scale);
    }
    return {res <= kWitnessResidual && worst_off <= kWitnessOffAxis,
            fmt("residual %.1e, worst off-axis component %.1e", res, worst_off)};
}

CriterionResult criterion_5() {
    const auto t0 = Clock::now();
    const CensusReport a = run_census(3, 3, 100, kSeed);
    const CensusReport b = run_census(3, 5, 50, kSeed);
    const double secs = seconds_since(t0);
    const bool ok = a.fraction(Outcome::RankP) >= kSingletonRankPFraction &&
                    b.fraction(Outcome::RankP) >= kSingletonRankPFraction &&
                    a.max_residual() <= kSingletonResidual && b.max_residual() <= kSingletonResidual &&
                    secs < kSingletonBudgetS;
    return {ok, fmt("(3,3) RankP %.2f max res %.1e; (3,5) RankP %.2f max res %.1e; %.2f s",
                    a.fraction(Outcome::RankP), a.max_residual(), b.fraction(Outcome::RankP), b.max_residual(),
                    secs)};
}

CriterionResult criterion_6() {
    const CensusReport a = run_census(3, 4, 500, kSeed);
    const CensusReport b = run_census(4, 4, 200, kSeed);
    auto both = [](const CensusReport& r) {
        return r.fraction(Outcome::RankP) >= kPairMinFraction && r.fraction(Outcome::RankExceedsP) >= kPairMinFraction;
    };
    return {both(a) && both(b),
            fmt("(3,4) RankP %.3f RankExceedsP %.3f; (4,4) RankP %.3f RankExceedsP %.3f (need each >= %.2f)",
                a.fraction(Outcome::RankP), a.fraction(Outcome::RankExceedsP), b.fraction(Outcome::RankP),
                b.fraction(Outcome::RankExceedsP), kPairMinFraction)};
}

CriterionResult criterion_7() {
    const auto t0 = Clock::now();
    const std::vector<Mat> ys{oracle::quaternion_i(), oracle::quaternion_j()};
    const Classification c = classify(ContractionY(ys), kQuaternionDirections, kSeed);
    const GenericResult r = decompose_generic(build_x_of_y(ys));
    const double secs = seconds_since(t0);
    const bool exceeds = std::holds_alternative<RankExceedsP>(r);
    return {c.verdict == hrr::Verdict::NoRealPointFound && exceeds && secs < kQuaternionBudgetS,
            fmt("classify %s over %zu directions, decompose %s, %.2f s", to_string(c.verdict),
                c.directions_tried, exceeds ? "RankExceedsP" : to_string(outcome_of(r)), secs)};
}

CriterionResult criterion_8() {
    const ContractionY y({oracle::boundary_example_a1(), oracle::boundary_example_a2()});
    std::mt19937_64 gen(kSeed);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int i = 0; i < kExamplePoints; ++i) {
        const Vec a{nd(gen), nd(gen), nd(gen)};
        const double ref = oracle::boundary_example_form(a[0], a[1], a[2]);
        worst = std::max(worst, std::abs(determinant(eval_m(a, y)) - ref) / std::abs(ref));
    }
    return {worst <= kExampleRelErr, fmt("%d points, worst relative error %.1e", kExamplePoints, worst)};
}

// Each suite returns its failure count.
int suite_perp(std::mt19937_64& gen) {
    int fails = 0;
    std::normal_distribution<double> nd;
    for (int c = 0; c < kPropertyCases; ++c) {
        const std::size_t n = 2 + static_cast<std::size_t>(c) % 7;
        Mat w = oracle::gaussian_mat(n - 1, n, gen);
        const bool deficient = c % 2 == 1 && n >= 3;
        if (deficient) {
            // Last row becomes a combination of the others.
            for (std::size_t j = 0; j < n; ++j) w(n - 2, j) = 0.0;
            for (std::size_t r = 0; r + 2 < n; ++r) {
                const double coef = nd(gen);
                for (std::size_t j = 0; j < n; ++j) w(n - 2, j) += coef * w(r, j);
            }
        }
        const Vec p = perp_vector(w);
        double hadamard = 1.0;
        for (std::size_t r = 0; r + 1 < n; ++r) hadamard *= norm2(w.row(r));
        fails += norm2(w * p) > kPerpTol * frobenius_norm(w) * std::max(norm2(p), hadamard);
        if (deficient) {
            fails += norm2(p) > kPerpTol * hadamard;
        } else {
            fails += norm2(p) <= kPerpTol * hadamard;
        }
    }
    return fails;
}

int suite_adjugate(std::mt19937_64& gen) {
    int fails = 0;
    for (int c = 0; c < kPropertyCases; ++c) {
        const std::size_t n = 2 + static_cast<std::size_t>(c) % 6;
        const Mat m = oracle::gaussian_mat(n, n, gen);
        const Vec psi = last_row_cofactors(m);
        const double det = oracle::laplace_det(m);
        Vec lhs = m * psi;
        lhs[n - 1] -= det;
        fails += norm2(lhs) > kAdjugateTol * frobenius_norm(m) * norm2(psi);
    }
    return fails;
}

int suite_vandermonde(std::mt19937_64& gen) {
    int fails = 0;
    std::normal_distribution<double> nd;
    for (int c = 0; c < kPropertyCases; ++c) {
        const std::size_t n = 1 + static_cast<std::size_t>(c) % 6;
        Vec a(n);
        for (double& x : a) x = nd(gen);
        const double det = determinant(elementary_symmetric_matrix(a));
        const double ref = oracle::vandermonde_product(a);
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) scale *= std::max(1.0, std::abs(a[i] - a[j]));
        fails += std::abs(det - ref) > kVandermondeTol * scale;
    }
    return fails;
}

ContractionY random_y(std::size_t n, std::size_t l, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<Mat> ys;
    for (std::size_t k = 0; k < l; ++k) ys.push_back(random_gaussian(n, n, rng));
    return ContractionY(std::move(ys));
}

int suite_points(std::mt19937_64&) {
    int fails = 0, seen = 0;
    for (std::uint64_t s = 0; seen < kPropertyCases; ++s) {
        const ContractionY y = random_y(3 + s % 3, 2 + s % 2, derive_seed(kSeed, s));
        for (const HypersurfacePoint& p : sample_points(y, 4, s)) {
            const Mat m = eval_m(p.coordinates(), y);
            const double norm = frobenius_norm(m);
            fails += norm2(m * p.v) > kPointTol * norm;
            fails += std::abs(oracle::gauss_det(oracle::to_dense(m))) >
                     kPointTol * std::pow(norm, static_cast<double>(m.rows()));
            ++seen;
        }
    }
    return fails;
}

int suite_b_identity(std::mt19937_64&) {
    int fails = 0, successes = 0;
    for (std::uint64_t s = 0; successes < kPropertyCases; ++s) {
        const std::size_t n = 2 + s % 3, l = 2 + s % 2;
        const ContractionY y = random_y(n, l, derive_seed(kSeed + 1, s));
        DecomposeOptions opts;
        opts.seed = s;
        try {
            const Decomposition d = decompose_x_of_y(y, opts);
            ++successes;
            const std::size_t p = n * l;
            fails += oracle::mat_diff_norm(slice_stack(reconstruct(d), l), Mat::identity(p)) > kIdentityTol;
        } catch (const NoDecompositionAtP&) {
        }
    }
    return fails;
}

int suite_gl(std::mt19937_64& gen) {
    int fails = 0;
    for (int c = 0; c < kGlPairs; ++c) {
        const Tensor3 t = random_gaussian(Shape3{3, 6, 3}, derive_seed(kSeed + 2, static_cast<std::uint64_t>(c)));
        const Tensor3 g = gl_action(oracle::gaussian_mat(3, 3, gen), oracle::gaussian_mat(6, 6, gen),
                                    oracle::gaussian_mat(3, 3, gen), t);
        const GenericResult a = decompose_generic(t), b = decompose_generic(g);
        fails += outcome_of(a) != outcome_of(b);
        if (const auto* ra = std::get_if<RankP>(&a))
            if (const auto* rb = std::get_if<RankP>(&b)) fails += ra->decomposition.rank() != rb->decomposition.rank();
    }
    return fails;
}

int suite_census_determinism(std::mt19937_64&) {
    const std::string a = run_census(3, 4, kPropertyCases, kSeed, 1).to_json();
    const std::string b = run_census(3, 4, kPropertyCases, kSeed, 0).to_json();
    const std::string c = run_census(3, 4, kPropertyCases, kSeed, 3).to_json();
    return (a != b) + (a != c);
}

CriterionResult criterion_9() {
    struct Suite {
        const char* name;
        int (*run)(std::mt19937_64&);
    };
    const Suite suites[] = {{"perp", suite_perp},
                            {"adjugate", suite_adjugate},
                            {"vandermonde", suite_vandermonde},
                            {"points", suite_points},
                            {"b-identity", suite_b_identity},
                            {"gl-rank", suite_gl},
                            {"census-determinism", suite_census_determinism}};
    std::mt19937_64 gen(kSeed);
    int total = 0;
    std::string detail;
    for (const Suite& s : suites) {
        const int f = s.run(gen);
        total += f;
        detail += fmt("%s %d; ", s.name, f);
    }
    return {total == 0, "failures: " + detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<CriterionResult()>> criteria{criterion_1, criterion_2, criterion_3,
                                                         criterion_4, criterion_5, criterion_6,
                                                         criterion_7, criterion_8, criterion_9};
    int only = 0;
    if (argc == 3 && std::strcmp(argv[1], "--only") == 0) {
        only = std::atoi(argv[2]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
            return 2;
        }
    } else if (argc != 1) {
        std::fprintf(stderr, "usage: acceptance [--only N]\n");
        return 2;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        CriterionResult v;
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu: %s\n", v.pass ? "PASS" : "FAIL", i + 1, v.detail.c_str());
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed ? 1 : 0;
}
