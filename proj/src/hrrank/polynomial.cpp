#include "hrrank/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "hrrank/errors.hpp"

namespace hrr {

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPoly::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RealPoly RealPoly::derivative() const {
    if (coeffs_.size() <= 1) return RealPoly{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return RealPoly(std::move(d));
}

double RealPoly::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

RealPoly RealPoly::remainder(const RealPoly& d, double rel_zero) const {
    if (d.is_zero()) throw ArgumentError("polynomial division by zero");
    std::vector<double> r = coeffs_;
    const double scale = max_abs_coeff();
    const int dd = d.degree();
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
        const double q = r[k] / d.leading();
        for (int i = 0; i <= dd; ++i) r[k - dd + i] -= q * d.coeffs()[i];
        r[k] = 0.0;
    }
    for (double& c : r) {
        if (std::abs(c) <= rel_zero * scale) c = 0.0;
    }
    return RealPoly(std::move(r));
}

RealPoly characteristic_polynomial(const Mat& m) {
    if (!m.square()) throw DimensionError("characteristic_polynomial: matrix not square");
    const std::size_t n = m.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Mat mk(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Mat next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        const Mat amk = m * mk;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / static_cast<double>(k);
    }
    return RealPoly(std::move(c));
}

namespace {

constexpr double kSturmRelZero = 1e-11;

RealPoly normalized(const RealPoly& p) {
    const double s = p.max_abs_coeff();
    if (s == 0.0) return p;
    std::vector<double> c = p.coeffs();
    for (double& x : c) x /= s;
    return RealPoly(std::move(c));
}

}  // namespace

SturmSequence::SturmSequence(const RealPoly& p) {
    if (p.is_zero()) return;
    chain_.push_back(normalized(p));
    if (p.degree() == 0) return;
    chain_.push_back(normalized(p.derivative()));
    while (chain_.back().degree() > 0) {
        const RealPoly& a = chain_[chain_.size() - 2];
        const RealPoly& b = chain_.back();
        RealPoly r = a.remainder(b, kSturmRelZero);
        if (r.is_zero()) break;
        std::vector<double> neg = r.coeffs();
        for (double& x : neg) x = -x;
        chain_.push_back(normalized(RealPoly(std::move(neg))));
    }
}

int SturmSequence::sign_changes(double x) const {
    int changes = 0;
    int last = 0;
    for (const RealPoly& q : chain_) {
        const double v = q(x);
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

std::vector<double> isolate_real_roots(const RealPoly& p, double lo, double hi, double width) {
    std::vector<double> roots;
    if (p.is_zero() || p.degree() == 0) return roots;
    const SturmSequence sturm(p);

    struct Interval {
        double a, b;
        int count;
    };
    std::vector<Interval> stack{{lo, hi, sturm.count_roots(lo, hi)}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        if (iv.count <= 0) continue;
        if (iv.count == 1 || iv.b - iv.a <= width) {
            // Shrink around the single root (or cluster) with Sturm counts.
            double a = iv.a, b = iv.b;
            while (b - a > width) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                if (sturm.count_roots(a, mid) > 0) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        const int left = sturm.count_roots(iv.a, mid);
        // Right half first on the stack so the left half pops first.
        stack.push_back({mid, iv.b, iv.count - left});
        stack.push_back({iv.a, mid, left});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hrr
