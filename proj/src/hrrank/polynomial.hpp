#pragma once

#include <cstddef>
#include <vector>

#include "hrrank/linalg.hpp"

namespace hrr {

// Real polynomial, coefficients in ascending degree. Trailing zeros are
// trimmed on construction, so the leading coefficient is nonzero unless the
// polynomial is identically zero (empty coefficient list).
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(std::vector<double> coeffs);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double leading() const { return coeffs_.back(); }

    double operator()(double x) const;
    RealPoly derivative() const;
    double max_abs_coeff() const;

    // Remainder of *this divided by d. Coefficients smaller than
    // rel_zero * (largest dividend coefficient) are treated as zero.
    RealPoly remainder(const RealPoly& d, double rel_zero) const;

private:
    std::vector<double> coeffs_;
};

// det(x E - M) via the Faddeev-LeVerrier recurrence.
RealPoly characteristic_polynomial(const Mat& m);

class SturmSequence {
public:
    explicit SturmSequence(const RealPoly& p);

    // Sign changes of the chain evaluated at x.
    int sign_changes(double x) const;
    // Number of distinct real roots in (a, b].
    int count_roots(double a, double b) const { return sign_changes(a) - sign_changes(b); }

    const std::vector<RealPoly>& chain() const noexcept { return chain_; }

private:
    std::vector<RealPoly> chain_;
};

// Distinct real roots in (lo, hi], ascending, each located to width `width`.
std::vector<double> isolate_real_roots(const RealPoly& p, double lo, double hi, double width);

}  // namespace hrr
