#pragma once

#include <cstddef>

#include "hrrank/linalg.hpp"
#include "hrrank/tensor.hpp"

namespace hrr {

// An n x u x m tensor (m slices of size n x u) with 3 <= m <= n <= u and
// (m-1)n < u < mn. Every such generic tensor has rank exactly u.
class TallShape {
public:
    TallShape(std::size_t m, std::size_t n, std::size_t u);
    static TallShape of(const Tensor3& a);  // reads (n, u, m) from the tensor shape

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t u() const noexcept { return u_; }
    std::size_t p() const noexcept { return (m_ - 1) * n_; }
    std::size_t q() const noexcept { return u_ - p() - 1; }
    Shape3 tensor_shape() const noexcept { return {n_, u_, m_}; }

    static bool valid(std::size_t m, std::size_t n, std::size_t u) noexcept;

private:
    std::size_t m_, n_, u_;
};

// Any u distinct nodes work. Integer nodes make every block row of Y_j
// dominated by A_1 for large j, which leaves H badly conditioned, so the
// default is equispaced.
enum class NodeChoice {
    Integers,   // t_j = j, j = 1..u
    Equispaced  // t_j equispaced in [-1, 1]
};

struct TallOptions {
    NodeChoice nodes = NodeChoice::Equispaced;
    double tol_rec = 1e-8;
    // Perp vectors use cofactor minors up to this size, the smallest right
    // singular vector beyond it.
    std::size_t cofactor_limit = 10;
};

Vec tall_nodes(std::size_t u, NodeChoice choice);

// (u-1) x u matrix: rows A_{k+1} - t_j^k A_1 for k = 1..m-1, then the
// selector B_j. `j` is 1-based.
Mat build_yj(const Tensor3& a, std::size_t j, NodeChoice nodes = NodeChoice::Equispaced);

// Columns are the unit-normalized perp vectors of Y_1..Y_u (zero columns
// stay zero).
Mat build_h(const Tensor3& a, const TallOptions& opts = {});

// Rank-u decomposition: term j is (A_1 H e_j) x (row j of H^-1) x
// (1, t_j, ..., t_j^(m-1)). Throws NotGenericError when H is singular or
// the reconstruction misses tol_rec.
Decomposition tall_decompose(const Tensor3& a, const TallOptions& opts = {});

// A_1 = (E_n, ..., E_n, 1, O_q), A_{s+1} = A_1 diag(t_1^s, ..., t_u^s). With
// matching nodes every perp vector of Y_j is a multiple of e_j.
Tensor3 canonical_witness(const TallShape& shape, NodeChoice nodes = NodeChoice::Integers);

}  // namespace hrr
