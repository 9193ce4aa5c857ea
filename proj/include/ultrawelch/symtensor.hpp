#pragma once

#include <cstddef>
#include <vector>

#include "ultrawelch/linalg.hpp"

namespace ultrawelch {

// Exponent vector alpha of length d with sum(alpha) = m; basis position is
// its rank in lexicographically descending order.
using SymIndex = std::vector<unsigned>;

// dim Sym^m of a d-dimensional space: C(d+m-1, m).
Int sym_dim(std::size_t d, unsigned m);

// All exponent vectors of total degree m, lexicographically descending.
std::vector<SymIndex> sym_basis(std::size_t d, unsigned m);

// m! / prod(alpha_i!)
Int multinomial(unsigned m, const SymIndex& alpha);

// Coordinates of tau tensored m times: entry at alpha is tau^alpha.
Vec lift_vector(const Vec& tau, unsigned m);

// Coefficients of f tensored m times: entry at alpha is multinomial(m;alpha)
// times u^alpha, so that the lifted pairing equals f(tau)^m exactly.
Vec lift_functional(const Vec& u, unsigned m);

struct SymOperator {
    unsigned m = 1;
    std::size_t dim = 0;
    Mat matrix;
};

inline constexpr unsigned long kSymDimGuard = 10'000;

// sum_j lift_vector(tau_j) lift_functional(u_j)^T in the SymIndex basis.
// Throws ResourceError when sym_dim(d, m) exceeds the desk-scale guard.
SymOperator sym_frame_operator(const FrameConfig& config, unsigned m);

} // namespace ultrawelch
