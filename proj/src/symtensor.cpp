#include "ultrawelch/symtensor.hpp"

namespace ultrawelch {

Int sym_dim(std::size_t d, unsigned m) {
    if (d == 0 || m == 0) throw PreconditionError("sym_dim needs d >= 1 and m >= 1");
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(d) + m - 1, m);
    return out;
}

namespace {

void build_basis(std::size_t d, unsigned remaining, SymIndex& prefix,
                 std::vector<SymIndex>& out) {
    if (prefix.size() + 1 == d) {
        prefix.push_back(remaining);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (unsigned a = remaining + 1; a-- > 0;) {
        prefix.push_back(a);
        build_basis(d, remaining - a, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<SymIndex> sym_basis(std::size_t d, unsigned m) {
    if (d == 0 || m == 0) throw PreconditionError("sym_basis needs d >= 1 and m >= 1");
    std::vector<SymIndex> out;
    SymIndex prefix;
    build_basis(d, m, prefix, out);
    return out;
}

Int multinomial(unsigned m, const SymIndex& alpha) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), m);
    Int factorial;
    for (unsigned a : alpha) {
        mpz_fac_ui(factorial.get_mpz_t(), a);
        mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), factorial.get_mpz_t());
    }
    return out;
}

namespace {

Scalar monomial_power(const Vec& v, const SymIndex& alpha) {
    Scalar out(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > 0) out = out * v[i].pow(alpha[i]);
    }
    return out;
}

} // namespace

Vec lift_vector(const Vec& tau, unsigned m) {
    const std::vector<SymIndex> basis = sym_basis(tau.size(), m);
    Vec out;
    out.reserve(basis.size());
    for (const SymIndex& alpha : basis) out.push_back(monomial_power(tau, alpha));
    return out;
}

Vec lift_functional(const Vec& u, unsigned m) {
    const std::vector<SymIndex> basis = sym_basis(u.size(), m);
    Vec out;
    out.reserve(basis.size());
    for (const SymIndex& alpha : basis) {
        out.push_back(Scalar(Rat(multinomial(m, alpha))) * monomial_power(u, alpha));
    }
    return out;
}

SymOperator sym_frame_operator(const FrameConfig& config, unsigned m) {
    if (m == 0) throw PreconditionError("sym_frame_operator needs m >= 1");
    const Int dim_big = sym_dim(config.d, m);
    if (dim_big > Int(kSymDimGuard)) {
        throw ResourceError("Sym^m dimension " + dim_big.get_str() + " exceeds the guard of " +
                            std::to_string(kSymDimGuard));
    }
    const std::size_t dim = static_cast<std::size_t>(dim_big.get_ui());
    SymOperator op{m, dim, Mat(dim, dim)};
    for (std::size_t j = 0; j < config.n; ++j) {
        const Vec lifted_tau = lift_vector(config.vectors[j], m);
        const Vec lifted_u = lift_functional(config.functionals[j], m);
        for (std::size_t r = 0; r < dim; ++r) {
            if (lifted_tau[r].is_zero()) continue;
            for (std::size_t c = 0; c < dim; ++c) {
                op.matrix.at(r, c) += lifted_tau[r] * lifted_u[c];
            }
        }
    }
    return op;
}

} // namespace ultrawelch
