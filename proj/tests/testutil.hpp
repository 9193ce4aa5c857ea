#pragma once

#include <map>
#include <random>

#include "ultrawelch/welch.hpp"

namespace uwtest {

using namespace ultrawelch;

using Rng = std::mt19937_64;

inline Rat random_rational(Rng& rng, long height, bool allow_zero = true) {
    std::uniform_int_distribution<long> num(-height, height);
    std::uniform_int_distribution<long> den(1, height);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    if (!allow_zero && sgn(r) == 0) return Rat(1);
    return r;
}

inline Scalar random_scalar(Rng& rng, const Backend& backend, long height) {
    if (backend.is_padic()) return Scalar(random_rational(rng, height));
    std::uniform_int_distribution<int> term_count(0, 3);
    std::uniform_int_distribution<long long> exponent(-3, 3);
    std::map<long long, Rat> terms;
    const int count = term_count(rng);
    for (int i = 0; i < count; ++i) terms[exponent(rng)] = random_rational(rng, height);
    return Scalar::from_terms(std::move(terms));
}

// A scalar with valuation exactly zero.
inline Scalar random_unit(Rng& rng, const Backend& backend, long height) {
    if (backend.is_padic()) {
        Rat r = random_rational(rng, height, /*allow_zero=*/false);
        const long long v = rational_padic_valuation(r, backend.prime());
        Int power;
        mpz_ui_pow_ui(power.get_mpz_t(), backend.prime(),
                      static_cast<unsigned long>(v < 0 ? -v : v));
        if (v > 0) {
            r /= Rat(power);
        } else if (v < 0) {
            r *= Rat(power);
        }
        return Scalar(r);
    }
    // Laurent units used in tests are monomials; their inverses stay finite.
    std::uniform_int_distribution<long long> exponent(-2, 2);
    return Scalar::t_power(exponent(rng), random_rational(rng, height, /*allow_zero=*/false));
}

inline Scalar invert_unit(const Scalar& unit, const Backend& backend) {
    if (backend.is_padic()) return Scalar(Rat(1) / unit.constant_value());
    const long long e = unit.min_exponent();
    return Scalar::t_power(-e, Rat(1) / unit.terms().at(e));
}

inline Vec random_vec(Rng& rng, const Backend& backend, std::size_t d, long height) {
    Vec v;
    v.reserve(d);
    for (std::size_t i = 0; i < d; ++i) v.push_back(random_scalar(rng, backend, height));
    return v;
}

inline FrameConfig random_config(Rng& rng, const Backend& backend, std::size_t d, std::size_t n,
                                 long height) {
    FrameConfig config{backend, d, n, {}, {}};
    for (std::size_t j = 0; j < n; ++j) {
        config.vectors.push_back(random_vec(rng, backend, d, height));
        config.functionals.push_back(random_vec(rng, backend, d, height));
    }
    return config;
}

// Random config with f_j(tau_j) = 1 for all j: one vector slot is forced to a
// unit monomial and the matching functional coefficient solves the pairing.
inline FrameConfig random_unital_config(Rng& rng, const Backend& backend, std::size_t d,
                                        std::size_t n, long height) {
    FrameConfig config{backend, d, n, {}, {}};
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (std::size_t j = 0; j < n; ++j) {
        Vec tau = random_vec(rng, backend, d, height);
        Vec u = random_vec(rng, backend, d, height);
        const std::size_t slot = pick(rng);
        const Scalar unit = random_unit(rng, backend, height);
        tau[slot] = unit;
        u[slot] = Scalar(0);
        Scalar partial;
        for (std::size_t i = 0; i < d; ++i) partial += u[i] * tau[i];
        u[slot] = (Scalar(1) - partial) * invert_unit(unit, backend);
        config.vectors.push_back(std::move(tau));
        config.functionals.push_back(std::move(u));
    }
    return config;
}

} // namespace uwtest
