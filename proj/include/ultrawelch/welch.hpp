#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultrawelch/symtensor.hpp"

namespace ultrawelch {

// Which bound family is being checked.  The non-Archimedean variant needs
// the field condition (only the Laurent backend provides it) plus a
// diagonalizable operator; the p-adic variant needs the scalar-identity
// hypothesis and runs on p-adic backends only.
enum class Variant { non_arch, padic };

enum class Verdict { holds_strict, holds_with_equality, violated, inapplicable };

const char* to_string(Variant v);
const char* to_string(Verdict v);

struct HypothesisReport {
    bool satisfied = false;
    std::string detail;      // stable token, e.g. "scalar-identity" or "not-diagonalizable"
    std::optional<Scalar> b; // tightness certificate when the p-adic hypothesis holds
};

// Both sides of the bound at order m, all as valuations.
struct BoundSides {
    AbsValue diag_term = AbsValue::zero();  // |sum_l f_l(tau_l)^{2m}|
    AbsValue cross_term = AbsValue::zero(); // max_{j!=k} |f_j(tau_k) f_k(tau_j)|^m
    std::optional<std::pair<std::size_t, std::size_t>> argmax; // 0-based pair realizing it
    AbsValue lhs = AbsValue::zero();        // max of the two terms
    AbsValue rhs = AbsValue::zero();        // |sum_j f_j(tau_j)^m|^2 / |C(d+m-1, m)|
    bool unital = false;                    // f_j(tau_j) = 1 for every j
};

// Valuation arithmetic on the Gram matrix only; no hypothesis involved.
BoundSides compute_bound_sides(const FrameConfig& config, unsigned m);

struct BoundReport {
    Variant variant = Variant::padic;
    unsigned m = 1;
    Backend backend = Backend::laurent();
    std::size_t d = 0;
    std::size_t n = 0;
    HypothesisReport hypothesis;
    BoundSides sides;
    Verdict verdict = Verdict::inapplicable;
};

/*
 * Evaluates one Welch-type bound exactly.  The report carries the hypothesis
 * verdict, both sides as valuations, and a four-way verdict: Violated only
 * ever fires when the hypothesis failed too (that the underlying inequalities
 * guarantee this is the soundness property the test suite sweeps for).
 */
BoundReport check_bound(const FrameConfig& config, unsigned m, Variant variant);

// Unital form: requires f_j(tau_j) = 1 for all j (typed error naming the
// first offending index otherwise); the diagonal term becomes |n| and the
// right-hand side |n|^2 / |C(d+m-1, m)|.
BoundReport check_unital(const FrameConfig& config, unsigned m, Variant variant);

// Curated deterministic reproductions: equality fixtures, a strict fixture,
// and the hypothesis-violation fixture.
std::vector<std::pair<std::string, BoundReport>> demo_suite();

// The tight d=2, n=3 configuration with b = 3/2 used by demos and fixtures.
FrameConfig tight_2_3_config(const Backend& backend);

// Standard basis vectors with coordinate functionals, n = d.
FrameConfig standard_basis_config(const Backend& backend, std::size_t d);

} // namespace ultrawelch
