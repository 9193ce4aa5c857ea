#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultrawelch/errors.hpp"

namespace ultrawelch {

using Int = mpz_class;
using Rat = mpq_class;

bool is_prime(unsigned long n);

// Rational literals are "a/b" or "a" with an optional leading sign.
Rat parse_rational(const std::string& text);
std::string rational_to_string(const Rat& r);

// v_p of a nonzero rational: factors of p in the numerator minus the denominator.
long long rational_padic_valuation(const Rat& x, unsigned long p);

/*
 * Scalar domain descriptor.  Two concrete non-Archimedean domains are
 * supported: Q with the p-adic valuation, and rational-coefficient Laurent
 * polynomials in one indeterminate t with the t-adic valuation.  The Laurent
 * domain satisfies |sum of squares| = max |square| on every tuple; every
 * p-adic domain violates it (see find_field_condition_counterexample).
 */
class Backend {
public:
    enum class Kind { padic, laurent };

    static Backend padic(unsigned long prime);
    static Backend laurent();

    Kind kind() const { return kind_; }
    bool is_padic() const { return kind_ == Kind::padic; }
    unsigned long prime() const;
    std::string name() const;

    bool operator==(const Backend& other) const = default;

private:
    Backend(Kind kind, unsigned long prime) : kind_(kind), prime_(prime) {}

    Kind kind_;
    unsigned long prime_; // 0 for laurent
};

/*
 * Absolute value kept in additive form: |x| = base^(-v) with v an extended
 * integer and v = +infinity encoding |x| = 0.  All magnitude comparisons are
 * integer comparisons with the order reversed (larger magnitude = smaller
 * valuation); absolute values are never materialized as reals.
 */
class AbsValue {
public:
    // |x| = 0
    static AbsValue zero() { return AbsValue(0, true); }
    static AbsValue finite(long long v) { return AbsValue(v, false); }

    bool is_abs_zero() const { return infinite_; }
    // Finite valuation exponent; calling this on |x| = 0 is a bug.
    long long exponent() const;

    // |x·y|, |x²|, |x^m|
    AbsValue times(const AbsValue& other) const;
    AbsValue squared() const { return pow(2); }
    AbsValue pow(unsigned m) const;
    // |x/y|; undefined when the divisor is |0|.
    AbsValue divided_by(const AbsValue& other) const;

    bool operator==(const AbsValue& other) const = default;

private:
    AbsValue(long long v, bool infinite) : v_(v), infinite_(infinite) {}

    long long v_;
    bool infinite_;
};

// |a| < |b|, |a| <= |b| (order-reversed valuation comparisons)
bool abs_less(const AbsValue& a, const AbsValue& b);
bool abs_less_equal(const AbsValue& a, const AbsValue& b);
AbsValue abs_max(const AbsValue& a, const AbsValue& b);

/*
 * Exact element of either scalar domain, stored as a finite map from integer
 * exponent to nonzero rational coefficient.  p-adic elements are the
 * constants (support contained in {0}); the map form is only populated on the
 * Laurent backend.  Canonical form is maintained by every operation: no zero
 * coefficients, rationals in lowest terms.
 */
class Scalar {
public:
    Scalar() = default;                     // zero
    Scalar(long value);                     // NOLINT(google-explicit-constructor)
    Scalar(const Rat& value);               // NOLINT(google-explicit-constructor)
    static Scalar t_power(long long exponent, const Rat& coeff = Rat(1));
    static Scalar from_terms(std::map<long long, Rat> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    // Value of a constant element; requires is_constant().
    const Rat& constant_value() const;
    // Least exponent with nonzero coefficient; requires a nonzero element.
    long long min_exponent() const;
    const std::map<long long, Rat>& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator*(const Scalar& other) const;
    // Exact division by a nonzero constant; anything else is unsupported in
    // this domain and throws DivisionError.
    Scalar operator/(const Scalar& divisor) const;
    Scalar& operator+=(const Scalar& other);
    Scalar pow(unsigned m) const;

    bool operator==(const Scalar& other) const = default;

    std::string to_string() const;

private:
    std::map<long long, Rat> terms_;

    static const Rat& zero_rat();
};

// Extended-integer valuation of x in the given domain.
AbsValue valuation(const Scalar& x, const Backend& backend);

struct FieldConditionResult {
    bool holds = false;
    AbsValue lhs = AbsValue::zero(); // |sum of squares|
    AbsValue rhs = AbsValue::zero(); // max over the tuple of |entry|^2
};

// Tests |sum lambda_j^2| = max_j |lambda_j|^2 on one tuple.
FieldConditionResult check_field_condition(const std::vector<Scalar>& lambdas,
                                           const Backend& backend);

// Smallest tuple (by length, then lexicographically) of integers in
// [1, search_bound], length at most 4, violating the field condition.
// Rejects the Laurent backend, where the condition provably holds.
std::optional<std::vector<long>> find_field_condition_counterexample(const Backend& backend,
                                                                     long search_bound);

// v_p(C(n, k)) as the number of carries when adding k and n-k in base p.
long long binomial_valuation(unsigned long long n, unsigned long long k, unsigned long p);

} // namespace ultrawelch
