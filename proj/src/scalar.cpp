#include "ultrawelch/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace ultrawelch {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long i = 3; i <= n / i; i += 2) {
        if (n % i == 0) return false;
    }
    return true;
}

Rat parse_rational(const std::string& text) {
    // optional sign, digits, optionally "/digits"
    const auto bad = [&]() -> ParseError {
        return ParseError("invalid rational literal: '" + text + "'");
    };
    if (text.empty()) throw bad();
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) throw bad();
    if (i != text.size()) {
        if (text[i] != '/') throw bad();
        ++i;
        std::size_t den_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++den_digits;
        }
        if (den_digits == 0 || i != text.size()) throw bad();
    }
    // mpq_set_str rejects a leading '+'
    const std::string body = text[0] == '+' ? text.substr(1) : text;
    Rat value;
    if (mpq_set_str(value.get_mpq_t(), body.c_str(), 10) != 0) throw bad();
    if (sgn(value.get_den()) == 0) throw ParseError("zero denominator in rational literal: '" + text + "'");
    value.canonicalize();
    return value;
}

std::string rational_to_string(const Rat& r) {
    return r.get_str();
}

long long rational_padic_valuation(const Rat& x, unsigned long p) {
    if (sgn(x) == 0) throw PreconditionError("valuation of zero is not finite");
    const Int prime(static_cast<unsigned long>(p));
    Int tmp;
    const long long vnum = static_cast<long long>(mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), prime.get_mpz_t()));
    const long long vden = static_cast<long long>(mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), prime.get_mpz_t()));
    return vnum - vden;
}

Backend Backend::padic(unsigned long prime) {
    if (!is_prime(prime)) {
        throw PreconditionError("p-adic backend requires a prime, got " + std::to_string(prime));
    }
    return Backend(Kind::padic, prime);
}

Backend Backend::laurent() {
    return Backend(Kind::laurent, 0);
}

unsigned long Backend::prime() const {
    if (kind_ != Kind::padic) throw BackendMismatchError("laurent backend has no prime");
    return prime_;
}

std::string Backend::name() const {
    if (kind_ == Kind::padic) return "padic(" + std::to_string(prime_) + ")";
    return "laurent";
}

long long AbsValue::exponent() const {
    if (infinite_) throw Error("exponent of |0| requested");
    return v_;
}

AbsValue AbsValue::times(const AbsValue& other) const {
    if (infinite_ || other.infinite_) return zero();
    return finite(v_ + other.v_);
}

AbsValue AbsValue::pow(unsigned m) const {
    if (infinite_) return zero();
    return finite(v_ * static_cast<long long>(m));
}

AbsValue AbsValue::divided_by(const AbsValue& other) const {
    if (other.infinite_) throw DivisionError("division by an absolute value of 0");
    if (infinite_) return zero();
    return finite(v_ - other.v_);
}

bool abs_less(const AbsValue& a, const AbsValue& b) {
    // |a| < |b|  <=>  v(a) > v(b), with v = +inf smallest in magnitude
    if (b.is_abs_zero()) return false;
    if (a.is_abs_zero()) return true;
    return a.exponent() > b.exponent();
}

bool abs_less_equal(const AbsValue& a, const AbsValue& b) {
    return a == b || abs_less(a, b);
}

AbsValue abs_max(const AbsValue& a, const AbsValue& b) {
    return abs_less(a, b) ? b : a;
}

Scalar::Scalar(long value) {
    if (value != 0) terms_[0] = Rat(value);
}

Scalar::Scalar(const Rat& value) {
    if (sgn(value) != 0) {
        Rat canonical = value;
        canonical.canonicalize();
        terms_[0] = std::move(canonical);
    }
}

Scalar Scalar::t_power(long long exponent, const Rat& coeff) {
    Scalar s;
    if (sgn(coeff) != 0) {
        Rat canonical = coeff;
        canonical.canonicalize();
        s.terms_[exponent] = std::move(canonical);
    }
    return s;
}

Scalar Scalar::from_terms(std::map<long long, Rat> terms) {
    Scalar s;
    for (auto& [e, c] : terms) {
        if (sgn(c) == 0) continue;
        c.canonicalize();
        s.terms_.emplace(e, std::move(c));
    }
    return s;
}

bool Scalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

const Rat& Scalar::zero_rat() {
    static const Rat zero(0);
    return zero;
}

const Rat& Scalar::constant_value() const {
    if (!is_constant()) throw Error("constant_value() on a non-constant scalar");
    if (terms_.empty()) return zero_rat();
    return terms_.begin()->second;
}

long long Scalar::min_exponent() const {
    if (terms_.empty()) throw Error("min_exponent() on zero");
    return terms_.begin()->first;
}

Scalar Scalar::operator-() const {
    Scalar out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Scalar Scalar::operator+(const Scalar& other) const {
    Scalar out(*this);
    out += other;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    for (const auto& [e, c] : other.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

Scalar Scalar::operator-(const Scalar& other) const {
    return *this + (-other);
}

Scalar Scalar::operator*(const Scalar& other) const {
    Scalar out;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            const long long e = ea + eb;
            auto it = out.terms_.find(e);
            if (it == out.terms_.end()) {
                out.terms_.emplace(e, ca * cb);
            } else {
                it->second += ca * cb;
                if (sgn(it->second) == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

Scalar Scalar::operator/(const Scalar& divisor) const {
    if (divisor.is_zero()) throw DivisionError("division by zero scalar");
    if (!divisor.is_constant()) {
        throw DivisionError("division by a non-constant Laurent element is unsupported");
    }
    const Rat& c = divisor.constant_value();
    Scalar out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff / c);
    return out;
}

Scalar Scalar::pow(unsigned m) const {
    Scalar out(1);
    for (unsigned i = 0; i < m; ++i) out = out * (*this);
    return out;
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << c.get_str();
        } else {
            os << "(" << c.get_str() << ")t^" << e;
        }
    }
    return os.str();
}

AbsValue valuation(const Scalar& x, const Backend& backend) {
    if (x.is_zero()) return AbsValue::zero();
    if (backend.is_padic()) {
        if (!x.is_constant()) {
            throw BackendMismatchError("p-adic scalars must be constant rationals");
        }
        return AbsValue::finite(rational_padic_valuation(x.constant_value(), backend.prime()));
    }
    return AbsValue::finite(x.min_exponent());
}

FieldConditionResult check_field_condition(const std::vector<Scalar>& lambdas,
                                           const Backend& backend) {
    if (lambdas.empty()) throw PreconditionError("field condition needs a nonempty tuple");
    Scalar sum_of_squares;
    AbsValue max_square = AbsValue::zero();
    for (const Scalar& lambda : lambdas) {
        sum_of_squares += lambda * lambda;
        max_square = abs_max(max_square, valuation(lambda, backend).squared());
    }
    FieldConditionResult out;
    out.lhs = valuation(sum_of_squares, backend);
    out.rhs = max_square;
    out.holds = (out.lhs == out.rhs);
    return out;
}

namespace {

bool tuple_violates(const std::vector<long>& entries, const Backend& backend) {
    std::vector<Scalar> lambdas;
    lambdas.reserve(entries.size());
    for (long e : entries) lambdas.emplace_back(e);
    return !check_field_condition(lambdas, backend).holds;
}

// Non-decreasing tuples of the given length over [1, bound], lexicographic.
bool search_tuples(std::vector<long>& tuple, std::size_t pos, long min_entry, long bound,
                   const Backend& backend) {
    if (pos == tuple.size()) return tuple_violates(tuple, backend);
    for (long e = min_entry; e <= bound; ++e) {
        tuple[pos] = e;
        if (search_tuples(tuple, pos + 1, e, bound, backend)) return true;
    }
    return false;
}

} // namespace

std::optional<std::vector<long>> find_field_condition_counterexample(const Backend& backend,
                                                                     long search_bound) {
    if (!backend.is_padic()) {
        throw BackendMismatchError(
            "the field condition holds on the Laurent backend; no counterexample exists");
    }
    if (search_bound < 1) throw PreconditionError("search bound must be positive");
    for (std::size_t len = 1; len <= 4; ++len) {
        std::vector<long> tuple(len);
        if (search_tuples(tuple, 0, 1, search_bound, backend)) return tuple;
    }
    return std::nullopt;
}

long long binomial_valuation(unsigned long long n, unsigned long long k, unsigned long p) {
    if (k > n) throw PreconditionError("binomial_valuation requires k <= n");
    if (!is_prime(p)) throw PreconditionError("binomial_valuation requires a prime base");
    unsigned long long a = k;
    unsigned long long b = n - k;
    long long carries = 0;
    unsigned long long carry = 0;
    while (a != 0 || b != 0 || carry != 0) {
        const unsigned long long digit = a % p + b % p + carry;
        carry = digit >= p ? 1 : 0;
        carries += static_cast<long long>(carry);
        a /= p;
        b /= p;
    }
    return carries;
}

} // namespace ultrawelch
