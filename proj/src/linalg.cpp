#include "ultrawelch/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace ultrawelch {

void FrameConfig::validate() const {
    if (d == 0 || n == 0) throw PreconditionError("frame config needs d >= 1 and n >= 1");
    if (vectors.size() != n || functionals.size() != n) {
        throw PreconditionError("frame config needs exactly n vectors and n functionals");
    }
    for (const Vec& v : vectors) {
        if (v.size() != d) throw PreconditionError("vector entry count != d");
    }
    for (const Vec& u : functionals) {
        if (u.size() != d) throw PreconditionError("functional entry count != d");
    }
    if (backend.is_padic()) {
        for (const auto& family : {vectors, functionals}) {
            for (const Vec& v : family) {
                for (const Scalar& entry : v) {
                    if (!entry.is_constant()) {
                        throw BackendMismatchError("p-adic configs must have constant rational entries");
                    }
                }
            }
        }
    }
}

Scalar dot(const Vec& coeffs, const Vec& x) {
    Scalar out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * x[i];
    return out;
}

Mat gram(const FrameConfig& config) {
    Mat g(config.n, config.n);
    for (std::size_t j = 0; j < config.n; ++j) {
        for (std::size_t k = 0; k < config.n; ++k) {
            g.at(j, k) = dot(config.functionals[j], config.vectors[k]);
        }
    }
    return g;
}

Mat frame_operator(const FrameConfig& config) {
    Mat s(config.d, config.d);
    for (std::size_t j = 0; j < config.n; ++j) {
        const Vec& tau = config.vectors[j];
        const Vec& u = config.functionals[j];
        for (std::size_t r = 0; r < config.d; ++r) {
            for (std::size_t c = 0; c < config.d; ++c) {
                s.at(r, c) += tau[r] * u[c];
            }
        }
    }
    return s;
}

std::optional<TightnessCertificate> is_scalar_identity(const Mat& m) {
    if (!m.is_square()) throw PreconditionError("is_scalar_identity needs a square matrix");
    if (m.rows() == 0) throw PreconditionError("is_scalar_identity needs a nonempty matrix");
    const Scalar& b = m.at(0, 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j) {
                if (!(m.at(i, j) == b)) return std::nullopt;
            } else if (!m.at(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    }
    return TightnessCertificate{b, 1};
}

AbsValue sup_norm(const Vec& v, const Backend& backend) {
    if (v.empty()) throw PreconditionError("sup_norm of an empty vector");
    AbsValue out = AbsValue::zero();
    for (const Scalar& entry : v) out = abs_max(out, valuation(entry, backend));
    return out;
}

QMat rational_entries(const Mat& m) {
    QMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Scalar& entry = m.at(i, j);
            if (!entry.is_constant()) {
                throw NonRationalEntryError("matrix entry is not a constant rational");
            }
            out.at(i, j) = entry.constant_value();
        }
    }
    return out;
}

std::vector<Rat> characteristic_polynomial(const QMat& a) {
    if (!a.is_square() || a.rows() == 0) {
        throw PreconditionError("characteristic polynomial needs a nonempty square matrix");
    }
    const std::size_t n = a.rows();
    std::vector<Rat> coeffs(n + 1);
    coeffs[n] = 1;
    // Faddeev-LeVerrier: M_k = A(M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
    QMat m = a;
    coeffs[n - 1] = -trace(m);
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += coeffs[n - k + 1];
        m = a * m;
        coeffs[n - k] = -trace(m) / Rat(static_cast<long>(k));
    }
    return coeffs;
}

std::size_t rank(QMat a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a.at(pivot, col)) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = col; j < cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (sgn(a.at(i, col)) == 0) continue;
            const Rat factor = a.at(i, col) / a.at(r, col);
            for (std::size_t j = col; j < cols; ++j) a.at(i, j) -= factor * a.at(r, j);
        }
        ++r;
    }
    return r;
}

namespace {

// Reduced row echelon form; returns pivot column per pivot row.
std::vector<std::size_t> rref_in_place(QMat& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a.at(pivot, col)) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        }
        const Rat lead = a.at(r, col);
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a.at(i, col)) == 0) continue;
            const Rat factor = a.at(i, col);
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) -= factor * a.at(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

} // namespace

std::vector<std::vector<Rat>> nullspace_basis(const QMat& a) {
    QMat m = a;
    const std::vector<std::size_t> pivots = rref_in_place(m);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> x(cols, Rat(0));
        x[free_col] = 1;
        for (std::size_t row = 0; row < pivots.size(); ++row) {
            x[pivots[row]] = -m.at(row, free_col);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<QMat> inverse(const QMat& a) {
    if (!a.is_square()) throw PreconditionError("inverse needs a square matrix");
    const std::size_t n = a.rows();
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    const std::vector<std::size_t> pivots = rref_in_place(aug);
    // singular inputs push pivots into the augmented block
    if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
    QMat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    }
    return out;
}

// --- rational root machinery ---

namespace {

using QPoly = std::vector<Rat>; // ascending coefficients, no trailing zeros
using IPoly = std::vector<Int>;

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
    QPoly out;
    for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rat(static_cast<long>(i)));
    trim(out);
    return out;
}

// Polynomial division over Q; returns {quotient, remainder}.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        const Rat factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        q[shift] = factor;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        trim(a);
        if (a.size() < b.size()) break;
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

QPoly normalized_monic(QPoly p) {
    trim(p);
    if (p.empty()) return p;
    const Rat lead = p.back();
    for (Rat& c : p) c /= lead;
    return p;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = normalized_monic(std::move(r));
    }
    return normalized_monic(std::move(a));
}

// Scale by a positive rational into a primitive integer polynomial.
IPoly to_primitive(const QPoly& p) {
    Int lcm(1);
    for (const Rat& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    IPoly out;
    out.reserve(p.size());
    Int content(0);
    for (const Rat& c : p) {
        Rat scaled = c * Rat(lcm);
        scaled.canonicalize();
        out.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
    }
    if (sgn(content) != 0) {
        for (Int& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    }
    return out;
}

int eval_sign(const IPoly& p, const Int& x) {
    Int acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return sgn(acc);
}

// Sign variations of the Sturm chain at x, zeros skipped.
int variations(const std::vector<IPoly>& chain, const Int& x) {
    int count = 0;
    int prev = 0;
    for (const IPoly& p : chain) {
        const int s = eval_sign(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

std::vector<IPoly> sturm_chain(const QPoly& h) {
    std::vector<QPoly> chain;
    chain.push_back(h);
    QPoly d = derivative(h);
    while (!d.empty()) {
        chain.push_back(d);
        QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        for (Rat& c : r) c = -c;
        d = normalized_monic(std::move(r));
    }
    std::vector<IPoly> out;
    out.reserve(chain.size());
    for (const QPoly& p : chain) out.push_back(to_primitive(p));
    return out;
}

// Synthetic division of an integer polynomial by (x - r); {quotient, remainder}.
std::pair<IPoly, Int> divide_by_linear(const IPoly& g, const Int& r) {
    IPoly q(g.size() - 1);
    Int carry = g.back();
    for (std::size_t i = g.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = g[i] + r * carry;
    }
    return {std::move(q), std::move(carry)};
}

void isolate_integer_roots(const std::vector<IPoly>& chain, const IPoly& h, const Int& lo,
                           const Int& hi, std::vector<Int>& found) {
    // roots in the half-open interval (lo, hi]
    const int count = variations(chain, lo) - variations(chain, hi);
    if (count <= 0) return;
    if (hi - lo == 1) {
        if (eval_sign(h, hi) == 0) found.push_back(hi);
        return;
    }
    Int mid = (lo + hi) / 2;
    if (mid <= lo) mid = lo + 1;
    isolate_integer_roots(chain, h, lo, mid, found);
    isolate_integer_roots(chain, h, mid, hi, found);
}

// Integer roots with multiplicities of a monic integer polynomial.
std::vector<std::pair<Int, std::size_t>> integer_roots(const IPoly& g) {
    if (g.size() <= 1) return {};
    // squarefree part for the Sturm scan
    QPoly gq;
    gq.reserve(g.size());
    for (const Int& c : g) gq.emplace_back(c);
    const QPoly common = poly_gcd(gq, derivative(gq));
    const QPoly h = common.size() <= 1 ? gq : divmod(gq, common).first;
    const std::vector<IPoly> chain = sturm_chain(h);
    const IPoly hint = to_primitive(h);

    Int max_coeff(0);
    for (const Int& c : hint) {
        Int a = abs(c);
        if (a > max_coeff) max_coeff = a;
    }
    const Int bound = max_coeff + 2; // all real roots lie strictly inside (-bound, bound)

    std::vector<Int> candidates;
    isolate_integer_roots(chain, hint, -bound, bound, candidates);
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::pair<Int, std::size_t>> out;
    for (const Int& r : candidates) {
        IPoly cur = g;
        std::size_t mult = 0;
        while (cur.size() > 1) {
            auto [q, rem] = divide_by_linear(cur, r);
            if (sgn(rem) != 0) break;
            ++mult;
            cur = std::move(q);
        }
        if (mult > 0) out.emplace_back(r, mult);
    }
    return out;
}

} // namespace

std::vector<std::pair<Rat, std::size_t>> rational_roots(const std::vector<Rat>& monic) {
    if (monic.empty() || monic.back() != 1) {
        throw PreconditionError("rational_roots expects a monic polynomial");
    }
    const std::size_t n = monic.size() - 1;
    if (n == 0) return {};
    // x = y / L turns the monic rational polynomial into a monic integer one.
    Int scale(1);
    for (const Rat& c : monic) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
    }
    IPoly g(n + 1);
    Int power(1);
    for (std::size_t i = n + 1; i-- > 0;) {
        Rat scaled = monic[i] * Rat(power);
        scaled.canonicalize();
        g[i] = scaled.get_num();
        power *= scale;
    }
    std::vector<std::pair<Rat, std::size_t>> out;
    for (const auto& [root, mult] : integer_roots(g)) {
        Rat value(root, scale);
        value.canonicalize();
        out.emplace_back(std::move(value), mult);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

DiagVerdict diagonalizable_over_rationals(const Mat& m) {
    if (!m.is_square() || m.rows() == 0) {
        throw PreconditionError("diagonalizability test needs a nonempty square matrix");
    }
    const QMat a = rational_entries(m);
    const std::size_t n = a.rows();
    const std::vector<Rat> coeffs = characteristic_polynomial(a);

    DiagVerdict verdict;
    std::size_t total_algebraic = 0;
    bool defect = false;
    for (const auto& [value, algebraic] : rational_roots(coeffs)) {
        QMat shifted = a;
        for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= value;
        const std::size_t geometric = n - rank(shifted);
        verdict.eigenvalues.push_back(EigenvalueInfo{value, algebraic, geometric});
        total_algebraic += algebraic;
        if (geometric < algebraic) defect = true;
    }
    if (defect) {
        verdict.status = DiagStatus::not_diagonalizable;
    } else if (total_algebraic == n) {
        verdict.status = DiagStatus::diagonalizable_over_rationals;
    } else {
        verdict.status = DiagStatus::unknown;
    }
    return verdict;
}

} // namespace ultrawelch
