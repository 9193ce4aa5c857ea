#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ultrawelch/scalar.hpp"

namespace ultrawelch {

using Vec = std::vector<Scalar>;

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMatrix operator+(const DenseMatrix& other) const {
        DenseMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
        return out;
    }

    DenseMatrix operator-(const DenseMatrix& other) const {
        DenseMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
        return out;
    }

    DenseMatrix operator*(const DenseMatrix& other) const {
        DenseMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = at(i, k);
                for (std::size_t j = 0; j < other.cols_; ++j) {
                    out.at(i, j) += a * other.at(k, j);
                }
            }
        }
        return out;
    }

    DenseMatrix scaled(const T& factor) const {
        DenseMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
        return out;
    }

    bool operator==(const DenseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Mat = DenseMatrix<Scalar>;
using QMat = DenseMatrix<Rat>;

template <class T>
T trace(const DenseMatrix<T>& m) {
    T out{};
    for (std::size_t i = 0; i < m.rows(); ++i) out += m.at(i, i);
    return out;
}

// trace(A*B) without forming the product.
template <class T>
T trace_of_product(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    T out{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out += a.at(i, j) * b.at(j, i);
        }
    }
    return out;
}

/*
 * A configuration of n vectors tau_j in K^d together with n functionals
 * f_j, each stored as its coefficient vector u_j with f_j(x) = sum u_j[i]x[i].
 */
struct FrameConfig {
    Backend backend;
    std::size_t d = 0;
    std::size_t n = 0;
    std::vector<Vec> vectors;     // n entries, each of length d
    std::vector<Vec> functionals; // n entries, each of length d

    void validate() const; // throws PreconditionError / BackendMismatchError
};

Scalar dot(const Vec& coeffs, const Vec& x);

// n x n pairing matrix G[j][k] = f_j(tau_k).
Mat gram(const FrameConfig& config);

// d x d operator sum_j tau_j u_j^T, i.e. x -> sum_j f_j(x) tau_j.
Mat frame_operator(const FrameConfig& config);

struct TightnessCertificate {
    Scalar b;
    unsigned sym_order = 1; // 1 = the base space, m > 1 = Sym^m
};

// Some b with M = b*I, entrywise; nullopt otherwise.
std::optional<TightnessCertificate> is_scalar_identity(const Mat& m);

// max_i |v[i]| as a valuation (minimum of entry valuations).
AbsValue sup_norm(const Vec& v, const Backend& backend);

enum class DiagStatus {
    diagonalizable_over_rationals,
    not_diagonalizable,
    unknown,
};

struct EigenvalueInfo {
    Rat value;
    std::size_t algebraic = 0;
    std::size_t geometric = 0;
};

struct DiagVerdict {
    DiagStatus status = DiagStatus::unknown;
    std::vector<EigenvalueInfo> eigenvalues; // the rational eigenvalues found
};

// Extracts constant rational entries; throws NonRationalEntryError otherwise.
QMat rational_entries(const Mat& m);

/*
 * Exact three-valued diagonalizability test over Q: characteristic polynomial
 * by Faddeev-LeVerrier, rational roots by integer root isolation on the
 * scaled monic polynomial, geometric multiplicities by exact rank.  Matrices
 * with irrational spectrum and no witnessed defect come back `unknown`.
 */
DiagVerdict diagonalizable_over_rationals(const Mat& m);

// --- exact rational dense kit ---

// Coefficients of det(xI - A), ascending powers; coeffs[n] = 1.
std::vector<Rat> characteristic_polynomial(const QMat& a);

std::size_t rank(QMat a); // works on a copy

// Basis of the kernel {x : A x = 0}, one vector per free column.
std::vector<std::vector<Rat>> nullspace_basis(const QMat& a);

std::optional<QMat> inverse(const QMat& a);

// Rational roots of a monic polynomial over Q with multiplicities,
// sorted by value.
std::vector<std::pair<Rat, std::size_t>> rational_roots(const std::vector<Rat>& monic);

} // namespace ultrawelch
