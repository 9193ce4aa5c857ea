#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultrawelch/welch.hpp"

namespace ultrawelch {

struct SearchConstraints {
    bool unit_norms = true;
    bool tight = false;
    // |f_j(tau_k) f_k(tau_j)| = p^(-v) for all j != k, when set.
    std::optional<long long> equiangular_valuation;
};

/*
 * Finite p-adic candidate lattice: every vector and functional entry is drawn
 * from {0, ..., p^k - 1} scaled by p^(-scale_j).  The questions quantify over
 * all of Q_p^d; results over this lattice are lattice-relative evidence only.
 */
struct SearchSpace {
    explicit SearchSpace(Backend b) : backend(std::move(b)) {}

    Backend backend;
    unsigned k = 1;
    unsigned scale_j = 0;
    std::size_t d = 1;
    std::size_t n = 1;
    Rat a = Rat(1); // required diagonal value f_j(tau_j)
    SearchConstraints constraints;
    bool randomized = false; // seeded full-period walk instead of lex order

    void validate() const;
    unsigned long entries_per_slot() const; // p^k
    Int total_configs() const;              // (p^k)^(2 d n)
};

enum class SearchStatus { found, exhausted_not_found, budget };

const char* to_string(SearchStatus s);

struct SearchCertificates {
    Scalar b;                                          // frame operator = b I
    std::vector<std::vector<AbsValue>> gram_valuations; // n x n
};

struct SearchResult {
    SearchStatus status = SearchStatus::exhausted_not_found;
    std::optional<FrameConfig> witness;
    std::optional<SearchCertificates> certificates;
    Int explored{0};
    std::uint64_t seed = 0;
    std::string order = "lex"; // "lex" or "seeded-walk"
};

/*
 * Deterministic lexicographic stream over the whole lattice, restartable from
 * any offset.  Slot order: vector entries row-major first, then functional
 * entries; the first slot is the most significant digit.
 */
class LatticeStream {
public:
    explicit LatticeStream(const SearchSpace& space);

    const Int& total() const { return total_; }
    const Int& position() const { return pos_; }
    void seek(const Int& offset);
    std::optional<FrameConfig> next();
    FrameConfig config_at(const Int& index) const;

private:
    FrameConfig materialize(const std::vector<unsigned long>& digits) const;

    SearchSpace space_;
    unsigned long base_;
    std::vector<Rat> entry_values_;
    std::vector<unsigned long> digits_;
    Int total_;
    Int pos_;
};

// First config (in scan order) meeting the diagonal, tightness, optional
// norm/equiangularity constraints, and the order-m equality
// lhs = rhs of the bound.  The tight constraint flag is required.
SearchResult search_equality(const SearchSpace& space, unsigned m, std::uint64_t seed = 0,
                             std::optional<std::uint64_t> budget = std::nullopt,
                             unsigned workers = 1);

// n = d^2 system with f_j(tau_j) = 1, frame operator = bI, all pairwise
// |f_j(tau_k) f_k(tau_j)| = |d|, unit sup norms.  Exhaustive over the lattice
// by incremental extension with pruning.
SearchResult search_zauner(unsigned long prime, std::size_t d, unsigned k,
                           std::uint64_t seed = 0,
                           std::optional<std::uint64_t> budget = std::nullopt);

struct EquiangularQuery {
    unsigned long prime = 2;
    std::size_t d = 1;
    Rat a = Rat(1);
    // Common valuation of all pairwise cross products; nullopt = any shared
    // finite valuation.
    std::optional<long long> gamma_valuation;
    std::size_t n_max = 1;
    unsigned k = 1;
    unsigned scale_j = 0;
};

struct EquiangularResult {
    std::size_t best_n = 0;
    std::optional<FrameConfig> witness;
    Int explored{0};
    bool complete = true; // false when the budget stopped the scan
    std::uint64_t seed = 0;
};

// Largest n <= n_max admitting a witness over the lattice, by pruned
// incremental extension.  Always scans the full (pruned) tree so that the
// explored count is independent of the worker partition.
EquiangularResult search_equiangular(const EquiangularQuery& query,
                                     std::optional<std::uint64_t> budget = std::nullopt,
                                     unsigned workers = 1);

// Recompute every constraint from scratch; used on every Found witness.
bool verify_equality_witness(const FrameConfig& config, const SearchSpace& space, unsigned m);
bool verify_zauner_witness(const FrameConfig& config, unsigned long prime, std::size_t d);
bool verify_equiangular_witness(const FrameConfig& config, const EquiangularQuery& query,
                                std::size_t n);

} // namespace ultrawelch
