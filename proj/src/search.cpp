#include "ultrawelch/search.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <utility>

namespace ultrawelch {

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "Found";
        case SearchStatus::exhausted_not_found: return "ExhaustedNotFound";
        case SearchStatus::budget: return "Budget";
    }
    return "?";
}

void SearchSpace::validate() const {
    if (!backend.is_padic()) {
        throw BackendMismatchError("searches run on p-adic backends only");
    }
    if (k == 0) throw PreconditionError("lattice precision k must be >= 1");
    if (scale_j > k) throw PreconditionError("lattice scale exponent must satisfy j <= k");
    if (d == 0 || n == 0) throw PreconditionError("search space needs d >= 1 and n >= 1");
    entries_per_slot();
}

unsigned long SearchSpace::entries_per_slot() const {
    const unsigned long p = backend.prime();
    unsigned long out = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (out > 1'000'000UL / p) {
            throw ResourceError("p^k exceeds the lattice enumeration guard");
        }
        out *= p;
    }
    return out;
}

Int SearchSpace::total_configs() const {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), entries_per_slot(), static_cast<unsigned long>(2 * d * n));
    return out;
}

LatticeStream::LatticeStream(const SearchSpace& space) : space_(space) {
    space_.validate();
    base_ = space_.entries_per_slot();
    Int scale_pow;
    mpz_ui_pow_ui(scale_pow.get_mpz_t(), space_.backend.prime(), space_.scale_j);
    entry_values_.reserve(base_);
    for (unsigned long s = 0; s < base_; ++s) {
        Rat value(Int(s), scale_pow);
        value.canonicalize();
        entry_values_.push_back(std::move(value));
    }
    digits_.assign(2 * space_.d * space_.n, 0);
    total_ = space_.total_configs();
    pos_ = 0;
}

void LatticeStream::seek(const Int& offset) {
    if (offset < 0 || offset > total_) throw PreconditionError("lattice offset out of range");
    pos_ = offset;
    Int rest = offset;
    for (std::size_t i = digits_.size(); i-- > 0;) {
        digits_[i] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base_);
    }
}

FrameConfig LatticeStream::materialize(const std::vector<unsigned long>& digits) const {
    FrameConfig config{space_.backend, space_.d, space_.n, {}, {}};
    std::size_t slot = 0;
    for (std::size_t j = 0; j < space_.n; ++j) {
        Vec v;
        v.reserve(space_.d);
        for (std::size_t i = 0; i < space_.d; ++i) v.emplace_back(entry_values_[digits[slot++]]);
        config.vectors.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < space_.n; ++j) {
        Vec u;
        u.reserve(space_.d);
        for (std::size_t i = 0; i < space_.d; ++i) u.emplace_back(entry_values_[digits[slot++]]);
        config.functionals.push_back(std::move(u));
    }
    return config;
}

std::optional<FrameConfig> LatticeStream::next() {
    if (pos_ == total_) return std::nullopt;
    FrameConfig out = materialize(digits_);
    ++pos_;
    for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < base_) break;
        digits_[i] = 0;
    }
    return out;
}

FrameConfig LatticeStream::config_at(const Int& index) const {
    if (index < 0 || index >= total_) throw PreconditionError("lattice index out of range");
    std::vector<unsigned long> digits(digits_.size());
    Int rest = index;
    for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base_);
    }
    return materialize(digits);
}

namespace {

bool diagonal_equals(const Mat& g, const Rat& a) {
    const Scalar target{a};
    for (std::size_t j = 0; j < g.rows(); ++j) {
        if (!(g.at(j, j) == target)) return false;
    }
    return true;
}

bool unit_norms_hold(const FrameConfig& config) {
    const AbsValue one = AbsValue::finite(0);
    for (std::size_t j = 0; j < config.n; ++j) {
        if (!(sup_norm(config.vectors[j], config.backend) == one)) return false;
        if (!(sup_norm(config.functionals[j], config.backend) == one)) return false;
    }
    return true;
}

bool pairwise_cross_equals(const Mat& g, const Backend& backend, long long required) {
    const AbsValue target = AbsValue::finite(required);
    for (std::size_t j = 0; j < g.rows(); ++j) {
        for (std::size_t k = j + 1; k < g.rows(); ++k) {
            if (!(valuation(g.at(j, k) * g.at(k, j), backend) == target)) return false;
        }
    }
    return true;
}

// All pairwise cross products share one finite valuation.
bool pairwise_cross_uniform(const Mat& g, const Backend& backend) {
    std::optional<AbsValue> common;
    for (std::size_t j = 0; j < g.rows(); ++j) {
        for (std::size_t k = j + 1; k < g.rows(); ++k) {
            const AbsValue v = valuation(g.at(j, k) * g.at(k, j), backend);
            if (v.is_abs_zero()) return false;
            if (!common) {
                common = v;
            } else if (!(*common == v)) {
                return false;
            }
        }
    }
    return true;
}

struct EqualityVerdict {
    bool ok = false;
    std::optional<Scalar> b;
};

EqualityVerdict equality_conditions(const FrameConfig& config, const SearchSpace& space,
                                    unsigned m) {
    EqualityVerdict out;
    const Mat g = gram(config);
    if (!diagonal_equals(g, space.a)) return out;
    if (space.constraints.unit_norms && !unit_norms_hold(config)) return out;
    if (space.constraints.tight) {
        auto cert = is_scalar_identity(frame_operator(config));
        if (!cert) return out;
        out.b = cert->b;
    }
    if (space.constraints.equiangular_valuation &&
        !pairwise_cross_equals(g, config.backend, *space.constraints.equiangular_valuation)) {
        return out;
    }
    const BoundSides sides = compute_bound_sides(config, m);
    if (!(sides.lhs == sides.rhs)) return out;
    out.ok = true;
    return out;
}

SearchCertificates make_certificates(const FrameConfig& config) {
    SearchCertificates out;
    if (auto cert = is_scalar_identity(frame_operator(config))) out.b = cert->b;
    const Mat g = gram(config);
    out.gram_valuations.assign(config.n, std::vector<AbsValue>(config.n, AbsValue::zero()));
    for (std::size_t j = 0; j < config.n; ++j) {
        for (std::size_t k = 0; k < config.n; ++k) {
            out.gram_valuations[j][k] = valuation(g.at(j, k), config.backend);
        }
    }
    return out;
}

// Full-period walk over [0, total): pos -> a*pos + c mod total, total a prime
// power and a coprime to p, so the map is a bijection.
struct AffineWalk {
    Int a;
    Int c;
    Int total;

    Int operator()(const Int& pos) const { return (a * pos + c) % total; }

    static AffineWalk make(const Int& total, unsigned long p, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        Int a = Int(static_cast<unsigned long>(rng())) % total;
        if (sgn(a) == 0) a = 1;
        while (mpz_divisible_ui_p(a.get_mpz_t(), p) != 0) {
            a += 1;
            if (a == total) a = 1;
        }
        Int c = Int(static_cast<unsigned long>(rng())) % total;
        return AffineWalk{std::move(a), std::move(c), total};
    }
};

struct RangeScan {
    std::optional<Int> found_pos;
    std::optional<FrameConfig> witness;
    Int examined{0};
    bool budget_hit = false;
};

RangeScan scan_equality_range(const SearchSpace& space, unsigned m, const Int& lo, const Int& hi,
                              const std::optional<Int>& budget,
                              const std::optional<AffineWalk>& walk) {
    RangeScan out;
    LatticeStream stream(space);
    if (!walk) stream.seek(lo);
    for (Int pos = lo; pos < hi; ++pos) {
        if (budget && out.examined >= *budget) {
            out.budget_hit = true;
            return out;
        }
        FrameConfig config = walk ? stream.config_at((*walk)(pos)) : *stream.next();
        ++out.examined;
        if (equality_conditions(config, space, m).ok) {
            out.found_pos = pos;
            out.witness = std::move(config);
            return out;
        }
    }
    return out;
}

template <class Fn>
void run_partitioned(unsigned workers, Fn&& body) {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                body(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

SearchResult search_equality(const SearchSpace& space, unsigned m, std::uint64_t seed,
                             std::optional<std::uint64_t> budget, unsigned workers) {
    space.validate();
    if (m == 0) throw PreconditionError("bound order m must be >= 1");
    if (!space.constraints.tight) {
        throw PreconditionError("search_equality requires the tight constraint");
    }
    if (workers == 0) throw PreconditionError("workers must be >= 1");

    const Int total = space.total_configs();
    std::optional<AffineWalk> walk;
    if (space.randomized) walk = AffineWalk::make(total, space.backend.prime(), seed);

    SearchResult result;
    result.seed = seed;
    result.order = walk ? "seeded-walk" : "lex";

    std::vector<RangeScan> scans(workers);
    if (workers == 1) {
        std::optional<Int> cap;
        if (budget) cap = Int(static_cast<unsigned long>(*budget));
        scans[0] = scan_equality_range(space, m, Int(0), total, cap, walk);
    } else {
        run_partitioned(workers, [&](unsigned w) {
            const Int lo = total * w / workers;
            const Int hi = total * (w + 1) / workers;
            std::optional<Int> cap;
            if (budget) {
                cap = Int(static_cast<unsigned long>(*budget / workers +
                                                     (w < *budget % workers ? 1 : 0)));
            }
            scans[w] = scan_equality_range(space, m, lo, hi, cap, walk);
        });
    }

    const RangeScan* best = nullptr;
    for (const RangeScan& scan : scans) {
        result.explored += scan.examined;
        if (scan.found_pos && (!best || *scan.found_pos < *best->found_pos)) best = &scan;
    }
    if (best) {
        if (!verify_equality_witness(*best->witness, space, m)) {
            throw Error("internal: equality witness failed re-verification");
        }
        result.status = SearchStatus::found;
        result.witness = best->witness;
        result.certificates = make_certificates(*best->witness);
        return result;
    }
    for (const RangeScan& scan : scans) {
        if (scan.budget_hit) {
            result.status = SearchStatus::budget;
            return result;
        }
    }
    result.status = SearchStatus::exhausted_not_found;
    return result;
}

// --- incremental multiset search over admissible (tau, f) pairs ---

namespace {

struct PairAtom {
    Vec tau;
    Vec u;
    QMat outer; // d x d rational outer product tau u^T
};

AbsValue atom_cross(const PairAtom& x, const PairAtom& y, const Backend& backend) {
    return valuation(dot(x.u, y.tau) * dot(y.u, x.tau), backend);
}

// All single pairs over the lattice with f(tau) = a and unit sup norms,
// in deterministic lattice order.
std::vector<PairAtom> admissible_atoms(const SearchSpace& space) {
    SearchSpace single = space;
    single.n = 1;
    LatticeStream stream(single);
    std::vector<PairAtom> atoms;
    const Scalar target{space.a};
    const AbsValue one = AbsValue::finite(0);
    while (auto config = stream.next()) {
        const Vec& tau = config->vectors[0];
        const Vec& u = config->functionals[0];
        if (!(dot(u, tau) == target)) continue;
        if (space.constraints.unit_norms) {
            if (!(sup_norm(tau, space.backend) == one)) continue;
            if (!(sup_norm(u, space.backend) == one)) continue;
        }
        PairAtom atom;
        atom.tau = tau;
        atom.u = u;
        atom.outer = QMat(space.d, space.d);
        for (std::size_t r = 0; r < space.d; ++r) {
            for (std::size_t c = 0; c < space.d; ++c) {
                atom.outer.at(r, c) = tau[r].constant_value() * u[c].constant_value();
            }
        }
        atoms.push_back(std::move(atom));
    }
    return atoms;
}

bool is_rational_scalar_identity(const QMat& m) {
    const Rat& b = m.at(0, 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j ? m.at(i, j) != b : sgn(m.at(i, j)) != 0) return false;
        }
    }
    return true;
}

FrameConfig assemble_config(const SearchSpace& space, const std::vector<PairAtom>& atoms,
                            const std::vector<std::size_t>& chosen) {
    FrameConfig config{space.backend, space.d, chosen.size(), {}, {}};
    for (std::size_t ord : chosen) {
        config.vectors.push_back(atoms[ord].tau);
        config.functionals.push_back(atoms[ord].u);
    }
    return config;
}

struct ZaunerScan {
    std::optional<std::vector<std::size_t>> witness;
    Int explored{0};
    bool budget_hit = false;
};

// DFS over non-decreasing atom ordinal sequences; stops at the first
// full-depth tight witness.
class ZaunerSearcher {
public:
    ZaunerSearcher(const std::vector<PairAtom>& atoms, const Backend& backend,
                   std::size_t target_depth, long long cross_valuation,
                   const std::optional<Int>& budget)
        : atoms_(atoms),
          backend_(backend),
          target_depth_(target_depth),
          cross_(AbsValue::finite(cross_valuation)),
          budget_(budget) {}

    ZaunerScan run(std::size_t root_lo, std::size_t root_hi, std::size_t d) {
        scan_ = ZaunerScan{};
        chosen_.clear();
        sums_.assign(1, QMat(d, d));
        for (std::size_t root = root_lo; root < root_hi && !done(); ++root) {
            descend(root);
        }
        return std::move(scan_);
    }

private:
    bool done() const { return scan_.witness.has_value() || scan_.budget_hit; }

    void descend(std::size_t ord) {
        if (budget_ && scan_.explored >= *budget_) {
            scan_.budget_hit = true;
            return;
        }
        ++scan_.explored;
        for (std::size_t prev : chosen_) {
            if (!(atom_cross(atoms_[prev], atoms_[ord], backend_) == cross_)) return;
        }
        chosen_.push_back(ord);
        sums_.push_back(sums_.back() + atoms_[ord].outer);
        if (chosen_.size() == target_depth_) {
            if (is_rational_scalar_identity(sums_.back())) scan_.witness = chosen_;
        } else {
            for (std::size_t next = ord; next < atoms_.size() && !done(); ++next) {
                descend(next);
            }
        }
        chosen_.pop_back();
        sums_.pop_back();
    }

    const std::vector<PairAtom>& atoms_;
    Backend backend_;
    std::size_t target_depth_;
    AbsValue cross_;
    std::optional<Int> budget_;
    std::vector<std::size_t> chosen_;
    std::vector<QMat> sums_;
    ZaunerScan scan_;
};

struct EquiScan {
    std::size_t best_depth = 0;
    std::vector<std::size_t> best_witness;
    Int explored{0};
    bool budget_hit = false;
};

// Full pruned DFS (no early stop) so explored counts are partition-invariant.
class EquiangularSearcher {
public:
    EquiangularSearcher(const std::vector<PairAtom>& atoms, const Backend& backend,
                        std::size_t n_max, std::optional<long long> gamma,
                        const std::optional<Int>& budget)
        : atoms_(atoms), backend_(backend), n_max_(n_max), gamma_(gamma), budget_(budget) {}

    EquiScan run(std::size_t root_lo, std::size_t root_hi) {
        scan_ = EquiScan{};
        chosen_.clear();
        for (std::size_t root = root_lo; root < root_hi && !scan_.budget_hit; ++root) {
            descend(root, std::nullopt);
        }
        return std::move(scan_);
    }

private:
    void descend(std::size_t ord, std::optional<AbsValue> common) {
        if (budget_ && scan_.explored >= *budget_) {
            scan_.budget_hit = true;
            return;
        }
        ++scan_.explored;
        for (std::size_t prev : chosen_) {
            const AbsValue v = atom_cross(atoms_[prev], atoms_[ord], backend_);
            if (v.is_abs_zero()) return;
            if (gamma_) {
                if (!(v == AbsValue::finite(*gamma_))) return;
            } else if (common) {
                if (!(v == *common)) return;
            } else {
                common = v;
            }
        }
        chosen_.push_back(ord);
        if (chosen_.size() > scan_.best_depth) {
            scan_.best_depth = chosen_.size();
            scan_.best_witness = chosen_;
        }
        if (chosen_.size() < n_max_) {
            for (std::size_t next = ord; next < atoms_.size() && !scan_.budget_hit; ++next) {
                descend(next, common);
            }
        }
        chosen_.pop_back();
    }

    const std::vector<PairAtom>& atoms_;
    Backend backend_;
    std::size_t n_max_;
    std::optional<long long> gamma_;
    std::optional<Int> budget_;
    std::vector<std::size_t> chosen_;
    EquiScan scan_;
};

} // namespace

SearchResult search_zauner(unsigned long prime, std::size_t d, unsigned k, std::uint64_t seed,
                           std::optional<std::uint64_t> budget) {
    if (d == 0) throw PreconditionError("zauner search needs d >= 1");
    SearchSpace space{Backend::padic(prime)};
    space.k = k;
    space.d = d;
    space.n = d * d;
    space.a = Rat(1);
    space.constraints.unit_norms = true;
    space.constraints.tight = true;
    space.validate();

    const long long cross = rational_padic_valuation(Rat(static_cast<long>(d)), prime);
    space.constraints.equiangular_valuation = cross;

    const std::vector<PairAtom> atoms = admissible_atoms(space);
    std::optional<Int> cap;
    if (budget) cap = Int(static_cast<unsigned long>(*budget));
    ZaunerSearcher searcher(atoms, space.backend, space.n, cross, cap);
    ZaunerScan scan = searcher.run(0, atoms.size(), d);

    SearchResult result;
    result.seed = seed;
    result.explored = scan.explored;
    if (scan.witness) {
        FrameConfig config = assemble_config(space, atoms, *scan.witness);
        if (!verify_zauner_witness(config, prime, d)) {
            throw Error("internal: zauner witness failed re-verification");
        }
        result.status = SearchStatus::found;
        result.certificates = make_certificates(config);
        result.witness = std::move(config);
    } else if (scan.budget_hit) {
        result.status = SearchStatus::budget;
    } else {
        result.status = SearchStatus::exhausted_not_found;
    }
    return result;
}

EquiangularResult search_equiangular(const EquiangularQuery& query,
                                     std::optional<std::uint64_t> budget, unsigned workers) {
    if (query.n_max == 0) throw PreconditionError("equiangular search needs n_max >= 1");
    if (workers == 0) throw PreconditionError("workers must be >= 1");
    SearchSpace space{Backend::padic(query.prime)};
    space.k = query.k;
    space.scale_j = query.scale_j;
    space.d = query.d;
    space.n = query.n_max;
    space.a = query.a;
    space.constraints.unit_norms = true;
    space.validate();

    const std::vector<PairAtom> atoms = admissible_atoms(space);

    std::vector<EquiScan> scans;
    if (workers == 1) {
        std::optional<Int> cap;
        if (budget) cap = Int(static_cast<unsigned long>(*budget));
        EquiangularSearcher searcher(atoms, space.backend, query.n_max, query.gamma_valuation,
                                     cap);
        scans.push_back(searcher.run(0, atoms.size()));
    } else {
        scans.assign(workers, EquiScan{});
        run_partitioned(workers, [&](unsigned w) {
            const std::size_t lo = atoms.size() * w / workers;
            const std::size_t hi = atoms.size() * (w + 1) / workers;
            std::optional<Int> cap;
            if (budget) {
                cap = Int(static_cast<unsigned long>(*budget / workers +
                                                     (w < *budget % workers ? 1 : 0)));
            }
            EquiangularSearcher searcher(atoms, space.backend, query.n_max,
                                         query.gamma_valuation, cap);
            scans[w] = searcher.run(lo, hi);
        });
    }

    EquiangularResult result;
    const EquiScan* best = nullptr;
    for (const EquiScan& scan : scans) {
        result.explored += scan.explored;
        if (scan.budget_hit) result.complete = false;
        if (scan.best_depth > 0 && (!best || scan.best_depth > best->best_depth)) best = &scan;
    }
    if (best) {
        result.best_n = best->best_depth;
        FrameConfig config = assemble_config(space, atoms, best->best_witness);
        if (!verify_equiangular_witness(config, query, result.best_n)) {
            throw Error("internal: equiangular witness failed re-verification");
        }
        result.witness = std::move(config);
    }
    return result;
}

bool verify_equality_witness(const FrameConfig& config, const SearchSpace& space, unsigned m) {
    config.validate();
    if (config.d != space.d || config.n != space.n || !(config.backend == space.backend)) {
        return false;
    }
    return equality_conditions(config, space, m).ok;
}

bool verify_zauner_witness(const FrameConfig& config, unsigned long prime, std::size_t d) {
    config.validate();
    if (config.d != d || config.n != d * d) return false;
    if (!(config.backend == Backend::padic(prime))) return false;
    const Mat g = gram(config);
    if (!diagonal_equals(g, Rat(1))) return false;
    if (!unit_norms_hold(config)) return false;
    if (!is_scalar_identity(frame_operator(config))) return false;
    const long long cross = rational_padic_valuation(Rat(static_cast<long>(d)), prime);
    return pairwise_cross_equals(g, config.backend, cross);
}

bool verify_equiangular_witness(const FrameConfig& config, const EquiangularQuery& query,
                                std::size_t n) {
    config.validate();
    if (config.d != query.d || config.n != n) return false;
    if (!(config.backend == Backend::padic(query.prime))) return false;
    const Mat g = gram(config);
    if (!diagonal_equals(g, query.a)) return false;
    if (!unit_norms_hold(config)) return false;
    if (query.gamma_valuation) {
        return pairwise_cross_equals(g, config.backend, *query.gamma_valuation);
    }
    return n < 2 || pairwise_cross_uniform(g, config.backend);
}

} // namespace ultrawelch
