#include "ultrawelch/welch.hpp"

namespace ultrawelch {

const char* to_string(Variant v) {
    return v == Variant::non_arch ? "nonarch" : "padic";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds_strict: return "HoldsStrict";
        case Verdict::holds_with_equality: return "HoldsWithEquality";
        case Verdict::violated: return "Violated";
        case Verdict::inapplicable: return "Inapplicable";
    }
    return "?";
}

BoundSides compute_bound_sides(const FrameConfig& config, unsigned m) {
    if (m == 0) throw PreconditionError("bound order m must be >= 1");
    const Mat g = gram(config);
    const Backend& backend = config.backend;

    BoundSides sides;
    Scalar diag_sum_m;  // sum_l f_l(tau_l)^m
    Scalar diag_sum_2m; // sum_l f_l(tau_l)^{2m}
    sides.unital = true;
    for (std::size_t l = 0; l < config.n; ++l) {
        const Scalar& t = g.at(l, l);
        if (!t.is_one()) sides.unital = false;
        const Scalar tm = t.pow(m);
        diag_sum_m += tm;
        diag_sum_2m += tm * tm;
    }
    sides.diag_term = valuation(diag_sum_2m, backend);

    sides.cross_term = AbsValue::zero();
    for (std::size_t j = 0; j < config.n; ++j) {
        for (std::size_t k = j + 1; k < config.n; ++k) {
            const AbsValue v = valuation(g.at(j, k) * g.at(k, j), backend).pow(m);
            if (abs_less(sides.cross_term, v)) {
                sides.cross_term = v;
                sides.argmax = std::make_pair(j, k);
            }
        }
    }

    sides.lhs = abs_max(sides.diag_term, sides.cross_term);
    const AbsValue denom =
        backend.is_padic()
            ? AbsValue::finite(binomial_valuation(config.d + m - 1, m, backend.prime()))
            : AbsValue::finite(0);
    sides.rhs = valuation(diag_sum_m, backend).squared().divided_by(denom);
    return sides;
}

namespace {

// First entry witnessing that M is not b*I: an off-diagonal nonzero or a
// diagonal entry differing from M(0,0).
std::pair<std::size_t, std::size_t> scalar_identity_defect(const Mat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j ? !(m.at(i, j) == m.at(0, 0)) : !m.at(i, j).is_zero()) return {i, j};
        }
    }
    return {0, 0};
}

HypothesisReport evaluate_hypothesis(const FrameConfig& config, unsigned m, Variant variant) {
    HypothesisReport out;
    const SymOperator op = sym_frame_operator(config, m);
    if (variant == Variant::padic) {
        if (auto cert = is_scalar_identity(op.matrix)) {
            out.satisfied = true;
            out.detail = "scalar-identity";
            out.b = cert->b;
        } else {
            const auto [i, j] = scalar_identity_defect(op.matrix);
            out.satisfied = false;
            out.detail = "not-scalar-identity at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
        }
        return out;
    }
    try {
        const DiagVerdict dv = diagonalizable_over_rationals(op.matrix);
        switch (dv.status) {
            case DiagStatus::diagonalizable_over_rationals:
                out.satisfied = true;
                out.detail = "diagonalizable-over-rationals";
                break;
            case DiagStatus::not_diagonalizable:
                out.satisfied = false;
                out.detail = "not-diagonalizable";
                break;
            case DiagStatus::unknown:
                out.satisfied = false;
                out.detail = "diagonalizability-unknown";
                break;
        }
    } catch (const NonRationalEntryError&) {
        out.satisfied = false;
        out.detail = "diagonalizability-unknown-non-rational-entries";
    }
    return out;
}

Verdict verdict_from(const BoundSides& sides, const HypothesisReport& hypothesis) {
    const bool holds = abs_less_equal(sides.rhs, sides.lhs);
    if (!holds) return Verdict::violated;
    if (!hypothesis.satisfied) return Verdict::inapplicable;
    return sides.lhs == sides.rhs ? Verdict::holds_with_equality : Verdict::holds_strict;
}

void require_variant_compatible(const FrameConfig& config, Variant variant) {
    if (variant == Variant::non_arch && config.backend.is_padic()) {
        throw BackendMismatchError(
            "the non-Archimedean bound needs the field condition; p-adic backends violate it");
    }
    if (variant == Variant::padic && !config.backend.is_padic()) {
        throw BackendMismatchError("the p-adic bound variant needs a p-adic backend");
    }
}

} // namespace

BoundReport check_bound(const FrameConfig& config, unsigned m, Variant variant) {
    config.validate();
    require_variant_compatible(config, variant);
    if (config.n < 2) throw PreconditionError("the cross term needs n >= 2");
    BoundReport report;
    report.variant = variant;
    report.m = m;
    report.backend = config.backend;
    report.d = config.d;
    report.n = config.n;
    report.sides = compute_bound_sides(config, m);
    report.hypothesis = evaluate_hypothesis(config, m, variant);
    report.verdict = verdict_from(report.sides, report.hypothesis);
    return report;
}

BoundReport check_unital(const FrameConfig& config, unsigned m, Variant variant) {
    config.validate();
    require_variant_compatible(config, variant);
    const Mat g = gram(config);
    for (std::size_t j = 0; j < config.n; ++j) {
        if (!g.at(j, j).is_one()) {
            throw PreconditionError("check_unital requires f_j(tau_j) = 1; offending index j = " +
                                    std::to_string(j));
        }
    }
    BoundReport report = check_bound(config, m, variant);
    // In the unital form the diagonal term is |n| and the right-hand side
    // |n|^2 / |C(d+m-1, m)|.  Both coincide with the general form since
    // sum_l f_l(tau_l)^anything = n here; recompute them from n regardless.
    const AbsValue abs_n = valuation(Scalar(static_cast<long>(config.n)), config.backend);
    const AbsValue denom =
        config.backend.is_padic()
            ? AbsValue::finite(binomial_valuation(config.d + m - 1, m, config.backend.prime()))
            : AbsValue::finite(0);
    report.sides.diag_term = abs_n;
    report.sides.lhs = abs_max(report.sides.diag_term, report.sides.cross_term);
    report.sides.rhs = abs_n.squared().divided_by(denom);
    report.verdict = verdict_from(report.sides, report.hypothesis);
    return report;
}

FrameConfig tight_2_3_config(const Backend& backend) {
    const Rat half(1, 2);
    FrameConfig config{backend, 2, 3, {}, {}};
    config.vectors = {
        {Scalar(1), Scalar(0)},
        {Scalar(0), Scalar(1)},
        {Scalar(1), Scalar(1)},
    };
    config.functionals = {
        {Scalar(1), Scalar(-half)},
        {Scalar(-half), Scalar(1)},
        {Scalar(half), Scalar(half)},
    };
    return config;
}

FrameConfig standard_basis_config(const Backend& backend, std::size_t d) {
    FrameConfig config{backend, d, d, {}, {}};
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, Scalar(0));
        e[j] = Scalar(1);
        config.vectors.push_back(e);
        config.functionals.push_back(e);
    }
    return config;
}

std::vector<std::pair<std::string, BoundReport>> demo_suite() {
    std::vector<std::pair<std::string, BoundReport>> out;

    out.emplace_back("standard-basis-equality",
                     check_bound(standard_basis_config(Backend::padic(3), 2), 1, Variant::padic));
    out.emplace_back("tight-2-3-p5",
                     check_bound(tight_2_3_config(Backend::padic(5)), 1, Variant::padic));
    out.emplace_back("tight-2-3-p2",
                     check_bound(tight_2_3_config(Backend::padic(2)), 1, Variant::padic));
    out.emplace_back("hypothesis-violation-p3-m2",
                     check_bound(standard_basis_config(Backend::padic(3), 2), 2, Variant::padic));

    {
        FrameConfig pair{Backend::padic(3), 1, 2, {}, {}};
        pair.vectors = {{Scalar(1)}, {Scalar(1)}};
        pair.functionals = {{Scalar(1)}, {Scalar(1)}};
        out.emplace_back("pair-d1-p3", check_bound(pair, 1, Variant::padic));
    }
    {
        // Laurent pair: tau = (1), (t) with functionals x -> x and x -> t^{-1} x.
        FrameConfig pair{Backend::laurent(), 1, 2, {}, {}};
        pair.vectors = {{Scalar(1)}, {Scalar::t_power(1)}};
        pair.functionals = {{Scalar(1)}, {Scalar::t_power(-1)}};
        out.emplace_back("laurent-pair-d1", check_bound(pair, 1, Variant::non_arch));
    }
    return out;
}

} // namespace ultrawelch
