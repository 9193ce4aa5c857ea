#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "ultrawelch/json_io.hpp"
#include "ultrawelch/search.hpp"

using namespace ultrawelch;

namespace {

FrameConfig d1_pair(const Backend& backend, long second_functional = 1) {
    FrameConfig config{backend, 1, 2, {}, {}};
    config.vectors = {{Scalar(1)}, {Scalar(1)}};
    config.functionals = {{Scalar(1)}, {Scalar(second_functional)}};
    return config;
}

} // namespace

TEST_CASE("tight configuration at p = 5: equality at order one") {
    const BoundReport report = check_bound(tight_2_3_config(Backend::padic(5)), 1, Variant::padic);
    CHECK(report.verdict == Verdict::holds_with_equality);
    CHECK(report.hypothesis.satisfied);
    REQUIRE(report.hypothesis.b.has_value());
    CHECK(*report.hypothesis.b == Scalar(Rat(3, 2)));
    CHECK(report.sides.unital);
    CHECK(report.sides.diag_term == AbsValue::finite(0));  // |3|_5
    CHECK(report.sides.cross_term == AbsValue::finite(0)); // |1/4|_5
    CHECK(report.sides.lhs == AbsValue::finite(0));
    CHECK(report.sides.rhs == AbsValue::finite(0));
}

TEST_CASE("tight configuration at p = 2: strict inequality") {
    const BoundReport report = check_bound(tight_2_3_config(Backend::padic(2)), 1, Variant::padic);
    CHECK(report.verdict == Verdict::holds_strict);
    CHECK(report.hypothesis.satisfied);
    CHECK(report.sides.cross_term == AbsValue::finite(-2)); // |1/4|_2 = 4
    CHECK(report.sides.lhs == AbsValue::finite(-2));
    // |3|^2 / |2|_2 = 2, i.e. valuation 2*0 - 1 = -1
    CHECK(report.sides.rhs == AbsValue::finite(-1));
    REQUIRE(report.sides.argmax.has_value());
}

TEST_CASE("hypothesis violation: standard basis, p = 3, m = 2") {
    const BoundReport report =
        check_bound(standard_basis_config(Backend::padic(3), 2), 2, Variant::padic);
    CHECK_FALSE(report.hypothesis.satisfied);
    CHECK(report.hypothesis.detail == "not-scalar-identity at (1,1)"); // Sym^2 = diag(1,0,1)
    CHECK(report.sides.diag_term == AbsValue::finite(0)); // |2|_3
    CHECK(report.sides.cross_term.is_abs_zero());
    CHECK(report.sides.lhs == AbsValue::finite(0));
    CHECK(report.sides.rhs == AbsValue::finite(-1)); // |2|^2 / |3|_3
    CHECK(report.verdict == Verdict::violated);
    CHECK_FALSE(report.sides.argmax.has_value());
}

TEST_CASE("d = 1 pair at p = 3: equality with b = 2") {
    const BoundReport report = check_bound(d1_pair(Backend::padic(3)), 1, Variant::padic);
    CHECK(report.verdict == Verdict::holds_with_equality);
    REQUIRE(report.hypothesis.b.has_value());
    CHECK(*report.hypothesis.b == Scalar(2));
    CHECK(report.sides.lhs == AbsValue::finite(0));
    CHECK(report.sides.rhs == AbsValue::finite(0));
}

TEST_CASE("unital form examples") {
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (std::size_t d : {2UL, 3UL, 7UL}) {
            const BoundReport report =
                check_unital(standard_basis_config(Backend::padic(p), d), 1, Variant::padic);
            const AbsValue expected =
                valuation(Scalar(static_cast<long>(d)), Backend::padic(p));
            CHECK(report.verdict == Verdict::holds_with_equality);
            CHECK(report.sides.lhs == expected);
            CHECK(report.sides.rhs == expected);
        }
    }

    const BoundReport tight = check_unital(tight_2_3_config(Backend::padic(5)), 1, Variant::padic);
    CHECK(tight.verdict == Verdict::holds_with_equality);
    CHECK(tight.sides.lhs == AbsValue::finite(0));
    CHECK(tight.sides.rhs == AbsValue::finite(0));

    const BoundReport pair = check_unital(d1_pair(Backend::padic(2)), 1, Variant::padic);
    CHECK(pair.verdict == Verdict::holds_strict);
    CHECK(pair.sides.diag_term == AbsValue::finite(1)); // |2|_2
    CHECK(pair.sides.lhs == AbsValue::finite(0));
    CHECK(pair.sides.rhs == AbsValue::finite(2)); // |2|^2
}

TEST_CASE("unital precondition names the offending index") {
    const FrameConfig bad = d1_pair(Backend::padic(3), 2); // f_1(tau_1) = 2
    CHECK_THROWS_WITH_AS(check_unital(bad, 1, Variant::padic),
                         doctest::Contains("j = 1"), PreconditionError);
}

TEST_CASE("unital and general forms agree on unital configs") {
    uwtest::Rng rng(808);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Backend backend = trial % 2 == 0 ? Backend::padic(3) : Backend::padic(5);
        const std::size_t d = 1 + trial % 3;
        const std::size_t n = 2 + trial % 3;
        const FrameConfig config = uwtest::random_unital_config(rng, backend, d, n, 5);
        const unsigned m = 1 + trial % 3;
        const BoundReport general = check_bound(config, m, Variant::padic);
        REQUIRE(general.sides.unital);
        const BoundReport unital = check_unital(config, m, Variant::padic);
        CHECK(general.verdict == unital.verdict);
        CHECK(general.sides.rhs == unital.sides.rhs);
        CHECK(general.sides.lhs == unital.sides.lhs);
        CHECK(general.sides.diag_term == unital.sides.diag_term);
        ++checked;
    }
    CHECK(checked == 300);

    // the same consistency on a laurent config through the non-arch variant
    FrameConfig pair{Backend::laurent(), 1, 2, {}, {}};
    pair.vectors = {{Scalar(1)}, {Scalar::t_power(1)}};
    pair.functionals = {{Scalar(1)}, {Scalar::t_power(-1)}};
    const BoundReport general = check_bound(pair, 1, Variant::non_arch);
    const BoundReport unital = check_unital(pair, 1, Variant::non_arch);
    CHECK(general.verdict == Verdict::holds_with_equality);
    CHECK(unital.verdict == general.verdict);
    CHECK(unital.sides.rhs == general.sides.rhs);
}

TEST_CASE("order one matches quantities computed directly from the gram matrix") {
    uwtest::Rng rng(909);
    for (int trial = 0; trial < 200; ++trial) {
        const Backend backend = trial % 2 == 0 ? Backend::padic(2) : Backend::padic(7);
        const std::size_t d = 1 + trial % 3;
        const std::size_t n = 2 + trial % 3;
        const FrameConfig config = uwtest::random_config(rng, backend, d, n, 8);
        const BoundReport report = check_bound(config, 1, Variant::padic);

        const Mat g = gram(config);
        Scalar diag_sum;
        Scalar diag_sq_sum;
        for (std::size_t j = 0; j < n; ++j) {
            diag_sum += g.at(j, j);
            diag_sq_sum += g.at(j, j) * g.at(j, j);
        }
        AbsValue cross = AbsValue::zero();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (j == k) continue;
                cross = abs_max(cross, valuation(g.at(j, k) * g.at(k, j), backend));
            }
        }
        const AbsValue denom =
            AbsValue::finite(rational_padic_valuation(Rat(static_cast<long>(d)),
                                                      backend.prime()));
        CHECK(report.sides.diag_term == valuation(diag_sq_sum, backend));
        CHECK(report.sides.cross_term == cross);
        CHECK(report.sides.lhs == abs_max(valuation(diag_sq_sum, backend), cross));
        CHECK(report.sides.rhs == valuation(diag_sum, backend).squared().divided_by(denom));
    }
}

TEST_CASE("laurent degeneracy: unital non-archimedean reports never violate") {
    uwtest::Rng rng(1010);
    const Backend backend = Backend::laurent();
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const std::size_t n = 2 + trial % 3;
        const FrameConfig config = uwtest::random_unital_config(rng, backend, d, n, 5);
        const BoundReport report = check_bound(config, 1 + trial % 3, Variant::non_arch);
        CHECK(report.sides.rhs == AbsValue::finite(0));
        CHECK(report.verdict != Verdict::violated);
    }
}

TEST_CASE("scaling by units leaves the whole report unchanged") {
    uwtest::Rng rng(1111);
    for (const Backend& backend : {Backend::padic(5), Backend::laurent()}) {
        const Variant variant = backend.is_padic() ? Variant::padic : Variant::non_arch;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t d = 1 + trial % 2;
            const std::size_t n = 2 + trial % 2;
            FrameConfig config = uwtest::random_config(rng, backend, d, n, 6);
            const unsigned m = 1 + trial % 2;
            const BoundReport before = check_bound(config, m, variant);
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar c = uwtest::random_unit(rng, backend, 6);
                const Scalar c_inv = uwtest::invert_unit(c, backend);
                for (Scalar& entry : config.vectors[j]) entry = entry * c;
                for (Scalar& entry : config.functionals[j]) entry = entry * c_inv;
            }
            const BoundReport after = check_bound(config, m, variant);
            CHECK(to_json(before) == to_json(after));
        }
    }
}

TEST_CASE("report fields are permutation invariant up to argmax") {
    uwtest::Rng rng(1212);
    for (int trial = 0; trial < 100; ++trial) {
        const Backend backend = Backend::padic(3);
        FrameConfig config = uwtest::random_config(rng, backend, 2, 3, 5);
        const unsigned m = 1 + trial % 2;
        const BoundReport before = check_bound(config, m, Variant::padic);
        std::swap(config.vectors[0], config.vectors[2]);
        std::swap(config.functionals[0], config.functionals[2]);
        const BoundReport after = check_bound(config, m, Variant::padic);
        CHECK(before.verdict == after.verdict);
        CHECK(before.sides.lhs == after.sides.lhs);
        CHECK(before.sides.rhs == after.sides.rhs);
        CHECK(before.sides.diag_term == after.sides.diag_term);
        CHECK(before.sides.cross_term == after.sides.cross_term);
        CHECK(before.hypothesis.satisfied == after.hypothesis.satisfied);
    }
}

TEST_CASE("degenerate right-hand side: zero diagonal power sum") {
    FrameConfig config{Backend::padic(3), 1, 2, {}, {}};
    config.vectors = {{Scalar(1)}, {Scalar(1)}};
    config.functionals = {{Scalar(1)}, {Scalar(-1)}};
    const BoundReport report = check_bound(config, 1, Variant::padic);
    CHECK(report.sides.rhs.is_abs_zero()); // |0|: the bound holds trivially
    CHECK(report.hypothesis.satisfied);    // S = [0] = 0 * I
    CHECK(report.verdict == Verdict::holds_strict);
}

TEST_CASE("variant and backend compatibility") {
    const FrameConfig padic_config = standard_basis_config(Backend::padic(3), 2);
    CHECK_THROWS_AS(check_bound(padic_config, 1, Variant::non_arch), BackendMismatchError);
    const FrameConfig laurent_config = standard_basis_config(Backend::laurent(), 2);
    CHECK_THROWS_AS(check_bound(laurent_config, 1, Variant::padic), BackendMismatchError);

    FrameConfig single{Backend::padic(3), 1, 1, {{Scalar(1)}}, {{Scalar(1)}}};
    CHECK_THROWS_AS(check_bound(single, 1, Variant::padic), PreconditionError);
    CHECK_THROWS_AS(check_bound(padic_config, 0, Variant::padic), PreconditionError);
}

TEST_CASE("non-archimedean hypothesis paths") {
    // constant operator: diagonalizable
    FrameConfig pair{Backend::laurent(), 1, 2, {}, {}};
    pair.vectors = {{Scalar(1)}, {Scalar::t_power(1)}};
    pair.functionals = {{Scalar(1)}, {Scalar::t_power(-1)}};
    const BoundReport ok = check_bound(pair, 1, Variant::non_arch);
    CHECK(ok.hypothesis.satisfied);
    CHECK(ok.hypothesis.detail == "diagonalizable-over-rationals");

    // genuinely non-constant operator: honestly reported as unknown
    FrameConfig skew{Backend::laurent(), 1, 2, {}, {}};
    skew.vectors = {{Scalar::t_power(1)}, {Scalar(1)}};
    skew.functionals = {{Scalar(1)}, {Scalar(1)}};
    const BoundReport unknown = check_bound(skew, 1, Variant::non_arch);
    CHECK_FALSE(unknown.hypothesis.satisfied);
    CHECK(unknown.hypothesis.detail == "diagonalizability-unknown-non-rational-entries");
    CHECK(unknown.verdict != Verdict::violated);

    // nilpotent operator: witnessed defect
    FrameConfig nil{Backend::laurent(), 2, 2, {}, {}};
    nil.vectors = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    nil.functionals = {{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
    const BoundReport defect = check_bound(nil, 1, Variant::non_arch);
    CHECK_FALSE(defect.hypothesis.satisfied);
    CHECK(defect.hypothesis.detail == "not-diagonalizable");
}

TEST_CASE("soundness mini sweep: hypothesis implies the bound") {
    for (unsigned long p : {2UL, 3UL}) {
        for (std::size_t d : {1UL, 2UL}) {
            SearchSpace space{Backend::padic(p)};
            space.d = d;
            space.n = 2;
            LatticeStream stream(space);
            int hypothesis_held = 0;
            while (auto config = stream.next()) {
                for (unsigned m : {1U, 2U}) {
                    const BoundReport report = check_bound(*config, m, Variant::padic);
                    if (report.hypothesis.satisfied) {
                        ++hypothesis_held;
                        CHECK(report.verdict != Verdict::violated);
                        CHECK(report.verdict != Verdict::inapplicable);
                    }
                }
            }
            CHECK(hypothesis_held > 0);
        }
    }
}

TEST_CASE("demo suite is deterministic and matches the pinned verdicts") {
    const auto suite = demo_suite();
    REQUIRE(suite.size() == 6);
    CHECK(suite[0].first == "standard-basis-equality");
    CHECK(suite[0].second.verdict == Verdict::holds_with_equality);
    CHECK(suite[1].first == "tight-2-3-p5");
    CHECK(suite[1].second.verdict == Verdict::holds_with_equality);
    CHECK(suite[2].first == "tight-2-3-p2");
    CHECK(suite[2].second.verdict == Verdict::holds_strict);
    CHECK(suite[3].first == "hypothesis-violation-p3-m2");
    CHECK(suite[3].second.verdict == Verdict::violated);

    const auto again = demo_suite();
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CHECK(suite[i].first == again[i].first);
        CHECK(to_json(suite[i].second).dump() == to_json(again[i].second).dump());
    }
}
