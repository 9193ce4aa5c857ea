#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ultrawelch/json_io.hpp"

namespace uw = ultrawelch;
using uw::Json;

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

Json make_manifest(const std::string& command, Json params, std::uint64_t seed,
                   const std::optional<std::uint64_t>& budget, const std::string& out_path) {
    return Json{{"artifact_version", kArtifactVersion},
                {"command", command},
                {"input", std::move(params)},
                {"seed", seed},
                {"budget", budget ? Json(*budget) : Json(nullptr)},
                {"output", out_path.empty() ? "-" : out_path}};
}

void emit(const Json& document, const std::string& out_path) {
    const std::string text = document.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw uw::Error("cannot open output file: " + out_path);
    out << text;
}

// --config paths resolve directly first, then against ULTRAWELCH_FIXTURES.
std::string resolve_config_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* fixtures = std::getenv("ULTRAWELCH_FIXTURES")) {
        const fs::path candidate = fs::path(fixtures) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

uw::Variant pick_variant(const std::string& name, const uw::Backend& backend) {
    if (name == "auto") {
        return backend.is_padic() ? uw::Variant::padic : uw::Variant::non_arch;
    }
    return uw::variant_from_string(name);
}

int run_check(const std::string& config_path, const std::vector<unsigned>& orders,
              const std::string& variant_name, std::uint64_t seed, const std::string& out_path) {
    const uw::FrameConfig config = uw::config_from_file(resolve_config_path(config_path));
    const uw::Variant variant = pick_variant(variant_name, config.backend);

    Json reports = Json::array();
    bool violated = false;
    for (unsigned m : orders) {
        const uw::BoundReport report = uw::check_bound(config, m, variant);
        violated = violated || report.verdict == uw::Verdict::violated;
        reports.push_back(uw::to_json(report));
    }
    Json params{{"config", config_path},
                {"m", orders},
                {"variant", variant_name}};
    emit(Json{{"manifest", make_manifest("check", std::move(params), seed, std::nullopt, out_path)},
              {"reports", std::move(reports)}},
         out_path);
    return violated ? 2 : 0;
}

int run_demo(const std::string& out_path) {
    Json reports = Json::array();
    for (const auto& [name, report] : uw::demo_suite()) {
        reports.push_back(Json{{"name", name}, {"report", uw::to_json(report)}});
    }
    Json counterexamples = Json::object();
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
        const auto witness =
            uw::find_field_condition_counterexample(uw::Backend::padic(p), static_cast<long>(p));
        counterexamples[std::to_string(p)] = witness ? Json(*witness) : Json(nullptr);
    }
    Json symdim_table = Json::array();
    for (unsigned d = 1; d <= 5; ++d) {
        for (unsigned m = 1; m <= 5; ++m) {
            symdim_table.push_back(Json::array({d, m, uw::sym_dim(d, m).get_str()}));
        }
    }
    emit(Json{{"manifest", make_manifest("demo", Json::object(), 0, std::nullopt, out_path)},
              {"reports", std::move(reports)},
              {"field_condition_counterexamples", std::move(counterexamples)},
              {"symdim_table", std::move(symdim_table)}},
         out_path);
    return 0;
}

int run_symdim(unsigned long d, unsigned m, std::optional<unsigned long> prime,
               const std::string& out_path) {
    Json result{{"d", d}, {"m", m}, {"dim", uw::sym_dim(d, m).get_str()}};
    result["valuation"] =
        prime ? Json(uw::binomial_valuation(d + m - 1, m, *prime)) : Json(nullptr);
    Json params{{"d", d}, {"m", m}, {"prime", prime ? Json(*prime) : Json(nullptr)}};
    emit(Json{{"manifest", make_manifest("symdim", std::move(params), 0, std::nullopt, out_path)},
              {"result", std::move(result)}},
         out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact non-Archimedean Welch bound checks and searches"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<unsigned> orders{1};
    std::string variant_name = "auto";
    std::string out_path;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    unsigned workers = 1;

    CLI::App* check = app.add_subcommand("check", "evaluate the bound on a config file");
    check->add_option("--config", config_path, "FrameConfig JSON path")->required();
    check->add_option("--m", orders, "bound orders")->delimiter(',');
    check->add_option("--variant", variant_name, "auto|nonarch|padic");
    check->add_option("--out", out_path, "output path (default stdout)");
    check->add_option("--seed", seed, "recorded in the manifest");

    CLI::App* search = app.add_subcommand("search", "scan a finite lattice of configs");
    std::string kind;
    unsigned long prime = 5;
    unsigned precision = 1;
    unsigned scale_j = 0;
    std::size_t dim = 1;
    std::size_t count = 1;
    std::size_t n_max = 1;
    unsigned order_m = 1;
    std::string diag_value = "1";
    std::optional<long long> gamma_valuation;
    bool gamma_any = false;
    bool randomized = false;
    search->add_option("kind", kind, "equality|zauner|equiangular")->required();
    search->add_option("--prime", prime, "p of the p-adic backend");
    search->add_option("--precision", precision, "entries drawn from {0..p^k-1}");
    search->add_option("--scale-j", scale_j, "entries scaled by p^-j");
    search->add_option("--d", dim, "space dimension");
    search->add_option("--n", count, "number of vector/functional pairs (equality)");
    search->add_option("--n-max", n_max, "largest family size tried (equiangular)");
    search->add_option("--m", order_m, "bound order (equality)");
    search->add_option("--a", diag_value, "required diagonal value f_j(tau_j)");
    search->add_option("--gamma-valuation", gamma_valuation,
                       "required cross-product valuation (equiangular)");
    search->add_flag("--gamma-any", gamma_any, "any shared finite cross valuation");
    search->add_flag("--randomized", randomized, "seeded full-period scan order (equality)");
    search->add_option("--seed", seed, "scan-order seed");
    search->add_option("--budget", budget, "max configs examined");
    search->add_option("--workers", workers, "parallel partitions");
    search->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* demo = app.add_subcommand("demo", "emit the curated report bundle");
    demo->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* symdim = app.add_subcommand("symdim", "dimension of Sym^m and its valuation");
    unsigned long symdim_d = 1;
    unsigned symdim_m = 1;
    std::optional<unsigned long> symdim_prime;
    symdim->add_option("d", symdim_d, "space dimension")->required();
    symdim->add_option("m", symdim_m, "tensor order")->required();
    symdim->add_option("--prime", symdim_prime, "also report the p-adic valuation");
    symdim->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(config_path, orders, variant_name, seed, out_path);
        if (demo->parsed()) return run_demo(out_path);
        if (symdim->parsed()) return run_symdim(symdim_d, symdim_m, symdim_prime, out_path);

        // search
        if (kind == "equality") {
            uw::SearchSpace space{uw::Backend::padic(prime)};
            space.k = precision;
            space.scale_j = scale_j;
            space.d = dim;
            space.n = count;
            space.a = uw::parse_rational(diag_value);
            space.constraints.tight = true;
            space.constraints.unit_norms = true;
            if (gamma_valuation) space.constraints.equiangular_valuation = gamma_valuation;
            space.randomized = randomized;
            const uw::SearchResult result =
                uw::search_equality(space, order_m, seed, budget, workers);
            Json params{{"kind", kind}, {"space", uw::to_json(space)}, {"m", order_m},
                        {"workers", workers}};
            emit(Json{{"manifest",
                       make_manifest("search", std::move(params), seed, budget, out_path)},
                      {"result", uw::to_json(result)}},
                 out_path);
            return result.status == uw::SearchStatus::budget ? 3 : 0;
        }
        if (kind == "zauner") {
            const uw::SearchResult result = uw::search_zauner(prime, dim, precision, seed, budget);
            Json params{{"kind", kind}, {"prime", prime}, {"d", dim}, {"k", precision}};
            emit(Json{{"manifest",
                       make_manifest("search", std::move(params), seed, budget, out_path)},
                      {"result", uw::to_json(result)}},
                 out_path);
            return result.status == uw::SearchStatus::budget ? 3 : 0;
        }
        if (kind == "equiangular") {
            if (!gamma_valuation && !gamma_any) {
                std::cerr << "equiangular search needs --gamma-valuation or --gamma-any\n";
                return 1;
            }
            uw::EquiangularQuery query;
            query.prime = prime;
            query.d = dim;
            query.a = uw::parse_rational(diag_value);
            query.gamma_valuation = gamma_any ? std::nullopt : gamma_valuation;
            query.n_max = n_max;
            query.k = precision;
            query.scale_j = scale_j;
            uw::EquiangularResult result = uw::search_equiangular(query, budget, workers);
            result.seed = seed;
            Json params{{"kind", kind},
                        {"prime", prime},
                        {"d", dim},
                        {"a", diag_value},
                        {"gamma_valuation", gamma_any ? Json(nullptr) : Json(*gamma_valuation)},
                        {"n_max", n_max},
                        {"k", precision},
                        {"workers", workers}};
            emit(Json{{"manifest",
                       make_manifest("search", std::move(params), seed, budget, out_path)},
                      {"result", uw::to_json(result)}},
                 out_path);
            return result.complete ? 0 : 3;
        }
        std::cerr << "unknown search kind: " << kind << "\n";
        return 1;
    } catch (const uw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
