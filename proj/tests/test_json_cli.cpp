#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "testutil.hpp"
#include "ultrawelch/json_io.hpp"
#include "ultrawelch/search.hpp"

using namespace ultrawelch;

namespace {

#ifndef ULTRAWELCH_SOURCE_DIR
#define ULTRAWELCH_SOURCE_DIR "."
#endif

std::string fixture_dir() {
    if (const char* env = std::getenv("ULTRAWELCH_FIXTURES")) return env;
    return std::string(ULTRAWELCH_SOURCE_DIR) + "/fixtures";
}

std::string cli_path() {
    const char* env = std::getenv("ULTRAWELCH_CLI");
    REQUIRE_MESSAGE(env != nullptr, "ULTRAWELCH_CLI must point at the built binary");
    return env;
}

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::filesystem::path out =
        std::filesystem::temp_directory_path() /
        ("ultrawelch_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    const std::string command =
        env_prefix + "\"" + cli_path() + "\" " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream buffer;
    buffer << in.rdbuf();
    run.output = buffer.str();
    std::filesystem::remove(out);
    return run;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(bool(in), "cannot read " << path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("config json round trip is byte identical") {
    const std::string text = read_file(fixture_dir() + "/tight_2_3_p5.json");
    const FrameConfig config = config_from_string(text);
    const std::string emitted = to_json(config).dump(2);
    const FrameConfig reparsed = config_from_string(emitted);
    CHECK(to_json(reparsed).dump(2) == emitted);

    const FrameConfig laurent = config_from_string(read_file(fixture_dir() + "/laurent_pair.json"));
    const std::string laurent_emitted = to_json(laurent).dump(2);
    CHECK(to_json(config_from_string(laurent_emitted)).dump(2) == laurent_emitted);
    // string form is accepted for constant laurent entries
    CHECK(laurent.vectors[0][0] == Scalar(1));
    CHECK(laurent.vectors[1][0] == Scalar::t_power(1));
}

TEST_CASE("report json round trip is byte identical") {
    const BoundReport report = check_bound(tight_2_3_config(Backend::padic(2)), 1, Variant::padic);
    const std::string emitted = to_json(report).dump(2);
    const BoundReport reparsed = report_from_json(Json::parse(emitted));
    CHECK(to_json(reparsed).dump(2) == emitted);
}

TEST_CASE("search space json round trip") {
    SearchSpace space{Backend::padic(5)};
    space.k = 2;
    space.scale_j = 1;
    space.d = 2;
    space.n = 3;
    space.a = Rat(1, 2);
    space.constraints.tight = true;
    space.constraints.equiangular_valuation = -1;
    const Json j = to_json(space);
    const SearchSpace reparsed = space_from_json(j);
    CHECK(to_json(reparsed) == j);
}

TEST_CASE("valuation serialization") {
    CHECK(to_json(AbsValue::finite(-3)) == Json(-3));
    CHECK(to_json(AbsValue::zero()) == Json("inf"));
    CHECK(absvalue_from_json(Json("inf")).is_abs_zero());
    CHECK(absvalue_from_json(Json(4)) == AbsValue::finite(4));
    CHECK_THROWS_AS(absvalue_from_json(Json("infty")), ParseError);
    CHECK_THROWS_AS(absvalue_from_json(Json(1.5)), ParseError);
}

TEST_CASE("parse errors carry positions and reasons") {
    CHECK_THROWS_WITH_AS(config_from_string("{\"backend\""), doctest::Contains("byte"),
                         ParseError);
    CHECK_THROWS_AS(config_from_string("{\"backend\": {\"padic\": 4}, \"d\": 1, \"n\": 1, "
                                       "\"vectors\": [[\"1\"]], \"functionals\": [[\"1\"]]}"),
                    PreconditionError); // 4 is not prime
    CHECK_THROWS_AS(config_from_string("{\"backend\": {\"padic\": 5}, \"d\": 1, \"n\": 1, "
                                       "\"vectors\": [[\"1/0\"]], \"functionals\": [[\"1\"]]}"),
                    ParseError);
    CHECK_THROWS_AS(config_from_string("{\"backend\": {\"padic\": 5}, \"d\": 2, \"n\": 1, "
                                       "\"vectors\": [[\"1\"]], \"functionals\": [[\"1\"]]}"),
                    PreconditionError); // entry count mismatch
    CHECK_THROWS_AS(config_from_string("{\"backend\": {\"padic\": 5}, \"d\": 1, \"n\": 1, "
                                       "\"vectors\": [[{\"0\": \"1\"}]], "
                                       "\"functionals\": [[\"1\"]]}"),
                    ParseError); // laurent map on a p-adic backend
}

TEST_CASE("malformed documents only ever raise typed errors") {
    const std::string valid = to_json(tight_2_3_config(Backend::padic(5))).dump();
    uwtest::Rng rng(424243);
    std::uniform_int_distribution<int> printable(32, 126);
    std::uniform_int_distribution<std::size_t> pos(0, valid.size() - 1);
    std::uniform_int_distribution<int> mode(0, 2);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text = valid;
        switch (mode(rng)) {
            case 0: // mutate a byte
                text[pos(rng)] = static_cast<char>(printable(rng));
                break;
            case 1: // truncate
                text.resize(pos(rng));
                break;
            default: { // random printable garbage
                text.clear();
                const std::size_t len = pos(rng);
                for (std::size_t i = 0; i < len; ++i) {
                    text.push_back(static_cast<char>(printable(rng)));
                }
                break;
            }
        }
        try {
            const FrameConfig config = config_from_string(text);
            config.validate(); // parse succeeded; the config must be coherent
        } catch (const Error&) {
            // ParseError / PreconditionError / BackendMismatchError are all fine
        }
    }
}

TEST_CASE("cli check exit codes and reports") {
    const std::string fixtures = fixture_dir();
    const CliRun equality = run_cli("check --config " + fixtures + "/tight_2_3_p5.json --m 1");
    CHECK(equality.exit_code == 0);
    const Json doc = Json::parse(equality.output);
    CHECK(doc.at("manifest").at("command") == "check");
    REQUIRE(doc.at("reports").size() == 1);
    CHECK(doc.at("reports").at(0).at("verdict") == "HoldsWithEquality");

    const CliRun violated =
        run_cli("check --config " + fixtures + "/standard_basis_p3.json --m 2");
    CHECK(violated.exit_code == 2);
    CHECK(Json::parse(violated.output).at("reports").at(0).at("verdict") == "Violated");

    const CliRun multi =
        run_cli("check --config " + fixtures + "/standard_basis_p3.json --m 1,2,3");
    CHECK(multi.exit_code == 2);
    CHECK(Json::parse(multi.output).at("reports").size() == 3);

    const CliRun truncated = run_cli("check --config " + fixtures + "/truncated.json");
    CHECK(truncated.exit_code == 1);

    const CliRun missing = run_cli("check --config does_not_exist.json");
    CHECK(missing.exit_code == 1);

    const CliRun laurent =
        run_cli("check --config " + fixtures + "/laurent_pair.json --m 1 --variant nonarch");
    CHECK(laurent.exit_code == 0);
    CHECK(Json::parse(laurent.output).at("reports").at(0).at("verdict") == "HoldsWithEquality");
}

TEST_CASE("cli resolves config names against ULTRAWELCH_FIXTURES") {
    const CliRun run = run_cli("check --config tight_2_3_p5.json --m 1",
                               "ULTRAWELCH_FIXTURES=" + fixture_dir() + " ");
    CHECK(run.exit_code == 0);
}

TEST_CASE("cli demo bundle is byte stable") {
    const CliRun first = run_cli("demo");
    const CliRun second = run_cli("demo");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    const Json doc = Json::parse(first.output);
    CHECK(doc.at("field_condition_counterexamples").at("5") == Json::array({1, 2}));
    CHECK(doc.at("reports").size() == 6);
    CHECK(doc.at("symdim_table").size() == 25);
}

TEST_CASE("cli symdim") {
    const CliRun plain = run_cli("symdim 4 2");
    CHECK(plain.exit_code == 0);
    CHECK(Json::parse(plain.output).at("result").at("dim") == "10");

    const CliRun with_prime = run_cli("symdim 2 2 --prime 3");
    const Json doc = Json::parse(with_prime.output);
    CHECK(doc.at("result").at("dim") == "3");
    CHECK(doc.at("result").at("valuation") == 1);

    const CliRun two = run_cli("symdim 2 1 --prime 2");
    CHECK(Json::parse(two.output).at("result").at("valuation") == 1);

    const CliRun bad = run_cli("symdim 2 1 --prime 6");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cli search commands") {
    const CliRun zauner = run_cli("search zauner --prime 3 --d 1");
    CHECK(zauner.exit_code == 0);
    CHECK(Json::parse(zauner.output).at("result").at("status") == "Found");

    const CliRun budget =
        run_cli("search equality --prime 5 --d 2 --n 3 --budget 10");
    CHECK(budget.exit_code == 3);
    CHECK(Json::parse(budget.output).at("result").at("status") == "Budget");

    const CliRun equiangular = run_cli(
        "search equiangular --prime 5 --d 2 --a 1 --gamma-valuation=0 --n-max 3 --precision 1");
    CHECK(equiangular.exit_code == 0);
    CHECK(Json::parse(equiangular.output).at("result").at("best_n") == 3);

    const CliRun bad_prime = run_cli("search zauner --prime 6 --d 1");
    CHECK(bad_prime.exit_code == 1);

    // the partitioned path reaches the same answer
    const CliRun workers = run_cli("search equality --prime 3 --d 1 --n 2 --workers 4");
    CHECK(workers.exit_code == 0);
    const CliRun single = run_cli("search equality --prime 3 --d 1 --n 2");
    CHECK(Json::parse(workers.output).at("result").at("status") ==
          Json::parse(single.output).at("result").at("status"));
    CHECK(Json::parse(workers.output).at("result").at("witness") ==
          Json::parse(single.output).at("result").at("witness"));
}

TEST_CASE("cli search regression fixtures") {
    const std::string fixtures = fixture_dir();
    const CliRun zauner3 = run_cli("search zauner --prime 3 --d 2 --precision 1");
    CHECK(zauner3.output == read_file(fixtures + "/v1/zauner_p3_d2_k1.json"));
    const CliRun zauner5 = run_cli("search zauner --prime 5 --d 2 --precision 1");
    CHECK(zauner5.output == read_file(fixtures + "/v1/zauner_p5_d2_k1.json"));
    const CliRun equality = run_cli(
        "search equality --prime 2 --d 2 --n 3 --gamma-valuation=-1");
    CHECK(equality.output == read_file(fixtures + "/v1/equality_p2_d2_n3_gamma_neg.json"));
    const CliRun equiangular = run_cli(
        "search equiangular --prime 3 --d 1 --a 1 --gamma-valuation=2 --n-max 2 --precision 2");
    CHECK(equiangular.output == read_file(fixtures + "/v1/equiangular_p3_d1_gamma2_k2.json"));
}
