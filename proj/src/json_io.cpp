#include "ultrawelch/json_io.hpp"

#include <fstream>

namespace ultrawelch {

namespace {

long long exponent_from_key(const std::string& key) {
    std::size_t consumed = 0;
    long long value = 0;
    try {
        value = std::stoll(key, &consumed);
    } catch (const std::exception&) {
        throw ParseError("invalid Laurent exponent key: '" + key + "'");
    }
    if (consumed != key.size()) {
        throw ParseError("invalid Laurent exponent key: '" + key + "'");
    }
    return value;
}

[[noreturn]] void rethrow_as_parse_error(const Json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
}

} // namespace

Json to_json(const Backend& backend) {
    if (backend.is_padic()) return Json{{"padic", backend.prime()}};
    return Json("laurent");
}

Backend backend_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "laurent") return Backend::laurent();
        throw ParseError("unknown backend: '" + j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("padic")) {
        if (!j.at("padic").is_number_unsigned() && !j.at("padic").is_number_integer()) {
            throw ParseError("padic backend prime must be an integer");
        }
        const long long p = j.at("padic").get<long long>();
        if (p < 2) throw ParseError("padic backend prime must be >= 2");
        return Backend::padic(static_cast<unsigned long>(p));
    }
    throw ParseError("backend must be \"laurent\" or {\"padic\": p}");
}

Json to_json(const Scalar& s, const Backend& backend) {
    if (backend.is_padic()) {
        return Json(rational_to_string(s.constant_value()));
    }
    Json out = Json::object();
    for (const auto& [e, c] : s.terms()) out[std::to_string(e)] = rational_to_string(c);
    return out;
}

Scalar scalar_from_json(const Json& j, const Backend& backend) {
    if (j.is_string()) {
        return Scalar(parse_rational(j.get<std::string>()));
    }
    if (j.is_object()) {
        if (backend.is_padic()) {
            throw ParseError("p-adic scalars are rational strings, not Laurent maps");
        }
        std::map<long long, Rat> terms;
        for (const auto& [key, value] : j.items()) {
            if (!value.is_string()) throw ParseError("Laurent coefficients must be rational strings");
            terms[exponent_from_key(key)] = parse_rational(value.get<std::string>());
        }
        return Scalar::from_terms(std::move(terms));
    }
    throw ParseError("scalar must be a rational string or a Laurent exponent map");
}

Json to_json(const AbsValue& v) {
    if (v.is_abs_zero()) return Json("inf");
    return Json(v.exponent());
}

AbsValue absvalue_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return AbsValue::zero();
        throw ParseError("valuation must be an integer or \"inf\"");
    }
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw ParseError("valuation must be an integer or \"inf\"");
    }
    return AbsValue::finite(j.get<long long>());
}

Json to_json(const FrameConfig& config) {
    Json vectors = Json::array();
    Json functionals = Json::array();
    for (const Vec& v : config.vectors) {
        Json row = Json::array();
        for (const Scalar& entry : v) row.push_back(to_json(entry, config.backend));
        vectors.push_back(std::move(row));
    }
    for (const Vec& u : config.functionals) {
        Json row = Json::array();
        for (const Scalar& entry : u) row.push_back(to_json(entry, config.backend));
        functionals.push_back(std::move(row));
    }
    return Json{{"backend", to_json(config.backend)},
                {"d", config.d},
                {"n", config.n},
                {"vectors", std::move(vectors)},
                {"functionals", std::move(functionals)}};
}

FrameConfig config_from_json(const Json& j) {
    try {
        const Backend backend = backend_from_json(j.at("backend"));
        FrameConfig config{backend, j.at("d").get<std::size_t>(), j.at("n").get<std::size_t>(),
                           {}, {}};
        for (const Json& row : j.at("vectors")) {
            Vec v;
            for (const Json& entry : row) v.push_back(scalar_from_json(entry, backend));
            config.vectors.push_back(std::move(v));
        }
        for (const Json& row : j.at("functionals")) {
            Vec u;
            for (const Json& entry : row) u.push_back(scalar_from_json(entry, backend));
            config.functionals.push_back(std::move(u));
        }
        config.validate();
        return config;
    } catch (const Json::exception& e) {
        rethrow_as_parse_error(e);
    }
}

FrameConfig config_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("JSON parse error at byte ") + std::to_string(e.byte) + ": " +
                         e.what());
    }
    return config_from_json(j);
}

FrameConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_string(text);
}

Json to_json(const BoundReport& report) {
    Json hypothesis{{"satisfied", report.hypothesis.satisfied},
                    {"detail", report.hypothesis.detail},
                    {"b", report.hypothesis.b ? to_json(*report.hypothesis.b, report.backend)
                                              : Json(nullptr)}};
    Json argmax(nullptr);
    if (report.sides.argmax) {
        argmax = Json::array({report.sides.argmax->first, report.sides.argmax->second});
    }
    return Json{{"variant", to_string(report.variant)},
                {"m", report.m},
                {"backend", to_json(report.backend)},
                {"d", report.d},
                {"n", report.n},
                {"hypothesis", std::move(hypothesis)},
                {"unital", report.sides.unital},
                {"diag_term", to_json(report.sides.diag_term)},
                {"cross_term", to_json(report.sides.cross_term)},
                {"argmax", std::move(argmax)},
                {"lhs", to_json(report.sides.lhs)},
                {"rhs", to_json(report.sides.rhs)},
                {"verdict", to_string(report.verdict)}};
}

Variant variant_from_string(const std::string& name) {
    if (name == "nonarch") return Variant::non_arch;
    if (name == "padic") return Variant::padic;
    throw ParseError("unknown variant: '" + name + "' (expected nonarch or padic)");
}

namespace {

Verdict verdict_from_string(const std::string& name) {
    if (name == "HoldsStrict") return Verdict::holds_strict;
    if (name == "HoldsWithEquality") return Verdict::holds_with_equality;
    if (name == "Violated") return Verdict::violated;
    if (name == "Inapplicable") return Verdict::inapplicable;
    throw ParseError("unknown verdict: '" + name + "'");
}

} // namespace

BoundReport report_from_json(const Json& j) {
    try {
        BoundReport report;
        report.backend = backend_from_json(j.at("backend"));
        report.variant = variant_from_string(j.at("variant").get<std::string>());
        report.m = j.at("m").get<unsigned>();
        report.d = j.at("d").get<std::size_t>();
        report.n = j.at("n").get<std::size_t>();
        report.hypothesis.satisfied = j.at("hypothesis").at("satisfied").get<bool>();
        report.hypothesis.detail = j.at("hypothesis").at("detail").get<std::string>();
        if (!j.at("hypothesis").at("b").is_null()) {
            report.hypothesis.b = scalar_from_json(j.at("hypothesis").at("b"), report.backend);
        }
        report.sides.unital = j.at("unital").get<bool>();
        report.sides.diag_term = absvalue_from_json(j.at("diag_term"));
        report.sides.cross_term = absvalue_from_json(j.at("cross_term"));
        if (!j.at("argmax").is_null()) {
            report.sides.argmax = std::make_pair(j.at("argmax").at(0).get<std::size_t>(),
                                                 j.at("argmax").at(1).get<std::size_t>());
        }
        report.sides.lhs = absvalue_from_json(j.at("lhs"));
        report.sides.rhs = absvalue_from_json(j.at("rhs"));
        report.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        return report;
    } catch (const Json::exception& e) {
        rethrow_as_parse_error(e);
    }
}

Json to_json(const SearchSpace& space) {
    return Json{{"backend", to_json(space.backend)},
                {"k", space.k},
                {"scale_j", space.scale_j},
                {"d", space.d},
                {"n", space.n},
                {"a", rational_to_string(space.a)},
                {"randomized", space.randomized},
                {"constraints",
                 Json{{"unit_norms", space.constraints.unit_norms},
                      {"tight", space.constraints.tight},
                      {"equiangular_valuation",
                       space.constraints.equiangular_valuation
                           ? Json(*space.constraints.equiangular_valuation)
                           : Json(nullptr)}}}};
}

SearchSpace space_from_json(const Json& j) {
    try {
        SearchSpace space{backend_from_json(j.at("backend"))};
        space.k = j.at("k").get<unsigned>();
        space.scale_j = j.value("scale_j", 0u);
        space.d = j.at("d").get<std::size_t>();
        space.n = j.at("n").get<std::size_t>();
        space.a = parse_rational(j.value("a", std::string("1")));
        space.randomized = j.value("randomized", false);
        if (j.contains("constraints")) {
            const Json& c = j.at("constraints");
            space.constraints.unit_norms = c.value("unit_norms", true);
            space.constraints.tight = c.value("tight", false);
            if (c.contains("equiangular_valuation") && !c.at("equiangular_valuation").is_null()) {
                space.constraints.equiangular_valuation =
                    c.at("equiangular_valuation").get<long long>();
            }
        }
        space.validate();
        return space;
    } catch (const Json::exception& e) {
        rethrow_as_parse_error(e);
    }
}

Json to_json(const SearchResult& result) {
    Json certificates(nullptr);
    if (result.certificates && result.witness) {
        Json grid = Json::array();
        for (const auto& row : result.certificates->gram_valuations) {
            Json r = Json::array();
            for (const AbsValue& v : row) r.push_back(to_json(v));
            grid.push_back(std::move(r));
        }
        certificates = Json{{"b", to_json(result.certificates->b, result.witness->backend)},
                            {"gram_valuations", std::move(grid)}};
    }
    return Json{{"status", to_string(result.status)},
                {"witness", result.witness ? to_json(*result.witness) : Json(nullptr)},
                {"certificates", std::move(certificates)},
                {"explored", result.explored.get_str()},
                {"seed", result.seed},
                {"order", result.order}};
}

Json to_json(const EquiangularResult& result) {
    return Json{{"best_n", result.best_n},
                {"witness", result.witness ? to_json(*result.witness) : Json(nullptr)},
                {"explored", result.explored.get_str()},
                {"complete", result.complete},
                {"seed", result.seed}};
}

} // namespace ultrawelch
