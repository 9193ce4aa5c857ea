#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ultrawelch/json_io.hpp"

namespace py = pybind11;
namespace uw = ultrawelch;

namespace {

py::object json_to_py(const uw::Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

uw::FrameConfig config_from_arg(const py::object& config) {
    if (py::isinstance<py::str>(config)) {
        return uw::config_from_string(config.cast<std::string>());
    }
    const std::string text =
        py::module_::import("json").attr("dumps")(config).cast<std::string>();
    return uw::config_from_string(text);
}

py::object absvalue_to_py(const uw::AbsValue& v) {
    if (v.is_abs_zero()) return py::str("inf");
    return py::int_(v.exponent());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact non-Archimedean and p-adic Welch bound toolkit.";

    m.def("sym_dim", [](unsigned long d, unsigned mm) {
        return py::module_::import("builtins").attr("int")(uw::sym_dim(d, mm).get_str());
    }, py::arg("d"), py::arg("m"),
       "Dimension of Sym^m of a d-dimensional space: C(d+m-1, m).");

    m.def("binomial_valuation", &uw::binomial_valuation, py::arg("n"), py::arg("k"),
          py::arg("p"), "v_p of the binomial coefficient C(n, k).");

    m.def("padic_valuation", [](const std::string& rational, unsigned long p) -> py::object {
        const uw::Rat value = uw::parse_rational(rational);
        if (sgn(value) == 0) return py::str("inf");
        return py::int_(uw::rational_padic_valuation(value, p));
    }, py::arg("rational"), py::arg("p"),
       "Valuation of a rational literal; 'inf' for zero.");

    m.def("check_field_condition", [](const std::vector<std::string>& lambdas, unsigned long p) {
        std::vector<uw::Scalar> scalars;
        scalars.reserve(lambdas.size());
        for (const std::string& text : lambdas) scalars.emplace_back(uw::parse_rational(text));
        const auto r = uw::check_field_condition(scalars, uw::Backend::padic(p));
        py::dict out;
        out["holds"] = r.holds;
        out["lhs"] = absvalue_to_py(r.lhs);
        out["rhs"] = absvalue_to_py(r.rhs);
        return out;
    }, py::arg("lambdas"), py::arg("p"),
       "Tests |sum of squares| = max |entry|^2 for a rational tuple in Q_p.");

    m.def("find_field_condition_counterexample",
          [](unsigned long p, long bound) -> py::object {
              const auto witness =
                  uw::find_field_condition_counterexample(uw::Backend::padic(p), bound);
              if (!witness) return py::none();
              return py::cast(*witness);
          },
          py::arg("p"), py::arg("bound"));

    m.def("check_bound", [](const py::object& config, unsigned mm, const std::string& variant) {
        const uw::FrameConfig c = config_from_arg(config);
        const uw::Variant v = variant == "auto"
                                  ? (c.backend.is_padic() ? uw::Variant::padic
                                                          : uw::Variant::non_arch)
                                  : uw::variant_from_string(variant);
        return json_to_py(uw::to_json(uw::check_bound(c, mm, v)));
    }, py::arg("config"), py::arg("m") = 1, py::arg("variant") = "auto",
       "Evaluate the order-m bound on a config (JSON string or dict).");

    m.def("check_unital", [](const py::object& config, unsigned mm, const std::string& variant) {
        const uw::FrameConfig c = config_from_arg(config);
        const uw::Variant v = variant == "auto"
                                  ? (c.backend.is_padic() ? uw::Variant::padic
                                                          : uw::Variant::non_arch)
                                  : uw::variant_from_string(variant);
        return json_to_py(uw::to_json(uw::check_unital(c, mm, v)));
    }, py::arg("config"), py::arg("m") = 1, py::arg("variant") = "auto");

    m.def("gram", [](const py::object& config) {
        const uw::FrameConfig c = config_from_arg(config);
        const uw::Mat g = uw::gram(c);
        py::list rows;
        for (std::size_t j = 0; j < g.rows(); ++j) {
            py::list row;
            for (std::size_t k = 0; k < g.cols(); ++k) {
                row.append(json_to_py(uw::to_json(g.at(j, k), c.backend)));
            }
            rows.append(row);
        }
        return rows;
    }, py::arg("config"), "Pairing matrix G[j][k] = f_j(tau_k).");

    m.def("demo", [] {
        py::list out;
        for (const auto& [name, report] : uw::demo_suite()) {
            py::dict entry;
            entry["name"] = name;
            entry["report"] = json_to_py(uw::to_json(report));
            out.append(entry);
        }
        return out;
    });

    m.def("search_equality", [](unsigned long prime, std::size_t d, std::size_t n, unsigned k,
                                const std::string& a, unsigned mm, std::uint64_t seed,
                                py::object budget, unsigned workers) {
        uw::SearchSpace space{uw::Backend::padic(prime)};
        space.k = k;
        space.d = d;
        space.n = n;
        space.a = uw::parse_rational(a);
        space.constraints.tight = true;
        std::optional<std::uint64_t> cap;
        if (!budget.is_none()) cap = budget.cast<std::uint64_t>();
        return json_to_py(uw::to_json(uw::search_equality(space, mm, seed, cap, workers)));
    }, py::arg("prime"), py::arg("d"), py::arg("n"), py::arg("k") = 1, py::arg("a") = "1",
       py::arg("m") = 1, py::arg("seed") = 0, py::arg("budget") = py::none(),
       py::arg("workers") = 1);

    m.def("search_zauner", [](unsigned long prime, std::size_t d, unsigned k, std::uint64_t seed,
                              py::object budget) {
        std::optional<std::uint64_t> cap;
        if (!budget.is_none()) cap = budget.cast<std::uint64_t>();
        return json_to_py(uw::to_json(uw::search_zauner(prime, d, k, seed, cap)));
    }, py::arg("prime"), py::arg("d"), py::arg("k") = 1, py::arg("seed") = 0,
       py::arg("budget") = py::none());

    m.def("search_equiangular", [](unsigned long prime, std::size_t d, const std::string& a,
                                   py::object gamma_valuation, std::size_t n_max, unsigned k,
                                   py::object budget, unsigned workers) {
        uw::EquiangularQuery query;
        query.prime = prime;
        query.d = d;
        query.a = uw::parse_rational(a);
        if (!gamma_valuation.is_none()) query.gamma_valuation = gamma_valuation.cast<long long>();
        query.n_max = n_max;
        query.k = k;
        std::optional<std::uint64_t> cap;
        if (!budget.is_none()) cap = budget.cast<std::uint64_t>();
        return json_to_py(uw::to_json(uw::search_equiangular(query, cap, workers)));
    }, py::arg("prime"), py::arg("d"), py::arg("a") = "1",
       py::arg("gamma_valuation") = py::none(), py::arg("n_max") = 1, py::arg("k") = 1,
       py::arg("budget") = py::none(), py::arg("workers") = 1);

    py::register_exception<uw::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<uw::PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.attr("__version__") = "0.1.0";
}
