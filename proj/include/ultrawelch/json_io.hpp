#pragma once

#include <string>

#include <json.hpp>

#include "ultrawelch/search.hpp"

namespace ultrawelch {

// nlohmann::json keeps object keys sorted, which makes every emitted
// document byte-stable; valuations serialize as integers or "inf", rationals
// as "a/b" strings, Laurent elements as {"exponent": "rational"} maps.
using Json = nlohmann::json;

Json to_json(const Backend& backend);
Backend backend_from_json(const Json& j);

Json to_json(const Scalar& s, const Backend& backend);
Scalar scalar_from_json(const Json& j, const Backend& backend);

Json to_json(const AbsValue& v);
AbsValue absvalue_from_json(const Json& j);

Json to_json(const FrameConfig& config);
FrameConfig config_from_json(const Json& j);
// Throws ParseError with a byte position on malformed documents.
FrameConfig config_from_string(const std::string& text);
FrameConfig config_from_file(const std::string& path);

Json to_json(const BoundReport& report);
BoundReport report_from_json(const Json& j);

Json to_json(const SearchSpace& space);
SearchSpace space_from_json(const Json& j);

Json to_json(const SearchResult& result);
Json to_json(const EquiangularResult& result);

Variant variant_from_string(const std::string& name);

} // namespace ultrawelch
