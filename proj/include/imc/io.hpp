#pragma once

#include "imc/credal.hpp"
#include "imc/inference.hpp"
#include "imc/recursion.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace imc::io {

using nlohmann::json;

/// Parses a model document; structural problems and invariant violations are
/// reported together in one ValidationError.
ImpreciseMarkovChain parse_model(const json& doc);
ImpreciseMarkovChain parse_model_text(const std::string& text);

/// Inverse of parse_model.
json model_to_json(const ImpreciseMarkovChain& model);

enum class QueryKind { single_instant, sum, time_average, product, hitting_probability, hitting_time, custom };

const char* to_string(QueryKind kind);

struct LimitRequest {
    std::optional<double> tol;
    std::optional<std::size_t> max_horizon;
};

struct Query {
    QueryKind kind = QueryKind::single_instant;
    RecursiveSpec spec;
    double scale = 1.0;              ///< applied to all bounds (time averages)
    std::vector<std::size_t> target; ///< hitting kinds only
    std::optional<LimitRequest> limit;
};

Query parse_query(const json& doc, const StateSpace& states);
Query parse_query_text(const std::string& text, const StateSpace& states);

/// Reads a whole file; throws ValidationError naming the path if it cannot be opened.
std::string read_file(const std::string& path);

json bounds_to_json(const StateSpace& states, const BoundsResult& res);
json limit_to_json(const StateSpace& states, const LimitResult& res);

/// Serializes with sorted keys, two-space indentation and every floating
/// point number printed with 17 significant digits.
std::string dump(const json& doc);

} // namespace imc::io
