#include "imc/io.hpp"

#include "imc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace imc::io {

namespace {

using Problems = std::vector<std::string>;

std::vector<double> number_list(const json& j, const std::string& where, Problems& problems) {
    std::vector<double> out;
    if (!j.is_array()) {
        problems.push_back(where + ": expected an array of numbers");
        return out;
    }
    for (const auto& v : j) {
        if (!v.is_number()) {
            problems.push_back(where + ": expected an array of numbers");
            return {};
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::optional<CredalRow> parse_row(const json& j, const std::string& where, Problems& problems) {
    if (!j.is_object() || j.size() != 1) {
        problems.push_back(where + ": row must be an object with exactly one of \"intervals\", \"vertices\", "
                                   "\"constraints\"");
        return std::nullopt;
    }
    const std::size_t before = problems.size();
    if (j.contains("intervals")) {
        const auto& r = j["intervals"];
        if (!r.is_object() || !r.contains("lower") || !r.contains("upper")) {
            problems.push_back(where + ": \"intervals\" needs \"lower\" and \"upper\"");
            return std::nullopt;
        }
        auto lower = number_list(r["lower"], where + ".intervals.lower", problems);
        auto upper = number_list(r["upper"], where + ".intervals.upper", problems);
        if (problems.size() != before) return std::nullopt;
        return CredalRow::intervals(std::move(lower), std::move(upper));
    }
    if (j.contains("vertices")) {
        const auto& r = j["vertices"];
        if (!r.is_array()) {
            problems.push_back(where + ": \"vertices\" must be an array of probability vectors");
            return std::nullopt;
        }
        std::vector<Pmf> vertices;
        for (std::size_t k = 0; k < r.size(); ++k) {
            // Validation of each vertex happens in validate_model so that every problem is listed.
            vertices.push_back(
                Pmf::unchecked(number_list(r[k], where + ".vertices[" + std::to_string(k) + "]", problems)));
        }
        if (problems.size() != before) return std::nullopt;
        return CredalRow::vertices(std::move(vertices));
    }
    if (j.contains("constraints")) {
        const auto& r = j["constraints"];
        if (!r.is_object() || !r.contains("A") || !r.contains("b") || !r["A"].is_array()) {
            problems.push_back(where + ": \"constraints\" needs a matrix \"A\" and a vector \"b\"");
            return std::nullopt;
        }
        std::vector<std::vector<double>> A;
        for (std::size_t i = 0; i < r["A"].size(); ++i) {
            A.push_back(number_list(r["A"][i], where + ".constraints.A[" + std::to_string(i) + "]", problems));
        }
        auto b = number_list(r["b"], where + ".constraints.b", problems);
        if (problems.size() != before) return std::nullopt;
        return CredalRow::constraints(std::move(A), std::move(b));
    }
    problems.push_back(where + ": unknown row representation \"" + j.begin().key() + "\"");
    return std::nullopt;
}

json row_to_json(const CredalRow& row) {
    return std::visit(
        [](const auto& r) -> json {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, IntervalRow>) {
                return {{"intervals", {{"lower", r.lower}, {"upper", r.upper}}}};
            } else if constexpr (std::is_same_v<R, VertexRow>) {
                json vs = json::array();
                for (const auto& v : r.vertices) vs.push_back(std::vector<double>(v.probs().begin(), v.probs().end()));
                return {{"vertices", vs}};
            } else {
                return {{"constraints", {{"A", r.A}, {"b", r.b}}}};
            }
        },
        row.representation());
}

json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError({what + " is not valid JSON: " + e.what()});
    }
}

} // namespace

ImpreciseMarkovChain parse_model(const json& doc) {
    Problems problems;
    if (!doc.is_object()) throw ValidationError({"model document must be a JSON object"});
    for (const char* key : {"states", "rows", "initial"}) {
        if (!doc.contains(key)) problems.push_back(std::string("model is missing \"") + key + "\"");
    }
    if (!problems.empty()) throw ValidationError(problems);

    const auto& jstates = doc["states"];
    std::vector<std::string> labels;
    if (!jstates.is_array()) throw ValidationError({"\"states\" must be an array of state names"});
    for (const auto& s : jstates) {
        if (!s.is_string()) throw ValidationError({"\"states\" must be an array of state names"});
        labels.push_back(s.get<std::string>());
    }
    StateSpace states(std::move(labels)); // throws on empty / duplicate names

    const auto& jrows = doc["rows"];
    if (!jrows.is_object()) throw ValidationError({"\"rows\" must map each state name to a row"});
    for (const auto& [name, _] : jrows.items()) {
        if (!states.contains(name)) problems.push_back("rows: unknown state \"" + name + "\"");
    }
    std::vector<std::optional<CredalRow>> rows;
    for (const auto& name : states.labels()) {
        if (!jrows.contains(name)) {
            problems.push_back("rows: missing row for state \"" + name + "\"");
            rows.emplace_back();
            continue;
        }
        rows.push_back(parse_row(jrows[name], "row " + name, problems));
    }
    auto initial = parse_row(doc["initial"], "initial", problems);
    if (!problems.empty()) throw ValidationError(problems);

    ImpreciseMarkovChain model{states, *initial, {}};
    for (auto& r : rows) model.rows.push_back(std::move(*r));
    require_valid(model);
    return model;
}

ImpreciseMarkovChain parse_model_text(const std::string& text) { return parse_model(parse_text(text, "model")); }

json model_to_json(const ImpreciseMarkovChain& model) {
    json rows = json::object();
    for (std::size_t x = 0; x < model.size(); ++x) rows[model.states.label(x)] = row_to_json(model.rows[x]);
    return {{"states", model.states.labels()}, {"rows", rows}, {"initial", row_to_json(model.initial)}};
}

const char* to_string(QueryKind kind) {
    switch (kind) {
    case QueryKind::single_instant: return "single_instant";
    case QueryKind::sum: return "sum";
    case QueryKind::time_average: return "time_average";
    case QueryKind::product: return "product";
    case QueryKind::hitting_probability: return "hitting_probability";
    case QueryKind::hitting_time: return "hitting_time";
    case QueryKind::custom: return "custom";
    }
    return "unknown";
}

namespace {

struct QueryReader {
    const json& doc;
    const StateSpace& states;
    Problems problems;

    bool has(const char* key) {
        if (doc.contains(key)) return true;
        problems.push_back(std::string("query is missing \"") + key + "\"");
        return false;
    }

    Gamble gamble(const json& j, const std::string& where) {
        std::vector<double> v(states.size(), 0.0);
        if (!j.is_object()) {
            problems.push_back(where + ": expected an object mapping state names to numbers");
            return Gamble(std::move(v));
        }
        for (const auto& [name, value] : j.items()) {
            if (!states.contains(name)) {
                problems.push_back(where + ": unknown state \"" + name + "\"");
            } else if (!value.is_number() || !std::isfinite(value.get<double>())) {
                problems.push_back(where + ": value for \"" + name + "\" must be a finite number");
            } else {
                v[states.index_of(name)] = value.get<double>();
            }
        }
        return Gamble(std::move(v));
    }

    std::vector<Gamble> gambles(const char* key) {
        std::vector<Gamble> out;
        if (!has(key)) return out;
        const auto& j = doc[key];
        if (!j.is_array() || j.empty()) {
            problems.push_back(std::string("\"") + key + "\" must be a non-empty array of state maps");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(gamble(j[i], std::string(key) + "[" + std::to_string(i) + "]"));
        return out;
    }

    std::size_t horizon() {
        if (!has("n")) return 1;
        const auto& j = doc["n"];
        if (!j.is_number_integer() || j.get<long long>() < 1) {
            problems.push_back("\"n\" must be an integer >= 1");
            return 1;
        }
        return j.get<std::size_t>();
    }

    std::vector<std::size_t> target() {
        std::vector<std::size_t> out;
        if (!has("A")) return out;
        const auto& j = doc["A"];
        if (!j.is_array()) {
            problems.push_back("\"A\" must be an array of state names");
            return out;
        }
        std::set<std::size_t> seen;
        for (const auto& s : j) {
            if (!s.is_string()) {
                problems.push_back("\"A\" must be an array of state names");
            } else if (!states.contains(s.get<std::string>())) {
                problems.push_back("A: unknown state \"" + s.get<std::string>() + "\"");
            } else {
                seen.insert(states.index_of(s.get<std::string>()));
            }
        }
        return {seen.begin(), seen.end()};
    }
};

} // namespace

Query parse_query(const json& doc, const StateSpace& states) {
    if (!doc.is_object()) throw ValidationError({"query document must be a JSON object"});
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw ValidationError({"query needs a string \"kind\""});
    }
    const std::string kind = doc["kind"].get<std::string>();
    QueryReader in{doc, states, {}};
    Query q;
    const std::size_t d = states.size();

    if (kind == "single_instant" || kind == "time_average") {
        q.kind = kind == "single_instant" ? QueryKind::single_instant : QueryKind::time_average;
        Gamble f = in.has("f") ? in.gamble(doc["f"], "f") : Gamble::constant(d, 0.0);
        const std::size_t n = in.horizon();
        if (q.kind == QueryKind::single_instant) {
            q.spec = spec_single_instant(f, n);
        } else {
            auto scaled = spec_time_average(f, n);
            q.spec = std::move(scaled.spec);
            q.scale = scaled.scale;
        }
    } else if (kind == "sum" || kind == "product") {
        q.kind = kind == "sum" ? QueryKind::sum : QueryKind::product;
        auto fs = in.gambles("fs");
        if (!fs.empty()) q.spec = kind == "sum" ? spec_sum(fs) : spec_product(fs);
    } else if (kind == "hitting_probability" || kind == "hitting_time") {
        q.kind = kind == "hitting_probability" ? QueryKind::hitting_probability : QueryKind::hitting_time;
        q.target = in.target();
        // Limit runs grow the horizon themselves, so n is optional there.
        const std::size_t n = doc.contains("limit") && !doc.contains("n") ? 1 : in.horizon();
        q.spec = q.kind == QueryKind::hitting_probability ? spec_hitting_probability(d, q.target, n)
                                                          : spec_hitting_time(d, q.target, n);
    } else if (kind == "custom") {
        q.kind = QueryKind::custom;
        q.spec.g0 = in.has("g0") ? in.gamble(doc["g0"], "g0") : Gamble::constant(d, 0.0);
        if (doc.contains("steps")) {
            const auto& steps = doc["steps"];
            if (!steps.is_array()) {
                in.problems.emplace_back("\"steps\" must be an array of {\"h\", \"g\"} objects");
            } else {
                for (std::size_t k = 0; k < steps.size(); ++k) {
                    const std::string where = "steps[" + std::to_string(k) + "]";
                    if (!steps[k].is_object() || !steps[k].contains("h") || !steps[k].contains("g")) {
                        in.problems.push_back(where + ": needs \"h\" and \"g\"");
                        continue;
                    }
                    q.spec.steps.push_back({in.gamble(steps[k]["h"], where + ".h"), in.gamble(steps[k]["g"], where + ".g")});
                }
            }
        }
    } else {
        throw ValidationError({"unknown query kind \"" + kind +
                               "\" (expected single_instant, sum, time_average, product, hitting_probability, "
                               "hitting_time or custom)"});
    }

    if (doc.contains("limit")) {
        const auto& j = doc["limit"];
        if (q.kind != QueryKind::hitting_probability && q.kind != QueryKind::hitting_time) {
            in.problems.emplace_back("\"limit\" is only allowed with hitting_probability and hitting_time queries");
        } else if (!j.is_object()) {
            in.problems.emplace_back("\"limit\" must be an object with optional \"tol\" and \"max_horizon\"");
        } else {
            LimitRequest lim;
            if (j.contains("tol")) {
                if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0.0)) {
                    in.problems.emplace_back("limit.tol must be a positive number");
                } else {
                    lim.tol = j["tol"].get<double>();
                }
            }
            if (j.contains("max_horizon")) {
                if (!j["max_horizon"].is_number_integer() || j["max_horizon"].get<long long>() < 2) {
                    in.problems.emplace_back("limit.max_horizon must be an integer >= 2");
                } else {
                    lim.max_horizon = j["max_horizon"].get<std::size_t>();
                }
            }
            q.limit = lim;
        }
    }

    if (!in.problems.empty()) throw ValidationError(in.problems);
    return q;
}

Query parse_query_text(const std::string& text, const StateSpace& states) {
    return parse_query(parse_text(text, "query"), states);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError({"cannot open \"" + path + "\""});
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

json conditional_map(const StateSpace& states, const Gamble& lower, const Gamble& upper) {
    json out = json::object();
    for (std::size_t x = 0; x < states.size(); ++x) out[states.label(x)] = {lower[x], upper[x]};
    return out;
}

void write(std::ostringstream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) os << ",\n";
            first = false;
            os << inner << json(key).dump() << ": ";
            write(os, value, indent + 1);
        }
        os << "\n" << pad << "}";
        return;
    }
    case json::value_t::array: {
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
        if (j.empty()) {
            os << "[]";
        } else if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                write(os, j[i], indent + 1);
            }
            os << "]";
        } else {
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << inner;
                write(os, j[i], indent + 1);
            }
            os << "\n" << pad << "]";
        }
        return;
    }
    case json::value_t::number_float: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        os << buf;
        return;
    }
    default:
        os << j.dump();
    }
}

} // namespace

json bounds_to_json(const StateSpace& states, const BoundsResult& res) {
    return {{"upper", res.upper},
            {"lower", res.lower},
            {"conditional", conditional_map(states, res.lower_conditional, res.upper_conditional)},
            {"lp_calls", res.lp_calls}};
}

json limit_to_json(const StateSpace& states, const LimitResult& res) {
    return {{"upper", res.upper},
            {"lower", res.lower},
            {"conditional", conditional_map(states, res.lower_conditional, res.upper_conditional)},
            {"lp_calls", res.lp_calls},
            {"horizon_reached", res.horizon_reached},
            {"converged", res.converged},
            {"upper_trace", res.upper_trace},
            {"lower_trace", res.lower_trace},
            {"warnings", res.warnings}};
}

std::string dump(const json& doc) {
    std::ostringstream os;
    write(os, doc, 0);
    os << "\n";
    return os.str();
}

} // namespace imc::io
