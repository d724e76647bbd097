#include "imc/cli.hpp"

#include "imc/errors.hpp"
#include "imc/inference.hpp"
#include "imc/io.hpp"
#include "imc/oracle.hpp"
#include "imc/recursion.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>
#include <iostream>

namespace imc::cli {

namespace {

/// Engine/oracle agreement threshold for `check`.
constexpr double kCheckTolerance = 1e-8;

struct Flags {
    std::string model_path;
    std::string query_path;
    std::string output;
    double tol = 1e-6;
    std::size_t max_horizon = 100000;
    double oracle_cap = 1e7;
    int threads = 1;
};

OpOptions op_options(const Flags& f) {
    OpOptions opts;
    if (f.threads != 1) {
        if (f.threads > 1) omp_set_num_threads(f.threads);
        opts.execution = Execution::parallel;
    }
    return opts;
}

void emit(const Flags& f, const io::json& doc, std::ostream& out) {
    const std::string text = io::dump(doc);
    if (f.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(f.output, std::ios::binary);
    if (!file) throw ValidationError({"cannot write \"" + f.output + "\""});
    file << text;
}

double max_abs_diff(const Gamble& a, const Gamble& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

int cmd_validate(const Flags& f, std::ostream& out) {
    const auto model = io::parse_model_text(io::read_file(f.model_path));
    out << "model is valid: " << model.size() << " states\n";
    return kOk;
}

int cmd_infer(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto model = io::parse_model_text(io::read_file(f.model_path));
    const auto query = io::parse_query_text(io::read_file(f.query_path), model.states);
    const OpOptions opts = op_options(f);

    if (query.kind == io::QueryKind::hitting_time && query.target.empty()) {
        err << "warning: hitting_time with an empty target set never hits; the bound equals the horizon\n";
    }

    io::json doc;
    if (query.limit) {
        LimitOptions lim{query.limit->tol.value_or(f.tol), query.limit->max_horizon.value_or(f.max_horizon)};
        const auto kind =
            query.kind == io::QueryKind::hitting_probability ? HittingKind::probability : HittingKind::time;
        const auto res = limit_infer(model, kind, query.target, lim, opts);
        for (const auto& w : res.warnings) err << "warning: " << w << "\n";
        doc = io::limit_to_json(model.states, res);
    } else {
        auto res = infer(model, query.spec, opts);
        scale_bounds(res, query.scale);
        doc = io::bounds_to_json(model.states, res);
        doc["horizon"] = query.spec.horizon();
    }
    doc["kind"] = io::to_string(query.kind);
    emit(f, doc, out);
    return kOk;
}

int cmd_check(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto model = io::parse_model_text(io::read_file(f.model_path));
    const auto query = io::parse_query_text(io::read_file(f.query_path), model.states);
    const OpOptions opts = op_options(f);
    if (query.limit) err << "note: check runs at the query's horizon n; the limit block is ignored\n";
    if (!(f.oracle_cap >= 1.0)) throw ValidationError({"--oracle-cap must be at least 1"});
    const auto cap = static_cast<std::size_t>(std::min(f.oracle_cap, 1e18));

    const auto tau = oracle::materialize_tau(query.spec, cap);

    std::uint64_t engine_calls = 0;
    OpOptions engine_opts = opts;
    engine_opts.lp_calls = &engine_calls;
    auto [eu, el] = conditional_bounds(model, query.spec, engine_opts);

    std::uint64_t oracle_calls = 0;
    OpOptions oracle_opts = opts;
    oracle_opts.lp_calls = &oracle_calls;
    auto [ou, ol] = oracle::naive_conditional_bounds(model, tau, oracle_opts);

    auto finish = [&](Gamble up, Gamble lo, std::uint64_t calls) {
        BoundsResult r;
        std::tie(r.upper, r.lower) = unconditional_bounds(model, up, lo);
        r.upper_conditional = std::move(up);
        r.lower_conditional = std::move(lo);
        r.lp_calls = calls;
        scale_bounds(r, query.scale);
        return r;
    };
    const BoundsResult engine = finish(std::move(eu), std::move(el), engine_calls);
    const BoundsResult naive = finish(std::move(ou), std::move(ol), oracle_calls);

    const double discrepancy = std::max({max_abs_diff(engine.upper_conditional, naive.upper_conditional),
                                         max_abs_diff(engine.lower_conditional, naive.lower_conditional),
                                         std::abs(engine.upper - naive.upper), std::abs(engine.lower - naive.lower)});
    const bool agree = discrepancy < kCheckTolerance;

    io::json doc = {{"kind", io::to_string(query.kind)},
                    {"horizon", query.spec.horizon()},
                    {"engine", io::bounds_to_json(model.states, engine)},
                    {"oracle", io::bounds_to_json(model.states, naive)},
                    {"max_abs_discrepancy", discrepancy},
                    {"tolerance", kCheckTolerance},
                    {"agree", agree}};
    emit(f, doc, out);
    if (!agree) err << "error: engine and oracle disagree by " << discrepancy << "\n";
    return agree ? kOk : kNumericalFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower and upper expectations for imprecise Markov chains", "imc"};
    app.require_subcommand(1);
    Flags f;

    auto* validate = app.add_subcommand("validate", "Check a model file against every model invariant");
    validate->add_option("model", f.model_path, "Model file")->required();

    auto* infer_cmd = app.add_subcommand("infer", "Compute lower and upper expectations for a query");
    infer_cmd->add_option("model", f.model_path, "Model file")->required();
    infer_cmd->add_option("query", f.query_path, "Query file")->required();
    infer_cmd->add_option("--tol", f.tol, "Limit-run stopping tolerance (when the query has no limit.tol)")
        ->capture_default_str();
    infer_cmd->add_option("--max-horizon", f.max_horizon, "Limit-run horizon cap (when the query has none)")
        ->capture_default_str();

    auto* check = app.add_subcommand("check", "Compare the linear-time engine against the exhaustive oracle");
    check->add_option("model", f.model_path, "Model file")->required();
    check->add_option("query", f.query_path, "Query file")->required();
    check->add_option("--oracle-cap", f.oracle_cap, "Maximum number of history-function entries")
        ->capture_default_str();

    for (auto* sub : {infer_cmd, check}) {
        sub->add_option("--threads", f.threads, "Worker threads for per-state LPs (0 = all cores)")
            ->capture_default_str();
    }
    for (auto* sub : {validate, infer_cmd, check}) {
        sub->add_option("-o,--output", f.output, "Write the result document here instead of stdout");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(f, out);
        if (infer_cmd->parsed()) return cmd_infer(f, out, err);
        return cmd_check(f, out, err);
    } catch (const ValidationError& e) {
        err << "error: invalid input\n";
        for (const auto& v : e.violations()) err << "  - " << v << "\n";
        return kInvalidInput;
    } catch (const DimensionError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const NumericalError& e) {
        err << "error: numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

} // namespace imc::cli
