#include "imc/oracle.hpp"

#include "imc/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace imc::oracle {

HistoryFunction materialize_tau(const RecursiveSpec& spec, std::size_t cap) {
    const std::size_t n = spec.dimension();
    check_spec(spec, n);
    HistoryFunction::checked_size(n, spec.horizon(), cap);

    std::vector<double> tau(spec.g0.values().begin(), spec.g0.values().end());
    for (const auto& step : spec.steps) {
        // tau_{k+1}(x_1, rest) = h(x_1) tau_k(rest) + g(x_1); x_1 is the most significant digit.
        const std::size_t block = tau.size();
        std::vector<double> next(block * n);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t r = 0; r < block; ++r) next[x * block + r] = step.h[x] * tau[r] + step.g[x];
        }
        tau = std::move(next);
    }
    return HistoryFunction(n, spec.horizon(), std::move(tau), cap);
}

std::pair<Gamble, Gamble> naive_conditional_bounds(const ImpreciseMarkovChain& model, const HistoryFunction& F,
                                                   OpOptions opts) {
    if (F.states() != model.size()) throw DimensionError("history function does not match the state space");
    if (F.horizon() == 1) return {F.as_gamble(), F.as_gamble()};
    HistoryFunction upper = extended_upper(model, F, opts);
    while (upper.horizon() > 1) upper = extended_upper(model, upper, opts);
    HistoryFunction lower = extended_lower(model, F, opts);
    while (lower.horizon() > 1) lower = extended_lower(model, lower, opts);
    return {upper.as_gamble(), lower.as_gamble()};
}

std::vector<Pmf> row_vertices(const CredalRow& row) {
    if (const auto* r = std::get_if<VertexRow>(&row.representation())) return r->vertices;
    if (const auto* r = std::get_if<IntervalRow>(&row.representation())) {
        if (r->lower.size() != 2) {
            throw ValidationError({"interval rows can be converted to vertices only on two states"});
        }
        // p(0) ranges over [max(l0, 1-u1), min(u0, 1-l1)].
        const double lo = std::max(r->lower[0], 1.0 - r->upper[1]);
        const double hi = std::min(r->upper[0], 1.0 - r->lower[1]);
        std::vector<Pmf> out{Pmf::unchecked({hi, 1.0 - hi})};
        if (lo != hi) out.push_back(Pmf::unchecked({lo, 1.0 - lo}));
        return out;
    }
    throw ValidationError({"constraint rows must be given as explicit vertices for enumeration"});
}

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) out *= base;
    return out;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>>
enumerate_vertex_processes(const ImpreciseMarkovChain& model, const HistoryFunction& F, std::size_t assignment_cap,
                           Execution exec) {
    const std::size_t n = model.size();
    if (F.states() != n) throw DimensionError("history function does not match the state space");
    const std::size_t horizon = F.horizon();

    std::vector<std::vector<Pmf>> vertices;
    vertices.reserve(n);
    for (const auto& row : model.rows) vertices.push_back(row_vertices(row));

    std::vector<double> best(n), worst(n);
    const std::size_t leaves = power(n, horizon - 1);

    for (std::size_t x1 = 0; x1 < n; ++x1) {
        const auto leaf_values = F.values().subspan(x1 * leaves, leaves);
        if (horizon == 1) {
            best[x1] = worst[x1] = leaf_values[0];
            continue;
        }

        // Nodes of the subtree below x1, depth by depth; a node at depth d is
        // the history x1 followed by the base-|X| digits of its suffix index.
        std::vector<std::size_t> node_row;
        for (std::size_t d = 1; d < horizon; ++d) {
            const std::size_t count = power(n, d - 1);
            for (std::size_t r = 0; r < count; ++r) node_row.push_back(d == 1 ? x1 : r % n);
        }
        std::size_t total = 1;
        for (std::size_t row : node_row) {
            const std::size_t k = vertices[row].size();
            if (total > assignment_cap / k) {
                throw CapExceeded("vertex enumeration exceeds the cap of " + std::to_string(assignment_cap) +
                                  " assignments");
            }
            total *= k;
        }

        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        const auto total_i = static_cast<std::int64_t>(total);
        const bool parallel = exec == Execution::parallel;

#pragma omp parallel if (parallel)
        {
            std::vector<std::size_t> choice(node_row.size());
            std::vector<double> deeper, current;
#pragma omp for schedule(static) reduction(max : hi) reduction(min : lo)
            for (std::int64_t a = 0; a < total_i; ++a) {
                auto rest = static_cast<std::size_t>(a);
                for (std::size_t i = 0; i < node_row.size(); ++i) {
                    const std::size_t k = vertices[node_row[i]].size();
                    choice[i] = rest % k;
                    rest /= k;
                }
                deeper.assign(leaf_values.begin(), leaf_values.end());
                std::size_t offset = node_row.size();
                for (std::size_t d = horizon - 1; d >= 1; --d) {
                    const std::size_t count = power(n, d - 1);
                    offset -= count;
                    current.assign(count, 0.0);
                    for (std::size_t r = 0; r < count; ++r) {
                        const Pmf& p = vertices[node_row[offset + r]][choice[offset + r]];
                        double s = 0.0;
                        for (std::size_t y = 0; y < n; ++y) s += p[y] * deeper[r * n + y];
                        current[r] = s;
                    }
                    std::swap(deeper, current);
                }
                hi = std::max(hi, deeper[0]);
                lo = std::min(lo, deeper[0]);
            }
        }
        best[x1] = hi;
        worst[x1] = lo;
    }
    return {best, worst};
}

} // namespace imc::oracle
