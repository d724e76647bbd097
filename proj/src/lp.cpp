#include "imc/lp.hpp"

#include "imc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace imc {

namespace simplex {

namespace {

constexpr std::size_t kMaxPivots = 100000;

// Dense tableau. Row i < rows holds the constraint coefficients and the
// right-hand side in the last column; basis[i] is the basic column of row i.
struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0; // structural + slack + artificial columns
    std::vector<double> a; // rows x (cols + 1)
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return a[i * (cols + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * (cols + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols); }
    double rhs(std::size_t i) const { return at(i, cols); }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= cols; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis[r] = c;
    }
};

// Maximizes cost.x over the tableau's current basic feasible solution using
// Bland's rule. Columns with allowed[j] == false never enter. Returns false on
// unboundedness.
bool optimize(Tableau& t, const std::vector<double>& cost, const std::vector<bool>& allowed,
              std::size_t& iterations) {
    std::vector<double> reduced(t.cols);
    for (;;) {
        for (std::size_t j = 0; j < t.cols; ++j) {
            double r = cost[j];
            for (std::size_t i = 0; i < t.rows; ++i) r -= cost[t.basis[i]] * t.at(i, j);
            reduced[j] = r;
        }
        std::size_t enter = t.cols;
        for (std::size_t j = 0; j < t.cols; ++j) {
            if (allowed[j] && reduced[j] > kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter == t.cols) return true;

        std::size_t leave = t.rows;
        double best = 0.0;
        for (std::size_t i = 0; i < t.rows; ++i) {
            const double aij = t.at(i, enter);
            if (aij <= kPivotTol) continue;
            const double ratio = t.rhs(i) / aij;
            if (leave == t.rows || ratio < best - 1e-15 ||
                (std::abs(ratio - best) <= 1e-15 && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.rows) return false;
        t.pivot(leave, enter);
        if (++iterations > kMaxPivots) throw NumericalError("simplex exceeded pivot limit");
    }
}

} // namespace

std::optional<Solution> maximize_on_simplex(std::span<const double> c, const std::vector<std::vector<double>>& A,
                                            std::span<const double> b) {
    const std::size_t n = c.size();
    const std::size_t m = A.size();
    if (b.size() != m) throw DimensionError("constraint matrix and bound vector disagree");
    for (const auto& row : A) {
        if (row.size() != n) throw DimensionError("constraint row has wrong length");
    }

    std::size_t n_art = 1; // the sum-to-one row
    for (double bi : b) n_art += bi < 0.0 ? 1 : 0;

    Tableau t;
    t.rows = m + 1;
    t.cols = n + m + n_art;
    t.a.assign(t.rows * (t.cols + 1), 0.0);
    t.basis.assign(t.rows, 0);

    std::size_t art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * A[i][j];
        t.at(i, n + i) = sign;
        t.rhs(i) = sign * b[i];
        if (b[i] < 0.0) {
            t.at(i, art) = 1.0;
            t.basis[i] = art++;
        } else {
            t.basis[i] = n + i;
        }
    }
    for (std::size_t j = 0; j < n; ++j) t.at(m, j) = 1.0;
    t.at(m, art) = 1.0;
    t.rhs(m) = 1.0;
    t.basis[m] = art;

    Solution sol;

    // Phase one: drive the artificials to zero.
    std::vector<double> phase1(t.cols, 0.0);
    for (std::size_t j = n + m; j < t.cols; ++j) phase1[j] = -1.0;
    std::vector<bool> allowed(t.cols, true);
    if (!optimize(t, phase1, allowed, sol.iterations)) throw NumericalError("phase one of simplex is unbounded");

    double infeasibility = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (t.basis[i] >= n + m) infeasibility += t.rhs(i);
    }
    if (infeasibility > kPivotTol) return std::nullopt;

    // Pivot remaining (zero-valued) artificials out where a structural or slack column allows it.
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (t.basis[i] < n + m) continue;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (std::abs(t.at(i, j)) > kPivotTol) {
                t.pivot(i, j);
                ++sol.iterations;
                break;
            }
        }
    }

    // Phase two.
    std::vector<double> phase2(t.cols, 0.0);
    std::copy(c.begin(), c.end(), phase2.begin());
    for (std::size_t j = n + m; j < t.cols; ++j) allowed[j] = false;
    if (!optimize(t, phase2, allowed, sol.iterations)) {
        throw NumericalError("simplex reported an unbounded objective over the probability simplex");
    }

    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (t.basis[i] < n) sol.x[t.basis[i]] = std::max(0.0, t.rhs(i));
    }
    sol.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.value += c[j] * sol.x[j];
    return sol;
}

} // namespace simplex

namespace {

LpResult maximize_intervals(const IntervalRow& r, const Gamble& f) {
    const std::size_t n = f.size();
    std::vector<double> p = r.lower;
    double remaining = 1.0 - std::accumulate(r.lower.begin(), r.lower.end(), 0.0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

    LpResult res;
    for (std::size_t y : order) {
        if (remaining <= 0.0) break;
        const double add = std::min(r.upper[y] - r.lower[y], remaining);
        p[y] += add;
        remaining -= add;
        ++res.iterations;
    }
    res.value = expectation(p, f.values());
    res.maximizer = Pmf::unchecked(std::move(p));
    return res;
}

LpResult maximize_vertices(const VertexRow& r, const Gamble& f) {
    LpResult res;
    std::size_t best = 0;
    double best_value = expectation(r.vertices.front(), f);
    for (std::size_t k = 1; k < r.vertices.size(); ++k) {
        const double v = expectation(r.vertices[k], f);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    res.value = best_value;
    res.maximizer = r.vertices[best];
    res.iterations = r.vertices.size();
    return res;
}

LpResult maximize_constraints(const ConstraintRow& r, const Gamble& f) {
    auto sol = simplex::maximize_on_simplex(f.values(), r.A, r.b);
    if (!sol) throw NumericalError("constraint row is infeasible");
    LpResult res;
    res.value = sol->value;
    res.maximizer = Pmf::unchecked(std::move(sol->x));
    res.iterations = sol->iterations;
    return res;
}

} // namespace

LpResult maximize(const CredalRow& row, const Gamble& objective) {
    if (row.dimension() != objective.size()) throw DimensionError("objective does not match row dimension");
    return std::visit(
        [&](const auto& r) -> LpResult {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, IntervalRow>) {
                return maximize_intervals(r, objective);
            } else if constexpr (std::is_same_v<R, VertexRow>) {
                return maximize_vertices(r, objective);
            } else {
                return maximize_constraints(r, objective);
            }
        },
        row.representation());
}

LpResult minimize(const CredalRow& row, const Gamble& objective) {
    LpResult res = maximize(row, -objective);
    res.value = -res.value;
    return res;
}

bool feasible(const CredalRow& row) {
    if (const auto* r = std::get_if<IntervalRow>(&row.representation())) {
        if (r->lower.size() != r->upper.size() || r->lower.empty()) return false;
        for (std::size_t i = 0; i < r->lower.size(); ++i) {
            if (r->lower[i] > r->upper[i]) return false;
        }
        const double sl = std::accumulate(r->lower.begin(), r->lower.end(), 0.0);
        const double su = std::accumulate(r->upper.begin(), r->upper.end(), 0.0);
        return sl <= 1.0 + kProbTol && su >= 1.0 - kProbTol;
    }
    if (const auto* r = std::get_if<VertexRow>(&row.representation())) {
        if (r->vertices.empty()) return false;
        const std::size_t n = r->vertices.front().size();
        return std::all_of(r->vertices.begin(), r->vertices.end(), [n](const Pmf& v) {
            return v.size() == n && pmf_violations(v.probs()).empty();
        });
    }
    const auto& r = std::get<ConstraintRow>(row.representation());
    if (r.A.empty()) return true; // the whole probability simplex
    std::vector<double> zero(r.A.front().size(), 0.0);
    return simplex::maximize_on_simplex(zero, r.A, r.b).has_value();
}

} // namespace imc
