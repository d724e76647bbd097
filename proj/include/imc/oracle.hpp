#pragma once

#include "imc/recursion.hpp"
#include "imc/transition.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace imc::oracle {

/// Default cap on the number of vertex assignments the enumerator visits per initial state.
inline constexpr std::size_t kDefaultAssignmentCap = 1'000'000;

/// Evaluates tau_n on every history in X^n by unrolling the spec.
HistoryFunction materialize_tau(const RecursiveSpec& spec, std::size_t cap = kDefaultHistoryCap);

/// Backward induction over the full history tree: applies the extended
/// upper (lower) operator n-1 times to reach the conditional vectors given X_1.
/// Solves 2 * sum_{i=1}^{n-1} |X|^i row LPs.
std::pair<Gamble, Gamble> naive_conditional_bounds(const ImpreciseMarkovChain& model, const HistoryFunction& F,
                                                   OpOptions opts = {});

/// Extreme points of a row usable by the enumerator. Vertex rows are returned
/// as-is; two-state interval rows are converted to their endpoint pmfs. Any
/// other representation throws ValidationError.
std::vector<Pmf> row_vertices(const CredalRow& row);

/// Brute force over every assignment of an extreme pmf to each history node of
/// depth < n. Returns the componentwise (max, min) over assignments of the
/// precise expectation of F given X_1 = x.
std::pair<std::vector<double>, std::vector<double>>
enumerate_vertex_processes(const ImpreciseMarkovChain& model, const HistoryFunction& F,
                           std::size_t assignment_cap = kDefaultAssignmentCap, Execution exec = Execution::serial);

} // namespace imc::oracle
