#pragma once

#include "imc/credal.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace imc {

/// Tolerance used for maximizer membership checks.
inline constexpr double kFeasTol = 1e-8;
/// Smallest pivot magnitude the simplex accepts.
inline constexpr double kPivotTol = 1e-9;

struct LpResult {
    double value = 0.0;
    Pmf maximizer;
    std::size_t iterations = 0;
};

/// sup over p in row of sum_y p(y) objective(y), with an optimal pmf.
LpResult maximize(const CredalRow& row, const Gamble& objective);

/// inf over the row; the reported pmf is the minimizer.
LpResult minimize(const CredalRow& row, const Gamble& objective);

/// True iff the row's membership set is nonempty.
bool feasible(const CredalRow& row);

namespace simplex {

struct Solution {
    double value = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
};

/// Dense two-phase simplex with Bland's rule for
///
///     max c.x  s.t.  A x <= b,  sum x = 1,  x >= 0.
///
/// Returns nullopt when the feasible region is empty. Throws NumericalError
/// if phase two reports unboundedness, which the unit-simplex constraint rules out.
std::optional<Solution> maximize_on_simplex(std::span<const double> c,
                                            const std::vector<std::vector<double>>& A,
                                            std::span<const double> b);

} // namespace simplex

} // namespace imc
