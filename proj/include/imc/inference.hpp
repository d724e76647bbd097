#pragma once

#include "imc/recursion.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace imc {

// Builders for common inferences. The functions in `fs` are indexed by time:
// fs[0] acts on X_1, fs[1] on X_2, and so on.

/// tau_n = f(X_n): g0 = f, then n-1 steps (h = 1, g = 0).
RecursiveSpec spec_single_instant(const Gamble& f, std::size_t n);

/// tau_n = sum_k f_k(X_k).
RecursiveSpec spec_sum(const std::vector<Gamble>& fs);

struct ScaledSpec {
    RecursiveSpec spec;
    double scale = 1.0; ///< multiply every bound by this after inference
};

/// tau_n = (1/n) sum_k f(X_k), as a sum spec plus the factor 1/n.
ScaledSpec spec_time_average(const Gamble& f, std::size_t n);

/// tau_n = prod_k f_k(X_k); factors may take either sign.
RecursiveSpec spec_product(const std::vector<Gamble>& fs);

/// Indicator that one of X_1, ..., X_n lies in `target` (state indices).
RecursiveSpec spec_hitting_probability(std::size_t states, const std::vector<std::size_t>& target, std::size_t n);

/// Number of steps before the first visit to `target`: 0 if X_1 is in the
/// target, n if none of X_1, ..., X_n is.
RecursiveSpec spec_hitting_time(std::size_t states, const std::vector<std::size_t>& target, std::size_t n);

/// Multiplies all four bounds by a nonnegative factor.
void scale_bounds(BoundsResult& res, double scale);

enum class HittingKind { probability, time };

struct LimitOptions {
    double tol = 1e-6;
    std::size_t max_horizon = 100000;
};

struct LimitResult {
    double upper = 0.0;
    double lower = 0.0;
    std::size_t horizon_reached = 0;
    bool converged = false;
    std::vector<double> upper_trace; ///< unconditional upper bound at horizons 1..horizon_reached
    std::vector<double> lower_trace;
    Gamble upper_conditional;
    Gamble lower_conditional;
    std::uint64_t lp_calls = 0;
    std::vector<std::string> warnings;
};

/// Approximates an unbounded-horizon hitting inference by growing the horizon
/// one step at a time until successive unconditional bounds differ by less
/// than `tol` (both of them), or `max_horizon` is reached.
LimitResult limit_infer(const ImpreciseMarkovChain& model, HittingKind kind, const std::vector<std::size_t>& target,
                        LimitOptions options = {}, OpOptions opts = {});

} // namespace imc
