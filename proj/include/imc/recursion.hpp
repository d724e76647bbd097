#pragma once

#include "imc/credal.hpp"
#include "imc/transition.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace imc {

/// One step of the decomposition tau_{k+1}(x_{1:k+1}) = h(x_1) tau_k(x_{2:k+1}) + g(x_1).
struct RecursionStep {
    Gamble h;
    Gamble g;
    bool operator==(const RecursionStep&) const = default;
};

/// Inference tau_n given by g0 and the steps (h_1, g_1), ..., (h_{n-1}, g_{n-1}).
struct RecursiveSpec {
    Gamble g0;
    std::vector<RecursionStep> steps;

    std::size_t horizon() const noexcept { return 1 + steps.size(); }
    std::size_t dimension() const noexcept { return g0.size(); }

    bool operator==(const RecursiveSpec&) const = default;
};

/// Throws DimensionError unless every gamble in the spec has `n` entries.
void check_spec(const RecursiveSpec& spec, std::size_t n);

struct BoundsResult {
    Gamble upper_conditional; ///< upper expectation of tau_n given X_1 = x
    Gamble lower_conditional; ///< lower expectation of tau_n given X_1 = x
    double upper = 0.0;
    double lower = 0.0;
    std::uint64_t lp_calls = 0;
};

/// Carries the pair of conditional bound vectors forward one step at a time.
///
/// Every step evaluates both T̄ on the upper vector and T̲ on the lower vector
/// (2|X| LPs) and then combines them per state according to the sign of h.
class BoundsRecursion {
public:
    BoundsRecursion(const ImpreciseMarkovChain& model, Gamble g0, OpOptions opts = {});
    /// Starts from an arbitrary (upper, lower) pair at the given horizon.
    BoundsRecursion(const ImpreciseMarkovChain& model, Gamble upper, Gamble lower, std::size_t horizon,
                    OpOptions opts = {});

    void advance(const RecursionStep& step);

    const Gamble& upper() const noexcept { return upper_; }
    const Gamble& lower() const noexcept { return lower_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::uint64_t lp_calls() const noexcept { return lp_calls_; }

private:
    const ImpreciseMarkovChain* model_;
    OpOptions opts_;
    Gamble upper_;
    Gamble lower_;
    std::size_t horizon_;
    std::uint64_t lp_calls_ = 0;
};

/// Conditional upper and lower expectations of tau_n given X_1, in 2(n-1)|X| LPs.
std::pair<Gamble, Gamble> conditional_bounds(const ImpreciseMarkovChain& model, const RecursiveSpec& spec,
                                             OpOptions opts = {});

/// Optimizes the conditional vectors over the initial credal set: (upper, lower).
std::pair<double, double> unconditional_bounds(const ImpreciseMarkovChain& model, const Gamble& upper_cond,
                                               const Gamble& lower_cond, std::uint64_t* lp_calls = nullptr);

/// Full inference: conditional vectors, unconditional bounds and the LP count.
BoundsResult infer(const ImpreciseMarkovChain& model, const RecursiveSpec& spec, OpOptions opts = {});

} // namespace imc
