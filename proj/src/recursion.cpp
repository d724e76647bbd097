#include "imc/recursion.hpp"

#include "imc/errors.hpp"
#include "imc/lp.hpp"

#include <cassert>
#include <cmath>
#include <tuple>

namespace imc {

void check_spec(const RecursiveSpec& spec, std::size_t n) {
    if (spec.g0.size() != n) throw DimensionError("g0 does not match the state space");
    for (std::size_t k = 0; k < spec.steps.size(); ++k) {
        if (spec.steps[k].h.size() != n || spec.steps[k].g.size() != n) {
            throw DimensionError("step " + std::to_string(k + 1) + " does not match the state space");
        }
    }
}

BoundsRecursion::BoundsRecursion(const ImpreciseMarkovChain& model, Gamble g0, OpOptions opts)
    : BoundsRecursion(model, g0, g0, 1, opts) {}

BoundsRecursion::BoundsRecursion(const ImpreciseMarkovChain& model, Gamble upper, Gamble lower,
                                 std::size_t horizon, OpOptions opts)
    : model_(&model), opts_(opts), upper_(std::move(upper)), lower_(std::move(lower)), horizon_(horizon) {
    if (upper_.size() != model.size() || lower_.size() != model.size()) {
        throw DimensionError("initial bound vectors do not match the state space");
    }
    opts_.lp_calls = &lp_calls_;
}

void BoundsRecursion::advance(const RecursionStep& step) {
    const std::size_t n = model_->size();
    if (step.h.size() != n || step.g.size() != n) throw DimensionError("step does not match the state space");

    const Gamble U = upper_T(*model_, upper_, opts_);
    const Gamble L = lower_T(*model_, lower_, opts_);

    std::vector<double> next_upper(n), next_lower(n);
    for (std::size_t x = 0; x < n; ++x) {
        const double h = step.h[x];
        if (h >= 0.0) {
            next_upper[x] = h * U[x] + step.g[x];
            next_lower[x] = h * L[x] + step.g[x];
        } else {
            next_upper[x] = h * L[x] + step.g[x];
            next_lower[x] = h * U[x] + step.g[x];
        }
        assert(h != 0.0 || (next_upper[x] == step.g[x] && next_lower[x] == step.g[x]));
        if (!std::isfinite(next_upper[x]) || !std::isfinite(next_lower[x])) {
            throw NumericalError("recursion produced a non-finite value at horizon " + std::to_string(horizon_ + 1));
        }
    }
    upper_ = Gamble(std::move(next_upper));
    lower_ = Gamble(std::move(next_lower));
    ++horizon_;
}

std::pair<Gamble, Gamble> conditional_bounds(const ImpreciseMarkovChain& model, const RecursiveSpec& spec,
                                             OpOptions opts) {
    check_spec(spec, model.size());
    BoundsRecursion rec(model, spec.g0, opts);
    for (const auto& step : spec.steps) rec.advance(step);
    if (opts.lp_calls) *opts.lp_calls += rec.lp_calls();
    return {rec.upper(), rec.lower()};
}

std::pair<double, double> unconditional_bounds(const ImpreciseMarkovChain& model, const Gamble& upper_cond,
                                               const Gamble& lower_cond, std::uint64_t* lp_calls) {
    const double upper = maximize(model.initial, upper_cond).value;
    const double lower = minimize(model.initial, lower_cond).value;
    if (lp_calls) *lp_calls += 2;
    return {upper, lower};
}

BoundsResult infer(const ImpreciseMarkovChain& model, const RecursiveSpec& spec, OpOptions opts) {
    BoundsResult res;
    OpOptions counted = opts;
    counted.lp_calls = &res.lp_calls;
    auto [up, lo] = conditional_bounds(model, spec, counted);
    std::tie(res.upper, res.lower) = unconditional_bounds(model, up, lo, &res.lp_calls);
    res.upper_conditional = std::move(up);
    res.lower_conditional = std::move(lo);
    if (opts.lp_calls) *opts.lp_calls += res.lp_calls;
    return res;
}

} // namespace imc
