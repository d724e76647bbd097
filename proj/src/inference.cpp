#include "imc/inference.hpp"

#include "imc/errors.hpp"

#include <cmath>

namespace imc {

namespace {

void require_horizon(std::size_t n) {
    if (n < 1) throw ValidationError({"horizon n must be at least 1"});
}

Gamble complement(const Gamble& indicator) {
    Gamble out = -indicator;
    out += 1.0;
    return out;
}

// Builds g0, then steps k = 1..n-1 with h_k = h(k), g_k = g(k).
template <class H, class G>
RecursiveSpec build(Gamble g0, std::size_t n, H&& h, G&& g) {
    RecursiveSpec spec{std::move(g0), {}};
    spec.steps.reserve(n - 1);
    for (std::size_t k = 1; k < n; ++k) spec.steps.push_back({h(k), g(k)});
    return spec;
}

} // namespace

RecursiveSpec spec_single_instant(const Gamble& f, std::size_t n) {
    require_horizon(n);
    const std::size_t d = f.size();
    return build(
        f, n, [d](std::size_t) { return Gamble::constant(d, 1.0); },
        [d](std::size_t) { return Gamble::constant(d, 0.0); });
}

RecursiveSpec spec_sum(const std::vector<Gamble>& fs) {
    if (fs.empty()) throw ValidationError({"sum needs at least one function"});
    const std::size_t n = fs.size();
    const std::size_t d = fs.front().size();
    // g0 = f_n and step k carries f_{n-k} (1-based), i.e. fs[n-1-k].
    return build(
        fs.back(), n, [d](std::size_t) { return Gamble::constant(d, 1.0); },
        [&](std::size_t k) { return fs[n - 1 - k]; });
}

ScaledSpec spec_time_average(const Gamble& f, std::size_t n) {
    require_horizon(n);
    return {spec_sum(std::vector<Gamble>(n, f)), 1.0 / static_cast<double>(n)};
}

RecursiveSpec spec_product(const std::vector<Gamble>& fs) {
    if (fs.empty()) throw ValidationError({"product needs at least one function"});
    const std::size_t n = fs.size();
    const std::size_t d = fs.front().size();
    return build(
        fs.back(), n, [&](std::size_t k) { return fs[n - 1 - k]; },
        [d](std::size_t) { return Gamble::constant(d, 0.0); });
}

RecursiveSpec spec_hitting_probability(std::size_t states, const std::vector<std::size_t>& target, std::size_t n) {
    require_horizon(n);
    const Gamble in_target = Gamble::indicator(states, target);
    const Gamble outside = complement(in_target);
    return build(
        in_target, n, [&](std::size_t) { return outside; }, [&](std::size_t) { return in_target; });
}

RecursiveSpec spec_hitting_time(std::size_t states, const std::vector<std::size_t>& target, std::size_t n) {
    require_horizon(n);
    const Gamble outside = complement(Gamble::indicator(states, target));
    return build(
        outside, n, [&](std::size_t) { return outside; }, [&](std::size_t) { return outside; });
}

void scale_bounds(BoundsResult& res, double scale) {
    if (scale < 0.0) throw ValidationError({"bound scale must be nonnegative"});
    res.upper_conditional *= scale;
    res.lower_conditional *= scale;
    res.upper *= scale;
    res.lower *= scale;
}

LimitResult limit_infer(const ImpreciseMarkovChain& model, HittingKind kind, const std::vector<std::size_t>& target,
                        LimitOptions options, OpOptions opts) {
    if (!(options.tol > 0.0)) throw ValidationError({"limit tolerance must be positive"});
    if (options.max_horizon < 2) throw ValidationError({"limit max_horizon must be at least 2"});

    // Both hitting families repeat a single step; horizon 2 yields it.
    const RecursiveSpec spec = kind == HittingKind::probability ? spec_hitting_probability(model.size(), target, 2)
                                                                : spec_hitting_time(model.size(), target, 2);
    const RecursionStep& step = spec.steps.front();

    LimitResult res;
    res.warnings.push_back(
        "convergence of finite-horizon bounds to the unbounded-horizon bounds is guaranteed only if the "
        "transition credal sets are convex and closed");

    BoundsRecursion rec(model, spec.g0, opts);
    auto record = [&] {
        auto [up, lo] = unconditional_bounds(model, rec.upper(), rec.lower(), &res.lp_calls);
        res.upper_trace.push_back(up);
        res.lower_trace.push_back(lo);
        res.upper = up;
        res.lower = lo;
        res.horizon_reached = rec.horizon();
    };
    record();

    while (rec.horizon() < options.max_horizon) {
        try {
            rec.advance(step);
        } catch (const NumericalError& e) {
            res.warnings.emplace_back(e.what());
            break;
        }
        record();
        const std::size_t m = res.upper_trace.size();
        if (!std::isfinite(res.upper) || !std::isfinite(res.lower)) {
            res.warnings.emplace_back("non-finite bound encountered; sequence diverges");
            break;
        }
        if (std::abs(res.upper_trace[m - 1] - res.upper_trace[m - 2]) < options.tol &&
            std::abs(res.lower_trace[m - 1] - res.lower_trace[m - 2]) < options.tol) {
            res.converged = true;
            break;
        }
    }
    res.upper_conditional = rec.upper();
    res.lower_conditional = rec.lower();
    res.lp_calls += rec.lp_calls();
    if (opts.lp_calls) *opts.lp_calls += res.lp_calls;
    return res;
}

} // namespace imc
