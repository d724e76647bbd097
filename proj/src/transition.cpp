#include "imc/transition.hpp"

#include "imc/errors.hpp"
#include "imc/lp.hpp"
#include "parallel.hpp"

#include <cmath>
#include <limits>

namespace imc {

namespace {

void check_dims(const ImpreciseMarkovChain& model, std::size_t n) {
    if (model.rows.size() != model.size()) throw DimensionError("model has the wrong number of rows");
    if (n != model.size()) throw DimensionError("gamble does not match the state space");
}

void count(const OpOptions& opts, std::size_t calls) {
    if (opts.lp_calls) *opts.lp_calls += calls;
}

} // namespace

Gamble upper_T(const ImpreciseMarkovChain& model, const Gamble& f, OpOptions opts) {
    check_dims(model, f.size());
    std::vector<double> out(f.size());
    detail::for_each_index(f.size(), opts.execution,
                           [&](std::size_t x) { out[x] = maximize(model.rows[x], f).value; });
    count(opts, f.size());
    return Gamble(std::move(out));
}

Gamble lower_T(const ImpreciseMarkovChain& model, const Gamble& f, OpOptions opts) {
    check_dims(model, f.size());
    std::vector<double> out(f.size());
    detail::for_each_index(f.size(), opts.execution,
                           [&](std::size_t x) { out[x] = minimize(model.rows[x], f).value; });
    count(opts, f.size());
    return Gamble(std::move(out));
}

Gamble iterate_upper(const ImpreciseMarkovChain& model, const Gamble& f, std::size_t k, OpOptions opts) {
    Gamble g = f;
    for (std::size_t i = 0; i < k; ++i) g = upper_T(model, g, opts);
    return g;
}

Gamble iterate_lower(const ImpreciseMarkovChain& model, const Gamble& f, std::size_t k, OpOptions opts) {
    Gamble g = f;
    for (std::size_t i = 0; i < k; ++i) g = lower_T(model, g, opts);
    return g;
}

// ---------------------------------------------------------------------------
// HistoryFunction

std::size_t HistoryFunction::checked_size(std::size_t states, std::size_t horizon, std::size_t cap) {
    if (states == 0) throw DimensionError("history function needs a non-empty state space");
    if (horizon == 0) throw DimensionError("history function horizon must be positive");
    std::size_t size = 1;
    for (std::size_t i = 0; i < horizon; ++i) {
        if (size > cap / states) {
            throw CapExceeded("history function with " + std::to_string(states) + "^" + std::to_string(horizon) +
                              " entries exceeds the cap of " + std::to_string(cap));
        }
        size *= states;
    }
    return size;
}

HistoryFunction::HistoryFunction(std::size_t states, std::size_t horizon, std::vector<double> values,
                                 std::size_t cap)
    : states_(states), horizon_(horizon), cap_(cap), values_(std::move(values)) {
    if (values_.size() != checked_size(states, horizon, cap)) {
        throw DimensionError("history function values have the wrong length");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw NumericalError("history function entries must be finite");
    }
}

HistoryFunction HistoryFunction::filled(std::size_t states, std::size_t horizon, double value, std::size_t cap) {
    return HistoryFunction(states, horizon, std::vector<double>(checked_size(states, horizon, cap), value), cap);
}

double HistoryFunction::at(std::span<const std::size_t> history) const {
    if (history.size() != horizon_) throw DimensionError("history has the wrong length");
    std::size_t flat = 0;
    for (std::size_t x : history) {
        if (x >= states_) throw DimensionError("state index out of range");
        flat = flat * states_ + x;
    }
    return values_[flat];
}

Gamble HistoryFunction::as_gamble() const {
    if (horizon_ != 1) throw DimensionError("only horizon-1 history functions are gambles");
    return Gamble(values_);
}

namespace {

template <bool Upper>
HistoryFunction extended(const ImpreciseMarkovChain& model, const HistoryFunction& F, OpOptions opts) {
    check_dims(model, F.states());
    if (F.horizon() < 2) throw DimensionError("extended operator needs horizon >= 2");
    const std::size_t n = F.states();
    const std::size_t out_size = F.size() / n;
    std::vector<double> out(out_size);
    const auto values = F.values();
    detail::for_each_index(out_size, opts.execution, [&](std::size_t h) {
        // The last-coordinate slice of history h is the contiguous block [h*n, h*n + n).
        Gamble slice(std::vector<double>(values.begin() + h * n, values.begin() + (h + 1) * n));
        const CredalRow& row = model.rows[h % n];
        out[h] = Upper ? maximize(row, slice).value : minimize(row, slice).value;
    });
    count(opts, out_size);
    return HistoryFunction(n, F.horizon() - 1, std::move(out), F.cap());
}

} // namespace

HistoryFunction extended_upper(const ImpreciseMarkovChain& model, const HistoryFunction& F, OpOptions opts) {
    return extended<true>(model, F, opts);
}

HistoryFunction extended_lower(const ImpreciseMarkovChain& model, const HistoryFunction& F, OpOptions opts) {
    return extended<false>(model, F, opts);
}

} // namespace imc
