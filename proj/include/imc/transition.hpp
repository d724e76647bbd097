#pragma once

#include "imc/credal.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace imc {

/// Default cap on the number of entries of a materialized history function.
inline constexpr std::size_t kDefaultHistoryCap = 10'000'000;

enum class Execution {
    serial,   ///< reference loop, one LP after another
    parallel, ///< OpenMP over independent LPs
};

/// Execution policy and instrumentation shared by every operator.
///
/// Each output entry of an operator depends only on its own LP, so the two
/// execution modes produce bit-identical results. When `lp_calls` is set, it is
/// incremented by the number of row LPs solved.
struct OpOptions {
    Execution execution = Execution::serial;
    std::uint64_t* lp_calls = nullptr;
};

/// [T̄f](x) = max over p in rows[x] of E_p[f].
Gamble upper_T(const ImpreciseMarkovChain& model, const Gamble& f, OpOptions opts = {});

/// [T̲f](x) = -[T̄(-f)](x).
Gamble lower_T(const ImpreciseMarkovChain& model, const Gamble& f, OpOptions opts = {});

/// k-fold application of upper_T (k = 0 returns f).
Gamble iterate_upper(const ImpreciseMarkovChain& model, const Gamble& f, std::size_t k, OpOptions opts = {});
Gamble iterate_lower(const ImpreciseMarkovChain& model, const Gamble& f, std::size_t k, OpOptions opts = {});

/// Function on X^horizon, stored row-major with the first time index most
/// significant: the entry for history (x_1, ..., x_n) lives at
/// ((x_1 * |X| + x_2) * |X| + ...) + x_n.
class HistoryFunction {
public:
    HistoryFunction(std::size_t states, std::size_t horizon, std::vector<double> values,
                    std::size_t cap = kDefaultHistoryCap);

    /// Constant function, checked against the cap before allocating.
    static HistoryFunction filled(std::size_t states, std::size_t horizon, double value,
                                  std::size_t cap = kDefaultHistoryCap);

    /// |X|^horizon, or throws CapExceeded if that exceeds `cap`.
    static std::size_t checked_size(std::size_t states, std::size_t horizon, std::size_t cap);

    std::size_t states() const noexcept { return states_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t cap() const noexcept { return cap_; }

    double operator[](std::size_t flat) const { return values_[flat]; }
    double& operator[](std::size_t flat) { return values_[flat]; }
    std::span<const double> values() const noexcept { return values_; }

    /// Value at an explicit history of length horizon().
    double at(std::span<const std::size_t> history) const;

    /// Horizon-1 function as a gamble; throws unless horizon() == 1.
    Gamble as_gamble() const;

private:
    std::size_t states_;
    std::size_t horizon_;
    std::size_t cap_;
    std::vector<double> values_;
};

/// [T̄F](x_{1:n}) = max over p in rows[x_n] of E_p[F(x_{1:n}, ·)]; horizon n+1 -> n.
HistoryFunction extended_upper(const ImpreciseMarkovChain& model, const HistoryFunction& F, OpOptions opts = {});

/// Conjugate of extended_upper.
HistoryFunction extended_lower(const ImpreciseMarkovChain& model, const HistoryFunction& F, OpOptions opts = {});

} // namespace imc
