#pragma once

#include "imc/transition.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>

namespace imc::detail {

/// Runs body(i) for i in [0, count). The parallel path is an OpenMP static
/// loop; the first exception raised by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
    if (exec == Execution::serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(imc_for_each_index_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace imc::detail
