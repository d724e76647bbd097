#include "imc/errors.hpp"

namespace imc {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    if (v.empty()) return "validation failed";
    std::string out = v.front();
    for (std::size_t i = 1; i < v.size(); ++i) out += "; " + v[i];
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

} // namespace imc
