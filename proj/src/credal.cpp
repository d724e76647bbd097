#include "imc/credal.hpp"

#include "imc/errors.hpp"
#include "imc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace imc {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::vector<std::string> problems;
    if (labels_.empty()) problems.emplace_back("state space must contain at least one state");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) problems.push_back("duplicate state name \"" + l + "\"");
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::size_t StateSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw ValidationError({"unknown state \"" + label + "\""});
    return static_cast<std::size_t>(it - labels_.begin());
}

bool StateSpace::contains(const std::string& label) const noexcept {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

StateSpace StateSpace::numbered(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    return StateSpace(std::move(labels));
}

// ---------------------------------------------------------------------------
// Gamble

Gamble::Gamble(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError({"gamble entries must be finite"});
    }
}

Gamble::Gamble(std::initializer_list<double> values) : Gamble(std::vector<double>(values)) {}

Gamble Gamble::constant(std::size_t n, double value) { return Gamble(std::vector<double>(n, value)); }

Gamble Gamble::indicator(std::size_t n, std::span<const std::size_t> members) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i : members) v.at(i) = 1.0;
    return Gamble(std::move(v));
}

double Gamble::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Gamble::max() const { return *std::max_element(values_.begin(), values_.end()); }

Gamble Gamble::operator-() const {
    Gamble out = *this;
    for (double& v : out.values_) v = -v;
    return out;
}

Gamble& Gamble::operator+=(const Gamble& other) {
    if (other.size() != size()) throw DimensionError("gamble sizes differ");
    for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Gamble& Gamble::operator+=(double shift) {
    for (double& v : values_) v += shift;
    return *this;
}

Gamble& Gamble::operator*=(double scale) {
    for (double& v : values_) v *= scale;
    return *this;
}

Gamble operator+(Gamble a, const Gamble& b) { return a += b; }
Gamble operator+(Gamble a, double shift) { return a += shift; }
Gamble operator*(double scale, Gamble a) { return a *= scale; }

// ---------------------------------------------------------------------------
// Pmf

std::vector<std::string> pmf_violations(std::span<const double> probs) {
    std::vector<std::string> out;
    if (probs.empty()) {
        out.emplace_back("pmf is empty");
        return out;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double p = probs[i];
        if (!std::isfinite(p)) {
            out.push_back("entry " + std::to_string(i) + " is not finite");
            return out;
        }
        if (p < -kProbTol || p > 1.0 + kProbTol) {
            std::ostringstream os;
            os << "entry " << i << " = " << p << " outside [0, 1]";
            out.push_back(os.str());
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol) {
        std::ostringstream os;
        os << "vertex does not sum to 1 (sum = " << sum << ")";
        out.push_back(os.str());
    }
    return out;
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    auto v = pmf_violations(probs_);
    if (!v.empty()) throw ValidationError(std::move(v));
}

Pmf::Pmf(std::initializer_list<double> probs) : Pmf(std::vector<double>(probs)) {}

Pmf Pmf::unchecked(std::vector<double> probs) {
    Pmf p;
    p.probs_ = std::move(probs);
    return p;
}

double expectation(std::span<const double> p, std::span<const double> f) {
    if (p.size() != f.size()) throw DimensionError("pmf and gamble sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * f[i];
    return s;
}

double expectation(const Pmf& p, const Gamble& f) { return expectation(p.probs(), f.values()); }

// ---------------------------------------------------------------------------
// CredalRow

CredalRow CredalRow::intervals(std::vector<double> lower, std::vector<double> upper) {
    return CredalRow(IntervalRow{std::move(lower), std::move(upper)});
}

CredalRow CredalRow::vertices(std::vector<Pmf> vertices) { return CredalRow(VertexRow{std::move(vertices)}); }

CredalRow CredalRow::constraints(std::vector<std::vector<double>> A, std::vector<double> b) {
    return CredalRow(ConstraintRow{std::move(A), std::move(b)});
}

CredalRow CredalRow::point(const Pmf& p) { return vertices({p}); }

std::size_t CredalRow::dimension() const {
    struct Visitor {
        std::size_t operator()(const IntervalRow& r) const { return r.lower.size(); }
        std::size_t operator()(const VertexRow& r) const {
            return r.vertices.empty() ? 0 : r.vertices.front().size();
        }
        std::size_t operator()(const ConstraintRow& r) const {
            return r.A.empty() ? 0 : r.A.front().size();
        }
    };
    return std::visit(Visitor{}, rep_);
}

namespace {

bool in_unit_simplex(std::span<const double> p, double tol) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= -tol)) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

bool in_vertex_hull(const VertexRow& r, std::span<const double> p, double tol) {
    // Find weights lambda on the unit simplex with sum_k lambda_k v_k = p (within tol).
    const std::size_t k = r.vertices.size();
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (std::size_t y = 0; y < p.size(); ++y) {
        std::vector<double> row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = r.vertices[j][y];
        A.push_back(row);
        b.push_back(p[y] + tol);
        for (double& v : row) v = -v;
        A.push_back(std::move(row));
        b.push_back(-p[y] + tol);
    }
    std::vector<double> c(k, 0.0);
    return simplex::maximize_on_simplex(c, A, b).has_value();
}

} // namespace

bool CredalRow::contains(std::span<const double> p, double tol) const {
    if (p.size() != dimension()) return false;
    if (!in_unit_simplex(p, tol)) return false;
    if (const auto* r = std::get_if<IntervalRow>(&rep_)) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < r->lower[i] - tol || p[i] > r->upper[i] + tol) return false;
        }
        return true;
    }
    if (const auto* r = std::get_if<ConstraintRow>(&rep_)) {
        for (std::size_t i = 0; i < r->A.size(); ++i) {
            if (expectation(r->A[i], p) > r->b[i] + tol) return false;
        }
        return true;
    }
    return in_vertex_hull(std::get<VertexRow>(rep_), p, tol);
}

std::vector<std::string> row_violations(const CredalRow& row, std::size_t n, const std::string& where) {
    std::vector<std::string> out;
    auto add = [&](const std::string& msg) { out.push_back(where + ": " + msg); };

    if (const auto* r = std::get_if<IntervalRow>(&row.representation())) {
        if (r->lower.size() != n || r->upper.size() != n) {
            add("interval bounds must have " + std::to_string(n) + " entries");
            return out;
        }
        bool bounds_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = r->lower[i], hi = r->upper[i];
            if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || hi > 1.0 || lo > hi) {
                std::ostringstream os;
                os << "bounds for entry " << i << " must satisfy 0 <= lower <= upper <= 1 (got [" << lo << ", "
                   << hi << "])";
                add(os.str());
                bounds_ok = false;
            }
        }
        if (!bounds_ok) return out;
        const double sl = std::accumulate(r->lower.begin(), r->lower.end(), 0.0);
        const double su = std::accumulate(r->upper.begin(), r->upper.end(), 0.0);
        if (sl > 1.0 + kProbTol) {
            std::ostringstream os;
            os << "Σ lower > 1 (sum of lower bounds = " << sl << ")";
            add(os.str());
        }
        if (su < 1.0 - kProbTol) {
            std::ostringstream os;
            os << "Σ upper < 1 (sum of upper bounds = " << su << ")";
            add(os.str());
        }
        return out;
    }

    if (const auto* r = std::get_if<VertexRow>(&row.representation())) {
        if (r->vertices.empty()) add("vertex list is empty");
        for (std::size_t k = 0; k < r->vertices.size(); ++k) {
            const auto& v = r->vertices[k];
            const std::string tag = "vertex " + std::to_string(k);
            if (v.size() != n) {
                add(tag + " must have " + std::to_string(n) + " entries");
                continue;
            }
            for (const auto& msg : pmf_violations(v.probs())) add(tag + ": " + msg);
        }
        return out;
    }

    const auto& r = std::get<ConstraintRow>(row.representation());
    if (r.A.empty()) {
        add("constraint row needs at least one constraint (use intervals [0,1] for the full simplex)");
        return out;
    }
    if (r.A.size() != r.b.size()) {
        add("constraint matrix has " + std::to_string(r.A.size()) + " rows but b has " +
            std::to_string(r.b.size()) + " entries");
        return out;
    }
    for (std::size_t i = 0; i < r.A.size(); ++i) {
        if (r.A[i].size() != n) {
            add("constraint row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
            return out;
        }
        for (double a : r.A[i]) {
            if (!std::isfinite(a)) {
                add("constraint row " + std::to_string(i) + " has a non-finite coefficient");
                return out;
            }
        }
        if (!std::isfinite(r.b[i])) {
            add("constraint bound " + std::to_string(i) + " is not finite");
            return out;
        }
    }
    if (!feasible(row)) add("constraint set is infeasible (no pmf satisfies A p <= b)");
    return out;
}

std::vector<std::string> validate_model(const ImpreciseMarkovChain& m) {
    std::vector<std::string> out;
    const std::size_t n = m.states.size();
    auto append = [&](std::vector<std::string> v) { out.insert(out.end(), v.begin(), v.end()); };
    append(row_violations(m.initial, n, "initial"));
    if (m.rows.size() != n) {
        out.push_back("model has " + std::to_string(m.rows.size()) + " transition rows but " + std::to_string(n) +
                      " states");
    }
    for (std::size_t x = 0; x < m.rows.size(); ++x) {
        const std::string where = x < n ? "row " + m.states.label(x) : "row #" + std::to_string(x);
        append(row_violations(m.rows[x], n, where));
    }
    return out;
}

void require_valid(const ImpreciseMarkovChain& m) {
    auto v = validate_model(m);
    if (!v.empty()) throw ValidationError(std::move(v));
}

} // namespace imc
