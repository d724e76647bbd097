#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace imc {

/// Tolerance for normalization and nonnegativity checks on pmfs.
inline constexpr double kProbTol = 1e-9;

/// Ordered, finite, non-empty set of named states.
class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    /// Index of a state by name; throws ValidationError if unknown.
    std::size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const noexcept;

    /// States named s0, s1, ...
    static StateSpace numbered(std::size_t n);

    bool operator==(const StateSpace&) const = default;

private:
    std::vector<std::string> labels_;
};

/// Real-valued function on the state space.
class Gamble {
public:
    Gamble() = default;
    explicit Gamble(std::vector<double> values);
    Gamble(std::initializer_list<double> values);

    static Gamble constant(std::size_t n, double value);
    static Gamble indicator(std::size_t n, std::span<const std::size_t> members);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    double min() const;
    double max() const;

    Gamble operator-() const;
    Gamble& operator+=(const Gamble& other);
    Gamble& operator+=(double shift);
    Gamble& operator*=(double scale);

    bool operator==(const Gamble&) const = default;

private:
    std::vector<double> values_;
};

Gamble operator+(Gamble a, const Gamble& b);
Gamble operator+(Gamble a, double shift);
Gamble operator*(double scale, Gamble a);

/// Probability mass function. Construction validates normalization.
class Pmf {
public:
    Pmf() = default;
    explicit Pmf(std::vector<double> probs);
    Pmf(std::initializer_list<double> probs);

    /// Skips validation; for internal producers that guarantee the invariant.
    static Pmf unchecked(std::vector<double> probs);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }

    bool operator==(const Pmf&) const = default;

private:
    std::vector<double> probs_;
};

/// Problems with a probability vector, empty if it is a valid pmf.
std::vector<std::string> pmf_violations(std::span<const double> probs);

/// Sum_y p(y) f(y).
double expectation(const Pmf& p, const Gamble& f);
double expectation(std::span<const double> p, std::span<const double> f);

/// Credal set as componentwise probability bounds.
struct IntervalRow {
    std::vector<double> lower;
    std::vector<double> upper;
    bool operator==(const IntervalRow&) const = default;
};

/// Credal set as the convex hull of a finite list of pmfs.
struct VertexRow {
    std::vector<Pmf> vertices;
    bool operator==(const VertexRow&) const = default;
};

/// Credal set {p : A p <= b, p >= 0, sum p = 1}. A is row-major, one row per constraint.
struct ConstraintRow {
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    bool operator==(const ConstraintRow&) const = default;
};

/// A nonempty set of pmfs on the state space, in one of three representations.
class CredalRow {
public:
    using Representation = std::variant<IntervalRow, VertexRow, ConstraintRow>;

    CredalRow(IntervalRow r) : rep_(std::move(r)) {}
    CredalRow(VertexRow r) : rep_(std::move(r)) {}
    CredalRow(ConstraintRow r) : rep_(std::move(r)) {}

    static CredalRow intervals(std::vector<double> lower, std::vector<double> upper);
    static CredalRow vertices(std::vector<Pmf> vertices);
    static CredalRow constraints(std::vector<std::vector<double>> A, std::vector<double> b);
    /// Singleton credal set {p}.
    static CredalRow point(const Pmf& p);

    const Representation& representation() const noexcept { return rep_; }

    /// Dimension implied by the representation (0 if it cannot be determined).
    std::size_t dimension() const;

    /// Membership within `tol` of the representation's defining constraints.
    /// Vertex rows test membership in the convex hull by LP.
    bool contains(std::span<const double> p, double tol = 1e-8) const;

    bool operator==(const CredalRow&) const = default;

private:
    Representation rep_;
};

/// Initial credal set plus one separately specified credal row per state.
struct ImpreciseMarkovChain {
    StateSpace states;
    CredalRow initial;
    std::vector<CredalRow> rows;

    std::size_t size() const noexcept { return states.size(); }
    bool operator==(const ImpreciseMarkovChain&) const = default;
};

/// Every invariant violation found in `row` of dimension `n`; `where` prefixes messages.
std::vector<std::string> row_violations(const CredalRow& row, std::size_t n, const std::string& where);

/// Every invariant violation in the model; empty iff valid.
std::vector<std::string> validate_model(const ImpreciseMarkovChain& m);

/// Throws ValidationError unless validate_model(m) is empty.
void require_valid(const ImpreciseMarkovChain& m);

} // namespace imc
