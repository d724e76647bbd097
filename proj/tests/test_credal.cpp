#include "imc/credal.hpp"
#include "imc/errors.hpp"
#include "imc/lp.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace imc;
using namespace imc::testing;

namespace {

ImpreciseMarkovChain two_state(CredalRow row0, CredalRow row1) {
    return {StateSpace::numbered(2), CredalRow::point(Pmf{1.0, 0.0}), {std::move(row0), std::move(row1)}};
}

} // namespace

TEST_CASE("state space rejects empty and duplicate labels") {
    CHECK_THROWS_AS(StateSpace({}), ValidationError);
    CHECK_THROWS_AS(StateSpace({"a", "b", "a"}), ValidationError);
    StateSpace s({"a", "b"});
    CHECK(s.size() == 2);
    CHECK(s.index_of("b") == 1);
    CHECK_THROWS_AS(s.index_of("c"), ValidationError);
}

TEST_CASE("validate_model examples") {
    const auto row1 = CredalRow::intervals({0.4, 0.4}, {0.6, 0.6});

    SUBCASE("valid interval row") {
        CHECK(validate_model(two_state(CredalRow::intervals({0.7, 0.1}, {0.9, 0.3}), row1)).empty());
    }
    SUBCASE("sum of lower bounds above one") {
        const auto v = validate_model(two_state(CredalRow::intervals({0.6, 0.6}, {0.6, 0.6}), row1));
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("Σ lower > 1") != std::string::npos);
    }
    SUBCASE("vertex that does not sum to one") {
        const auto v = validate_model(two_state(CredalRow::vertices({Pmf::unchecked({0.5, 0.6})}), row1));
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("vertex does not sum to 1") != std::string::npos);
    }
    SUBCASE("dimension mismatch and missing rows") {
        ImpreciseMarkovChain m{StateSpace::numbered(3), CredalRow::intervals({0, 0}, {1, 1}), {row1}};
        const auto v = validate_model(m);
        CHECK(v.size() == 3); // initial has 2 entries, row count, row has 2 entries
    }
    SUBCASE("infeasible constraint row") {
        // p(0) <= 0.2 and p(0) >= 0.5
        const auto bad = CredalRow::constraints({{1, 0}, {-1, 0}}, {0.2, -0.5});
        const auto v = validate_model(two_state(bad, row1));
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("infeasible") != std::string::npos);
    }
    SUBCASE("upper below lower") {
        CHECK(!validate_model(two_state(CredalRow::intervals({0.5, 0.5}, {0.4, 0.6}), row1)).empty());
    }
}

TEST_CASE("one-state model is valid") {
    ImpreciseMarkovChain m{StateSpace::numbered(1), CredalRow::point(Pmf{1.0}), {CredalRow::intervals({1}, {1})}};
    CHECK(validate_model(m).empty());
}

TEST_CASE("pmf construction validates") {
    CHECK_NOTHROW(Pmf{0.25, 0.75});
    CHECK_NOTHROW(Pmf{1.0 + 5e-10, -5e-10});
    CHECK_THROWS_AS((Pmf{0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS((Pmf{1.5, -0.5}), ValidationError);
}

TEST_CASE("expectation examples") {
    CHECK(expectation(Pmf{0.5, 0.5}, Gamble{0, 1}) == doctest::Approx(0.5));
    CHECK(expectation(Pmf{1, 0}, Gamble{3, 7}) == 3.0);
    CHECK(expectation(Pmf{0.2, 0.8}, Gamble{1, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(expectation(Pmf{1, 0}, Gamble{1, 2, 3}), DimensionError);
}

TEST_CASE("expectation is linear and normalized") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + pick(rng, 5);
        const Pmf p(random_pmf(rng, n));
        const Gamble f = random_gamble(rng, n), g = random_gamble(rng, n);
        const double a = uniform(rng, -4, 4), b = uniform(rng, -4, 4);
        CHECK(expectation(p, Gamble::constant(n, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(expectation(p, a * f + b * g) ==
              doctest::Approx(a * expectation(p, f) + b * expectation(p, g)).epsilon(1e-12));
    }
}

TEST_CASE("every valid random row has a constructive witness") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + pick(rng, 4);
        const auto row = random_row(rng, n);
        REQUIRE(row_violations(row, n, "row").empty());
        CHECK(feasible(row));
        const auto witness = maximize(row, Gamble::constant(n, 0.0)).maximizer;
        CHECK(row.contains(witness.probs()));
    }
}
