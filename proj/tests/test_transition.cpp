#include "imc/errors.hpp"
#include "imc/transition.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstring>

using namespace imc;
using namespace imc::testing;

namespace {

// Endpoint pmfs of the two E1 interval rows.
const std::vector<std::vector<std::vector<double>>> kE1Endpoints = {
    {{0.9, 0.1}, {0.7, 0.3}},
    {{0.6, 0.4}, {0.4, 0.6}},
};

bool bit_equal(const Gamble& a, const Gamble& b) {
    return a.size() == b.size() && std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("upper and lower transition operator on E1") {
    const auto m = e1_model();
    const Gamble f{0, 1};
    const auto up = upper_T(m, f);
    CHECK(up[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(up[1] == doctest::Approx(0.6).epsilon(1e-15));
    const auto lo = lower_T(m, f);
    CHECK(lo[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(lo[1] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("two-step upper iterate on E1 matches brute force over endpoint choices") {
    const auto m = e1_model();
    const Gamble f{0, 1};
    const auto tau = [](const std::vector<std::size_t>& p) { return p.back() == 1 ? 1.0 : 0.0; };
    const auto it = iterate_upper(m, f, 2);
    const auto lo = iterate_lower(m, f, 2);
    for (std::size_t x = 0; x < 2; ++x) {
        const auto [hi_bf, lo_bf] = brute_force_bounds(kE1Endpoints, 3, x, tau);
        CHECK(std::abs(it[x] - hi_bf) < 1e-12);
        CHECK(std::abs(lo[x] - lo_bf) < 1e-12);
    }
    // Frozen from the brute force above.
    CHECK(std::abs(it[0] - 0.39) < 1e-12);
    CHECK(std::abs(it[1] - 0.48) < 1e-12);
}

TEST_CASE("iterate edge cases") {
    const auto m = e1_model();
    const Gamble f{0, 1};
    CHECK(iterate_upper(m, f, 0) == f);
    CHECK(iterate_upper(m, f, 1) == upper_T(m, f));
}

TEST_CASE("constant gambles are preserved") {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + pick(rng, 4);
        const auto m = random_model(rng, n);
        const double mu = uniform(rng, -10, 10);
        const auto c = Gamble::constant(n, mu);
        CHECK(max_abs_diff(upper_T(m, c), c) < 1e-12);
        CHECK(max_abs_diff(lower_T(m, c), c) < 1e-12);
    }
}

TEST_CASE("precise rows reduce to the matrix-vector product") {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::vector<double>> T;
        std::vector<double> init;
        const auto m = random_precise_model(rng, 3, T, init);
        const Gamble f = random_gamble(rng, 3);
        const Gamble expected(mat_vec(T, f.values()));
        CHECK(max_abs_diff(upper_T(m, f), expected) < 1e-12);
        CHECK(max_abs_diff(lower_T(m, f), expected) < 1e-12);
    }
}

TEST_CASE("coherence of the transition operators") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + pick(rng, 3);
        const auto m = random_model(rng, n);
        const Gamble f = random_gamble(rng, n);
        const auto up = upper_T(m, f);
        const auto lo = lower_T(m, f);

        for (double lambda : {0.0, 0.5, 3.0}) CHECK(max_abs_diff(upper_T(m, lambda * f), lambda * up) < 1e-10);
        for (double mu : {-2.0, 0.0, 7.0}) CHECK(max_abs_diff(upper_T(m, f + mu), up + mu) < 1e-10);

        Gamble g = f;
        for (std::size_t i = 0; i < n; ++i) g[i] += uniform(rng, 0, 2);
        const auto ug = upper_T(m, g);
        for (std::size_t x = 0; x < n; ++x) {
            CHECK(up[x] <= ug[x] + 1e-10);
            CHECK(f.min() - 1e-10 <= lo[x]);
            CHECK(lo[x] <= up[x] + 1e-10);
            CHECK(up[x] <= f.max() + 1e-10);
        }
        CHECK(bit_equal(lo, -upper_T(m, -f)));
    }
}

TEST_CASE("serial and parallel execution are bit-identical") {
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 40 + pick(rng, 40);
        const auto m = random_model(rng, n);
        const Gamble f = random_gamble(rng, n);
        CHECK(bit_equal(upper_T(m, f, {Execution::serial}), upper_T(m, f, {Execution::parallel})));
        CHECK(bit_equal(lower_T(m, f, {Execution::serial}), lower_T(m, f, {Execution::parallel})));
    }
    const auto m = random_model(rng, 3);
    std::vector<double> v(81);
    for (double& x : v) x = uniform(rng, -1, 1);
    const HistoryFunction F(3, 4, v);
    const auto a = extended_upper(m, F, {Execution::serial});
    const auto b = extended_upper(m, F, {Execution::parallel});
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("operators count one LP per state") {
    const auto m = e1_model();
    std::uint64_t calls = 0;
    iterate_upper(m, Gamble{0, 1}, 3, {Execution::serial, &calls});
    CHECK(calls == 6);
}

TEST_CASE("history function layout and caps") {
    const HistoryFunction F(2, 2, {0, 1, 2, 3});
    const std::size_t h[] = {1, 0};
    CHECK(F.at(h) == 2.0);
    CHECK_THROWS_AS(HistoryFunction(2, 2, {0, 1, 2}), DimensionError);
    CHECK_THROWS_AS(HistoryFunction::filled(10, 8, 0.0), CapExceeded);
    CHECK_THROWS_AS(HistoryFunction::filled(2, 5, 0.0, 16), CapExceeded);
    CHECK_NOTHROW(HistoryFunction::filled(2, 4, 0.0, 16));
}

TEST_CASE("extended operator examples") {
    const auto m = e1_model();
    // F(x1, x2) = 1_{s1}(x2) ignores x1.
    const HistoryFunction F(2, 2, {0, 1, 0, 1});
    const auto up = extended_upper(m, F).as_gamble();
    CHECK(max_abs_diff(up, upper_T(m, Gamble{0, 1})) == 0.0);

    const auto c = HistoryFunction::filled(2, 3, 4.5);
    const auto r = extended_upper(m, c);
    CHECK(r.horizon() == 2);
    for (double v : r.values()) CHECK(v == doctest::Approx(4.5).epsilon(1e-14));

    CHECK_THROWS_AS(extended_upper(m, HistoryFunction(2, 1, {0, 1})), DimensionError);
}

TEST_CASE("extended operator reads the last state of each history") {
    Rng rng(6);
    const auto m = random_model(rng, 3);
    std::vector<double> v(27);
    for (double& x : v) x = uniform(rng, -2, 2);
    const HistoryFunction F(3, 3, v);
    const auto up = extended_upper(m, F);
    const auto lo = extended_lower(m, F);
    for (std::size_t h = 0; h < 9; ++h) {
        const Gamble slice(std::vector<double>(v.begin() + h * 3, v.begin() + h * 3 + 3));
        CHECK(up[h] == upper_T(m, slice)[h % 3]);
        CHECK(lo[h] == lower_T(m, slice)[h % 3]);
    }
}
