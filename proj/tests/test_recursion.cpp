#include "imc/errors.hpp"
#include "imc/inference.hpp"
#include "imc/oracle.hpp"
#include "imc/recursion.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace imc;
using namespace imc::testing;

TEST_CASE("hitting-probability recursion on E1") {
    const auto m = e1_model();
    const RecursiveSpec spec{Gamble{0, 1}, {{Gamble{1, 0}, Gamble{0, 1}}}};
    std::uint64_t calls = 0;
    const auto [up, lo] = conditional_bounds(m, spec, {Execution::serial, &calls});
    CHECK(std::abs(up[0] - 0.3) < 1e-12);
    CHECK(up[1] == 1.0);
    CHECK(std::abs(lo[0] - 0.1) < 1e-12);
    CHECK(lo[1] == 1.0);
    CHECK(calls == 4);

    const auto [nu, nl] = oracle::naive_conditional_bounds(m, oracle::materialize_tau(spec));
    CHECK(max_abs_diff(up, nu) < 1e-12);
    CHECK(max_abs_diff(lo, nl) < 1e-12);
}

TEST_CASE("horizon one returns g0 without solving anything") {
    const auto m = e1_model();
    std::uint64_t calls = 0;
    const auto [up, lo] = conditional_bounds(m, RecursiveSpec{Gamble{2, -1}, {}}, {Execution::serial, &calls});
    CHECK(up == Gamble{2, -1});
    CHECK(lo == Gamble{2, -1});
    CHECK(calls == 0);
}

TEST_CASE("identity steps reproduce the operator iterates") {
    Rng rng(10);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + pick(rng, 2);
        const std::size_t horizon = 1 + pick(rng, 6);
        const auto m = random_model(rng, n);
        const Gamble f = random_gamble(rng, n);
        const auto [up, lo] = conditional_bounds(m, spec_single_instant(f, horizon));
        CHECK(max_abs_diff(up, iterate_upper(m, f, horizon - 1)) < 1e-12);
        CHECK(max_abs_diff(lo, iterate_lower(m, f, horizon - 1)) < 1e-12);
    }
}

TEST_CASE("sign-changing h matches backward induction") {
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
        const auto m = random_model(rng, 2);
        RecursiveSpec spec = random_spec(rng, 2, 2 + pick(rng, 3));
        spec.steps[0].h = Gamble{1, -1};
        const auto [up, lo] = conditional_bounds(m, spec);
        const auto [nu, nl] = oracle::naive_conditional_bounds(m, oracle::materialize_tau(spec));
        CHECK(max_abs_diff(up, nu) < 1e-8);
        CHECK(max_abs_diff(lo, nl) < 1e-8);
    }
}

TEST_CASE("unconditional bounds over the initial set") {
    const auto m = e1_model();
    const auto [up, lo] = unconditional_bounds(m, Gamble{0.3, 1.0}, Gamble{0.1, 1.0});
    CHECK(std::abs(up - 0.65) < 1e-12);
    CHECK(std::abs(lo - 0.28) < 1e-12);

    // Brute force over the endpoints of the initial interval for p(s1).
    double best = -1, worst = 2;
    for (double p1 : {0.2, 0.5}) {
        best = std::max(best, 0.3 * (1 - p1) + 1.0 * p1);
        worst = std::min(worst, 0.1 * (1 - p1) + 1.0 * p1);
    }
    CHECK(std::abs(up - best) < 1e-12);
    CHECK(std::abs(lo - worst) < 1e-12);

    ImpreciseMarkovChain point = m;
    point.initial = CredalRow::point(Pmf{1, 0});
    const auto [pu, pl] = unconditional_bounds(point, Gamble{0.3, 1.0}, Gamble{0.1, 1.0});
    CHECK(pu == 0.3);
    CHECK(pl == 0.1);

    const auto [cu, cl] = unconditional_bounds(m, Gamble{2, 2}, Gamble{2, 2});
    CHECK(cu == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cl == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("infer on E1 composes both stages and counts LPs") {
    const auto m = e1_model();
    const auto r = infer(m, spec_hitting_probability(2, {1}, 2));
    CHECK(std::abs(r.upper - 0.65) < 1e-12);
    CHECK(std::abs(r.lower - 0.28) < 1e-12);
    CHECK(r.lp_calls == 6);

    const auto r1 = infer(m, RecursiveSpec{Gamble{0, 1}, {}});
    CHECK(std::abs(r1.upper - 0.5) < 1e-12);
    CHECK(std::abs(r1.lower - 0.2) < 1e-12);
    CHECK(r1.lp_calls == 2);
}

TEST_CASE("precise model gives the forward-computed expectation") {
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        std::vector<std::vector<double>> T;
        std::vector<double> init;
        const auto m = random_precise_model(rng, 3, T, init);
        const auto spec = random_spec(rng, 3, 1 + pick(rng, 4));
        const auto cond = path_expectation(T, spec.horizon(), [&](const auto& p) { return tau_on_path(spec, p); });
        double expected = 0;
        for (std::size_t x = 0; x < 3; ++x) expected += init[x] * cond[x];
        const auto r = infer(m, spec);
        CHECK(std::abs(r.upper - expected) < 1e-10);
        CHECK(std::abs(r.lower - expected) < 1e-10);
    }
}

TEST_CASE("engine LP count is 2(n-1)|X|") {
    Rng rng(14);
    for (std::size_t n_states : {1u, 2u, 3u, 5u}) {
        for (std::size_t horizon : {1u, 2u, 4u, 9u}) {
            const auto m = random_model(rng, n_states);
            std::uint64_t calls = 0;
            conditional_bounds(m, random_spec(rng, n_states, horizon), {Execution::serial, &calls});
            CHECK(calls == 2 * (horizon - 1) * n_states);
        }
    }
}

TEST_CASE("spec-level homogeneity, final shift and sandwich") {
    Rng rng(15);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + pick(rng, 2);
        const auto m = random_model(rng, n);
        const auto spec = random_spec(rng, n, 2 + pick(rng, 4));
        const auto [up, lo] = conditional_bounds(m, spec);
        for (std::size_t x = 0; x < n; ++x) CHECK(lo[x] <= up[x] + 1e-10);

        const double lambda = uniform(rng, 0, 3);
        RecursiveSpec scaled = spec;
        scaled.g0 *= lambda;
        for (auto& s : scaled.steps) s.g *= lambda;
        const auto [su, sl] = conditional_bounds(m, scaled);
        CHECK(max_abs_diff(su, lambda * up) < 1e-10);
        CHECK(max_abs_diff(sl, lambda * lo) < 1e-10);

        const double mu = uniform(rng, -3, 3);
        RecursiveSpec shifted = spec;
        shifted.steps.back().g += mu;
        const auto [hu, hl] = conditional_bounds(m, shifted);
        CHECK(max_abs_diff(hu, up + mu) < 1e-10);
        CHECK(max_abs_diff(hl, lo + mu) < 1e-10);
    }
}

TEST_CASE("leading identity steps act as a time shift") {
    Rng rng(16);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + pick(rng, 2);
        const auto m = random_model(rng, n);
        const auto spec = random_spec(rng, n, 2 + pick(rng, 3));
        const std::size_t pad = 1 + pick(rng, 3);

        RecursiveSpec padded{spec.g0, {}};
        for (std::size_t i = 0; i < pad; ++i) padded.steps.push_back({Gamble::constant(n, 1), Gamble::constant(n, 0)});
        padded.steps.insert(padded.steps.end(), spec.steps.begin(), spec.steps.end());

        BoundsRecursion shifted(m, iterate_upper(m, spec.g0, pad), iterate_lower(m, spec.g0, pad), 1 + pad);
        for (const auto& s : spec.steps) shifted.advance(s);
        const auto [pu, pl] = conditional_bounds(m, padded);
        CHECK(max_abs_diff(pu, shifted.upper()) == 0.0);
        CHECK(max_abs_diff(pl, shifted.lower()) == 0.0);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const auto m = e1_model();
    CHECK_THROWS_AS(conditional_bounds(m, RecursiveSpec{Gamble{1, 2, 3}, {}}), DimensionError);
    CHECK_THROWS_AS(conditional_bounds(m, RecursiveSpec{Gamble{1, 2}, {{Gamble{1}, Gamble{0, 0}}}}), DimensionError);
}
