#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "stardisc/exact.hpp"
#include "stardisc/generators.hpp"
#include "stardisc/solvers.hpp"

using namespace stardisc;

TEST_CASE("shrinking-neighborhood schedule") {
    const std::size_t n = 101, d = 10;
    const std::uint64_t I = 10000;
    SECTION("endpoints") {
        auto [ell0, mc0] = schedule(0, I, n, d);
        CHECK(ell0 == 50); // floor((n-1)/2)
        CHECK(mc0 == 2);
        auto [ellI, mcI] = schedule(I, I, n, d);
        CHECK(ellI == 1);
        CHECK(mcI == d);
    }
    SECTION("ell never drops below 1, mc stays within [1, d]") {
        for (std::uint64_t t = 0; t <= I; t += 100) {
            auto [ell, mc] = schedule(t, I, 2, 1);
            CHECK(ell >= 1);
            CHECK(mc == 1);
        }
    }
    SECTION("ell non-increasing, mc non-decreasing") {
        std::size_t prev_ell = n, prev_mc = 0;
        for (std::uint64_t t = 0; t <= I; ++t) {
            auto [ell, mc] = schedule(t, I, n, d);
            CHECK(ell <= prev_ell);
            CHECK(mc >= prev_mc);
            prev_ell = ell;
            prev_mc = mc;
        }
    }
}

TEST_CASE("wf neighborhood stays inside the index window") {
    Rng rng(8);
    auto X = oracles::random_pointset(12, 3, rng);
    CoordinateGrids grids(X);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t mc = 1 + rng.below(3), ell = 1 + rng.below(4);
        auto x = std::vector<double>(3);
        for (std::size_t j = 0; j < 3; ++j) {
            const auto bar = grids.gamma_bar(j);
            x[j] = bar[rng.below(bar.size())];
        }
        const auto y = wf_neighborhood(x, mc, ell, grids, rng);
        std::size_t moved = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            const auto bar = grids.gamma_bar(j);
            const std::size_t pi = grids.index_of(j, x[j]);
            const std::size_t qi = grids.index_of(j, y[j]);
            if (x[j] != y[j]) ++moved;
            CHECK(qi + ell >= pi);
            CHECK(qi <= pi + ell);
            CHECK(bar[qi] == y[j]);
        }
        CHECK(moved <= mc);
    }
}

TEST_CASE("threshold sequences") {
    Rng master(99);
    auto X = oracles::random_pointset(16, 3, master);
    CoordinateGrids grids(X);
    SECTION("ta variants: floor(sqrt(I)) thresholds, each used as often") {
        Rng rng(1);
        auto ts = compute_thresholds(X, grids, 4, Algorithm::ta_basic, 2, 2, 1.0, rng);
        CHECK(ts.values.size() == 2);
        CHECK(ts.iterations_per_threshold == 2);
    }
    SECTION("wf keeps floor(alpha m) of m probes and stretches J") {
        Rng rng(2);
        auto ts = compute_thresholds(X, grids, 100000, Algorithm::wf, 3, 2, 0.995, rng);
        CHECK(ts.values.size() == 314); // floor(0.995 * 316)
        CHECK(ts.iterations_per_threshold == 317); // floor(316 / 0.995)
    }
    SECTION("sorted increasing, all non-positive") {
        for (Algorithm algo : {Algorithm::wf, Algorithm::ta_basic, Algorithm::ta_improved}) {
            Rng rng(3);
            auto ts = compute_thresholds(X, grids, 400, algo, 3, 2, 0.95, rng);
            for (std::size_t i = 0; i < ts.values.size(); ++i) {
                CHECK(ts.values[i] <= 0.0);
                if (i) CHECK(ts.values[i] >= ts.values[i - 1]);
            }
        }
    }
}

TEST_CASE("zero-iteration runs return the starting value") {
    Rng master(7);
    auto X = oracles::random_pointset(10, 2, master);
    CoordinateGrids grids(X);
    auto wf = run_wf(X, grids, 0, default_wf_params(10, 2), 42);
    CHECK(wf.iterations == 0);
    CHECK(wf.value == evaluate_box(wf.witness, X).delta_star);
    auto basic = run_ta_basic(X, grids, 0, default_basic_ell(10), 2, 42);
    CHECK(basic.iterations == 0);
    auto improved = run_ta_improved(X, grids, 0, 42);
    CHECK(improved.iterations == 0);
}

TEST_CASE("trials are deterministic given the seed") {
    Rng master(13);
    auto X = oracles::random_pointset(14, 3, master);
    CoordinateGrids grids(X);
    for (Algorithm algo : {Algorithm::wf, Algorithm::ta_basic, Algorithm::ta_improved}) {
        const auto a = run_trial(X, grids, algo, 900, 2718);
        const auto b = run_trial(X, grids, algo, 900, 2718);
        CHECK(a.value == b.value);
        CHECK(a.witness == b.witness);
        CHECK(a.iterations == b.iterations);
    }
}

TEST_CASE("reported values are certified by their witnesses") {
    Rng master(5150);
    for (int rep = 0; rep < 25; ++rep) {
        auto X = oracles::random_pointset(1 + master.below(10), 1 + master.below(3), master,
                                          rep % 4 == 0);
        CoordinateGrids grids(X);
        for (Algorithm algo : {Algorithm::wf, Algorithm::ta_basic, Algorithm::ta_improved}) {
            const auto r = run_trial(X, grids, algo, 400, derive_seed(1, rep));
            const auto e = evaluate_box(r.witness, X);
            const double recomputed = r.objective == Objective::delta ? e.delta
                                      : r.objective == Objective::delta_bar
                                          ? e.delta_bar
                                          : e.delta_star;
            CHECK(recomputed == Catch::Approx(r.value).margin(1e-12));
            CHECK(r.value >= 0.0);
        }
    }
}

TEST_CASE("lower-bound soundness against the exact value") {
    Rng master(60601);
    for (int rep = 0; rep < 30; ++rep) {
        auto X = oracles::random_pointset(1 + master.below(8), 1 + master.below(3), master,
                                          rep % 5 == 0);
        CoordinateGrids grids(X);
        const double exact = exact_star_discrepancy(X).value;
        for (Algorithm algo : {Algorithm::wf, Algorithm::ta_basic, Algorithm::ta_improved}) {
            const auto r = run_trial(X, grids, algo, 500, derive_seed(9, rep));
            CHECK(r.value <= exact); // zero tolerance
        }
    }
}

TEST_CASE("one-dimensional instances are solved frequently") {
    Rng master(2);
    int hits_basic = 0, hits_improved = 0, total = 0;
    for (int rep = 0; rep < 20; ++rep) {
        auto X = oracles::random_pointset(2 + master.below(12), 1, master);
        CoordinateGrids grids(X);
        const double exact = exact_1d(X);
        ++total;
        hits_basic +=
            run_ta_basic(X, grids, 2000, default_basic_ell(X.size()), 2, derive_seed(3, rep))
                .value >= exact - 1e-12;
        hits_improved += run_ta_improved(X, grids, 2000, derive_seed(4, rep)).value >=
                         exact - 1e-12;
    }
    CHECK(hits_basic >= total * 3 / 4);
    CHECK(hits_improved >= total * 3 / 4);
}

TEST_CASE("wf parameter defaults follow the instance size") {
    auto p = default_wf_params(400, 10);
    CHECK(p.mc == 3);
    CHECK(p.ell == 20);
    p = default_wf_params(1000, 20);
    CHECK(p.mc == 4);
    CHECK(p.ell == 150);
    p = default_wf_params(9, 2);
    CHECK(p.ell <= 4); // clamped below (n-1)/2
    CHECK(p.mc == 2);
    CHECK(default_basic_ell(99) == 24);
    CHECK(default_basic_ell(100) == 12);
    CHECK(default_basic_ell(3) == 1);
}
