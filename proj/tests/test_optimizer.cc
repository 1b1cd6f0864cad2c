#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "bellcorr/errors.h"
#include "bellcorr/lhv.h"
#include "bellcorr/optimizer.h"
#include "bellcorr/parallel.h"
#include "doctest.h"
#include "oracles.h"

using namespace bellcorr;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST_CASE("axis nodes hit both endpoints exactly") {
    Axis a{0.0, pi / 2, 91};
    CHECK(a.at(0) == 0.0);
    CHECK(a.at(45) == pi / 4);
    CHECK(a.at(90) == pi / 2);
    Axis b{0.0, pi / 2, 181};
    CHECK(b.at(180) == pi / 2);
    CHECK(b.at(90) == pi / 4);
}

TEST_CASE("scan example on a coarse grid") {
    ScanGrid grid{Axis{0, pi / 2, 5}, Axis{0, pi / 2, 5}};
    auto r = scan_two_angle(GhzParams::balanced(4), 1, grid);
    CHECK(r.values.size() == 25);
    CHECK(r.argmax.theta1 == pi / 2);
    CHECK(r.argmax.theta2 == pi / 4);
    CHECK(std::abs(r.argmax.value - 2 * sqrt2) <= 1e-9);
}

TEST_CASE("l = 0 sweep peaks at 2") {
    ScanGrid grid{Axis{0, pi / 2, 7}, Axis{0, pi / 2, 91}};
    auto r = scan_two_angle(GhzParams::balanced(4), 0, grid);
    CHECK(r.argmax.theta2 == pi / 4);
    CHECK(std::abs(r.argmax.value - 2.0) <= 1e-9);
    // theta1 is irrelevant when l = 0: all rows are identical.
    for (int row = 1; row < r.rows(); row++) {
        for (int col = 0; col < r.cols(); col++) CHECK(r.at(row, col) == r.at(0, col));
    }
    // Symmetric axis: theta2 <-> pi/2 - theta2.
    for (int col = 0; col < r.cols(); col++) {
        CHECK(std::abs(r.at(0, col) - r.at(0, r.cols() - 1 - col)) <= 1e-12);
    }
}

TEST_CASE("single-node grid at the origin") {
    std::mt19937_64 rng(107);
    for (int n = 1; n <= 6; n++) {
        double x = 0.3 + 0.1 * n;
        auto p = GhzParams::make(n, std::cos(x), std::sin(x));
        auto r = scan_two_angle(p, static_cast<int>(rng() % (n + 1)), ScanGrid{Axis{0, 0, 1}, Axis{0, 0, 1}});
        REQUIRE(r.values.size() == 1);
        CHECK(std::abs(r.values[0] - 2 * p.coupling()) <= 1e-12);
    }
}

TEST_CASE("malformed grids are rejected") {
    auto p = GhzParams::balanced(4);
    CHECK_THROWS_AS(scan_two_angle(p, 1, ScanGrid{Axis{0, 1, 0}, Axis{0, 1, 5}}), ValidationError);
    CHECK_THROWS_AS(scan_two_angle(p, 1, ScanGrid{Axis{1, 0, 5}, Axis{0, 1, 5}}), ValidationError);
    CHECK_THROWS_AS(scan_two_angle(p, 1, ScanGrid{Axis{0, 1, 1}, Axis{0, 1, 5}}), ValidationError);
    CHECK_THROWS_AS(scan_two_angle(p, 1, ScanGrid{Axis{0, 1, 5}, Axis{0, NAN, 5}}), ValidationError);
    CHECK_THROWS_AS(scan_two_angle(p, 7, default_scan_grid()), ValidationError);
}

TEST_CASE("slice examples") {
    auto p = GhzParams::balanced(4);
    Axis axis{0, pi / 2, 91};
    for (auto [l, peak] : {std::pair{1, 2 * sqrt2}, {3, 2 * sqrt2}, {0, 2.0}}) {
        auto r = slice_theta(p, l, pi / 2, axis);
        CHECK(r.rows() == 1);
        CHECK(r.cols() == 91);
        CHECK(r.argmax.theta2 == pi / 4);
        CHECK(std::abs(r.argmax.value - peak) <= 1e-9);
    }
}

TEST_CASE("grid cells equal the closed form on the constructed settings") {
    std::mt19937_64 rng(109);
    for (int n = 1; n <= 6; n++) {
        double x = 0.2 * n;
        auto p = GhzParams::make(n, std::cos(x), -std::sin(x));
        for (int l = 0; l <= n; l++) {
            ScanGrid grid{Axis{-1, 3, 9}, Axis{-2, 2, 7}};
            auto r = scan_two_angle(p, l, grid);
            for (int i = 0; i < r.rows(); i++) {
                for (int j = 0; j < r.cols(); j++) {
                    auto s = two_angle_settings({n, l, grid.theta1.at(i), grid.theta2.at(j)});
                    CHECK(std::abs(r.at(i, j) - prediction_closed_form(p, s)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("argmax ties break to the lowest row-major index") {
    // theta1 is irrelevant for l = 0, so every row ties.
    auto r = scan_two_angle(GhzParams::balanced(3), 0, ScanGrid{Axis{0, 1, 4}, Axis{0, pi / 2, 3}});
    CHECK(r.argmax.theta1 == 0.0);
}

TEST_CASE("scans are deterministic") {
    auto p = GhzParams::balanced(5);
    auto a = scan_two_angle(p, 3, default_scan_grid());
    auto b = scan_two_angle(p, 3, default_scan_grid());
    CHECK(a.values == b.values);
    CHECK(a.argmax.value == b.argmax.value);
}

TEST_CASE("refine_full examples") {
    auto r2 = refine_full(GhzParams::balanced(2), 32, 1);
    CHECK(std::abs(r2.best_value - sqrt2) <= 1e-6);
    CHECK(r2.best_value <= sqrt2 + 1e-9);
    CHECK(r2.starts == 32);
    CHECK(r2.seed == 1);
    CHECK(r2.iterations > 0);
    CHECK(std::abs(prediction_closed_form(GhzParams::balanced(2), r2.best_settings) - r2.best_value) <= 1e-12);

    auto r5 = refine_full(GhzParams::balanced(5), 32, 2);
    CHECK(std::abs(r5.best_value - 4.0) <= 1e-6);

    auto flat = refine_full(GhzParams::make(3, 1.0, 0.0), 4, 3);
    CHECK(flat.best_value == 0.0);

    CHECK_THROWS_AS(refine_full(GhzParams::balanced(2), 0, 1), ValidationError);
}

TEST_CASE("refine_full is deterministic and sound for complex amplitudes") {
    std::mt19937_64 rng(113);
    for (int n = 2; n <= 6; n++) {
        auto p = oracle::random_params(n, rng);
        auto a = refine_full(p, 8, 77);
        auto b = refine_full(p, 8, 77);
        CHECK(a.best_value == b.best_value);
        CHECK(a.best_settings.phases == b.best_settings.phases);
        CHECK(a.best_value <= max_prediction(p) + 1e-9);
    }
}

TEST_CASE("results do not depend on the worker count") {
    auto p = GhzParams::make(4, 0.8, Complex{0, 0.6});
    auto real = GhzParams::make(4, 0.8, 0.6);
    auto run_all = [&] {
        auto scan = scan_two_angle(real, 1, ScanGrid{Axis{0, pi / 2, 31}, Axis{0, pi / 2, 17}});
        auto refined = refine_full(p, 12, 5);
        auto lhv = certify_bound(5);
        return std::tuple{scan.values, refined.best_value, refined.best_settings.phases, lhv.max_sum_abs};
    };
    setenv("BELLCORR_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    auto serial = run_all();
    setenv("BELLCORR_THREADS", "4", 1);
    CHECK(worker_count() == 4);
    auto threaded = run_all();
    unsetenv("BELLCORR_THREADS");
    CHECK(serial == threaded);
}

TEST_CASE("parallel_for propagates worker exceptions") {
    setenv("BELLCORR_THREADS", "3", 1);
    CHECK_THROWS_AS(parallel_for(10, [](size_t i) {
                        if (i == 7) throw ValidationError("boom");
                    }),
                    ValidationError);
    unsetenv("BELLCORR_THREADS");
}
