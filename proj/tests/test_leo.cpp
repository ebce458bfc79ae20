#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "lorenztest/leo.hpp"
#include "lorenztest/rng.hpp"
#include "lorenztest/transitivity.hpp"

using namespace lorenztest;
using Catch::Approx;

TEST_CASE("image on a single branch maps endpoints") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    cfg.max_image_iterations = 1;
    auto r = image(doubling, 0.5, 0.1, 0.2, 0.0, 1.0, cfg);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].lo == Approx(0.2).margin(1e-15));
    CHECK(r.intervals[0].hi == Approx(0.4).margin(1e-15));
    CHECK(r.iterations == 1);
}

TEST_CASE("image splits across the discontinuity") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    cfg.max_image_iterations = 1;
    auto r = image(doubling, 0.5, 0.4, 0.6, 0.0, 1.0, cfg);
    REQUIRE(r.intervals.size() == 2);
    CHECK(r.intervals[0].lo == 0.0);
    CHECK(r.intervals[0].hi == Approx(0.2).margin(1e-15));
    CHECK(r.intervals[1].lo == Approx(0.8).margin(1e-15));
    CHECK(r.intervals[1].hi == 1.0);
}

TEST_CASE("a straddling interval covers after a few doublings") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    cfg.max_image_iterations = 6;
    auto r = image(doubling, 0.5, 0.49, 0.51, 0.0, 1.0, cfg);
    CHECK(covers_domain(r.intervals, 0.0, 1.0, cfg.cover_tol(0.0, 1.0)));
}

TEST_CASE("interval ending exactly at the discontinuity") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    cfg.max_image_iterations = 1;
    auto r = image(doubling, 0.5, 0.4, 0.5, 0.0, 1.0, cfg);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].lo == Approx(0.8).margin(1e-15));
    CHECK(r.intervals[0].hi == 1.0);
}

TEST_CASE("interval starting exactly at the discontinuity uses the right branch") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    cfg.max_image_iterations = 1;
    auto r = image(doubling, 0.5, 0.5, 0.6, 0.0, 1.0, cfg);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].lo == 0.0);  // f(c) = f(c+) = lo
    CHECK(r.intervals[0].hi == Approx(0.2).margin(1e-15));
}

TEST_CASE("onto map covers the full domain in one step") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    auto r = image(doubling, 0.5, 0.0, 1.0, 0.0, 1.0, cfg);
    CHECK(r.iterations == 1);
    CHECK(covers_domain(r.intervals, 0.0, 1.0, cfg.cover_tol(0.0, 1.0)));
}

TEST_CASE("cover test") {
    LeoConfig cfg;
    CHECK(cover_test(make_beta_map(2.0, 0.0), 0.5, 0.0, 0.01, 0.0, 1.0, cfg));
    // a subinterval inside the attractor gap of a nontransitive map never covers
    MapSpec gapmap = make_beta_map(1.2, 0.4);
    CHECK_FALSE(cover_test(gapmap, 0.5, 0.4, 0.41, 0.0, 1.0, cfg));
}

TEST_CASE("image validates its arguments") {
    MapSpec doubling = make_beta_map(2.0, 0.0);
    LeoConfig cfg;
    CHECK_THROWS_AS(image(doubling, 0.5, 0.3, 0.3, 0.0, 1.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(image(doubling, 0.5, 0.3, 1.1, 0.0, 1.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(image(doubling, 1.5, 0.3, 0.4, 0.0, 1.0, cfg), std::invalid_argument);
    LeoConfig bad;
    bad.max_image_iterations = 0;
    CHECK_THROWS_AS(image(doubling, 0.5, 0.3, 0.4, 0.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("interval list cap catches non-expanding maps") {
    // contracting left branch that climbs exactly to the cut: every split
    // leaves a fragment below the cut and the ladder never merges
    auto ladder = [](double x) { return x < 0.5 ? 0.25 + 0.5 * x : 0.001 * (x - 0.5); };
    LeoConfig cfg;
    cfg.subdivisions = 2;  // cap = 20 fragments
    CHECK_THROWS_AS(detail::image_impl(ladder, 0.5, 0.49, 0.51, 0.0, 1.0, cfg),
                    std::runtime_error);
}

TEST_CASE("leo test on reference maps") {
    LeoConfig cfg;
    CHECK(leo_test(make_beta_map(2.0, 0.0), 0.5, 0.0, 1.0, cfg));

    MapSpec nontrans = make_beta_map(1.2, 0.4);
    CHECK_FALSE(leo_test(nontrans, nontrans.discontinuity, 0.0, 1.0, cfg));

    // the exceptional constant-slope map: transitive but not LEO
    const double s2 = std::sqrt(2.0);
    MapSpec f0 = make_beta_map(s2, (2.0 - s2) / 2.0);
    CHECK_FALSE(leo_test(f0, f0.discontinuity, 0.0, 1.0, cfg));

    MapSpec trans = make_beta_map(1.2, 0.1);
    CHECK(leo_test(trans, trans.discontinuity, 0.0, 1.0, cfg));
}

TEST_CASE("image union agrees with directly iterated sample points") {
    SplitMix64 gen(555);
    LeoConfig cfg;
    int cases = 0;
    while (cases < 20) {
        double beta = 1.05 + gen.next_double() * 0.95;
        double alpha = gen.next_double() * (2.0 - beta);
        BetaParams p{beta, alpha};
        if (!p.valid()) continue;
        ++cases;
        MapSpec map = make_beta_map(beta, alpha);
        double x = gen.next_double() * 0.9;
        double y = x + 0.001 + gen.next_double() * 0.05;
        if (y > 1.0) y = 1.0;

        auto r = image(map, map.discontinuity, x, y, 0.0, 1.0, cfg);
        const double tol = cfg.cover_tol(0.0, 1.0);
        for (int s = 0; s < 200; ++s) {
            double u = x + gen.next_double() * (y - x);
            for (int t = 0; t < r.iterations; ++t) u = map.eval(u);
            CHECK(distance_to(r.intervals, u) <= tol);
        }
    }
}
