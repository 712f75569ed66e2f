#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pla/core.hpp"
#include "pla/oracle.hpp"
#include "pla/pointbound.hpp"
#include "support/drive.hpp"
#include "support/generators.hpp"

using namespace pla;

TEST_CASE("parallelogram: unit-step seed region") {
    FeasibleRegion r = parallelogram(0.0, 1.0, 1, 0.5);
    CHECK(r.y_lo == doctest::Approx(-0.5));
    CHECK(r.y_hi == doctest::Approx(0.5));
    // slope band at y = -0.5 is [1, 2], at y = +0.5 it is [0, 1]
    CHECK(r.l_lo == doctest::Approx(1.0));
    CHECK(r.u_lo == doctest::Approx(2.0));
    CHECK(r.l_hi == doctest::Approx(0.0));
    CHECK(r.u_hi == doctest::Approx(1.0));
}

TEST_CASE("parallelogram: flat pair is symmetric around slope zero") {
    FeasibleRegion r = parallelogram(0.7, 0.7, 1, 0.3);
    CHECK(r.u_lo - r.l_lo == doctest::Approx(0.6));
    CHECK(r.u_hi - r.l_hi == doctest::Approx(0.6));
    auto [y, m] = region_pick(r);
    CHECK(y == doctest::Approx(0.7));
    CHECK(m == doctest::Approx(0.0));
}

TEST_CASE("parallelogram: distance-2 sample halves the slope band") {
    FeasibleRegion r = parallelogram(0.0, 10.0, 2, 1.0);
    CHECK(r.y_lo == doctest::Approx(-1.0));
    CHECK(r.y_hi == doctest::Approx(1.0));
    CHECK(r.l_lo == doctest::Approx(5.0));
    CHECK(r.u_lo == doctest::Approx(6.0));
    CHECK(r.l_hi == doctest::Approx(4.0));
    CHECK(r.u_hi == doctest::Approx(5.0));
}

TEST_CASE("parallelogram: rejects bad arguments") {
    CHECK_THROWS_AS(parallelogram(0.0, 1.0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(parallelogram(0.0, 1.0, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(parallelogram(0.0, 1.0, 1, -1.0), std::invalid_argument);
}

TEST_CASE("region_intersect: superset constraint leaves the region unchanged") {
    FeasibleRegion r = parallelogram(0.0, 1.0, 1, 0.5);
    auto r2 = region_intersect(r, 2.0, 2, 100.0);
    REQUIRE(r2.has_value());
    CHECK(r2->y_lo == doctest::Approx(r.y_lo).epsilon(1e-12));
    CHECK(r2->y_hi == doctest::Approx(r.y_hi).epsilon(1e-12));
    CHECK(r2->u_lo == doctest::Approx(r.u_lo).epsilon(1e-12));
    CHECK(r2->u_hi == doctest::Approx(r.u_hi).epsilon(1e-12));
    CHECK(r2->l_lo == doctest::Approx(r.l_lo).epsilon(1e-12));
    CHECK(r2->l_hi == doctest::Approx(r.l_hi).epsilon(1e-12));
}

TEST_CASE("region_intersect: incompatible jump empties the region") {
    FeasibleRegion r = parallelogram(0.0, 0.0, 1, 0.5);
    CHECK_FALSE(region_intersect(r, 10.0, 2, 0.5).has_value());
    // and the in-place variant must leave the region untouched on failure
    FeasibleRegion r3 = parallelogram(0.0, 0.0, 1, 0.5);
    double y_hi_before = r3.y_hi;
    CHECK_FALSE(r3.intersect_in_place(10.0, 2, 0.5));
    CHECK(r3.y_hi == y_hi_before);
    CHECK(region_intersect(r3, 0.1, 2, 0.5).has_value());
}

TEST_CASE("region_intersect: collinear extension keeps the generating line") {
    FeasibleRegion r = parallelogram(0.0, 1.0, 1, 0.5);
    auto r2 = region_intersect(r, 2.0, 2, 0.5);
    REQUIRE(r2.has_value());
    CHECK(r2->y_lo <= 0.0);
    CHECK(r2->y_hi >= 0.0);
    CHECK(r2->lower_at(0.0) <= 1.0 + 1e-12);
    CHECK(r2->upper_at(0.0) >= 1.0 - 1e-12);
}

TEST_CASE("region_pick: unit-step seed picks the chord midpoint") {
    FeasibleRegion r = parallelogram(0.0, 1.0, 1, 0.5);
    auto [y, m] = region_pick(r);
    CHECK(y == doctest::Approx(0.0));
    CHECK(m == doctest::Approx(1.0));
}

TEST_CASE("region_pick: collinear stream reproduces the generating line") {
    double y0 = 0.3, m0 = 0.2, eps = 0.25;
    FeasibleRegion r = parallelogram(y0, y0 + m0, 1, eps);
    for (long long d = 2; d <= 6; ++d) {
        auto next = region_intersect(r, y0 + m0 * static_cast<double>(d), d, eps);
        REQUIRE(next.has_value());
        r = *next;
    }
    auto [y, m] = region_pick(r);
    CHECK(y == doctest::Approx(y0).epsilon(1e-9));
    CHECK(m == doctest::Approx(m0).epsilon(1e-9));
}

TEST_CASE("region_pick: always satisfies every intersected constraint") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> du(-1.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        double eps = 0.2 + 0.3 * std::abs(du(rng));
        std::vector<double> xs{du(rng)};
        FeasibleRegion r;
        bool seeded = false;
        for (long long d = 1; d <= 24; ++d) {
            double x = xs.back() + 0.15 * du(rng);
            xs.push_back(x);
            if (!seeded) {
                r = parallelogram(xs[0], x, 1, eps);
                seeded = true;
            } else {
                auto next = region_intersect(r, x, d, eps);
                if (!next) break;
                r = *next;
            }
            auto [y, m] = region_pick(r);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                double fitted = y + m * static_cast<double>(k);
                CHECK(std::abs(fitted - xs[k]) <= eps + 1e-9);
            }
        }
    }
}

TEST_CASE("region_pick: empty region throws") {
    FeasibleRegion r;  // default: y_lo == y_hi == 0 but no envelope lines
    r.y_lo = 1.0;
    r.y_hi = -1.0;
    CHECK_THROWS_AS(region_pick(r), std::invalid_argument);
}

TEST_CASE("pointbound push: constant stream never emits") {
    PointBound m(0.1);
    for (int k = 0; k < 1000; ++k) CHECK_FALSE(m.push(2.5).has_value());
    auto tail = m.flush();
    REQUIRE(tail.has_value());
    CHECK(*tail == Segment{1, 2.5, 1000, 2.5});
}

TEST_CASE("pointbound push: a jump cuts the segment") {
    PointBound m(0.5);
    CHECK_FALSE(m.push(0.0).has_value());
    CHECK_FALSE(m.push(0.0).has_value());
    auto done = m.push(10.0);
    REQUIRE(done.has_value());
    CHECK(done->i == 1);
    CHECK(done->j == 2);
    CHECK(std::abs(done->y_i) <= 0.5 + 1e-12);
    CHECK(std::abs(done->y_j) <= 0.5 + 1e-12);
    auto tail = m.flush();
    REQUIRE(tail.has_value());
    CHECK(*tail == Segment{3, 10.0, 3, 10.0});
}

TEST_CASE("pointbound push: segment count matches the offline optimum") {
    for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
        TimeSeries x = testgen::std_instance(seed, 64);
        for (double eps : {0.1, 0.3}) {
            PlaStream pla = testgen::run_pointbound(x, eps);
            CHECK(static_cast<int>(pla.segments.size()) ==
                  oracle::dp_min_segments(x, eps, ErrorKind::max_err));
        }
    }
}

TEST_CASE("pointbound: chord-shortcut counterexample stays optimal") {
    // a chord-based emptiness test splits this walk into 2 segments; the exact
    // envelopes keep it whole
    TimeSeries x{{0.4766, 1.0072, 0.5653, 0.6246, 1.1079, 0.7021, 0.8974, 0.7709,
                  0.7701, 0.3537, 0.8437, 0.5971, 0.5832, 0.8225, 0.6367, 0.6247,
                  0.5877, 0.8324, 0.6377, 0.8235, 0.4286, 0.5736, 0.6766, 0.7938,
                  0.9207, 0.9495, 0.8464, 0.8566, 0.5378, 0.5188, 0.2963, 0.2596,
                  0.2815, 0.5352, 0.9874, 1.0308, 0.7489, 1.0412, 1.2912},
                 1};
    PlaStream pla = testgen::run_pointbound(x, 0.5);
    CHECK(pla.segments.size() == 1);
    CHECK(oracle::dp_min_segments(x, 0.5, ErrorKind::max_err) == 1);
    CHECK(max_err(x, pla) <= 0.5 + 1e-9);
}

TEST_CASE("pointbound flush: fresh machine yields nothing") {
    PointBound m(0.5);
    CHECK_FALSE(m.flush().has_value());
}

TEST_CASE("pointbound flush: lone sample becomes a degenerate segment") {
    PointBound m(0.5);
    CHECK_FALSE(m.push(5.0).has_value());
    auto tail = m.flush();
    REQUIRE(tail.has_value());
    CHECK(*tail == Segment{1, 5.0, 1, 5.0});
    // flush resets: the machine is reusable from the start index
    CHECK_FALSE(m.push(1.0).has_value());
    auto again = m.flush();
    REQUIRE(again.has_value());
    CHECK(*again == Segment{1, 1.0, 1, 1.0});
}

TEST_CASE("pointbound flush: open pair respects the bound") {
    PointBound m(0.5);
    m.push(0.0);
    m.push(1.0);
    auto tail = m.flush();
    REQUIRE(tail.has_value());
    TimeSeries x{{0.0, 1.0}, 1};
    PlaStream pla{{*tail}, false, 0.5, ErrorKind::max_err};
    CHECK(max_err(x, pla) <= 0.5 + 1e-9);
}

TEST_CASE("pointbound: soundness across the generator suite") {
    for (std::uint64_t seed = 900; seed < 912; ++seed) {
        TimeSeries x = testgen::std_instance(seed, 56);
        for (double eps : {0.05, 0.2, 0.5}) {
            PlaStream pla = testgen::run_pointbound(x, eps);
            CHECK(max_err(x, pla) <= eps + 1e-9);
            // disconnected tiling: segments abut with no gaps
            long long expect = x.first_index();
            for (const Segment& s : pla.segments) {
                CHECK(s.i == expect);
                expect = s.j + 1;
            }
            CHECK(expect == x.last_index() + 1);
        }
    }
}

TEST_CASE("pointbound: region shrinks monotonically (set inclusion)") {
    // every point sampled from the current region satisfies every constraint
    // seen so far, i.e. the region is a subset of all earlier regions
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> du(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        double eps = 0.3;
        std::vector<double> xs{du(rng)};
        FeasibleRegion r;
        bool seeded = false;
        for (long long d = 1; d <= 20; ++d) {
            double x = xs.back() + 0.2 * du(rng);
            xs.push_back(x);
            if (!seeded) {
                r = parallelogram(xs[0], x, 1, eps);
                seeded = true;
                continue;
            }
            auto next = region_intersect(r, x, d, eps);
            if (!next) break;
            r = *next;
            for (int gy = 0; gy <= 4; ++gy) {
                double y = r.y_lo + (r.y_hi - r.y_lo) * gy / 4.0;
                double lo = r.lower_at(y), hi = r.upper_at(y);
                if (lo > hi) continue;  // clipped corner
                for (int gm = 0; gm <= 4; ++gm) {
                    double m = lo + (hi - lo) * gm / 4.0;
                    for (std::size_t k = 1; k < xs.size(); ++k) {
                        CHECK(y + m * static_cast<double>(k) <= xs[k] + eps + 1e-9);
                        CHECK(y + m * static_cast<double>(k) >= xs[k] - eps - 1e-9);
                    }
                    CHECK(y >= xs[0] - eps - 1e-9);
                    CHECK(y <= xs[0] + eps + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("pointbound: bounded state on a constant stream") {
    PointBound m(0.1);
    for (int k = 0; k < 10; ++k) m.push(1.0);
    std::size_t small = m.stored_elements();
    for (int k = 10; k < 10000; ++k) m.push(1.0);
    CHECK(m.stored_elements() == small);
    CHECK(m.stored_elements() <= 8);
}

TEST_CASE("pointbound: endpoint economy on random streams") {
    for (std::uint64_t seed : {61u, 62u, 63u}) {
        TimeSeries x = testgen::std_instance(seed, 50);
        PlaStream pla = testgen::run_pointbound(x, 0.2);
        long long degenerate = 0;
        for (const Segment& s : pla.segments)
            if (s.degenerate()) ++degenerate;
        CHECK(endpoint_count(pla) ==
              2 * static_cast<long long>(pla.segments.size()) - degenerate);
    }
}
