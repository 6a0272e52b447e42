#include "urnlab/distributions.hpp"

#include "urnlab/config.hpp"
#include "urnlab/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace urnlab;

TEST_CASE("moments of catalog laws") {
    const MomentSet point = moments(DiscreteDist::point(1));
    CHECK(point.mean == 1);
    CHECK(point.variance == 0);
    CHECK(point.second_moment == 1);

    const MomentSet u13 = moments(DiscreteDist::uniform({1, 3}));
    CHECK(u13.mean == 2);
    CHECK(u13.variance == 1);
    CHECK(u13.second_moment == 5);

    const MomentSet u12 = moments(DiscreteDist::uniform({1, 2}));
    CHECK(u12.mean == Rational(3, 2));
    CHECK(u12.variance == Rational(1, 4));
    CHECK(u12.second_moment == Rational(5, 2));
}

TEST_CASE("moment identity holds exactly") {
    const DiscreteDist dists[] = {
        DiscreteDist::point(7),
        DiscreteDist::uniform({1, 3}),
        DiscreteDist::uniform({2, 5, 9}),
        DiscreteDist({{1, Rational(1, 6)}, {2, Rational(1, 3)}, {5, Rational(1, 2)}}),
    };
    for (const auto& d : dists) {
        const MomentSet ms = moments(d);
        CHECK(ms.second_moment - ms.mean * ms.mean == ms.variance);
        CHECK(ms.mean >= 1);
        CHECK(ms.variance >= 0);
    }
}

TEST_CASE("cross_sq_diff") {
    const DiscreteDist c4 = DiscreteDist::point(4);
    CHECK(cross_sq_diff(c4, c4) == 0);

    CHECK(cross_sq_diff(DiscreteDist::point(1), DiscreteDist::uniform({3, 5})) == 10);
    CHECK(cross_sq_diff(DiscreteDist::uniform({1, 2}), DiscreteDist::point(1)) == Rational(1, 2));

    // E[(X - X')^2] = 2 Var X for an independent copy
    const DiscreteDist dists[] = {
        DiscreteDist::uniform({1, 3}),
        DiscreteDist::uniform({1, 2}),
        DiscreteDist({{1, Rational(1, 6)}, {2, Rational(1, 3)}, {5, Rational(1, 2)}}),
    };
    for (const auto& d : dists) {
        const Rational e2 = cross_sq_diff(d, d);
        CHECK(e2 >= 0);
        CHECK(e2 == 2 * moments(d).variance);
    }
}

TEST_CASE("constructor rejects invalid laws") {
    CHECK_THROWS_AS(DiscreteDist({}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteDist({{0, Rational(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteDist({{1, Rational(1, 2)}}), std::invalid_argument);  // sums to 1/2
    CHECK_THROWS_AS(DiscreteDist({{1, Rational(1, 2)}, {1, Rational(1, 2)}}),
                    std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(DiscreteDist({{1, Rational(3, 2)}, {2, Rational(-1, 2)}}),
                    std::invalid_argument);  // out of (0,1]
}

TEST_CASE("sampling: point mass and determinism") {
    const DiscreteDist d = DiscreteDist::point(4);
    RngStream rng(123);
    for (int i = 0; i < 10; ++i) CHECK(d.sample(rng) == 4);

    const DiscreteDist u = DiscreteDist::uniform({1, 2, 9});
    RngStream a(77), b(77);
    for (int i = 0; i < 1000; ++i) CHECK(u.sample(a) == u.sample(b));
}

TEST_CASE("sampling: empirical frequency matches the law") {
    const DiscreteDist u = DiscreteDist::uniform({1, 2});
    RngStream rng(20240601);
    const int n = 1'000'000;
    int ones = 0;
    for (int i = 0; i < n; ++i)
        if (u.sample(rng) == 1) ++ones;
    const double freq = double(ones) / n;
    CHECK(freq > 0.498);  // 3 sigma band around 1/2
    CHECK(freq < 0.502);
}

TEST_CASE("sampling: empirical mean within 4 standard errors") {
    const DiscreteDist dists[] = {
        DiscreteDist::uniform({1, 3}),
        DiscreteDist({{1, Rational(1, 6)}, {2, Rational(1, 3)}, {5, Rational(1, 2)}}),
    };
    const int n = 1'000'000;
    uint64_t seed = 5;
    for (const auto& d : dists) {
        RngStream rng(seed++);
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += double(d.sample(rng));
        const MomentSet ms = moments(d);
        const double se = std::sqrt(to_double(ms.variance) / n);
        CHECK(std::fabs(sum / n - to_double(ms.mean)) < 4 * se);
    }
}

TEST_CASE("json parsing: rational and decimal probability strings") {
    const auto j = nlohmann::json::parse(R"({"atoms": [[1, "0.25"], [3, "3/4"]]})");
    const DiscreteDist d = dist_from_json(j, "dX");
    CHECK(d.atoms().size() == 2);
    CHECK(d.atoms()[0].prob == Rational(1, 4));
    CHECK(d.atoms()[1].prob == Rational(3, 4));

    // decimal strings are exact, not floating approximations
    const auto j2 = nlohmann::json::parse(R"({"atoms": [[2, "0.1"], [5, "0.9"]]})");
    CHECK(dist_from_json(j2, "dX").atoms()[0].prob == Rational(1, 10));

    // scientific notation
    CHECK(parse_rational("2.5e-1") == Rational(1, 4));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));

    // round-trip through dist_to_json
    const DiscreteDist back = dist_from_json(dist_to_json(d), "dX");
    CHECK(back.atoms()[0].value == 1);
    CHECK(back.atoms()[0].prob == Rational(1, 4));
}

TEST_CASE("json parsing: rejects inexact or malformed input") {
    CHECK_THROWS_AS(dist_from_json(nlohmann::json::parse(R"({"atoms": [[1, 0.5], [2, 0.5]]})"), "dX"),
                    ConfigError);  // bare floats are ambiguous; must be quoted
    CHECK_THROWS_AS(dist_from_json(nlohmann::json::parse(R"({"atoms": [[0, "1"]]})"), "dX"),
                    ConfigError);
    CHECK_THROWS_AS(dist_from_json(nlohmann::json::parse(R"({"bad": 1})"), "dX"), ConfigError);
    CHECK_THROWS_AS(dist_from_json(nlohmann::json::parse(R"({"atoms": [[1, "1/3"]]})"), "dX"),
                    ConfigError);  // does not sum to 1
}
