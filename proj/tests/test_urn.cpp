#include "urnlab/urn.hpp"

#include "urnlab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace urnlab;

TEST_CASE("hypergeometric pmf: worked values") {
    CHECK(hypergeom_pmf(2, 2, 2, 1) == Rational(2, 3));
    CHECK(hypergeom_pmf(2, 2, 2, 0) == Rational(1, 6));
    CHECK(hypergeom_pmf(2, 2, 2, 2) == Rational(1, 6));
    for (uint64_t w : {3, 5, 9}) CHECK(hypergeom_pmf(w, 0, 3, 3) == 1);  // only white available
    CHECK(hypergeom_pmf(1, 3, 2, 2) == 0);  // more white requested than present
    CHECK(hypergeom_pmf(3, 1, 3, 1) == 0);  // m-k exceeds blue
    CHECK_THROWS_AS(hypergeom_pmf(1, 1, 3, 1), std::invalid_argument);
}

TEST_CASE("hypergeometric pmf: normalization and mean identities") {
    for (uint64_t w : {0, 1, 2, 5, 11}) {
        for (uint64_t b : {0, 1, 3, 7}) {
            for (uint32_t m : {1u, 2u, 3u, 5u}) {
                if (w + b < m) continue;
                Rational total = 0, mean = 0;
                for (uint32_t k = 0; k <= m; ++k) {
                    const Rational p = hypergeom_pmf(w, b, m, k);
                    total += p;
                    mean += Rational(k) * p;
                }
                CHECK(total == 1);
                CHECK(mean == Rational(m) * Rational(w) / Rational(w + b));
            }
        }
    }
}

TEST_CASE("draw_sample: forced compositions") {
    RngStream rng(1);
    for (int i = 0; i < 20; ++i) CHECK(draw_sample(UrnState{5, 0, 0}, 3, rng) == 3);
    for (int i = 0; i < 20; ++i) CHECK(draw_sample(UrnState{0, 4, 0}, 2, rng) == 0);
    CHECK_THROWS_AS(draw_sample(UrnState{1, 0, 0}, 2, rng), std::invalid_argument);
}

TEST_CASE("draw_sample: empirical law matches the pmf") {
    RngStream rng(42);
    const int n = 1'000'000;
    int count1 = 0;
    for (int i = 0; i < n; ++i)
        if (draw_sample(UrnState{2, 2, 0}, 2, rng) == 1) ++count1;
    const double freq = double(count1) / n;
    CHECK(std::fabs(freq - 2.0 / 3.0) < 0.002);

    double sum = 0;
    for (int i = 0; i < n; ++i) sum += draw_sample(UrnState{3, 7, 0}, 2, rng);
    CHECK(std::fabs(sum / n - 0.6) < 0.01);  // E xi = m W / T
}

TEST_CASE("draw_sample: chi-square fit at a fixed state") {
    const UrnState state{3, 5, 0};
    const uint32_t m = 3;
    RngStream rng(7);
    const int n = 1'000'000;
    std::vector<int> counts(m + 1, 0);
    for (int i = 0; i < n; ++i) ++counts[draw_sample(state, m, rng)];

    double chi2 = 0;
    int dof = -1;
    for (uint32_t k = 0; k <= m; ++k) {
        const double expected = n * to_double(hypergeom_pmf(state.white, state.blue, m, k));
        if (expected == 0.0) {
            CHECK(counts[k] == 0);
            continue;
        }
        chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
        ++dof;
    }
    const double pvalue = stats::chi2_sf(chi2, dof);
    CHECK(pvalue > 0.001);
}

TEST_CASE("step: forced and recorded transitions") {
    const DiscreteDist one = DiscreteDist::point(1);
    RngStream rng(3);

    // two balls drawn from one white + one blue is always xi = 1
    auto [next, rec] = step(UrnState{1, 1, 0}, ModelKind::XOpp, one, nullptr, 2, rng);
    CHECK(rec.xi == 1);
    CHECK(next.white == 2);
    CHECK(next.blue == 2);
    CHECK(next.step == 1);

    CHECK_THROWS_AS(step(UrnState{1, 1, 0}, ModelKind::XYOpp, one, nullptr, 2, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(step(UrnState{1, 1, 0}, ModelKind::XOpp, one, &one, 2, rng),
                    std::invalid_argument);
}

TEST_CASE("step: xyopp addition rule, all sample compositions") {
    const DiscreteDist dx = DiscreteDist::point(1);
    const DiscreteDist dy = DiscreteDist::point(3);
    bool saw_xi1 = false;
    for (uint64_t seed = 0; seed < 32; ++seed) {
        RngStream rng(seed);
        auto [next, rec] = step(UrnState{2, 2, 0}, ModelKind::XYOpp, dx, &dy, 2, rng);
        CHECK(next.white == 2 + rec.x_draw * (2 - rec.xi));
        CHECK(next.blue == 2 + rec.y_draw * rec.xi);
        if (rec.xi == 1) {
            CHECK(next.white == 3);
            CHECK(next.blue == 5);
            saw_xi1 = true;
        }
    }
    CHECK(saw_xi1);
}

TEST_CASE("per-step total identities for every regime") {
    const DiscreteDist dx = DiscreteDist::uniform({1, 3});
    const DiscreteDist dy = DiscreteDist::uniform({2, 5});
    RunOptions opts;
    opts.full_records = true;

    struct Setup {
        ModelKind model;
        const DiscreteDist* dy;
    };
    const Setup setups[] = {{ModelKind::XOpp, nullptr},
                            {ModelKind::XSelf, nullptr},
                            {ModelKind::XYOpp, &dy},
                            {ModelKind::XYSelf, &dy}};
    for (const Setup& s : setups) {
        const Trajectory t =
            run(UrnState{2, 3, 0}, s.model, dx, s.dy, 2, 300, 99, opts);
        Count prev_t = 5;
        Count sum_x = 0;
        for (const StepRecord& rec : t.records) {
            const Count now = rec.w_after + rec.b_after;
            const uint64_t dt = static_cast<uint64_t>(now - prev_t);
            const uint32_t m = 2;
            sum_x += rec.x_draw;
            switch (s.model) {
                case ModelKind::XOpp:
                case ModelKind::XSelf:
                    CHECK(dt == m * rec.x_draw);
                    break;
                case ModelKind::XYOpp:
                    CHECK(int64_t(dt) == int64_t(m * rec.x_draw) +
                                             int64_t(rec.xi) * (int64_t(rec.y_draw) -
                                                                int64_t(rec.x_draw)));
                    break;
                case ModelKind::XYSelf:
                    CHECK(int64_t(dt) == int64_t(m * rec.y_draw) +
                                             int64_t(rec.xi) * (int64_t(rec.x_draw) -
                                                                int64_t(rec.y_draw)));
                    break;
            }
            // strict unbalanced growth: additions at least m * min(support)
            CHECK(rec.w_added + rec.b_added >= 2 * 1);
            CHECK(rec.z_before >= 0.0);
            CHECK(rec.z_before <= 1.0);
            CHECK(rec.z_after >= 0.0);
            CHECK(rec.z_after <= 1.0);
            prev_t = now;
        }
        if (s.model == ModelKind::XOpp || s.model == ModelKind::XSelf) {
            CHECK(t.final_state.total() == Count(5) + Count(2) * sum_x);
        }
    }
}

TEST_CASE("run: horizon zero, deterministic totals, replay") {
    const DiscreteDist d3 = DiscreteDist::point(3);
    const Trajectory empty = run(UrnState{4, 2, 0}, ModelKind::XOpp, d3, nullptr, 2, 0, 11, {});
    CHECK(empty.records.empty());
    CHECK(empty.final_state.white == 4);
    CHECK(empty.final_state.blue == 2);

    // X == c makes the total deterministic: T_n = T_0 + m c n
    const Trajectory det = run(UrnState{4, 2, 0}, ModelKind::XOpp, d3, nullptr, 2, 50, 11, {});
    CHECK(det.final_state.total() == Count(6 + 2 * 3 * 50));

    RunOptions full;
    full.full_records = true;
    const DiscreteDist dx = DiscreteDist::uniform({1, 3});
    const Trajectory a = run(UrnState{2, 2, 0}, ModelKind::XSelf, dx, nullptr, 2, 200, 321, full);
    const Trajectory b = run(UrnState{2, 2, 0}, ModelKind::XSelf, dx, nullptr, 2, 200, 321, full);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].xi == b.records[i].xi);
        CHECK(a.records[i].x_draw == b.records[i].x_draw);
        CHECK(a.records[i].w_after == b.records[i].w_after);
        CHECK(a.records[i].b_after == b.records[i].b_after);
    }
}

TEST_CASE("run: thin checkpoints land on the requested steps") {
    RunOptions opts;
    opts.checkpoints = {1, 5, 20};
    const DiscreteDist dx = DiscreteDist::uniform({1, 2});
    const Trajectory t = run(UrnState{3, 3, 0}, ModelKind::XSelf, dx, nullptr, 1, 20, 8, opts);
    REQUIRE(t.checkpoints.size() == 3);
    CHECK(t.checkpoints[0].n == 1);
    CHECK(t.checkpoints[1].n == 5);
    CHECK(t.checkpoints[2].n == 20);
    CHECK(t.checkpoints[2].white + t.checkpoints[2].blue == t.final_state.total());
    CHECK(t.records.empty());
}

TEST_CASE("model parsing") {
    CHECK(parse_model("xopp") == ModelKind::XOpp);
    CHECK(parse_model("XYSelf") == ModelKind::XYSelf);
    CHECK(model_uses_y(ModelKind::XYOpp));
    CHECK(!model_uses_y(ModelKind::XSelf));
    CHECK_THROWS_WITH_AS(parse_model("vanilla"),
                         "unknown model 'vanilla' (valid: xopp, xself, xyopp, xyself)",
                         std::invalid_argument);
}
