#include "urnlab/urn.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace urnlab {

bool model_uses_y(ModelKind model) {
    return model == ModelKind::XYOpp || model == ModelKind::XYSelf;
}

std::string model_name(ModelKind model) {
    switch (model) {
        case ModelKind::XOpp: return "xopp";
        case ModelKind::XSelf: return "xself";
        case ModelKind::XYOpp: return "xyopp";
        case ModelKind::XYSelf: return "xyself";
    }
    return "?";
}

ModelKind parse_model(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "xopp") return ModelKind::XOpp;
    if (lower == "xself") return ModelKind::XSelf;
    if (lower == "xyopp") return ModelKind::XYOpp;
    if (lower == "xyself") return ModelKind::XYSelf;
    throw std::invalid_argument("unknown model '" + name +
                                "' (valid: xopp, xself, xyopp, xyself)");
}

Rational hypergeom_pmf(Count white, Count blue, uint32_t m, uint32_t k) {
    const Count total = white + blue;
    if (Count(m) > total) throw std::invalid_argument("hypergeom_pmf: sample larger than urn");
    if (k > m) return 0;
    if (Count(k) > white || Count(m - k) > blue) return 0;
    const BigInt num = binomial(to_bigint(white), k) * binomial(to_bigint(blue), m - k);
    const BigInt den = binomial(to_bigint(total), m);
    return Rational(num, den);
}

uint32_t draw_sample(const UrnState& state, uint32_t m, RngStream& rng) {
    const Count total = state.total();
    if (Count(m) > total) throw std::invalid_argument("draw_sample: sample larger than urn");
    if (total > Count(std::numeric_limits<uint64_t>::max()))
        throw std::runtime_error("draw_sample: urn total exceeds sampler range");
    uint32_t xi = 0;
    for (uint32_t i = 0; i < m; ++i) {
        const uint64_t remaining = static_cast<uint64_t>(total - i);
        const uint64_t remaining_white = static_cast<uint64_t>(state.white) - xi;
        if (rng.next_below(remaining) < remaining_white) ++xi;
    }
    return xi;
}

namespace {

struct Additions {
    uint64_t w = 0;
    uint64_t b = 0;
};

Additions additions_for(ModelKind model, uint32_t m, uint32_t xi, uint64_t x, uint64_t y) {
    switch (model) {
        case ModelKind::XOpp:   return {x * (m - xi), x * xi};
        case ModelKind::XSelf:  return {x * xi, x * (m - xi)};
        case ModelKind::XYOpp:  return {x * (m - xi), y * xi};
        case ModelKind::XYSelf: return {x * xi, y * (m - xi)};
    }
    return {};
}

}  // namespace

std::pair<UrnState, StepRecord> step(const UrnState& state, ModelKind model,
                                     const DiscreteDist& dx, const DiscreteDist* dy,
                                     uint32_t m, RngStream& rng) {
    if (model_uses_y(model) != (dy != nullptr))
        throw std::invalid_argument("step: Y law must be present exactly for xyopp/xyself");

    StepRecord rec;
    rec.z_before = state.proportion_white();
    rec.xi = draw_sample(state, m, rng);
    rec.x_draw = dx.sample(rng);
    rec.y_draw = dy ? dy->sample(rng) : 0;

    const Additions add = additions_for(model, m, rec.xi, rec.x_draw, rec.y_draw);
    rec.w_added = add.w;
    rec.b_added = add.b;

    UrnState next{state.white + add.w, state.blue + add.b, state.step + 1};
    rec.w_after = next.white;
    rec.b_after = next.blue;
    rec.z_after = next.proportion_white();
    return {next, rec};
}

Trajectory run(const UrnState& initial, ModelKind model, const DiscreteDist& dx,
               const DiscreteDist* dy, uint32_t m, uint64_t horizon, uint64_t seed,
               const RunOptions& options) {
    if (Count(m) > initial.total())
        throw std::invalid_argument("run: initial urn smaller than sample size");

    Trajectory traj;
    traj.initial = initial;
    traj.model = model;
    traj.m = m;
    traj.seed = seed;
    if (options.full_records) traj.records.reserve(horizon);

    RngStream rng(seed);
    UrnState state = initial;
    size_t next_cp = 0;
    const auto& cps = options.checkpoints;
    for (uint64_t n = 1; n <= horizon; ++n) {
        auto [next, rec] = step(state, model, dx, dy, m, rng);
        state = next;
        if (options.full_records) traj.records.push_back(rec);
        while (next_cp < cps.size() && cps[next_cp] == n) {
            traj.checkpoints.push_back({n, state.white, state.blue});
            ++next_cp;
        }
    }
    traj.final_state = state;
    return traj;
}

}  // namespace urnlab
