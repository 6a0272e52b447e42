#pragma once

#include "urnlab/distributions.hpp"
#include "urnlab/rational.hpp"
#include "urnlab/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urnlab {

/// The four replacement regimes. Opp variants reinforce the colour opposite
/// to the one drawn; Self variants reinforce the drawn colour. The XY
/// variants use a second addition law Y for the blue side.
enum class ModelKind { XOpp, XSelf, XYOpp, XYSelf };

bool model_uses_y(ModelKind model);
std::string model_name(ModelKind model);
// case-insensitive; throws std::invalid_argument listing valid names
ModelKind parse_model(const std::string& name);

struct UrnState {
    Count white = 0;  // W_n
    Count blue = 0;   // B_n
    uint64_t step = 0;

    Count total() const { return white + blue; }
    double proportion_white() const {
        return count_to_double(white) / count_to_double(total());
    }
};

struct StepRecord {
    uint32_t xi = 0;       // white balls in the sample
    uint64_t x_draw = 0;
    uint64_t y_draw = 0;   // 0 when the model has no Y law
    uint64_t w_added = 0;
    uint64_t b_added = 0;
    Count w_after = 0;
    Count b_after = 0;
    double z_before = 0.0;
    double z_after = 0.0;
};

struct Checkpoint {
    uint64_t n = 0;
    Count white = 0;
    Count blue = 0;
};

/// One realized path. Full mode keeps every StepRecord; thin mode keeps only
/// the requested checkpoints. Replaying (initial, model, seed) reproduces the
/// records exactly.
struct Trajectory {
    UrnState initial;
    ModelKind model = ModelKind::XOpp;
    uint32_t m = 1;
    uint64_t seed = 0;
    std::vector<StepRecord> records;      // full mode
    std::vector<Checkpoint> checkpoints;  // thin mode
    UrnState final_state;
};

// P[xi = k] for a sample of m balls from W white and B blue, exact.
// Zero for infeasible k; throws if m > W + B.
Rational hypergeom_pmf(Count white, Count blue, uint32_t m, uint32_t k);

// xi via m sequential without-replacement picks; each pick is white with
// probability (W - drawn_white) / (T - drawn), exactly.
uint32_t draw_sample(const UrnState& state, uint32_t m, RngStream& rng);

// One evolution step under the given regime.
std::pair<UrnState, StepRecord> step(const UrnState& state, ModelKind model,
                                     const DiscreteDist& dx, const DiscreteDist* dy,
                                     uint32_t m, RngStream& rng);

struct RunOptions {
    bool full_records = false;
    std::vector<uint64_t> checkpoints;  // thin mode records these (sorted)
};

Trajectory run(const UrnState& initial, ModelKind model, const DiscreteDist& dx,
               const DiscreteDist* dy, uint32_t m, uint64_t horizon, uint64_t seed,
               const RunOptions& options = {});

}  // namespace urnlab
