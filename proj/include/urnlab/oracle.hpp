#pragma once

#include "urnlab/diagnostics.hpp"
#include "urnlab/distributions.hpp"
#include "urnlab/urn.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace urnlab {

// Exact finite-horizon law of the urn, by forward dynamic programming over
// reachable states in rational arithmetic. Ground truth for everything the
// simulator and the closed forms claim at small n.

struct StateDist {
    uint64_t horizon = 0;
    // (W, B) -> exact probability; masses sum to 1
    std::map<std::pair<uint64_t, uint64_t>, Rational> mass;
};

struct ExactMoments {
    Rational e_w, var_w;
    Rational e_z, var_z;
};

inline constexpr uint64_t kDefaultStateBudget = 1'000'000;

StateDist exact_distribution(uint64_t w0, uint64_t b0, uint32_t m, ModelKind model,
                             const DiscreteDist& dx, const DiscreteDist* dy, uint64_t n,
                             uint64_t state_budget = kDefaultStateBudget);

ExactMoments exact_moments(const StateDist& sd);

// Max over every reachable state at steps 0..n-1 of |E[dM | state]| and, for
// the self-reinforcing regimes, of the scaled-martingale defect
// (T/(T+rate)) E[W'|state] - W (and the blue-side analogue). Exactly zero
// unless the variant formulas are wrong.
Rational check_martingale(uint64_t w0, uint64_t b0, uint32_t m, ModelKind model,
                          const DiscreteDist& dx, const DiscreteDist* dy, uint64_t n,
                          DecompVariant variant = DecompVariant::Corrected,
                          uint64_t state_budget = kDefaultStateBudget);

}  // namespace urnlab
