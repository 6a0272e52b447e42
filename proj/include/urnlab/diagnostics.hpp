#pragma once

#include "urnlab/asymptotics.hpp"
#include "urnlab/urn.hpp"

#include <vector>

namespace urnlab {

/// Which increment/centering formulas drive the decomposition. Corrected is
/// the pathwise-exact set; PaperPrinted deliberately reproduces the
/// inconsistent xopp centering and xyopp increment so the oracle can show
/// they break the martingale property.
enum class DecompVariant { Corrected, PaperPrinted };

struct SaStep {
    uint64_t n = 0;       // 1-based step index
    double gamma = 0.0;   // 1 / T_n (post-addition total)
    double drift_val = 0.0;
    double delta_m = 0.0;
    double residual = 0.0;
};

struct SaDecomposition {
    std::vector<SaStep> steps;
    double max_abs_residual = 0.0;
};

/// Empirical bounds for the step-size / noise / drift conditions of the
/// approximation scheme. The _pre fields use gamma_n = 1/T_{n-1}; the plain
/// fields use the pathwise-exact 1/T_n.
struct SaConditionReport {
    double c_l_hat = 0.0, c_u_hat = 0.0;          // extrema of n * gamma_n
    double c_l_hat_pre = 0.0, c_u_hat_pre = 0.0;
    double k_u_hat = 0.0;  // max conditional E[dM^2 | state] along the path
    double k_f_hat = 0.0;  // max |f(Z_n)|
    double k_e_hat = 0.0;  // max gamma_n * |E[dM | state]|; exactly 0
};

struct ConditionalMoments {
    Rational mean;
    Rational second;
};

// Exact one-step proportion increment numerator D = dW - Z * dT for the
// given draw, per regime. PaperPrinted switches xyopp to the variant without
// the (1 - Z) factor.
Rational exact_increment(ModelKind model, DecompVariant variant, uint32_t m, uint32_t xi,
                         uint64_t x, uint64_t y, const Rational& z);

// Term subtracted from D to form dM. Corrected: the drift at z. PaperPrinted
// switches xopp to mu m (1 - z).
Rational delta_m_centering(ModelKind model, DecompVariant variant, const Rational& z,
                           const ModelMoments& mm);

// Per-step (gamma, f, dM, residual) for a fully recorded trajectory.
SaDecomposition decompose(const Trajectory& traj, const ModelMoments& mm,
                          DecompVariant variant = DecompVariant::Corrected);

// Exact E[dM | state] and E[dM^2 | state], summing over the sample count and
// the addition supports.
ConditionalMoments conditional_moments(const UrnState& state, ModelKind model,
                                       const DiscreteDist& dx, const DiscreteDist* dy,
                                       uint32_t m,
                                       DecompVariant variant = DecompVariant::Corrected);

SaConditionReport sa_condition_bounds(const Trajectory& traj, const ModelMoments& mm,
                                 const DiscreteDist& dx, const DiscreteDist* dy);

// Cumulative products prod_{k<n} T_k / (T_k + rate) along the path, one entry
// per state from n = 0 (empty product) to the final step. Multiplied into W_n
// (or B_n) they form the self-reinforcement martingales.
std::vector<double> martingale_scale_factors(const Trajectory& traj, double rate);

}  // namespace urnlab
