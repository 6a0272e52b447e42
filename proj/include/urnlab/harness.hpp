#pragma once

#include "urnlab/asymptotics.hpp"
#include "urnlab/urn.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace urnlab {

/// One replicated, seeded experiment. Checkpoints must be sorted, within
/// [1, horizon]; replica streams derive from (master_seed, replica index).
struct ExperimentConfig {
    ModelKind model = ModelKind::XOpp;
    DiscreteDist dx = DiscreteDist::point(1);
    std::optional<DiscreteDist> dy;
    uint64_t w0 = 1, b0 = 1;
    uint32_t m = 1;
    uint64_t horizon = 0;
    std::vector<uint64_t> checkpoints;
    uint64_t replicas = 2;
    uint64_t master_seed = 0;
    uint32_t workers = 0;  // 0 = hardware concurrency
};

struct CheckpointStats {
    uint64_t n = 0;
    double mean_z = 0.0, var_z = 0.0;
    double mean_w = 0.0;
    double mean_t_over_n = 0.0;
    double var_w_over_n = 0.0;  // variance of the mean-centered statistic (W - mean W)/sqrt(n)
    std::optional<double> clt_var;  // variance of (W - z* T)/sqrt(n)
    std::optional<std::pair<double, double>> clt_ci;  // 95% chi-square interval
    std::optional<double> ks_normal;  // KS of standardized statistic vs N(0,1)
};

struct GrowthFit {
    double slope_mean = 0.0;
    double slope_stderr = 0.0;
};

struct AsLimitEntry {
    uint64_t n_from = 0, n_to = 0;
    double median_abs_dz = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    AsymptoticProfile theory;
    std::vector<CheckpointStats> checkpoints;
    std::optional<GrowthFit> growth;  // xyself with distinct means only
    std::vector<AsLimitEntry> as_limit;  // checkpoint pairs (n, 2n)
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Unbiased sample variance with a 95% chi-square interval. Needs >= 30 samples.
std::pair<double, std::pair<double, double>> estimate_clt_variance(
    const std::vector<double>& samples);

// sup_x |empirical CDF - reference CDF| over the sample points. Needs >= 10
// samples; reference_cdf must be monotone.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& reference_cdf);

// Least-squares slope of log(value) vs log(n). Needs >= 3 points, all > 0.
double loglog_slope(const std::vector<uint64_t>& ns, const std::vector<double>& values);

// Runs the experiment and fits per-replica log-log slopes of the blue-ball
// counts over the checkpoint window [horizon/100, horizon]. Requires xyself
// with distinct means and >= 3 checkpoints in the window.
GrowthFit estimate_growth_exponent(const ExperimentConfig& cfg);

// Median over replicas of |Z_{n_to} - Z_{n_from}|.
double median_abs_diff(const std::vector<double>& z_from, const std::vector<double>& z_to);

}  // namespace urnlab
