#include "urnlab/harness.hpp"

#include "urnlab/errors.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace urnlab {

namespace {

void validate(const ExperimentConfig& cfg) {
    if (cfg.replicas < 2) throw ConfigError("replicas: need at least 2");
    if (cfg.w0 + cfg.b0 < cfg.m) throw ConfigError("W0+B0: initial urn smaller than sample size m");
    if (model_uses_y(cfg.model) != cfg.dy.has_value())
        throw ConfigError("dY: required exactly for xyopp/xyself");
    if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end()))
        throw ConfigError("checkpoints: must be sorted ascending");
    if (std::adjacent_find(cfg.checkpoints.begin(), cfg.checkpoints.end()) !=
        cfg.checkpoints.end())
        throw ConfigError("checkpoints: duplicate entries");
    for (uint64_t c : cfg.checkpoints)
        if (c < 1 || c > cfg.horizon)
            throw ConfigError("checkpoints: entries must lie in [1, horizon]");
}

double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    const double mean = sample_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

std::pair<double, std::pair<double, double>> estimate_clt_variance(
    const std::vector<double>& samples) {
    if (samples.size() < 30)
        throw std::invalid_argument("estimate_clt_variance: need at least 30 samples");
    const double var = sample_variance(samples);
    const double k = static_cast<double>(samples.size() - 1);
    const double lo = k * var / stats::chi2_quantile(0.975, k);
    const double hi = k * var / stats::chi2_quantile(0.025, k);
    return {var, {lo, hi}};
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& reference_cdf) {
    if (samples.size() < 10) throw std::invalid_argument("ks_distance: need at least 10 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = reference_cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double loglog_slope(const std::vector<uint64_t>& ns, const std::vector<double>& values) {
    if (ns.size() != values.size()) throw std::invalid_argument("loglog_slope: size mismatch");
    if (ns.size() < 3) throw std::invalid_argument("loglog_slope: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ns.size());
    for (size_t i = 0; i < ns.size(); ++i) {
        if (values[i] <= 0.0) throw std::invalid_argument("loglog_slope: nonpositive value");
        const double lx = std::log(static_cast<double>(ns[i]));
        const double ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissa");
    return (n * sxy - sx * sy) / denom;
}

double median_abs_diff(const std::vector<double>& z_from, const std::vector<double>& z_to) {
    if (z_from.size() != z_to.size() || z_from.empty())
        throw std::invalid_argument("median_abs_diff: size mismatch");
    std::vector<double> d(z_from.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = std::fabs(z_to[i] - z_from[i]);
    std::sort(d.begin(), d.end());
    const size_t k = d.size();
    return k % 2 ? d[k / 2] : 0.5 * (d[k / 2 - 1] + d[k / 2]);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);

    const size_t n_cp = cfg.checkpoints.size();
    // [replica][checkpoint] -> (W, B)
    std::vector<std::vector<Checkpoint>> grid(cfg.replicas);

    const DiscreteDist* dy = cfg.dy ? &*cfg.dy : nullptr;
    const UrnState initial{Count(cfg.w0), Count(cfg.b0), 0};
    RunOptions opts;
    opts.checkpoints = cfg.checkpoints;

    uint32_t workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<uint32_t>(
        std::min<uint64_t>(workers, cfg.replicas));

    std::atomic<uint64_t> next_replica{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            while (true) {
                const uint64_t idx = next_replica.fetch_add(1);
                if (idx >= cfg.replicas) break;
                const uint64_t seed = RngStream::derive_seed(cfg.master_seed, idx);
                Trajectory t = run(initial, cfg.model, cfg.dx, dy, cfg.m, cfg.horizon, seed, opts);
                grid[idx] = std::move(t.checkpoints);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (uint32_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    ExperimentReport report;
    report.config = cfg;
    const ModelMoments mm = ModelMoments::from(cfg.m, cfg.dx, dy);
    report.theory = asymptotic_profile(cfg.model, mm);

    const bool point_zero = !report.theory.stable_zero.random_limit;
    const double z_star = report.theory.stable_zero.value;

    if (cfg.horizon == 0) {
        // degenerate run: one exact row for the initial state
        CheckpointStats cs;
        cs.n = 0;
        cs.mean_z = static_cast<double>(cfg.w0) / static_cast<double>(cfg.w0 + cfg.b0);
        cs.var_z = 0.0;
        cs.mean_w = static_cast<double>(cfg.w0);
        cs.mean_t_over_n = 0.0;
        cs.var_w_over_n = 0.0;
        report.checkpoints.push_back(cs);
        return report;
    }

    // aggregation in fixed replica order, single thread
    std::vector<std::vector<double>> z_at(n_cp);
    for (size_t c = 0; c < n_cp; ++c) {
        const uint64_t n = cfg.checkpoints[c];
        const double sqrt_n = std::sqrt(static_cast<double>(n));

        std::vector<double> zs(cfg.replicas), ws(cfg.replicas), ts(cfg.replicas);
        std::vector<double> stat(cfg.replicas);
        for (uint64_t r = 0; r < cfg.replicas; ++r) {
            const Checkpoint& cp = grid[r][c];
            const double w = count_to_double(cp.white);
            const double t = w + count_to_double(cp.blue);
            ws[r] = w;
            ts[r] = t;
            zs[r] = w / t;
            if (point_zero) stat[r] = (w - z_star * t) / sqrt_n;
        }

        CheckpointStats cs;
        cs.n = n;
        cs.mean_z = sample_mean(zs);
        cs.var_z = sample_variance(zs);
        cs.mean_w = sample_mean(ws);
        cs.mean_t_over_n = sample_mean(ts) / static_cast<double>(n);
        cs.var_w_over_n = sample_variance(ws) / static_cast<double>(n);
        if (point_zero && cfg.replicas >= 30) {
            auto [var, ci] = estimate_clt_variance(stat);
            cs.clt_var = var;
            cs.clt_ci = ci;
            if (report.theory.clt_var_proportion && *report.theory.clt_var_proportion > 0.0) {
                const double sd = std::sqrt(*report.theory.clt_var_proportion);
                std::vector<double> standardized(stat);
                for (double& s : standardized) s /= sd;
                cs.ks_normal = ks_distance(std::move(standardized), [](double x) {
                    return stats::normal_cdf(x);
                });
            }
        }
        report.checkpoints.push_back(cs);
        z_at[c] = std::move(zs);
    }

    // a.s.-convergence probe: checkpoint pairs (n, 2n)
    for (size_t a = 0; a < n_cp; ++a) {
        for (size_t b = a + 1; b < n_cp; ++b) {
            if (cfg.checkpoints[b] == 2 * cfg.checkpoints[a]) {
                report.as_limit.push_back({cfg.checkpoints[a], cfg.checkpoints[b],
                                           median_abs_diff(z_at[a], z_at[b])});
            }
        }
    }

    // growth exponent for the minority colour
    if (cfg.model == ModelKind::XYSelf && mm.mu_x != *mm.mu_y) {
        const bool blue_minor = mm.mu_x > *mm.mu_y;
        std::vector<uint64_t> window_ns;
        std::vector<size_t> window_idx;
        for (size_t c = 0; c < n_cp; ++c) {
            if (cfg.checkpoints[c] * 100 >= cfg.horizon) {
                window_ns.push_back(cfg.checkpoints[c]);
                window_idx.push_back(c);
            }
        }
        if (window_ns.size() >= 3) {
            std::vector<double> slopes(cfg.replicas);
            std::vector<double> vals(window_ns.size());
            for (uint64_t r = 0; r < cfg.replicas; ++r) {
                for (size_t j = 0; j < window_idx.size(); ++j) {
                    const Checkpoint& cp = grid[r][window_idx[j]];
                    vals[j] = count_to_double(blue_minor ? cp.blue : cp.white);
                }
                slopes[r] = loglog_slope(window_ns, vals);
            }
            GrowthFit fit;
            fit.slope_mean = sample_mean(slopes);
            fit.slope_stderr = std::sqrt(sample_variance(slopes) /
                                         static_cast<double>(cfg.replicas));
            report.growth = fit;
        }
    }

    return report;
}

GrowthFit estimate_growth_exponent(const ExperimentConfig& cfg) {
    if (cfg.model != ModelKind::XYSelf)
        throw std::invalid_argument("estimate_growth_exponent: xyself only");
    const ModelMoments mm =
        ModelMoments::from(cfg.m, cfg.dx, cfg.dy ? &*cfg.dy : nullptr);
    if (!mm.has_y() || mm.mu_x == *mm.mu_y)
        throw std::invalid_argument("estimate_growth_exponent: undefined when mu_x == mu_y");
    size_t in_window = 0;
    for (uint64_t c : cfg.checkpoints)
        if (c * 100 >= cfg.horizon) ++in_window;
    if (in_window < 3)
        throw std::invalid_argument(
            "estimate_growth_exponent: need >= 3 checkpoints in [horizon/100, horizon]");
    const ExperimentReport report = run_experiment(cfg);
    if (!report.growth) throw std::logic_error("estimate_growth_exponent: fit missing");
    return *report.growth;
}

}  // namespace urnlab
