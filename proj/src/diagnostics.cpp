#include "urnlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urnlab {

Rational exact_increment(ModelKind model, DecompVariant variant, uint32_t m, uint32_t xi,
                         uint64_t x, uint64_t y, const Rational& z) {
    const Rational xr(x), yr(y), mr(m), xir(xi);
    switch (model) {
        case ModelKind::XOpp:
            // x (m - xi - m z)
            return xr * (mr - xir - mr * z);
        case ModelKind::XSelf:
            return xr * xir - z * mr * xr;
        case ModelKind::XYOpp:
            if (variant == DecompVariant::PaperPrinted)
                return xir * (z * (xr - yr) - xr) + mr * xr;  // missing (1 - z)
            return xir * (z * (xr - yr) - xr) + mr * xr * (1 - z);
        case ModelKind::XYSelf:
            return xir * (z * (yr - xr) + xr) - mr * z * yr;
    }
    return Rational(0);
}

Rational delta_m_centering(ModelKind model, DecompVariant variant, const Rational& z,
                           const ModelMoments& mm) {
    if (variant == DecompVariant::PaperPrinted && model == ModelKind::XOpp)
        return mm.mu_x * Rational(mm.m) * (1 - z);
    return drift_exact(model, z, mm);
}

namespace {

double increment_d(ModelKind model, DecompVariant variant, uint32_t m, const StepRecord& rec,
                   double z) {
    const double x = static_cast<double>(rec.x_draw);
    const double y = static_cast<double>(rec.y_draw);
    const double xi = rec.xi;
    const double md = m;
    switch (model) {
        case ModelKind::XOpp:
            return x * (md - xi - md * z);
        case ModelKind::XSelf:
            return x * xi - z * md * x;
        case ModelKind::XYOpp:
            if (variant == DecompVariant::PaperPrinted)
                return xi * (z * (x - y) - x) + md * x;
            return xi * (z * (x - y) - x) + md * x * (1.0 - z);
        case ModelKind::XYSelf:
            return xi * (z * (y - x) + x) - md * z * y;
    }
    return 0.0;
}

double centering_d(ModelKind model, DecompVariant variant, double z, const ModelMoments& mm) {
    if (variant == DecompVariant::PaperPrinted && model == ModelKind::XOpp)
        return mm.mu_x_d() * static_cast<double>(mm.m) * (1.0 - z);
    return drift(model, z, mm);
}

}  // namespace

SaDecomposition decompose(const Trajectory& traj, const ModelMoments& mm,
                          DecompVariant variant) {
    if (traj.records.empty())
        throw std::invalid_argument("decompose: trajectory has no step records (thin mode?)");

    SaDecomposition out;
    out.steps.reserve(traj.records.size());
    double z_prev = traj.initial.proportion_white();
    for (size_t i = 0; i < traj.records.size(); ++i) {
        const StepRecord& rec = traj.records[i];
        SaStep s;
        s.n = i + 1;
        const double t_after = count_to_double(rec.w_after + rec.b_after);
        s.gamma = 1.0 / t_after;
        s.drift_val = drift(traj.model, z_prev, mm);
        const double d = increment_d(traj.model, variant, traj.m, rec, z_prev);
        s.delta_m = d - centering_d(traj.model, variant, z_prev, mm);
        s.residual = (rec.z_after - z_prev) - s.gamma * (s.drift_val + s.delta_m);
        out.max_abs_residual = std::max(out.max_abs_residual, std::fabs(s.residual));
        out.steps.push_back(s);
        z_prev = rec.z_after;
    }
    return out;
}

ConditionalMoments conditional_moments(const UrnState& state, ModelKind model,
                                       const DiscreteDist& dx, const DiscreteDist* dy,
                                       uint32_t m, DecompVariant variant) {
    if (model_uses_y(model) != (dy != nullptr))
        throw std::invalid_argument("conditional_moments: Y law mismatch for model");
    if (state.total() < Count(m) || state.total() < 2)
        throw std::invalid_argument("conditional_moments: urn too small");

    ModelMoments mm = ModelMoments::from(m, dx, dy);
    const Rational z = rational_of(state.white) / rational_of(state.total());
    const Rational center = delta_m_centering(model, variant, z, mm);

    static const DiscreteDist unit = DiscreteDist::point(1);
    const DiscreteDist& y_dist = dy ? *dy : unit;

    Rational mean = 0, second = 0;
    for (uint32_t xi = 0; xi <= m; ++xi) {
        const Rational p_xi = hypergeom_pmf(state.white, state.blue, m, xi);
        if (p_xi == 0) continue;
        for (const auto& ax : dx.atoms()) {
            for (const auto& ay : y_dist.atoms()) {
                const Rational p = p_xi * ax.prob * ay.prob;
                const Rational dm =
                    exact_increment(model, variant, m, xi, ax.value, ay.value, z) - center;
                mean += p * dm;
                second += p * dm * dm;
            }
        }
    }
    return {mean, second};
}

SaConditionReport sa_condition_bounds(const Trajectory& traj, const ModelMoments& mm,
                                 const DiscreteDist& dx, const DiscreteDist* dy) {
    if (traj.records.empty())
        throw std::invalid_argument("sa_condition_bounds: trajectory has no step records");

    SaConditionReport rep;
    rep.c_l_hat = rep.c_l_hat_pre = std::numeric_limits<double>::infinity();
    UrnState prev = traj.initial;
    for (size_t i = 0; i < traj.records.size(); ++i) {
        const StepRecord& rec = traj.records[i];
        const double n = static_cast<double>(i + 1);
        const double t_prev = count_to_double(prev.total());
        const double t_after = count_to_double(rec.w_after + rec.b_after);

        const double ng_post = n / t_after;
        const double ng_pre = n / t_prev;
        rep.c_l_hat = std::min(rep.c_l_hat, ng_post);
        rep.c_u_hat = std::max(rep.c_u_hat, ng_post);
        rep.c_l_hat_pre = std::min(rep.c_l_hat_pre, ng_pre);
        rep.c_u_hat_pre = std::max(rep.c_u_hat_pre, ng_pre);

        rep.k_f_hat = std::max(rep.k_f_hat, std::fabs(drift(traj.model, rec.z_before, mm)));

        const ConditionalMoments cm = conditional_moments(prev, traj.model, dx, dy, traj.m);
        rep.k_u_hat = std::max(rep.k_u_hat, to_double(cm.second));
        rep.k_e_hat = std::max(rep.k_e_hat, std::fabs(to_double(cm.mean)) / t_after);

        prev = UrnState{rec.w_after, rec.b_after, prev.step + 1};
    }
    return rep;
}

std::vector<double> martingale_scale_factors(const Trajectory& traj, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("martingale_scale_factors: rate must be > 0");
    std::vector<double> scale;
    scale.reserve(traj.records.size() + 1);
    scale.push_back(1.0);
    double acc = 1.0;
    double t_prev = count_to_double(traj.initial.total());
    for (const StepRecord& rec : traj.records) {
        acc *= t_prev / (t_prev + rate);
        scale.push_back(acc);
        t_prev = count_to_double(rec.w_after + rec.b_after);
    }
    return scale;
}

}  // namespace urnlab
