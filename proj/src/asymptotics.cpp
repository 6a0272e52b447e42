#include "urnlab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace urnlab {

ModelMoments ModelMoments::from(uint32_t m, const DiscreteDist& dx, const DiscreteDist* dy) {
    ModelMoments mm;
    mm.m = m;
    const MomentSet mx = moments(dx);
    mm.mu_x = mx.mean;
    mm.var_x = mx.variance;
    mm.nu_x = mx.second_moment;
    if (dy) {
        const MomentSet my = moments(*dy);
        mm.mu_y = my.mean;
        mm.var_y = my.variance;
        mm.nu_y = my.second_moment;
        mm.e_sq_diff = cross_sq_diff(dx, *dy);
    }
    return mm;
}

namespace {

void require_y(const ModelMoments& mm, const char* what) {
    if (!mm.has_y()) throw std::invalid_argument(std::string(what) + ": Y moments required");
}

}  // namespace

double drift(ModelKind model, double x, const ModelMoments& mm) {
    const double m = mm.m;
    const double mux = mm.mu_x_d();
    switch (model) {
        case ModelKind::XOpp:
            return mux * m * (1.0 - 2.0 * x);
        case ModelKind::XSelf:
            return 0.0;
        case ModelKind::XYOpp: {
            require_y(mm, "drift");
            const double muy = mm.mu_y_d();
            return m * (mux - muy) * x * x - 2.0 * mux * m * x + mux * m;
        }
        case ModelKind::XYSelf: {
            require_y(mm, "drift");
            const double muy = mm.mu_y_d();
            return m * (mux - muy) * x * (1.0 - x);
        }
    }
    return 0.0;
}

Rational drift_exact(ModelKind model, const Rational& x, const ModelMoments& mm) {
    const Rational m(mm.m);
    switch (model) {
        case ModelKind::XOpp:
            return mm.mu_x * m * (1 - 2 * x);
        case ModelKind::XSelf:
            return Rational(0);
        case ModelKind::XYOpp:
            require_y(mm, "drift_exact");
            return m * (mm.mu_x - *mm.mu_y) * x * x - 2 * mm.mu_x * m * x + mm.mu_x * m;
        case ModelKind::XYSelf:
            require_y(mm, "drift_exact");
            return m * (mm.mu_x - *mm.mu_y) * x * (1 - x);
    }
    return Rational(0);
}

StableZero stable_zero(ModelKind model, const ModelMoments& mm) {
    switch (model) {
        case ModelKind::XOpp:
            return StableZero::point(0.5);
        case ModelKind::XSelf:
            return StableZero::random();
        case ModelKind::XYOpp: {
            require_y(mm, "stable_zero");
            const double sx = std::sqrt(mm.mu_x_d());
            const double sy = std::sqrt(mm.mu_y_d());
            return StableZero::point(sx / (sx + sy));
        }
        case ModelKind::XYSelf: {
            require_y(mm, "stable_zero");
            if (mm.mu_x > *mm.mu_y) return StableZero::point(1.0);
            if (mm.mu_x < *mm.mu_y) return StableZero::point(0.0);
            return StableZero::random();
        }
    }
    return StableZero::random();
}

double total_rate(ModelKind model, const ModelMoments& mm) {
    const double m = mm.m;
    switch (model) {
        case ModelKind::XOpp:
        case ModelKind::XSelf:
            return m * mm.mu_x_d();
        case ModelKind::XYOpp:
            require_y(mm, "total_rate");
            return m * std::sqrt(mm.mu_x_d() * mm.mu_y_d());
        case ModelKind::XYSelf:
            require_y(mm, "total_rate");
            return m * std::max(mm.mu_x_d(), mm.mu_y_d());
    }
    return 0.0;
}

namespace {

// d/dx of drift() at x, closed form per regime.
double drift_derivative(ModelKind model, double x, const ModelMoments& mm) {
    const double m = mm.m;
    const double mux = mm.mu_x_d();
    switch (model) {
        case ModelKind::XOpp:
            return -2.0 * mux * m;
        case ModelKind::XSelf:
            return 0.0;
        case ModelKind::XYOpp:
            return 2.0 * m * (mux - mm.mu_y_d()) * x - 2.0 * mux * m;
        case ModelKind::XYSelf:
            return m * (mux - mm.mu_y_d()) * (1.0 - 2.0 * x);
    }
    return 0.0;
}

}  // namespace

double gamma_hat(ModelKind model, const ModelMoments& mm) {
    const StableZero z = stable_zero(model, mm);
    if (z.random_limit)
        throw std::invalid_argument("gamma_hat: no point stable zero for this regime");
    if (model == ModelKind::XOpp) return 2.0;
    if (model == ModelKind::XYOpp) {
        // -f'(z) = 2 m sqrt(mu_x mu_y) cancels the total rate exactly
        const double s = mm.m * std::sqrt(mm.mu_x_d() * mm.mu_y_d());
        return 2.0 * s / s;
    }
    return -drift_derivative(model, z.value, mm) / total_rate(model, mm);
}

double noise_var_limit(ModelKind model, const ModelMoments& mm) {
    const StableZero sz = stable_zero(model, mm);
    if (sz.random_limit)
        throw std::invalid_argument("noise_var_limit: no point stable zero for this regime");
    const double m = mm.m;
    switch (model) {
        case ModelKind::XOpp:
            return m * to_double(mm.nu_x) / 4.0;
        case ModelKind::XYOpp: {
            // E[dM^2|F] at Z = z, T -> inf, from dM = xi (z(X-Y) - X) + mX(1-z) - f(z)
            // with E[xi^2|F] -> m z(1-z) + m^2 z^2 and f(z) = 0.
            const double z = sz.value;
            const double nux = to_double(mm.nu_x);
            const double cross = nux - mm.mu_x_d() * mm.mu_y_d();  // E[X(X-Y)]
            const double esq = to_double(*mm.e_sq_diff);
            const double xi2 = m * z * (1.0 - z) + m * m * z * z;
            return (z * z * esq - 2.0 * z * cross + nux) * xi2 +
                   2.0 * m * m * z * (1.0 - z) * (z * cross - nux) +
                   m * m * nux * (1.0 - z) * (1.0 - z);
        }
        case ModelKind::XYSelf:
            // at z in {0,1} both E[xi^2]-type factors vanish; the limit is 0
            return 0.0;
        case ModelKind::XSelf:
            break;
    }
    throw std::invalid_argument("noise_var_limit: unsupported regime");
}

double paper_G(double x, const ModelMoments& mm) {
    require_y(mm, "paper_G");
    const double m = mm.m;
    const double nux = to_double(mm.nu_x);
    const double muxy = mm.mu_x_d() * mm.mu_y_d();
    const double esq = to_double(*mm.e_sq_diff);
    const double a0 = m * m * nux;
    const double a1 = m * (1.0 - 2.0 * m) * nux;
    const double a2 = 3.0 * m * (m - 1.0) * nux - 2.0 * m * (m - 1.0) * muxy;
    const double a3 = m * esq - 2.0 * (m * m - m) * (nux - muxy);
    const double a4 = m * (m - 1.0) * esq;
    return a0 + x * (a1 + x * (a2 + x * (a3 + x * a4)));
}

double var_slope_derived(const ModelMoments& mm) {
    const double m = mm.m;
    return m * to_double(mm.nu_x) / 12.0 + m * m * to_double(mm.var_x) / 4.0;
}

double clt_variance(ModelKind model, const ModelMoments& mm, CltStatistic statistic) {
    if (statistic == CltStatistic::MeanCentered) {
        if (model != ModelKind::XOpp)
            throw std::invalid_argument("clt_variance: mean-centered statistic only defined for xopp");
        const double m = mm.m;
        return (m * to_double(mm.nu_x) + m * m * to_double(mm.var_x)) / 12.0;
    }
    const double gh = gamma_hat(model, mm);
    if (!(2.0 * gh - 1.0 > 0.0))
        throw std::invalid_argument("clt_variance: gamma_hat <= 1/2, normal limit unavailable");
    return noise_var_limit(model, mm) / (2.0 * gh - 1.0);
}

double growth_exponent(const ModelMoments& mm) {
    require_y(mm, "growth_exponent");
    if (mm.mu_x == *mm.mu_y)
        throw std::invalid_argument("growth_exponent: undefined when mu_x == mu_y");
    const double lo = std::min(mm.mu_x_d(), mm.mu_y_d());
    const double hi = std::max(mm.mu_x_d(), mm.mu_y_d());
    return lo / hi;
}

AsymptoticProfile asymptotic_profile(ModelKind model, const ModelMoments& mm) {
    AsymptoticProfile p;
    p.model = model;
    p.m = mm.m;
    p.stable_zero = stable_zero(model, mm);
    p.total_rate = total_rate(model, mm);
    if (!p.stable_zero.random_limit) {
        p.gamma_hat = gamma_hat(model, mm);
        p.noise_var = noise_var_limit(model, mm);
        if (2.0 * *p.gamma_hat - 1.0 > 0.0)
            p.clt_var_proportion = clt_variance(model, mm, CltStatistic::ProportionScaled);
    }
    if (model == ModelKind::XOpp) {
        p.clt_var_centered = clt_variance(model, mm, CltStatistic::MeanCentered);
        p.var_slope_derived = var_slope_derived(mm);
    }
    if (model == ModelKind::XYOpp)
        p.paper_g_var = paper_G(p.stable_zero.value, mm) / 3.0;
    if (model == ModelKind::XYSelf && mm.mu_x != *mm.mu_y)
        p.growth_exponent = growth_exponent(mm);
    return p;
}

}  // namespace urnlab
