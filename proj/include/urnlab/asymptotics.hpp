#pragma once

#include "urnlab/distributions.hpp"
#include "urnlab/urn.hpp"

#include <optional>
#include <string>

namespace urnlab {

/// Moment inputs to the limit formulas: exact rationals lifted from the
/// addition laws. nu = E R^2 = variance + mean^2 for each law.
struct ModelMoments {
    uint32_t m = 1;
    Rational mu_x, var_x, nu_x;
    std::optional<Rational> mu_y, var_y, nu_y;
    std::optional<Rational> e_sq_diff;  // E[(X-Y)^2], X independent of Y

    static ModelMoments from(uint32_t m, const DiscreteDist& dx, const DiscreteDist* dy);

    double mu_x_d() const { return to_double(mu_x); }
    double mu_y_d() const { return to_double(*mu_y); }
    bool has_y() const { return mu_y.has_value(); }
};

/// Point limit of the white proportion, or the marker for regimes whose
/// proportion converges to a nondegenerate random variable.
struct StableZero {
    bool random_limit = false;
    double value = 0.0;  // meaningful only when !random_limit

    static StableZero point(double v) { return {false, v}; }
    static StableZero random() { return {true, 0.0}; }
};

/// Every closed-form limit the harness compares against. Fields that do not
/// apply to a regime are left unset.
struct AsymptoticProfile {
    ModelKind model = ModelKind::XOpp;
    uint32_t m = 1;
    StableZero stable_zero;
    double total_rate = 0.0;                    // lim T_n / n
    std::optional<double> gamma_hat;            // -f'(z*) / total_rate
    std::optional<double> noise_var;            // lim E[dM^2 | F]
    std::optional<double> clt_var_proportion;   // Var limit of (W_n - z*T_n)/sqrt(n)
    std::optional<double> clt_var_centered;     // Var limit of (W_n - E W_n)/sqrt(n)
    std::optional<double> growth_exponent;      // minority-colour exponent
    std::optional<double> paper_g_var;          // printed-polynomial variant, comparison only
    std::optional<double> var_slope_derived;    // decomposition-based Var(W_n)/n slope (xopp)
};

enum class CltStatistic { ProportionScaled, MeanCentered };

// Mean conditional increment of the proportion, lifted to [0,1].
double drift(ModelKind model, double x, const ModelMoments& mm);

// Same polynomial in exact arithmetic, for the oracle-side identities.
Rational drift_exact(ModelKind model, const Rational& x, const ModelMoments& mm);

StableZero stable_zero(ModelKind model, const ModelMoments& mm);

double total_rate(ModelKind model, const ModelMoments& mm);

// Normalized drift slope at the point zero; throws for random-limit regimes.
double gamma_hat(ModelKind model, const ModelMoments& mm);

// Limit of E[dM^2 | F] at the point zero; throws for random-limit regimes.
double noise_var_limit(ModelKind model, const ModelMoments& mm);

// The quartic printed for the XYOpp noise limit, evaluated verbatim.
// Reported next to noise_var_limit, never asserted.
double paper_G(double x, const ModelMoments& mm);

// Slope of Var(W_n)/n for xopp obtained from W = (W - T/2) + T/2: the
// proportion-CLT variance plus the random total's own variance share,
// m nu / 12 + m^2 sigma^2 / 4. The exact oracle's variance trend converges
// to this value; clt_variance(MeanCentered) keeps the printed formula and is
// reported alongside.
double var_slope_derived(const ModelMoments& mm);

double clt_variance(ModelKind model, const ModelMoments& mm, CltStatistic statistic);

// Exponent of the minority colour in xyself; throws when mu_x == mu_y.
double growth_exponent(const ModelMoments& mm);

AsymptoticProfile asymptotic_profile(ModelKind model, const ModelMoments& mm);

}  // namespace urnlab
