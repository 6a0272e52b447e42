#include "urnlab/oracle.hpp"

#include "urnlab/errors.hpp"

#include <set>
#include <vector>

namespace urnlab {

namespace {

struct Transition {
    uint64_t w_next;
    uint64_t b_next;
    Rational prob;  // conditional on the source state
};

// All one-step transitions out of (w, b), with exact probabilities.
template <typename Visit>
void for_each_transition(uint64_t w, uint64_t b, uint32_t m, ModelKind model,
                         const DiscreteDist& dx, const DiscreteDist* dy, Visit&& visit) {
    static const DiscreteDist unit = DiscreteDist::point(1);
    const DiscreteDist& y_dist = dy ? *dy : unit;
    for (uint32_t xi = 0; xi <= m; ++xi) {
        const Rational p_xi = hypergeom_pmf(w, b, m, xi);
        if (p_xi == 0) continue;
        for (const auto& ax : dx.atoms()) {
            for (const auto& ay : y_dist.atoms()) {
                uint64_t dw = 0, db = 0;
                switch (model) {
                    case ModelKind::XOpp:
                        dw = ax.value * (m - xi);
                        db = ax.value * xi;
                        break;
                    case ModelKind::XSelf:
                        dw = ax.value * xi;
                        db = ax.value * (m - xi);
                        break;
                    case ModelKind::XYOpp:
                        dw = ax.value * (m - xi);
                        db = ay.value * xi;
                        break;
                    case ModelKind::XYSelf:
                        dw = ax.value * xi;
                        db = ay.value * (m - xi);
                        break;
                }
                visit(Transition{w + dw, b + db, p_xi * ax.prob * ay.prob});
            }
        }
    }
}

void validate_inputs(uint64_t w0, uint64_t b0, uint32_t m, ModelKind model,
                     const DiscreteDist* dy) {
    if (w0 + b0 < m) throw std::invalid_argument("oracle: initial urn smaller than sample size");
    if (model_uses_y(model) != (dy != nullptr))
        throw std::invalid_argument("oracle: Y law must be present exactly for xyopp/xyself");
}

}  // namespace

StateDist exact_distribution(uint64_t w0, uint64_t b0, uint32_t m, ModelKind model,
                             const DiscreteDist& dx, const DiscreteDist* dy, uint64_t n,
                             uint64_t state_budget) {
    validate_inputs(w0, b0, m, model, dy);

    StateDist sd;
    sd.horizon = n;
    sd.mass[{w0, b0}] = 1;
    for (uint64_t step = 0; step < n; ++step) {
        std::map<std::pair<uint64_t, uint64_t>, Rational> next;
        for (const auto& [state, p] : sd.mass) {
            for_each_transition(state.first, state.second, m, model, dx, dy,
                                [&](const Transition& t) {
                                    next[{t.w_next, t.b_next}] += p * t.prob;
                                });
            if (next.size() > state_budget)
                throw RuntimeLimitError("oracle: state budget exceeded at step " +
                                        std::to_string(step + 1) + " (" +
                                        std::to_string(next.size()) + " states)");
        }
        sd.mass = std::move(next);
    }
    return sd;
}

ExactMoments exact_moments(const StateDist& sd) {
    Rational ew = 0, ew2 = 0, ez = 0, ez2 = 0;
    for (const auto& [state, p] : sd.mass) {
        const Rational w(state.first);
        const Rational z = Rational(state.first) / Rational(state.first + state.second);
        ew += p * w;
        ew2 += p * w * w;
        ez += p * z;
        ez2 += p * z * z;
    }
    return {ew, ew2 - ew * ew, ez, ez2 - ez * ez};
}

Rational check_martingale(uint64_t w0, uint64_t b0, uint32_t m, ModelKind model,
                          const DiscreteDist& dx, const DiscreteDist* dy, uint64_t n,
                          DecompVariant variant, uint64_t state_budget) {
    validate_inputs(w0, b0, m, model, dy);

    const ModelMoments mm = ModelMoments::from(m, dx, dy);
    const bool self_reinforcing = model == ModelKind::XSelf || model == ModelKind::XYSelf;
    const Rational rate_w = Rational(m) * mm.mu_x;
    const Rational rate_b = Rational(m) * (model == ModelKind::XYSelf ? *mm.mu_y : mm.mu_x);

    Rational max_defect = 0;
    auto track = [&max_defect](const Rational& defect) {
        const Rational a = defect < 0 ? Rational(-defect) : defect;
        if (a > max_defect) max_defect = a;
    };

    std::set<std::pair<uint64_t, uint64_t>> states{{w0, b0}};
    for (uint64_t step = 0; step < n; ++step) {
        std::set<std::pair<uint64_t, uint64_t>> next;
        for (const auto& [w, b] : states) {
            const UrnState us{Count(w), Count(b), step};
            const ConditionalMoments cm =
                conditional_moments(us, model, dx, dy, m, variant);
            track(cm.mean);

            if (self_reinforcing) {
                // scaled-martingale defect: (T/(T+rate)) E[next | state] - current
                const Rational t(w + b);
                Rational ew_next = 0, eb_next = 0;
                for_each_transition(w, b, m, model, dx, dy, [&](const Transition& tr) {
                    ew_next += tr.prob * Rational(tr.w_next);
                    eb_next += tr.prob * Rational(tr.b_next);
                });
                track(t / (t + rate_w) * ew_next - Rational(w));
                track(t / (t + rate_b) * eb_next - Rational(b));
            }

            for_each_transition(w, b, m, model, dx, dy, [&](const Transition& tr) {
                next.insert({tr.w_next, tr.b_next});
            });
            if (next.size() > state_budget)
                throw RuntimeLimitError("oracle: state budget exceeded in martingale check");
        }
        states = std::move(next);
    }
    return max_defect;
}

}  // namespace urnlab
