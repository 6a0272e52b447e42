#include "urnlab/report_io.hpp"

#include "urnlab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace urnlab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

namespace {

json opt_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

json profile_to_json(const AsymptoticProfile& p) {
    json j;
    j["model"] = model_name(p.model);
    j["m"] = p.m;
    if (p.stable_zero.random_limit)
        j["stable_zero"] = "random-limit";
    else
        j["stable_zero"] = p.stable_zero.value;
    j["total_rate"] = p.total_rate;
    j["gamma_hat"] = opt_to_json(p.gamma_hat);
    j["noise_var"] = opt_to_json(p.noise_var);
    j["clt_var_proportion"] = opt_to_json(p.clt_var_proportion);
    j["clt_var_centered"] = opt_to_json(p.clt_var_centered);
    j["growth_exponent"] = opt_to_json(p.growth_exponent);
    j["paper_g_var"] = opt_to_json(p.paper_g_var);
    j["var_slope_derived"] = opt_to_json(p.var_slope_derived);
    return j;
}

json report_to_json(const ExperimentReport& r) {
    json cfg;
    cfg["model"] = model_name(r.config.model);
    cfg["m"] = r.config.m;
    cfg["W0"] = r.config.w0;
    cfg["B0"] = r.config.b0;
    cfg["dX"] = dist_to_json(r.config.dx);
    cfg["dY"] = r.config.dy ? dist_to_json(*r.config.dy) : json(nullptr);
    cfg["horizon"] = r.config.horizon;
    cfg["checkpoints"] = r.config.checkpoints;
    cfg["replicas"] = r.config.replicas;
    cfg["seed"] = r.config.master_seed;

    json cps = json::array();
    for (const auto& c : r.checkpoints) {
        json jc;
        jc["n"] = c.n;
        jc["mean_Z"] = c.mean_z;
        jc["var_Z"] = c.var_z;
        jc["mean_W"] = c.mean_w;
        jc["mean_T_over_n"] = c.mean_t_over_n;
        jc["var_W_over_n"] = c.var_w_over_n;
        jc["clt_var"] = opt_to_json(c.clt_var);
        jc["clt_ci_lo"] = c.clt_ci ? json(c.clt_ci->first) : json(nullptr);
        jc["clt_ci_hi"] = c.clt_ci ? json(c.clt_ci->second) : json(nullptr);
        jc["ks_normal"] = opt_to_json(c.ks_normal);
        cps.push_back(jc);
    }

    json as_limit = json::array();
    for (const auto& e : r.as_limit) {
        as_limit.push_back(
            json{{"n_from", e.n_from}, {"n_to", e.n_to}, {"median_abs_dz", e.median_abs_dz}});
    }

    json j;
    j["config"] = cfg;
    j["theory"] = profile_to_json(r.theory);
    j["checkpoints"] = cps;
    j["growth"] = r.growth ? json{{"slope_mean", r.growth->slope_mean},
                                  {"slope_stderr", r.growth->slope_stderr}}
                           : json(nullptr);
    j["as_limit"] = as_limit;
    return j;
}

std::string report_to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "n,mean_Z,var_Z,clt_var,clt_ci_lo,clt_ci_hi,ks\n";
    for (const auto& c : r.checkpoints) {
        os << c.n << ',' << format_double(c.mean_z) << ',' << format_double(c.var_z) << ','
           << (c.clt_var ? format_double(*c.clt_var) : "nan") << ','
           << (c.clt_ci ? format_double(c.clt_ci->first) : "nan") << ','
           << (c.clt_ci ? format_double(c.clt_ci->second) : "nan") << ','
           << (c.ks_normal ? format_double(*c.ks_normal) : "nan") << '\n';
    }
    return os.str();
}

std::string trajectory_to_csv(const Trajectory& traj, bool full) {
    std::ostringstream os;
    os << (full ? "n,W,B,T,Z,xi,x,y,w_added,b_added\n" : "n,W,B,T,Z\n");

    auto state_cols = [&os](uint64_t n, Count w, Count b) {
        const Count t = w + b;
        os << n << ',' << count_to_string(w) << ',' << count_to_string(b) << ','
           << count_to_string(t) << ','
           << format_double(count_to_double(w) / count_to_double(t));
    };

    state_cols(0, traj.initial.white, traj.initial.blue);
    if (full) os << ",,,,,";
    os << '\n';

    if (full) {
        for (size_t i = 0; i < traj.records.size(); ++i) {
            const StepRecord& rec = traj.records[i];
            state_cols(i + 1, rec.w_after, rec.b_after);
            os << ',' << rec.xi << ',' << rec.x_draw << ',';
            if (traj.model == ModelKind::XYOpp || traj.model == ModelKind::XYSelf)
                os << rec.y_draw;
            os << ',' << rec.w_added << ',' << rec.b_added << '\n';
        }
    } else {
        for (const Checkpoint& cp : traj.checkpoints) {
            state_cols(cp.n, cp.white, cp.blue);
            os << '\n';
        }
    }
    return os.str();
}

std::string state_dist_to_csv(const StateDist& sd) {
    std::ostringstream os;
    os << "W,B,prob_num,prob_den\n";
    for (const auto& [state, p] : sd.mass) {
        os << state.first << ',' << state.second << ',' << numerator(p).str() << ','
           << denominator(p).str() << '\n';
    }
    return os.str();
}

json exact_moments_to_json(const StateDist& sd, const ExactMoments& em) {
    json j;
    j["horizon"] = sd.horizon;
    j["states"] = sd.mass.size();
    j["E_W"] = rational_to_string(em.e_w);
    j["Var_W"] = rational_to_string(em.var_w);
    j["E_Z"] = rational_to_string(em.e_z);
    j["Var_Z"] = rational_to_string(em.var_z);
    j["E_W_float"] = to_double(em.e_w);
    j["Var_W_float"] = to_double(em.var_w);
    j["E_Z_float"] = to_double(em.e_z);
    j["Var_Z_float"] = to_double(em.var_z);
    return j;
}

std::string decomposition_to_csv(const SaDecomposition& d) {
    std::ostringstream os;
    os << "n,gamma,f,dm,residual\n";
    for (const SaStep& s : d.steps) {
        os << s.n << ',' << format_double(s.gamma) << ',' << format_double(s.drift_val) << ','
           << format_double(s.delta_m) << ',' << format_double(s.residual) << '\n';
    }
    return os.str();
}

json sa_conditions_to_json(const SaConditionReport& r) {
    json j;
    j["c_l_hat"] = r.c_l_hat;
    j["c_u_hat"] = r.c_u_hat;
    j["c_l_hat_pre"] = r.c_l_hat_pre;
    j["c_u_hat_pre"] = r.c_u_hat_pre;
    j["k_u_hat"] = r.k_u_hat;
    j["k_f_hat"] = r.k_f_hat;
    j["k_e_hat"] = r.k_e_hat;
    return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        if (!out) throw std::runtime_error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace urnlab
