#pragma once

#include "urnlab/asymptotics.hpp"
#include "urnlab/diagnostics.hpp"
#include "urnlab/harness.hpp"
#include "urnlab/oracle.hpp"

#include <json.hpp>

#include <string>

namespace urnlab {

// Shortest decimal that round-trips the double.
std::string format_double(double v);

nlohmann::json profile_to_json(const AsymptoticProfile& p);
nlohmann::json report_to_json(const ExperimentReport& r);
// header: n,mean_Z,var_Z,clt_var,clt_ci_lo,clt_ci_hi,ks
std::string report_to_csv(const ExperimentReport& r);

// header: n,W,B,T,Z  (+ xi,x,y,w_added,b_added in full mode)
std::string trajectory_to_csv(const Trajectory& traj, bool full);

// header: W,B,prob_num,prob_den
std::string state_dist_to_csv(const StateDist& sd);
nlohmann::json exact_moments_to_json(const StateDist& sd, const ExactMoments& em);

// header: n,gamma,f,dm,residual
std::string decomposition_to_csv(const SaDecomposition& d);
nlohmann::json sa_conditions_to_json(const SaConditionReport& r);

// write-to-temp-then-rename, so readers never see a partial file
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace urnlab
