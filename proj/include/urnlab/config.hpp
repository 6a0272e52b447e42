#pragma once

#include "urnlab/distributions.hpp"
#include "urnlab/harness.hpp"
#include "urnlab/oracle.hpp"
#include "urnlab/urn.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace urnlab {

/// One config schema for every subcommand. Fields a subcommand does not use
/// are simply ignored; required-field checks happen where they matter.
struct RunConfig {
    ModelKind model = ModelKind::XOpp;
    uint32_t m = 1;
    uint64_t w0 = 1, b0 = 1;
    DiscreteDist dx = DiscreteDist::point(1);
    std::optional<DiscreteDist> dy;
    uint64_t horizon = 0;
    std::vector<uint64_t> checkpoints;
    uint64_t replicas = 2;
    uint64_t seed = 0;
    uint64_t budget = kDefaultStateBudget;
    uint32_t workers = 0;
    bool full_records = false;
};

DiscreteDist dist_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json dist_to_json(const DiscreteDist& d);

// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

ExperimentConfig to_experiment_config(const RunConfig& rc);

}  // namespace urnlab
