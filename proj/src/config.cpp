#include "urnlab/config.hpp"

#include "urnlab/errors.hpp"

#include <fstream>

namespace urnlab {

using nlohmann::json;

DiscreteDist dist_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw ConfigError(field + ": expected {\"atoms\": [[value, prob], ...]}");
    std::vector<DiscreteDist::Atom> atoms;
    for (const auto& entry : j["atoms"]) {
        if (!entry.is_array() || entry.size() != 2)
            throw ConfigError(field + ".atoms: each atom must be [value, prob]");
        const auto& jv = entry[0];
        if (!jv.is_number_unsigned() || jv.get<uint64_t>() < 1)
            throw ConfigError(field + ".atoms: value must be a positive integer");
        const auto& jp = entry[1];
        Rational prob;
        try {
            if (jp.is_string()) {
                prob = parse_rational(jp.get<std::string>());
            } else if (jp.is_number_integer()) {
                prob = Rational(jp.get<int64_t>());
            } else {
                throw std::invalid_argument(
                    "write probabilities as strings (\"1/2\" or \"0.5\") to keep them exact");
            }
        } catch (const std::exception& e) {
            throw ConfigError(field + ".atoms: bad probability: " + e.what());
        }
        atoms.push_back({jv.get<uint64_t>(), prob});
    }
    try {
        return DiscreteDist(std::move(atoms));
    } catch (const std::exception& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

json dist_to_json(const DiscreteDist& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms())
        atoms.push_back(json::array({a.value, rational_to_string(a.prob)}));
    return json{{"atoms", atoms}};
}

namespace {

template <typename T>
T get_field(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError(key + ": wrong type");
    }
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

    RunConfig rc;
    if (!j.contains("model")) throw ConfigError("model: missing");
    try {
        rc.model = parse_model(j.at("model").get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }

    rc.m = get_field<uint32_t>(j, "m", 1);
    if (rc.m < 1) throw ConfigError("m: must be >= 1");
    rc.w0 = get_field<uint64_t>(j, "W0", 1);
    rc.b0 = get_field<uint64_t>(j, "B0", 1);
    if (rc.w0 + rc.b0 < rc.m) throw ConfigError("W0: W0+B0 must be >= m");

    if (!j.contains("dX")) throw ConfigError("dX: missing");
    rc.dx = dist_from_json(j.at("dX"), "dX");
    if (j.contains("dY") && !j.at("dY").is_null()) rc.dy = dist_from_json(j.at("dY"), "dY");
    if (model_uses_y(rc.model) && !rc.dy)
        throw ConfigError("dY: required for model " + model_name(rc.model));
    if (!model_uses_y(rc.model) && rc.dy)
        throw ConfigError("dY: not allowed for model " + model_name(rc.model));

    rc.horizon = get_field<uint64_t>(j, "horizon", 0);
    rc.checkpoints = get_field<std::vector<uint64_t>>(j, "checkpoints", {});
    rc.replicas = get_field<uint64_t>(j, "replicas", 2);
    rc.seed = get_field<uint64_t>(j, "seed", 0);
    rc.budget = get_field<uint64_t>(j, "budget", kDefaultStateBudget);
    rc.workers = get_field<uint32_t>(j, "workers", 0);
    rc.full_records = get_field<bool>(j, "record_full", false);
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

ExperimentConfig to_experiment_config(const RunConfig& rc) {
    ExperimentConfig cfg;
    cfg.model = rc.model;
    cfg.dx = rc.dx;
    cfg.dy = rc.dy;
    cfg.w0 = rc.w0;
    cfg.b0 = rc.b0;
    cfg.m = rc.m;
    cfg.horizon = rc.horizon;
    cfg.checkpoints = rc.checkpoints;
    cfg.replicas = rc.replicas;
    cfg.master_seed = rc.seed;
    cfg.workers = rc.workers;
    return cfg;
}

}  // namespace urnlab
