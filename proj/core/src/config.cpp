// Copyright 2026 The lzqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lzqt/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "lzqt/errors.hpp"

namespace lzqt {

namespace {

using json = nlohmann::json;

std::string join_path(std::string_view parent, std::string_view key) {
    return parent.empty() ? std::string(key) : std::string(parent) + "." + std::string(key);
}

void require_object(const json& j, std::string_view path) {
    if (!j.is_object()) throw ConfigError(std::string(path.empty() ? "config" : path) + " must be a JSON object");
}

void reject_unknown(const json& obj, std::string_view path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown key '" + join_path(path, key) + "'");
        }
    }
}

double read_number(const json& obj, std::string_view path, const char* key, double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw ConfigError(join_path(path, key) + " must be a number");
    const double x = it->get<double>();
    if (!std::isfinite(x)) throw ConfigError(join_path(path, key) + " must be finite");
    return x;
}

std::uint64_t read_count(const json& obj, std::string_view path, const char* key, std::uint64_t fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    if (it->is_number_integer()) throw ConfigError(join_path(path, key) + " must be non-negative");
    throw ConfigError(join_path(path, key) + " must be a non-negative integer");
}

std::string read_string(const json& obj, std::string_view path, const char* key, std::string fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) throw ConfigError(join_path(path, key) + " must be a string");
    return it->get<std::string>();
}

const json* child(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) return nullptr;
    require_object(*it, key);
    return &*it;
}

ModelKind parse_model(const std::string& s) {
    if (s == "type1") return ModelKind::type1;
    if (s == "type2") return ModelKind::type2;
    throw ConfigError("model must be \"type1\" or \"type2\" (got \"" + s + "\")");
}

InitialState parse_initial(const std::string& s) {
    if (s == "g") return InitialState::g;
    if (s == "e") return InitialState::e;
    if (s == "ground") return InitialState::ground;
    if (s == "excited") return InitialState::excited;
    throw ConfigError("initial_state must be one of \"g\", \"e\", \"ground\", \"excited\" (got \"" + s + "\")");
}

StepMode parse_mode(const std::string& s) {
    if (s == "adaptive") return StepMode::adaptive;
    if (s == "fixed") return StepMode::fixed;
    throw ConfigError("step.mode must be \"adaptive\" or \"fixed\" (got \"" + s + "\")");
}

constexpr std::array<std::string_view, 9> kAxes{"v",      "delta",       "gamma",   "tau", "lambda",
                                                "theta",  "temperature", "omega_c", "eta"};

}  // namespace

std::string_view to_string(ModelKind kind) noexcept { return kind == ModelKind::type1 ? "type1" : "type2"; }

std::string_view to_string(InitialState s) noexcept {
    switch (s) {
        case InitialState::g: return "g";
        case InitialState::e: return "e";
        case InitialState::ground: return "ground";
        case InitialState::excited: return "excited";
    }
    return "g";
}

std::string_view to_string(StepMode m) noexcept { return m == StepMode::fixed ? "fixed" : "adaptive"; }

void SimConfig::validate() const {
    lz.validate();
    type1.validate();
    type2.validate();
    if (!(t_start < t_end)) throw ConfigError("window.t_start must be smaller than window.t_end");
    step.validate();
    if (n_traj < 1) throw ConfigError("ensemble.n_traj must be at least 1");
    if (snapshots_enabled && !(grid_spacing > 0.0)) {
        throw ConfigError("snapshots.grid_spacing must be positive when snapshots are enabled");
    }
    if (!(dt_bin > 0.0)) throw ConfigError("intervals.dt_bin must be positive");
    const double bins = (t_end - t_start) / dt_bin;
    if (std::round(bins) < 1.0 || std::abs(bins - std::round(bins)) > 1e-9) {
        std::ostringstream os;
        os << "intervals.dt_bin=" << dt_bin << " must divide the window [" << t_start << ", " << t_end << "]";
        throw ConfigError(os.str());
    }
}

SimConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(root, "");
    reject_unknown(root, "", {"model", "lz", "type1", "type2", "window", "initial_state", "step", "ensemble",
                              "snapshots", "intervals"});

    SimConfig c;
    if (!root.contains("model")) throw ConfigError("missing required key 'model'");
    c.model = parse_model(read_string(root, "", "model", ""));

    if (const json* lz = child(root, "lz")) {
        reject_unknown(*lz, "lz", {"v", "delta"});
        c.lz.v = read_number(*lz, "lz", "v", c.lz.v);
        c.lz.delta = read_number(*lz, "lz", "delta", c.lz.delta);
    }
    if (const json* t1 = child(root, "type1")) {
        reject_unknown(*t1, "type1", {"gamma", "tau"});
        c.type1.gamma = read_number(*t1, "type1", "gamma", c.type1.gamma);
        c.type1.tau = read_number(*t1, "type1", "tau", c.type1.tau);
    }
    if (const json* t2 = child(root, "type2")) {
        reject_unknown(*t2, "type2", {"lambda", "theta", "temperature", "omega_c", "spectral_sign"});
        c.type2.lambda = read_number(*t2, "type2", "lambda", c.type2.lambda);
        c.type2.theta = read_number(*t2, "type2", "theta", c.type2.theta);
        c.type2.temperature = read_number(*t2, "type2", "temperature", c.type2.temperature);
        c.type2.omega_c = read_number(*t2, "type2", "omega_c", c.type2.omega_c);
        const double sign = read_number(*t2, "type2", "spectral_sign", c.type2.spectral_sign);
        if (sign != 1.0 && sign != -1.0) throw ConfigError("type2.spectral_sign must be +1 or -1");
        c.type2.spectral_sign = static_cast<int>(sign);
    }
    const bool model_block = c.model == ModelKind::type1 ? root.contains("type1") : root.contains("type2");
    if (!model_block) {
        throw ConfigError(std::string("missing '") + std::string(to_string(c.model)) + "' parameter block");
    }
    if (const json* w = child(root, "window")) {
        reject_unknown(*w, "window", {"t_start", "t_end"});
        c.t_start = read_number(*w, "window", "t_start", c.t_start);
        c.t_end = read_number(*w, "window", "t_end", c.t_end);
    }
    c.initial_state = c.model == ModelKind::type1 ? InitialState::g : InitialState::ground;
    if (root.contains("initial_state")) c.initial_state = parse_initial(read_string(root, "", "initial_state", ""));
    if (const json* s = child(root, "step")) {
        reject_unknown(*s, "step", {"mode", "dt_max", "eta", "dt_min"});
        c.step.mode = parse_mode(read_string(*s, "step", "mode", "adaptive"));
        c.step.dt_max = read_number(*s, "step", "dt_max", c.step.dt_max);
        c.step.eta = read_number(*s, "step", "eta", c.step.eta);
        c.step.dt_min = read_number(*s, "step", "dt_min", c.step.dt_min);
    }
    if (const json* e = child(root, "ensemble")) {
        reject_unknown(*e, "ensemble", {"n_traj", "master_seed"});
        c.n_traj = read_count(*e, "ensemble", "n_traj", c.n_traj);
        c.master_seed = read_count(*e, "ensemble", "master_seed", c.master_seed);
    }
    if (const json* s = child(root, "snapshots")) {
        reject_unknown(*s, "snapshots", {"enabled", "grid_spacing"});
        if (const auto it = s->find("enabled"); it != s->end()) {
            if (!it->is_boolean()) throw ConfigError("snapshots.enabled must be a boolean");
            c.snapshots_enabled = it->get<bool>();
        }
        c.grid_spacing = read_number(*s, "snapshots", "grid_spacing", c.grid_spacing);
    }
    if (const json* iv = child(root, "intervals")) {
        reject_unknown(*iv, "intervals", {"dt_bin"});
        c.dt_bin = read_number(*iv, "intervals", "dt_bin", c.dt_bin);
    }
    c.validate();
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SimConfig& c) {
    json j;
    j["model"] = std::string(to_string(c.model));
    j["lz"] = {{"v", c.lz.v}, {"delta", c.lz.delta}};
    j["type1"] = {{"gamma", c.type1.gamma}, {"tau", c.type1.tau}};
    j["type2"] = {{"lambda", c.type2.lambda},
                  {"theta", c.type2.theta},
                  {"temperature", c.type2.temperature},
                  {"omega_c", c.type2.omega_c},
                  {"spectral_sign", c.type2.spectral_sign}};
    j["window"] = {{"t_start", c.t_start}, {"t_end", c.t_end}};
    j["initial_state"] = std::string(to_string(c.initial_state));
    j["step"] = {{"mode", std::string(to_string(c.step.mode))},
                 {"dt_max", c.step.dt_max},
                 {"eta", c.step.eta},
                 {"dt_min", c.step.dt_min}};
    j["ensemble"] = {{"n_traj", c.n_traj}, {"master_seed", c.master_seed}};
    j["snapshots"] = {{"enabled", c.snapshots_enabled}, {"grid_spacing", c.grid_spacing}};
    j["intervals"] = {{"dt_bin", c.dt_bin}};
    return j.dump(2) + "\n";
}

JumpModel make_model(const SimConfig& c) {
    return c.model == ModelKind::type1 ? JumpModel::type1(c.lz, c.type1) : JumpModel::type2(c.lz, c.type2);
}

EngineConfig to_engine_config(const SimConfig& c) {
    c.validate();
    EngineConfig e;
    e.model = make_model(c);
    e.t_start = c.t_start;
    e.t_end = c.t_end;
    e.initial = c.initial_state;
    e.step = c.step;
    e.snapshot_spacing = c.snapshots_enabled ? c.grid_spacing : 0.0;
    e.n_traj = c.n_traj;
    e.master_seed = c.master_seed;
    return e;
}

std::span<const std::string_view> sweep_axes() noexcept { return kAxes; }

SimConfig with_axis_value(const SimConfig& config, std::string_view axis, double value) {
    SimConfig c = config;
    if (axis == "v") c.lz.v = value;
    else if (axis == "delta") c.lz.delta = value;
    else if (axis == "gamma") c.type1.gamma = value;
    else if (axis == "tau") c.type1.tau = value;
    else if (axis == "lambda") c.type2.lambda = value;
    else if (axis == "theta") c.type2.theta = value;
    else if (axis == "temperature") c.type2.temperature = value;
    else if (axis == "omega_c") c.type2.omega_c = value;
    else if (axis == "eta") c.step.eta = value;
    else throw ConfigError("unknown sweep axis '" + std::string(axis) + "'");
    c.validate();
    return c;
}

}  // namespace lzqt
