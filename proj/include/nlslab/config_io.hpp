#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlslab/experiment.hpp"

namespace nlslab {

inline const char* to_string(Scheme s) { return s == Scheme::strang ? "strang" : "rk4"; }

inline const char* to_string(DataProfile p) { return p == DataProfile::flat ? "flat" : "decaying"; }

namespace detail {

[[noreturn]] inline void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

inline double take_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number, got " + v.dump());
  return v.get<double>();
}

inline int take_int(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::trunc(x) == x && std::abs(x) <= 1e15) return static_cast<int>(x);
    config_error("'" + key + "' must be an integer, got " + v.dump());
  }
  config_error("'" + key + "' must be an integer, got " + v.dump());
}

inline std::uint64_t take_u64(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const long long x = v.get<long long>();
    if (x < 0) config_error("'" + key + "' must be nonnegative, got " + v.dump());
    return static_cast<std::uint64_t>(x);
  }
  config_error("'" + key + "' must be a nonnegative integer, got " + v.dump());
}

inline bool take_bool(const nlohmann::json& v, const std::string& key) {
  if (!v.is_boolean()) config_error("'" + key + "' must be true or false, got " + v.dump());
  return v.get<bool>();
}

// Threshold-style fields use null for "no threshold" (JSON has no infinity).
inline double take_threshold(const nlohmann::json& v, const std::string& key) {
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  return take_number(v, key);
}

inline std::vector<double> take_number_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) config_error("'" + key + "' must be an array of numbers, got " + v.dump());
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(take_number(e, key));
  return out;
}

inline Scheme take_scheme(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "strang") return Scheme::strang;
    if (s == "rk4") return Scheme::rk4;
  }
  config_error("'" + key + "' must be \"strang\" or \"rk4\", got " + v.dump());
}

inline DataProfile take_profile(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "flat") return DataProfile::flat;
    if (s == "decaying") return DataProfile::decaying;
  }
  config_error("'" + key + "' must be \"flat\" or \"decaying\", got " + v.dump());
}

inline void parse_solver(const nlohmann::json& j, SolverConfig& sc) {
  for (const auto& [key, value] : j.items()) {
    const std::string full = "solver." + key;
    if (key == "dt") sc.dt = take_number(value, full);
    else if (key == "t_end") sc.t_end = take_number(value, full);
    else if (key == "scheme") sc.scheme = take_scheme(value, full);
    else if (key == "observe_every") sc.observe_every = take_int(value, full);
    else if (key == "dealias") sc.dealias = take_bool(value, full);
    else if (key == "guard") sc.guard = take_threshold(value, full);
    else if (key == "escape_threshold") sc.escape_threshold = take_threshold(value, full);
    else if (key == "stop_on_escape") sc.stop_on_escape = take_bool(value, full);
    else config_error("unknown key '" + full + "'");
  }
}

inline void parse_data(const nlohmann::json& j, DataSpec& ds) {
  for (const auto& [key, value] : j.items()) {
    const std::string full = "data." + key;
    if (key == "j_min") ds.j_min = take_int(value, full);
    else if (key == "j_max") ds.j_max = take_int(value, full);
    else if (key == "profile") ds.profile = take_profile(value, full);
    else if (key == "decay_exponent") ds.decay_exponent = take_number(value, full);
    else if (key == "target_fraction") ds.target_fraction = take_number(value, full);
    else if (key == "seed") ds.seed = take_u64(value, full);
    else config_error("unknown key '" + full + "'");
  }
}

}  // namespace detail

// Serialize every tunable; thresholds that are infinite are emitted as null.
inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json solver;
  solver["dt"] = cfg.solver.dt;
  solver["t_end"] = cfg.solver.t_end;
  solver["scheme"] = to_string(cfg.solver.scheme);
  solver["observe_every"] = cfg.solver.observe_every;
  solver["dealias"] = cfg.solver.dealias;
  solver["guard"] =
      std::isfinite(cfg.solver.guard) ? nlohmann::json(cfg.solver.guard) : nlohmann::json();
  solver["escape_threshold"] = std::isfinite(cfg.solver.escape_threshold)
                                   ? nlohmann::json(cfg.solver.escape_threshold)
                                   : nlohmann::json();
  solver["stop_on_escape"] = cfg.solver.stop_on_escape;

  nlohmann::json data;
  data["j_min"] = cfg.data.j_min;
  data["j_max"] = cfg.data.j_max;
  data["profile"] = to_string(cfg.data.profile);
  data["decay_exponent"] = cfg.data.decay_exponent;
  data["target_fraction"] = cfg.data.target_fraction;
  data["seed"] = cfg.data.seed;

  nlohmann::json j;
  j["d"] = cfg.d;
  j["p"] = cfg.p;
  j["K"] = cfg.K;
  j["pad_factor"] = cfg.pad_factor;
  j["s0"] = cfg.s0;
  j["s1"] = cfg.s1;
  j["s"] = cfg.s;
  j["eps"] = cfg.eps;
  j["M"] = cfg.M;
  j["R"] = cfg.R;
  j["N"] = cfg.N;
  j["cutoff_eps"] = cfg.cutoff_eps;
  j["sign"] = cfg.sign;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["eps_grid"] = cfg.eps_grid;
  j["s1_grid"] = cfg.s1_grid;
  j["solver"] = solver;
  j["data"] = data;
  return j;
}

// Overlay the keys present in j onto base. Unknown keys, wrong types and
// unknown enum spellings are errors; numeric ranges are checked separately
// by validate() once presets and overrides have all been applied.
inline ExperimentConfig parse_config(const nlohmann::json& j, const ExperimentConfig& base) {
  if (!j.is_object()) detail::config_error("top level must be a JSON object, got " + j.dump());
  ExperimentConfig cfg = base;
  for (const auto& [key, value] : j.items()) {
    if (key == "d") cfg.d = detail::take_int(value, key);
    else if (key == "p") cfg.p = detail::take_int(value, key);
    else if (key == "K") cfg.K = detail::take_int(value, key);
    else if (key == "pad_factor") cfg.pad_factor = detail::take_int(value, key);
    else if (key == "s0") cfg.s0 = detail::take_number(value, key);
    else if (key == "s1") cfg.s1 = detail::take_number(value, key);
    else if (key == "s") cfg.s = detail::take_number(value, key);
    else if (key == "eps") cfg.eps = detail::take_number(value, key);
    else if (key == "M") cfg.M = detail::take_number(value, key);
    else if (key == "R") cfg.R = detail::take_number(value, key);
    else if (key == "N") cfg.N = detail::take_int(value, key);
    else if (key == "cutoff_eps") cfg.cutoff_eps = detail::take_number(value, key);
    else if (key == "sign") cfg.sign = detail::take_int(value, key);
    else if (key == "seed") cfg.seed = detail::take_u64(value, key);
    else if (key == "threads") cfg.threads = detail::take_int(value, key);
    else if (key == "eps_grid") cfg.eps_grid = detail::take_number_list(value, key);
    else if (key == "s1_grid") cfg.s1_grid = detail::take_number_list(value, key);
    else if (key == "scheme") cfg.solver.scheme = detail::take_scheme(value, key);
    else if (key == "profile") cfg.data.profile = detail::take_profile(value, key);
    else if (key == "solver") {
      if (!value.is_object()) detail::config_error("'solver' must be an object");
      detail::parse_solver(value, cfg.solver);
    } else if (key == "data") {
      if (!value.is_object()) detail::config_error("'data' must be an object");
      detail::parse_data(value, cfg.data);
    } else {
      detail::config_error("unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) detail::config_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    detail::config_error("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j, base);
}

}  // namespace nlslab
