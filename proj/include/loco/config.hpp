// key=value configuration files for the simulator (kernel constants,
// geometry points, frame counts, seeds). '#' starts a comment.
#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loco/tdmr.hpp"

namespace loco {

inline std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string{};
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line missing '=': " + line);
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line with empty key");
    kv[key] = value;
  }
  return kv;
}

inline std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(f);
}

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// Overlay file settings onto a simulation config; unknown keys are rejected
// so typos surface instead of silently using defaults.
inline void apply_config(SimConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "k1") cfg.k.k1 = std::stod(value);
    else if (key == "k2") cfg.k.k2 = std::stod(value);
    else if (key == "k3") cfg.k.k3 = std::stod(value);
    else if (key == "e0") cfg.k.e0 = std::stod(value);
    else if (key == "edge_protection") cfg.k.edge_protection = std::stod(value);
    else if (key == "frames") cfg.frames = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "m") cfg.m = std::stoi(value);
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "points") cfg.points = parse_double_list(value);
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

}  // namespace loco
