#include "nct/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nct {

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites = {"algebra", "module",    "chern",
                                                  "moduli",  "foliation", "mirror-consistency"};
  return suites;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Real parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const Real x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw UsageError("value for '" + key + "' is not a number: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw UsageError("value for '" + key + "' is not an integer: '" + value + "'");
  }
}

std::vector<Real> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<Real> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw UsageError("sweep list for '" + key + "' is empty");
  return out;
}

}  // namespace

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "theta") cfg.theta = parse_real(key, value);
  else if (key == "tau.re") cfg.tau_re = parse_real(key, value);
  else if (key == "tau.im") cfg.tau_im = parse_real(key, value);
  else if (key == "n") cfg.n = parse_int(key, value);
  else if (key == "m") cfg.m = parse_int(key, value);
  else if (key == "R1") cfg.r1 = parse_real(key, value);
  else if (key == "R2") cfg.r2 = parse_real(key, value);
  else if (key == "grid.K") cfg.grid_k = parse_int(key, value);
  else if (key == "grid.L") cfg.grid_l = parse_int(key, value);
  else if (key == "tol_exact") cfg.tol_exact = parse_real(key, value);
  else if (key == "tol_disc") cfg.tol_disc = parse_real(key, value);
  else if (key == "sweep.theta" || key == "sweep.n" || key == "sweep.m" ||
           key == "sweep.R1" || key == "sweep.R2")
    cfg.sweeps[key.substr(6)] = parse_real_list(key, value);
  else
    throw UsageError("unknown configuration key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.tau_im == 0) throw UsageError("tau must have nonzero imaginary part");
  if (cfg.grid_k < 1 || cfg.grid_l < 1) throw UsageError("grid.K and grid.L must be >= 1");
  if (cfg.grid_l < 8) throw UsageError("grid.L must be >= 8 for the test-section family");
  if (cfg.m < 0) throw UsageError("m must be nonnegative");
  if (cfg.m == 0 && cfg.n != 1) throw UsageError("m = 0 requires the free module type (1,0)");
  if (cfg.m >= 1 && gcd_abs(cfg.n, cfg.m) != 1)
    throw UsageError("n and m must be coprime (gcd(" + std::to_string(cfg.n) + "," +
                     std::to_string(cfg.m) + ") != 1)");
  if (Real(cfg.n) - Real(cfg.m) * cfg.theta == Real(0))
    throw UsageError("degenerate configuration: n - m*theta = 0");
  if (cfg.tol_exact <= 0 || cfg.tol_disc <= 0) throw UsageError("tolerances must be positive");
}

std::vector<std::string> resolve_suites(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& tok : tokens) {
    if (tok == "all") {
      for (const auto& s : known_suites()) add(s);
      continue;
    }
    if (std::find(known_suites().begin(), known_suites().end(), tok) == known_suites().end())
      throw UsageError("unknown suite '" + tok + "'");
    add(tok);
  }
  if (out.empty()) throw UsageError("no suites selected; pass a suite list or 'all'");
  // canonical order regardless of how the user listed them
  std::vector<std::string> ordered;
  for (const auto& s : known_suites())
    if (std::find(out.begin(), out.end(), s) != out.end()) ordered.push_back(s);
  return ordered;
}

}  // namespace nct
