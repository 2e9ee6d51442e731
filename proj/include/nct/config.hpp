#ifndef NCT_CONFIG_HPP
#define NCT_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "nct/core.hpp"

namespace nct {

/// Malformed configuration or command line; maps to the usage exit status.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Harness configuration. Defaults form a point at which every suite has a
/// nontrivial check. Keys use the dotted names below in both the config file
/// (key = value per line) and command-line overrides (--key value).
struct RunConfig {
  Real theta = 0.3;       // theta
  Real tau_re = 0.0;      // tau.re
  Real tau_im = 1.0;      // tau.im
  int n = 2;              // n
  int m = 1;              // m
  Real r1 = 0.0;          // R1
  Real r2 = 0.0;          // R2
  int grid_k = 16;        // grid.K
  int grid_l = 8;         // grid.L
  Real tol_exact = 1e-10; // tol_exact
  Real tol_disc = 1e-6;   // tol_disc

  /// Parameter name -> sweep values (keys sweep.theta, sweep.n, sweep.m,
  /// sweep.R1, sweep.R2). Sweeps combine as a cartesian product.
  std::map<std::string, std::vector<Real>> sweeps;

  Complex tau() const { return {tau_re, tau_im}; }
};

const std::vector<std::string>& known_suites();

/// Applies one key = value assignment; throws UsageError on unknown keys or
/// unparsable values.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key = value file ('#' starts a comment).
void load_config_file(RunConfig& cfg, const std::string& path);

/// Enforces the cross-field invariants (coprimality, Im tau != 0, grid
/// bounds, nondegenerate slope).
void validate_config(const RunConfig& cfg);

/// Expands "all" and validates suite names, preserving the canonical order.
std::vector<std::string> resolve_suites(const std::vector<std::string>& tokens);

}  // namespace nct

#endif
