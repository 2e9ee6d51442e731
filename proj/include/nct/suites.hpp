#ifndef NCT_SUITES_HPP
#define NCT_SUITES_HPP

#include <map>

#include "nct/config.hpp"
#include "nct/report.hpp"

namespace nct {

/// Checks for one suite at one parameter point.
std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& cfg);

struct RunOutput {
  std::vector<CheckReport> reports;
  std::map<std::string, std::string> artifacts;  // file name -> contents (CSV plots)
  bool any_failure = false;
};

/// Runs the selected suites over the sweep grid (cartesian product of the
/// sweep lists). Sweep points execute in parallel workers; reports are merged
/// in sweep order so identical configurations produce identical output.
RunOutput run(const RunConfig& base, const std::vector<std::string>& suites);

}  // namespace nct

#endif
