// Verification harness for the deformed-torus library: runs the identity,
// moduli and foliation suites over a parameter grid and writes a JSON report
// plus CSV plot data.
//
// Usage:
//   nctv run [--config <path>] [--out <dir>] [--<dotted.key> <value>]... <suites|all>
//
// Suites: algebra, module, chern, moduli, foliation, mirror-consistency.
// Exit status: 0 all checks pass (flagged allowed), 1 a check failed,
// 2 usage or configuration error.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "nct/config.hpp"
#include "nct/report.hpp"
#include "nct/suites.hpp"

namespace {

int usage(std::ostream& os) {
  os << "usage: nctv run [--config <path>] [--out <dir>] [--<key> <value>]... <suites|all>\n"
     << "suites: ";
  for (const auto& s : nct::known_suites()) os << s << " ";
  os << "\nconfig keys: theta tau.re tau.im n m R1 R2 grid.K grid.L tol_exact tol_disc\n"
     << "             sweep.theta sweep.n sweep.m sweep.R1 sweep.R2 (comma lists)\n";
  return 2;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nct;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") return usage(std::cout);
  if (args[0] != "run") {
    std::cerr << "unknown subcommand '" << args[0] << "'\n";
    return usage(std::cerr);
  }

  std::string config_path;
  std::string out_dir = "./out";
  std::vector<std::pair<std::string, std::string>> overrides;
  std::vector<std::string> suite_tokens;

  try {
    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--help" || a == "-h") return usage(std::cout);
      if (a.rfind("--", 0) == 0) {
        const std::string key = a.substr(2);
        if (i + 1 >= args.size()) throw UsageError("missing value for --" + key);
        const std::string value = args[++i];
        if (key == "config") config_path = value;
        else if (key == "out") out_dir = value;
        else overrides.emplace_back(key, value);
      } else {
        for (const auto& tok : split_commas(a)) suite_tokens.push_back(tok);
      }
    }

    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& [key, value] : overrides) apply_config_key(cfg, key, value);
    const std::vector<std::string> suites = resolve_suites(suite_tokens);
    validate_config(cfg);

    const RunOutput result = run(cfg, suites);

    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/report.json", report_to_json(result.reports));
    for (const auto& [name, contents] : result.artifacts)
      write_text_file(out_dir + "/" + name, contents);

    int fails = 0, flags = 0;
    for (const auto& r : result.reports) {
      std::cout << status_name(r.status) << "  " << r.check_name
                << "  residual=" << format_float(r.residual) << "\n";
      if (r.status == CheckStatus::fail) ++fails;
      if (r.status == CheckStatus::flagged) ++flags;
    }
    std::cout << result.reports.size() << " checks, " << fails << " failed, " << flags
              << " flagged; report written to " << out_dir << "/report.json\n";
    return result.any_failure ? 1 : 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
