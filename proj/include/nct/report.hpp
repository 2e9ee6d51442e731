#ifndef NCT_REPORT_HPP
#define NCT_REPORT_HPP

#include <string>
#include <vector>

#include "nct/core.hpp"
#include "nct/foliation.hpp"

namespace nct {

enum class CheckStatus { pass, fail, flagged };

std::string status_name(CheckStatus s);

/// Real or complex scalar carried by a report entry.
struct CheckValue {
  CheckValue(Real x = 0) : is_complex(false), value(x) {}
  CheckValue(Complex z) : is_complex(true), value(z) {}
  bool is_complex;
  Complex value;
};

/// One verification result. Residuals are compared against the applicable
/// tolerance by the producing suite; flagged marks documented discrepancies
/// and rational degeneracies that must not fail a run.
struct CheckReport {
  std::string check_name;
  CheckStatus status;
  Real residual;
  CheckValue expected;
  CheckValue measured;
  std::string provenance;
};

/// 15 significant digits, the report-wide float format.
std::string format_float(Real x);

/// JSON array of report objects, fixed field order, newline-terminated.
std::string report_to_json(const std::vector<CheckReport>& reports);

/// Intersection-event table: header row index,t,s,x,y.
std::string events_to_csv(const std::vector<IntersectionEvent>& events);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace nct

#endif
