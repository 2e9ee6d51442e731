#include "nct/report.hpp"

#include <cstdio>
#include <fstream>

namespace nct {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::flagged: return "flagged";
  }
  return "unknown";
}

std::string format_float(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string value_json(const CheckValue& v) {
  if (!v.is_complex) return format_float(v.value.real());
  return "[" + format_float(v.value.real()) + "," + format_float(v.value.imag()) + "]";
}

}  // namespace

std::string report_to_json(const std::vector<CheckReport>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const CheckReport& r = reports[i];
    out += "{\"check_name\":\"" + escape_json(r.check_name) + "\"";
    out += ",\"status\":\"" + status_name(r.status) + "\"";
    out += ",\"residual\":" + format_float(r.residual);
    out += ",\"expected\":" + value_json(r.expected);
    out += ",\"measured\":" + value_json(r.measured);
    out += ",\"provenance\":\"" + escape_json(r.provenance) + "\"}";
    if (i + 1 < reports.size()) out += ",";
    out += "\n";
  }
  out += "]\n";
  return out;
}

std::string events_to_csv(const std::vector<IntersectionEvent>& events) {
  std::string out = "index,t,s,x,y\n";
  for (const auto& e : events) {
    out += std::to_string(e.index) + "," + format_float(e.t) + "," + format_float(e.s) + "," +
           format_float(e.x) + "," + format_float(e.y) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << contents;
}

}  // namespace nct
