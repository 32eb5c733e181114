#include "semprop/diagnostics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace semprop {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Notice: return "notice";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "notice";
}

bool parse_severity(const std::string& text, Severity& out) {
  if (text == "notice") {
    out = Severity::Notice;
  } else if (text == "warning") {
    out = Severity::Warning;
  } else if (text == "error") {
    out = Severity::Error;
  } else {
    return false;
  }
  return true;
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.location.path, a.location.line, a.location.column, a.code,
                                     a.construct, a.property, a.message) <
                            std::tie(b.location.path, b.location.line, b.location.column, b.code,
                                     b.construct, b.property, b.message);
                   });
}

bool meets_threshold(const std::vector<Diagnostic>& diagnostics, Severity threshold) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [threshold](const Diagnostic& d) { return d.severity >= threshold; });
}

std::string diagnostic_to_text(const Diagnostic& d) {
  std::ostringstream out;
  out << (d.location.path.empty() ? "<input>" : d.location.path) << ":" << d.location.line << ":"
      << d.location.column << ": " << severity_name(d.severity) << " [" << d.code << "] "
      << d.message;
  if (!d.construct.empty()) {
    out << " (" << d.construct;
    if (!d.property.empty()) out << ", " << d.property;
    out << ")";
  }
  return out.str();
}

std::string diagnostic_to_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["code"] = d.code;
  j["severity"] = severity_name(d.severity);
  j["path"] = d.location.path;
  j["line"] = d.location.line;
  j["column"] = d.location.column;
  j["message"] = d.message;
  j["construct"] = d.construct;
  j["property"] = d.property;
  return j.dump();
}

}  // namespace semprop
