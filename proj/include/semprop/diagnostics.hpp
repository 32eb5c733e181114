#pragma once

#include <string>
#include <vector>

namespace semprop {

enum class Severity { Notice, Warning, Error };

struct SourceLocation {
  std::string path;
  int line = 0;
  int column = 0;

  bool operator==(const SourceLocation&) const = default;
};

// A single finding. Codes are stable strings of the form SPnnn: tools and CI
// scripts key on them, so existing codes never change meaning.
//
//   SP001 unknown property                 SP040 precondition refinement unsound
//   SP002 unclassified construct skipped   SP041 postcondition refinement unsound
//   SP003 unresolved super (external)      SP042 augmentation composed contract
//   SP004 duplicate module name            SP043 contract unverifiable
//   SP010 malformed contract expression    SP050 spec class missing in source
//   SP011 misplaced indexing clause        SP051 spec feature missing in source
//   SP020 property context violation       SP052 spec contract absent in source
//   SP021 multiplicity violation           SP053 contracts not equivalent
//   SP022 payload grammar mismatch         SP054 source class absent from spec
//   SP023 type-inconsistent expression     SP060 module inheritance cycle
//   SP030 missing required property        SP061 inheritance conflict tie-break
//   SP070 kind graph inheritance cycle     SP062 inheritance annotation mismatch
//   SP071 dangling interprets target       SP080 belief challenged
//   SP072 taxonomy classification mismatch SP090..SP094 registry validation
struct Diagnostic {
  Severity severity = Severity::Notice;
  std::string code;
  SourceLocation location;
  std::string message;
  std::string construct;  // construct id, empty when not construct-bound
  std::string property;   // property name, empty when not property-bound

  bool operator==(const Diagnostic&) const = default;
};

const char* severity_name(Severity s);
bool parse_severity(const std::string& text, Severity& out);

// Deterministic order: path, line, column, code, construct, property, message.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

bool meets_threshold(const std::vector<Diagnostic>& diagnostics, Severity threshold);

std::string diagnostic_to_text(const Diagnostic& d);
std::string diagnostic_to_json(const Diagnostic& d);  // one JSON object, no newline

}  // namespace semprop
