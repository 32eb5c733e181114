#pragma once

#include <map>
#include <string>
#include <vector>

#include "semprop/contract_expr.hpp"
#include "semprop/model.hpp"
#include "semprop/registry.hpp"

namespace semprop {

struct ResolvedModel;  // resolver.hpp

// SP001 unknown property, SP020 illegal context, SP021 multiplicity,
// SP022 payload grammar mismatch.
std::vector<Diagnostic> check_contexts(const SourceModel& model, const Registry& registry);

struct CoveragePolicy {
  Visibility floor = Visibility::Public;
  std::map<ContextKind, std::vector<std::string>> required;
  // `return` is only required of features whose signature yields a value.
  bool waive_return_for_void = true;

  static CoveragePolicy defaults();
};

struct CoverageBucket {
  long total = 0;
  long documented = 0;
  double coverage_percent = 0.0;  // 0 when total is 0
};

struct CoverageReport {
  std::map<ContextKind, CoverageBucket> per_kind;
  std::vector<std::pair<std::string, std::string>> missing_required;  // construct id, property
};

struct CoverageResult {
  CoverageReport report;
  std::vector<Diagnostic> diagnostics;  // SP030 per missing requirement
};

CoverageResult check_coverage(const SourceModel& model, const Registry& registry,
                              const CoveragePolicy& policy = CoveragePolicy::defaults());

// Replacement-mode refinement soundness (SP040/SP041), augmentation
// composition notices (SP042), unverifiable contracts (SP043).
std::vector<Diagnostic> check_refinement(const SourceModel& model, const Registry& registry,
                                         const ResolvedModel& resolved);

// Design-model conformance between an EBON-lite spec and annotated source
// (SP050..SP054).
std::vector<Diagnostic> check_conformance(const SpecModel& spec, const SourceModel& model);

// Own contract of one construct: same-kind instances conjoined.
ContractExpr own_contract(const Construct& construct, const Registry& registry,
                          const std::string& property_name);

}  // namespace semprop
