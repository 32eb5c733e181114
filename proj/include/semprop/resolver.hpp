#pragma once

#include <map>
#include <string>
#include <vector>

#include "semprop/contract_expr.hpp"
#include "semprop/model.hpp"
#include "semprop/registry.hpp"

namespace semprop {

struct EffectiveInstance {
  PropertyInstance instance;
  // Construct ids from the holder down to the declaring construct; a chain
  // longer than one marks the instance as inherited.
  std::vector<std::string> provenance;

  bool inherited() const { return provenance.size() > 1; }
  const std::string& source() const { return provenance.back(); }
};

struct ContractSource {
  std::string construct_id;
  std::string property;  // require / ensure / invariant
  int line = 0;
};

struct EffectiveContracts {
  ContractExpr precondition;   // disjunction over the inheritance chain
  ContractExpr postcondition;  // conjunction over the inheritance chain
  ContractExpr invariant;      // modules only, conjunction over supers
  std::vector<ContractSource> precondition_sources;
  std::vector<ContractSource> postcondition_sources;
  std::vector<ContractSource> invariant_sources;
};

struct ResolvedConstruct {
  std::string effective_description;
  std::string description_source;  // declaring construct id; empty when own
  std::vector<EffectiveInstance> effective_properties;
  EffectiveContracts contracts;
};

struct ResolvedModel {
  SourceModel model;
  std::map<std::string, ResolvedConstruct> resolved;
  std::vector<Diagnostic> diagnostics;  // SP060 cycles, SP061 ties, SP062 annotation mismatch

  const ResolvedConstruct* find(const std::string& id) const;
};

// Applies per-property inheritance modes over the module graph and feature
// override chains, composes contracts, and records provenance.
ResolvedModel resolve_inherited(const SourceModel& model, const Registry& registry);

// Ancestor module ids of a construct, nearest level first; within one level
// supers keep declaration order. For features the chain follows overrides.
std::vector<std::vector<std::string>> ancestor_levels(const SourceModel& model,
                                                      const std::string& construct_id);

enum class ViewKind { Flat, Short, Contract, FlatShort, FlatContract };

const char* view_kind_name(ViewKind k);
bool parse_view_kind(const std::string& text, ViewKind& out);

struct ViewSection {
  std::string heading;
  std::string body;
};

struct ViewDocument {
  std::string construct_id;
  ViewKind view_kind = ViewKind::Flat;
  std::string title;
  std::vector<ViewSection> sections;
};

// Renders one construct (Flat* kinds require a Module). UsageError on an
// unknown construct id.
ViewDocument view(const ResolvedModel& resolved, const std::string& construct_id, ViewKind kind,
                  const Registry& registry);

// Drops constructs and properties whose effective visibility exceeds the
// floor. The role is carried through for labeling only.
ResolvedModel filter_perspective(const ResolvedModel& resolved, const std::string& role,
                                 Visibility floor);

}  // namespace semprop
