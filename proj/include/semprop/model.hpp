#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semprop/contract_expr.hpp"
#include "semprop/diagnostics.hpp"
#include "semprop/registry.hpp"

namespace semprop {

// Visibility floors order from most to least visible; filtering keeps
// everything at or below the floor (Private sees all).
enum class Visibility { Public = 0, Children = 1, ModuleScoped = 2, Private = 3 };

const char* visibility_name(Visibility v);
bool parse_visibility(const std::string& text, Visibility& out);

struct FreeformPayload {
  std::string text;
  bool operator==(const FreeformPayload&) const = default;
};
struct NameThenTextPayload {
  std::string name;
  std::string text;
  bool operator==(const NameThenTextPayload&) const = default;
};
struct ExpressionPayload {
  ContractExpr expr;
  std::string trailing;
  bool operator==(const ExpressionPayload&) const = default;
};
struct KeywordTokenPayload {
  std::vector<std::string> tokens;
  bool operator==(const KeywordTokenPayload&) const = default;
};
struct VersionStringPayload {
  std::string text;
  bool operator==(const VersionStringPayload&) const = default;
};
struct ReferencePayload {
  std::string target;
  std::string text;
  bool operator==(const ReferencePayload&) const = default;
};

using Payload = std::variant<FreeformPayload, NameThenTextPayload, ExpressionPayload,
                             KeywordTokenPayload, VersionStringPayload, ReferencePayload>;

struct PropertyInstance {
  std::string name;       // as written, pre-alias
  std::string raw_value;  // continuation lines joined with single spaces
  Payload payload = FreeformPayload{};
  SourceLocation location;
  std::optional<Visibility> explicit_visibility;
  // Set when the payload intentionally degraded to Freeform after a parse
  // failure that was already reported (suppresses a duplicate SP022).
  bool grammar_fallback = false;
};

struct BodyMetrics {
  long token_count = 0;
  std::string signature;  // comments removed, whitespace collapsed
};

struct Construct {
  std::string id;
  ContextKind context_kind = ContextKind::File;
  std::string name;
  Visibility visibility = Visibility::Public;
  std::optional<std::string> parent;        // containment
  std::vector<std::string> supers;          // module names, declaration order
  std::optional<std::string> overrides;     // feature name in a super
  std::string description;
  std::vector<PropertyInstance> properties;
  BodyMetrics body_metrics;
  SourceLocation location;
  std::vector<std::string> children;        // declaration order
  bool returns_value = false;               // features with non-void signatures

  // Resolved by linking.
  std::optional<std::string> overrides_target;  // construct id
};

struct SuperLink {
  std::string name;
  std::optional<std::string> target;  // construct id when resolved
  bool external = false;
};

struct SourceModel {
  std::map<std::string, Construct> constructs;             // id -> construct
  std::map<std::string, std::vector<SuperLink>> module_graph;  // module id -> supers
  std::vector<Diagnostic> parse_diagnostics;

  const Construct* find(const std::string& id) const;
  Construct* find_mutable(const std::string& id);
  // Module construct by declared name, if unique.
  const Construct* find_module(const std::string& name) const;
  // File constructs followed by their subtrees, source order.
  std::vector<const Construct*> ordered_constructs() const;
};

// Deterministic construct ids:
//   file:<path>    module:<path>#<name>    feature:<path>#<owner>.<name>
//   variable:<path>#<owner>.<name>
std::string make_construct_id(ContextKind kind, const std::string& path,
                              const std::string& owner, const std::string& name);

struct SpecFeature {
  std::string name;
  std::string type;  // empty when none
  ContractExpr require_expr;
  ContractExpr ensure_expr;
  int line = 0;
};

struct SpecClass {
  std::string name;
  std::vector<std::pair<std::string, std::string>> indexing;  // key, value
  std::vector<SpecFeature> features;
  int line = 0;
};

struct SpecModel {
  std::string path;  // origin of the specification text
  std::vector<SpecClass> classes;
};

}  // namespace semprop
