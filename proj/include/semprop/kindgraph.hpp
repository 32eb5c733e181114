#pragma once

#include <set>
#include <string>
#include <vector>

#include "semprop/diagnostics.hpp"
#include "semprop/registry.hpp"

namespace semprop {

// Typed classification graph over kind names. Relations mirror the
// classification, inclusion, equivalence, realization, and interpretation
// operators; composition operators are out of scope.
enum class KindRelation {
  Inherits,         // classification
  PrivateInherits,
  PartOf,           // inclusion (the reversed form is stored as PartOf)
  Realizes,
  Equivalent,       // stored in both directions
  Subsumes,
  Interprets,       // inter-domain translation
};

const char* kind_relation_name(KindRelation r);
bool parse_kind_relation(const std::string& text, KindRelation& out);

struct KindEdge {
  std::string from;
  std::string to;
  KindRelation relation = KindRelation::Inherits;

  auto operator<=>(const KindEdge&) const = default;
};

struct KindDeclaration {
  std::string from;
  KindRelation relation = KindRelation::Inherits;
  std::string to;
};

struct KindGraph {
  std::set<std::string> nodes;
  std::set<KindEdge> edges;

  bool has_edge(const std::string& from, const std::string& to, KindRelation r) const;
};

// Nodes and edges from declarations; Equivalent closes under symmetry and
// duplicates collapse.
KindGraph build_graph(const std::vector<KindDeclaration>& declarations);

// Transitive closure over Inherits and PrivateInherits, excluding the kind
// itself. Unknown kinds raise UsageError.
std::set<std::string> ancestors(const KindGraph& graph, const std::string& kind);

// Direct parts: kinds declared part-of the given kind.
std::set<std::string> parts(const KindGraph& graph, const std::string& kind);

// SP070 inheritance cycles, SP071 dangling interpretation targets.
std::vector<Diagnostic> check_graph(const KindGraph& graph);

// Each property node must inherit exactly its category node (SP072).
std::vector<Diagnostic> registry_consistency(const KindGraph& graph, const Registry& registry);

// Taxonomy graph generated from a registry: one node per property and per
// category, property -> category inheritance edges.
KindGraph taxonomy_graph(const Registry& registry);

// Dialect interpretation graph backing emit.translate_properties.
KindGraph builtin_dialect_graph();

// Fixture format: one `FROM <relation> TO` declaration per line, `#` comments.
std::vector<KindDeclaration> parse_kind_declarations(const std::string& text,
                                                     const std::string& path);
KindGraph load_kind_graph(const std::string& path);
std::string serialize_kind_graph(const KindGraph& graph);

}  // namespace semprop
