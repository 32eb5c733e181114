#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "semprop/model.hpp"
#include "semprop/registry.hpp"

namespace semprop {

struct DocCommentResult {
  std::string description;
  std::vector<PropertyInstance> instances;
  std::vector<Diagnostic> diagnostics;
};

// Parses the interior of a /** ... */ block. Total on arbitrary text.
// `first_line`/`first_column` locate the first interior character in the
// original file so instance locations line up.
DocCommentResult parse_doc_comment(std::string_view body, const Registry& registry,
                                   const std::string& path = "", int first_line = 1,
                                   int first_column = 1);

// Shallow scanners. Each returns a model fragment for one file; combine
// fragments with link_model.
SourceModel parse_java_source(const std::string& text, const std::string& path,
                              const Registry& registry);
SourceModel parse_eiffel_source(const std::string& text, const std::string& path,
                                const Registry& registry);

// EBON-lite design models. Grammar violations raise UsageError.
SpecModel parse_ebon_spec(const std::string& text, const std::string& path = "<spec>");

// EBON class indexing clauses as property instances (used by translate).
std::vector<PropertyInstance> ebon_indexing_instances(const SpecModel& spec,
                                                      const std::string& path,
                                                      const Registry& registry);

SourceModel link_model(std::vector<SourceModel> fragments);

enum class Dialect { JavaDocComment, EiffelIndexing, EbonIndexing };

const char* dialect_name(Dialect d);
bool parse_dialect(const std::string& text, Dialect& out);

// Extension-based detection: .java, .e, .ebon.
Dialect detect_dialect(const std::string& path, Dialect fallback = Dialect::JavaDocComment);

// Payload (re)derivation for one raw value under a registry grammar, shared
// by the frontends. Reports expression failures as SP010 on `diagnostics`.
Payload derive_payload(const std::string& name, const std::string& raw_value,
                       const Registry& registry, const SourceLocation& location,
                       std::vector<Diagnostic>& diagnostics, bool& grammar_fallback);

}  // namespace semprop
