#pragma once

#include <map>
#include <string>
#include <vector>

#include "semprop/frontends.hpp"
#include "semprop/kindgraph.hpp"
#include "semprop/resolver.hpp"

namespace semprop {

enum class DocFormat { Markdown, Html };

bool parse_doc_format(const std::string& text, DocFormat& out);

// One rendered document per module view; keys are output file names
// (module name + extension). Byte-deterministic for identical inputs.
std::map<std::string, std::string> render_doc(const std::vector<ViewDocument>& views,
                                              DocFormat format);

std::string render_view_markdown(const ViewDocument& view);
std::string render_view_html(const ViewDocument& view);

// A property instance paired with the context it was written in; File
// context selects indexing-block emission for the Eiffel/EBON dialects.
struct TranslatableInstance {
  PropertyInstance instance;
  ContextKind context = ContextKind::File;
};

// Cross-dialect rendering. The (from, to) pair must carry an Interprets
// edge in the dialect graph, else UsageError.
std::string translate_properties(const std::vector<TranslatableInstance>& instances,
                                 Dialect from, Dialect to, const KindGraph& dialects);

// All instances of a parsed source file, with contexts, in source order.
std::vector<TranslatableInstance> collect_instances(const SourceModel& model);

// JSON-lines manifest of every effective contract: construct, kind,
// canonical expression, and source property provenance.
std::string emit_assertion_manifest(const ResolvedModel& resolved);

}  // namespace semprop
