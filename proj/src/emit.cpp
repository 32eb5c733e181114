#include "semprop/emit.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace semprop {

bool parse_doc_format(const std::string& text, DocFormat& out) {
  if (text == "markdown" || text == "md") out = DocFormat::Markdown;
  else if (text == "html") out = DocFormat::Html;
  else return false;
  return true;
}

std::string render_view_markdown(const ViewDocument& view) {
  std::ostringstream out;
  out << "# " << view.title << "\n";
  for (const auto& section : view.sections) {
    out << "\n## " << section.heading << "\n";
    if (!section.body.empty()) out << "\n" << section.body << "\n";
  }
  return out.str();
}

namespace {

std::string html_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_view_html(const ViewDocument& view) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>"
      << html_escape(view.title) << "</title></head>\n<body>\n";
  out << "<h1>" << html_escape(view.title) << "</h1>\n";
  for (const auto& section : view.sections) {
    out << "<h2>" << html_escape(section.heading) << "</h2>\n";
    if (section.body.empty()) continue;
    std::istringstream lines(section.body);
    std::string line;
    bool in_list = false;
    while (std::getline(lines, line)) {
      if (line.rfind("- ", 0) == 0) {
        if (!in_list) {
          out << "<ul>\n";
          in_list = true;
        }
        out << "<li>" << html_escape(line.substr(2)) << "</li>\n";
      } else {
        if (in_list) {
          out << "</ul>\n";
          in_list = false;
        }
        if (line.size() >= 2 && line.front() == '`' && line.back() == '`') {
          out << "<p><code>" << html_escape(line.substr(1, line.size() - 2)) << "</code></p>\n";
        } else {
          out << "<p>" << html_escape(line) << "</p>\n";
        }
      }
    }
    if (in_list) out << "</ul>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::map<std::string, std::string> render_doc(const std::vector<ViewDocument>& views,
                                              DocFormat format) {
  std::map<std::string, std::string> out;
  for (const auto& v : views) {
    std::string name = v.title;
    size_t space = name.find_last_of(' ');
    if (space != std::string::npos) name = name.substr(space + 1);
    std::string filename = name + (format == DocFormat::Markdown ? ".md" : ".html");
    out[filename] = format == DocFormat::Markdown ? render_view_markdown(v) : render_view_html(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translation
// ---------------------------------------------------------------------------

namespace {

std::string quote_value(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\\\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::vector<TranslatableInstance> collect_instances(const SourceModel& model) {
  std::vector<TranslatableInstance> out;
  for (const Construct* c : model.ordered_constructs()) {
    for (const auto& inst : c->properties) {
      out.push_back({inst, c->context_kind});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TranslatableInstance& a, const TranslatableInstance& b) {
                     if (a.instance.location.path != b.instance.location.path)
                       return a.instance.location.path < b.instance.location.path;
                     return a.instance.location.line < b.instance.location.line;
                   });
  return out;
}

std::string translate_properties(const std::vector<TranslatableInstance>& instances,
                                 Dialect from, Dialect to, const KindGraph& dialects) {
  if (from == to) throw UsageError{"translation source and target dialects are identical"};
  if (!dialects.has_edge(dialect_name(from), dialect_name(to), KindRelation::Interprets)) {
    throw UsageError{std::string("no interpretation declared from ") + dialect_name(from) +
                     " to " + dialect_name(to)};
  }
  std::ostringstream out;
  if (to == Dialect::JavaDocComment) {
    for (const auto& item : instances) {
      out << "@" << item.instance.name;
      if (!item.instance.raw_value.empty()) out << " " << item.instance.raw_value;
      out << "\n";
    }
    return out.str();
  }

  // Eiffel and EBON targets: File-context instances form an indexing block;
  // everything else becomes a structured comment (Eiffel only).
  std::vector<const TranslatableInstance*> indexing;
  std::vector<const TranslatableInstance*> comments;
  for (const auto& item : instances) {
    if (item.context == ContextKind::File || to == Dialect::EbonIndexing) {
      indexing.push_back(&item);
    } else {
      comments.push_back(&item);
    }
  }
  if (!indexing.empty()) {
    out << "indexing\n";
    for (const auto* item : indexing) {
      out << "   " << item->instance.name << ": " << quote_value(item->instance.raw_value) << "\n";
    }
  }
  if (!comments.empty()) {
    if (!indexing.empty()) out << "\n";
    for (const auto* item : comments) {
      out << "-- " << item->instance.name << ": " << item->instance.raw_value << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Assertion manifest
// ---------------------------------------------------------------------------

std::string emit_assertion_manifest(const ResolvedModel& resolved) {
  std::ostringstream out;
  for (const Construct* c : resolved.model.ordered_constructs()) {
    const ResolvedConstruct* r = resolved.find(c->id);
    if (!r) continue;
    struct Entry {
      const char* kind;
      const ContractExpr& expr;
      const std::vector<ContractSource>& sources;
    };
    Entry entries[] = {
        {"precondition", r->contracts.precondition, r->contracts.precondition_sources},
        {"postcondition", r->contracts.postcondition, r->contracts.postcondition_sources},
        {"invariant", r->contracts.invariant, r->contracts.invariant_sources},
    };
    for (const auto& entry : entries) {
      if (entry.expr.empty()) continue;
      nlohmann::ordered_json j;
      j["construct"] = c->id;
      j["kind"] = entry.kind;
      j["expression"] = entry.expr.canonical();
      nlohmann::ordered_json sources = nlohmann::ordered_json::array();
      for (const auto& source : entry.sources) {
        nlohmann::ordered_json s;
        s["construct"] = source.construct_id;
        s["property"] = source.property;
        s["line"] = source.line;
        sources.push_back(s);
      }
      j["source_properties"] = sources;
      out << j.dump() << "\n";
    }
  }
  return out.str();
}

}  // namespace semprop
