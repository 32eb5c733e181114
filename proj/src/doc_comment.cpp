#include <cctype>
#include <sstream>

#include "semprop/frontends.hpp"

namespace semprop {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_tag_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

// First whitespace-delimited token and the remainder.
std::pair<std::string, std::string> split_first_token(const std::string& text) {
  size_t b = text.find_first_not_of(" \t");
  if (b == std::string::npos) return {"", ""};
  size_t e = b;
  while (e < text.size() && !std::isspace(static_cast<unsigned char>(text[e]))) ++e;
  std::string head = text.substr(b, e - b);
  size_t r = text.find_first_not_of(" \t", e);
  std::string rest = r == std::string::npos ? "" : text.substr(r);
  return {head, rest};
}

}  // namespace

Payload derive_payload(const std::string& name, const std::string& raw_value,
                       const Registry& registry, const SourceLocation& location,
                       std::vector<Diagnostic>& diagnostics, bool& grammar_fallback) {
  grammar_fallback = false;
  const PropertyDefinition* def = registry.find(to_lower(name));
  if (!def) return FreeformPayload{raw_value};
  switch (def->value_grammar) {
    case ValueGrammar::Freeform:
      return FreeformPayload{raw_value};
    case ValueGrammar::VersionString:
      return VersionStringPayload{raw_value};
    case ValueGrammar::NameThenText: {
      auto [head, rest] = split_first_token(raw_value);
      return NameThenTextPayload{head, rest};
    }
    case ValueGrammar::Reference: {
      auto [head, rest] = split_first_token(raw_value);
      return ReferencePayload{head, rest};
    }
    case ValueGrammar::KeywordToken: {
      KeywordTokenPayload payload;
      std::istringstream stream(raw_value);
      std::string token;
      while (stream >> token) payload.tokens.push_back(token);
      return payload;
    }
    case ValueGrammar::Expression: {
      ExprParseResult parsed = parse_leading_paren_expr(raw_value);
      if (!parsed.ok()) {
        diagnostics.push_back({Severity::Error, "SP010", location,
                               "malformed contract expression in '" + name + "': " + parsed.error,
                               "", to_lower(name)});
        grammar_fallback = true;
        return FreeformPayload{raw_value};
      }
      std::string trailing = trim(raw_value.substr(parsed.consumed));
      return ExpressionPayload{parsed.expr, trailing};
    }
  }
  return FreeformPayload{raw_value};
}

DocCommentResult parse_doc_comment(std::string_view body, const Registry& registry,
                                   const std::string& path, int first_line, int first_column) {
  DocCommentResult result;

  struct Line {
    std::string stripped;
    int line = 0;
    int content_column = 0;  // 1-based column of the first stripped char
  };
  std::vector<Line> lines;
  {
    int line_no = first_line;
    size_t start = 0;
    bool first = true;
    while (start <= body.size()) {
      size_t nl = body.find('\n', start);
      std::string raw(body.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                      : nl - start));
      size_t i = 0;
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      while (i < raw.size() && raw[i] == '*') ++i;
      if (i < raw.size() && raw[i] == ' ') ++i;
      Line line;
      line.stripped = trim(raw.substr(i));
      line.line = line_no;
      line.content_column = static_cast<int>(i) + (first ? first_column : 1);
      // account for interior leading whitespace removed by trim
      size_t lead = raw.substr(i).find_first_not_of(" \t");
      if (lead != std::string::npos) line.content_column += static_cast<int>(lead);
      lines.push_back(line);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
      ++line_no;
      first = false;
    }
  }

  size_t idx = 0;
  std::vector<std::string> description_parts;
  while (idx < lines.size() && (lines[idx].stripped.empty() || lines[idx].stripped[0] != '@')) {
    if (!lines[idx].stripped.empty()) description_parts.push_back(lines[idx].stripped);
    ++idx;
  }
  {
    std::string description;
    for (size_t i = 0; i < description_parts.size(); ++i) {
      if (i) description += " ";
      description += description_parts[i];
    }
    result.description = description;
  }

  while (idx < lines.size()) {
    const Line& tag_line = lines[idx];
    if (tag_line.stripped.empty() || tag_line.stripped[0] != '@') {
      ++idx;
      continue;
    }
    const std::string& text = tag_line.stripped;
    size_t p = 1;
    while (p < text.size() && is_tag_name_char(text[p])) ++p;
    std::string name = text.substr(1, p - 1);
    std::optional<Visibility> explicit_vis;
    if (p < text.size() && text[p] == '(') {
      size_t close = text.find(')', p);
      if (close != std::string::npos) {
        Visibility v;
        std::string spec = to_lower(trim(text.substr(p + 1, close - p - 1)));
        if (parse_visibility(spec, v)) {
          explicit_vis = v;
          p = close + 1;
        }
      }
    }
    std::string value = trim(text.substr(p));
    ++idx;
    while (idx < lines.size() && (lines[idx].stripped.empty() || lines[idx].stripped[0] != '@')) {
      if (!lines[idx].stripped.empty()) {
        if (!value.empty()) value += " ";
        value += lines[idx].stripped;
      }
      ++idx;
    }

    PropertyInstance instance;
    instance.name = name;
    instance.raw_value = value;
    instance.location = {path, tag_line.line, tag_line.content_column};
    instance.explicit_visibility = explicit_vis;
    if (name.empty()) {
      // A bare '@' line carries no property; keep it as freeform noise.
      instance.payload = FreeformPayload{value};
      result.instances.push_back(instance);
      continue;
    }
    instance.payload = derive_payload(name, value, registry, instance.location,
                                      result.diagnostics, instance.grammar_fallback);
    result.instances.push_back(instance);
  }
  return result;
}

}  // namespace semprop
