#include <algorithm>
#include <cctype>
#include <set>
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

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string first_word(const std::string& line) {
  size_t b = line.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = b;
  while (e < line.size() && is_ident_char(line[e])) ++e;
  return line.substr(b, e - b);
}

// Strips surrounding double quotes and unescapes \" if present.
std::string unquote(const std::string& value) {
  std::string v = trim(value);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size() && v[i + 1] == '"') {
        out.push_back('"');
        ++i;
      } else {
        out.push_back(v[i]);
      }
    }
    return out;
  }
  return v;
}

// `key: value` with an identifier key; returns false otherwise.
bool split_clause(const std::string& line, std::string& key, std::string& value, int& key_col) {
  size_t b = line.find_first_not_of(" \t");
  if (b == std::string::npos || !is_ident_start(line[b])) return false;
  size_t e = b;
  while (e < line.size() && (is_ident_char(line[e]) || line[e] == '-')) ++e;
  size_t colon = line.find_first_not_of(" \t", e);
  if (colon == std::string::npos || line[colon] != ':') return false;
  key = line.substr(b, e - b);
  value = trim(line.substr(colon + 1));
  key_col = static_cast<int>(b) + 1;
  return true;
}

const char* kBodyKeywords[] = {"do", "once", "deferred", "external", "require", "ensure",
                               "local", "rescue", "obsolete"};

bool is_keyword_line(const std::string& word) {
  static const std::set<std::string> keywords = {
      "indexing", "class",   "inherit", "feature", "creation", "create", "invariant",
      "end",      "do",      "once",    "deferred", "external", "require", "ensure",
      "local",    "rescue",  "obsolete", "note",
  };
  return keywords.count(word) > 0;
}

long count_simple_tokens(const std::string& text) {
  long count = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      ++count;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      continue;
    }
    ++count;
    ++i;
  }
  return count;
}

std::string collapse_ws(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out.push_back(' ');
      pending = false;
    }
    out.push_back(c);
  }
  return out;
}

struct EiffelLine {
  std::string code;     // before any `--` comment
  std::string comment;  // after `--`, untrimmed lead
  int comment_col = 0;  // 1-based column of the first `-` of `--`
};

EiffelLine split_comment(const std::string& raw) {
  EiffelLine out;
  bool in_string = false;
  for (size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '"') in_string = !in_string;
    if (!in_string && c == '-' && i + 1 < raw.size() && raw[i + 1] == '-') {
      out.code = raw.substr(0, i);
      out.comment = trim(raw.substr(i + 2));
      out.comment_col = static_cast<int>(i) + 1;
      return out;
    }
  }
  out.code = raw;
  return out;
}

}  // namespace

SourceModel parse_eiffel_source(const std::string& text, const std::string& path,
                                const Registry& registry) {
  SourceModel model;

  Construct file;
  file.id = make_construct_id(ContextKind::File, path, "", "");
  file.context_kind = ContextKind::File;
  {
    size_t slash = path.find_last_of("/\\");
    file.name = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  file.location = {path, 1, 1};
  model.constructs[file.id] = file;
  const std::string file_id = file.id;

  std::vector<std::string> lines;
  {
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }

  model.find_mutable(file_id)->body_metrics.token_count = 0;
  for (const auto& l : lines) {
    EiffelLine e = split_comment(l);
    model.find_mutable(file_id)->body_metrics.token_count += count_simple_tokens(e.code);
  }

  std::string current_module_id;
  std::string current_module_name;
  Visibility section_visibility = Visibility::Public;
  std::string current_routine_id;  // nonempty while inside a routine body
  int routine_depth = 0;
  long routine_tokens = 0;

  // Structured comments waiting for the next declaration, plus plain comment
  // text collected as a pending description.
  struct PendingComment {
    std::string key;
    std::string value;
    SourceLocation location;
  };
  std::vector<PendingComment> pending_structured;
  std::vector<std::string> pending_description;

  bool seen_class = false;
  bool in_indexing = false;
  bool in_inherit = false;

  auto attach_structured = [&](const std::string& construct_id) {
    Construct* c = model.find_mutable(construct_id);
    if (!c) return;
    for (const auto& p : pending_structured) {
      PropertyInstance instance;
      instance.name = p.key;
      instance.raw_value = unquote(p.value);
      instance.location = p.location;
      instance.payload = derive_payload(p.key, instance.raw_value, registry, instance.location,
                                        model.parse_diagnostics, instance.grammar_fallback);
      c->properties.push_back(instance);
    }
    pending_structured.clear();
  };

  auto attach_description = [&](const std::string& construct_id) {
    Construct* c = model.find_mutable(construct_id);
    if (!c || pending_description.empty()) {
      pending_description.clear();
      return;
    }
    if (c->description.empty()) {
      std::string joined;
      for (size_t i = 0; i < pending_description.size(); ++i) {
        if (i) joined += " ";
        joined += pending_description[i];
      }
      c->description = joined;
    }
    pending_description.clear();
  };

  auto close_routine = [&]() {
    if (current_routine_id.empty()) return;
    if (!pending_structured.empty()) attach_structured(current_routine_id);
    attach_description(current_routine_id);  // leading `--` comment of the body
    Construct* r = model.find_mutable(current_routine_id);
    if (r) r->body_metrics.token_count = routine_tokens;
    current_routine_id.clear();
    routine_depth = 0;
    routine_tokens = 0;
  };

  for (size_t line_idx = 0; line_idx < lines.size(); ++line_idx) {
    int line_no = static_cast<int>(line_idx) + 1;
    EiffelLine parts = split_comment(lines[line_idx]);
    std::string code = trim(parts.code);

    // Comments first: structured `-- key: value` vs plain prose.
    if (!parts.comment.empty() || (code.empty() && parts.comment_col > 0)) {
      std::string ckey, cvalue;
      int ccol = 0;
      if (split_clause(parts.comment, ckey, cvalue, ccol)) {
        pending_structured.push_back(
            {ckey, cvalue, {path, line_no, parts.comment_col + 2 + (ccol - 1)}});
      } else if (!parts.comment.empty() && code.empty()) {
        pending_description.push_back(parts.comment);
      }
    }
    if (code.empty()) continue;

    std::string word = to_lower(first_word(code));

    if (word == "indexing" || word == "note") {
      if (seen_class) {
        model.parse_diagnostics.push_back({Severity::Error, "SP011",
                                           {path, line_no, 1},
                                           "indexing clause below first class declaration",
                                           file_id,
                                           ""});
      }
      in_indexing = true;
      in_inherit = false;
      // clauses may start on the same line after the keyword
      std::string rest = trim(code.substr(code.find(word) + word.size()));
      if (!rest.empty()) {
        std::string key, value;
        int col = 0;
        if (split_clause(rest, key, value, col) && !seen_class) {
          PropertyInstance instance;
          instance.name = key;
          instance.raw_value = unquote(value);
          instance.location = {path, line_no, col};
          instance.payload = derive_payload(key, instance.raw_value, registry, instance.location,
                                            model.parse_diagnostics, instance.grammar_fallback);
          model.find_mutable(file_id)->properties.push_back(instance);
        }
      }
      continue;
    }

    if (word == "class") {
      in_indexing = false;
      in_inherit = false;
      close_routine();
      seen_class = true;
      std::string rest = trim(code.substr(code.find("class") + 5));
      std::string name = first_word(rest);
      if (name.empty()) continue;
      std::string id = make_construct_id(ContextKind::Module, path, "", name);
      if (model.constructs.count(id)) {
        model.parse_diagnostics.push_back({Severity::Error, "SP004",
                                           {path, line_no, 1},
                                           "duplicate module name '" + name + "'",
                                           id,
                                           ""});
        int n = 2;
        while (model.constructs.count(id + "~" + std::to_string(n))) ++n;
        id += "~" + std::to_string(n);
      }
      Construct module;
      module.id = id;
      module.context_kind = ContextKind::Module;
      module.name = name;
      module.parent = file_id;
      module.location = {path, line_no, 1};
      module.body_metrics.signature = collapse_ws(code);
      model.constructs[id] = module;
      model.find_mutable(file_id)->children.push_back(id);
      model.module_graph[id];
      current_module_id = id;
      current_module_name = name;
      section_visibility = Visibility::Public;
      attach_description(id);
      attach_structured(id);
      continue;
    }

    // `deferred class NAME` and similar prefixes.
    if ((word == "deferred" || word == "expanded" || word == "frozen") &&
        to_lower(code).find("class") != std::string::npos) {
      lines[line_idx] = parts.code.substr(to_lower(parts.code).find("class"));
      --line_idx;
      continue;
    }

    if (word == "inherit") {
      in_inherit = true;
      in_indexing = false;
      std::string rest = trim(code.substr(code.find(word) + word.size()));
      if (!rest.empty() && !current_module_id.empty()) {
        std::string super = first_word(rest);
        if (!super.empty()) {
          model.find_mutable(current_module_id)->supers.push_back(super);
          model.module_graph[current_module_id].push_back({super, std::nullopt, false});
        }
      }
      continue;
    }

    if (word == "feature") {
      in_inherit = false;
      in_indexing = false;
      close_routine();
      section_visibility = Visibility::Public;
      size_t brace = code.find('{');
      if (brace != std::string::npos) {
        size_t close = code.find('}', brace);
        std::string exports = close == std::string::npos
                                  ? code.substr(brace + 1)
                                  : code.substr(brace + 1, close - brace - 1);
        std::vector<std::string> names;
        std::string normalized = exports;
        std::replace(normalized.begin(), normalized.end(), ',', ' ');
        std::istringstream parts(normalized);
        std::string name;
        while (parts >> name) {
          for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
          names.push_back(name);
        }
        bool any_none = false, any_any = false;
        for (const auto& n : names) {
          if (n == "NONE") any_none = true;
          if (n == "ANY") any_any = true;
        }
        if (any_none && names.size() == 1) {
          section_visibility = Visibility::Private;
        } else if (any_any || names.empty()) {
          section_visibility = Visibility::Public;
        } else {
          section_visibility = Visibility::Children;
        }
      }
      pending_description.clear();
      continue;
    }

    if (word == "end") {
      if (!current_routine_id.empty()) {
        if (routine_depth > 0) {
          --routine_depth;
          routine_tokens += count_simple_tokens(code);
          if (routine_depth == 0) close_routine();
          continue;
        }
        close_routine();
        continue;
      }
      // class end
      if (!pending_structured.empty() && !current_module_id.empty())
        attach_structured(current_module_id);
      current_module_id.clear();
      current_module_name.clear();
      continue;
    }

    if (in_indexing && !seen_class) {
      std::string key, value;
      int col = 0;
      if (split_clause(code, key, value, col)) {
        PropertyInstance instance;
        instance.name = key;
        instance.raw_value = unquote(value);
        instance.location = {path, line_no, col};
        instance.payload = derive_payload(key, instance.raw_value, registry, instance.location,
                                          model.parse_diagnostics, instance.grammar_fallback);
        model.find_mutable(file_id)->properties.push_back(instance);
        continue;
      }
      in_indexing = false;
    } else if (in_indexing) {
      // skipping clauses of a misplaced indexing block (SP011 already issued)
      std::string key, value;
      int col = 0;
      if (split_clause(code, key, value, col)) continue;
      in_indexing = false;
    }

    if (in_inherit && !current_module_id.empty()) {
      std::string super = first_word(code);
      if (!super.empty() && !is_keyword_line(to_lower(super))) {
        model.find_mutable(current_module_id)->supers.push_back(super);
        model.module_graph[current_module_id].push_back({super, std::nullopt, false});
        continue;
      }
      in_inherit = false;
    }

    // Inside a routine body: track nesting and token counts.
    if (!current_routine_id.empty()) {
      std::istringstream words(code);
      std::string w;
      while (words >> w) {
        std::string lw = to_lower(w);
        if (lw == "if" || lw == "from" || lw == "inspect" || lw == "across" || lw == "debug" ||
            lw == "check")
          ++routine_depth;
        if (lw == "end" && routine_depth > 0) --routine_depth;
      }
      routine_tokens += count_simple_tokens(code);
      continue;
    }

    // Feature or attribute declaration inside a class.
    if (!current_module_id.empty() && is_ident_start(code[0]) && !is_keyword_line(word)) {
      std::string name = first_word(code);
      std::string lower_code = to_lower(code);
      bool has_is = false;
      {
        // `is` as a separate trailing word
        std::istringstream words(lower_code);
        std::string w, last;
        while (words >> w) last = w;
        has_is = last == "is";
      }
      bool has_args = code.find('(') != std::string::npos;
      size_t colon = code.find(':');
      bool has_type = colon != std::string::npos;
      bool routine = has_is || has_args;
      if (!routine && !has_type) {
        // bare identifier line: treat as routine head if a body keyword follows
        for (size_t look = line_idx + 1; look < lines.size() && look < line_idx + 3; ++look) {
          std::string next_word = to_lower(first_word(trim(split_comment(lines[look]).code)));
          if (next_word.empty()) continue;
          for (const char* kw : kBodyKeywords) {
            if (next_word == kw) routine = true;
          }
          break;
        }
      }

      ContextKind kind = routine ? ContextKind::Feature : ContextKind::Variable;
      Construct construct;
      construct.context_kind = kind;
      construct.name = name;
      construct.id = make_construct_id(kind, path, current_module_name, name);
      int n = 2;
      while (model.constructs.count(construct.id)) {
        construct.id =
            make_construct_id(kind, path, current_module_name, name) + "~" + std::to_string(n++);
      }
      construct.visibility = section_visibility;
      construct.parent = current_module_id;
      construct.location = {path, line_no, static_cast<int>(lines[line_idx].find(name)) + 1};
      std::string signature = collapse_ws(code);
      if (signature.size() >= 3 && signature.substr(signature.size() - 3) == " is") {
        signature = signature.substr(0, signature.size() - 3);
      }
      construct.body_metrics.signature = signature;
      construct.returns_value = routine && has_type;
      model.constructs[construct.id] = construct;
      model.find_mutable(current_module_id)->children.push_back(construct.id);
      attach_description(construct.id);
      attach_structured(construct.id);
      if (routine) {
        current_routine_id = construct.id;
        routine_depth = 0;
        routine_tokens = 0;
      }
      continue;
    }
  }
  close_routine();
  if (!pending_structured.empty()) {
    // trailing structured comments with nothing following attach to the file
    attach_structured(current_module_id.empty() ? file_id : current_module_id);
  }

  sort_diagnostics(model.parse_diagnostics);
  return model;
}

}  // namespace semprop
