#include <cctype>
#include <set>

#include "semprop/frontends.hpp"

namespace semprop {

namespace {

struct Tok {
  enum Kind { Ident, Number, Punct, Str, CharLit, DocComment, End } kind = End;
  std::string text;   // for DocComment: interior between /** and */
  int line = 1;
  int column = 1;
  size_t begin = 0;  // byte offsets into the raw source
  size_t end = 0;
};

class JavaLexer {
 public:
  explicit JavaLexer(const std::string& text) : text_(text) {}

  std::vector<Tok> run() {
    std::vector<Tok> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        bool doc = peek(2) == '*' && peek(3) != '/';
        Tok t;
        t.line = line_;
        t.column = column_;
        t.begin = pos_;
        advance();  // '/'
        advance();  // '*'
        size_t interior_begin = pos_;
        int interior_line = line_;
        int interior_col = column_;
        if (doc) {
          advance();  // second '*'
          interior_begin = pos_;
          interior_line = line_;
          interior_col = column_;
        }
        size_t interior_end = interior_begin;
        while (pos_ < text_.size()) {
          if (text_[pos_] == '*' && peek(1) == '/') {
            interior_end = pos_;
            advance();
            advance();
            break;
          }
          advance();
          interior_end = pos_;
        }
        if (doc) {
          t.kind = Tok::DocComment;
          t.text = text_.substr(interior_begin, interior_end - interior_begin);
          t.line = interior_line;
          t.column = interior_col;
          t.end = pos_;
          out.push_back(t);
        }
        continue;
      }
      Tok t;
      t.line = line_;
      t.column = column_;
      t.begin = pos_;
      if (c == '"') {
        t.kind = Tok::Str;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\') advance();
          advance();
        }
        if (pos_ < text_.size()) advance();
        t.end = pos_;
        t.text = text_.substr(t.begin, t.end - t.begin);
        out.push_back(t);
        continue;
      }
      if (c == '\'') {
        t.kind = Tok::CharLit;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '\'') {
          if (text_[pos_] == '\\') advance();
          advance();
        }
        if (pos_ < text_.size()) advance();
        t.end = pos_;
        t.text = text_.substr(t.begin, t.end - t.begin);
        out.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        t.kind = Tok::Ident;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '$'))
          advance();
        t.end = pos_;
        t.text = text_.substr(t.begin, t.end - t.begin);
        out.push_back(t);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '.'))
          advance();
        t.end = pos_;
        t.text = text_.substr(t.begin, t.end - t.begin);
        out.push_back(t);
        continue;
      }
      t.kind = Tok::Punct;
      advance();
      t.end = pos_;
      t.text = text_.substr(t.begin, t.end - t.begin);
      out.push_back(t);
    }
    Tok end;
    end.kind = Tok::End;
    end.line = line_;
    end.column = column_;
    end.begin = end.end = text_.size();
    out.push_back(end);
    return out;
  }

 private:
  char peek(size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string>& modifier_words() {
  static const std::set<std::string> words = {
      "public", "private", "protected", "static",   "final",    "abstract",  "synchronized",
      "native", "strictfp", "transient", "volatile", "default", "sealed",    "non",
  };
  return words;
}

// Comment-stripped, whitespace-collapsed text of a raw source slice.
std::string normalize_signature(const std::string& raw, size_t begin, size_t end) {
  std::string out;
  bool space_pending = false;
  size_t i = begin;
  while (i < end) {
    char c = raw[i];
    if (c == '/' && i + 1 < end && raw[i + 1] == '/') {
      while (i < end && raw[i] != '\n') ++i;
      space_pending = !out.empty();
      continue;
    }
    if (c == '/' && i + 1 < end && raw[i + 1] == '*') {
      i += 2;
      while (i + 1 < end && !(raw[i] == '*' && raw[i + 1] == '/')) ++i;
      i = i + 2 <= end ? i + 2 : end;
      space_pending = !out.empty();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      space_pending = !out.empty();
      ++i;
      continue;
    }
    if (space_pending) {
      out.push_back(' ');
      space_pending = false;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

// Token count per the shared rule: maximal alphanumeric/underscore runs plus
// each remaining non-space glyph, after comment removal.
long count_body_tokens(const std::string& raw, size_t begin, size_t end) {
  long count = 0;
  size_t i = begin;
  while (i < end) {
    char c = raw[i];
    if (c == '/' && i + 1 < end && raw[i + 1] == '/') {
      while (i < end && raw[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < end && raw[i + 1] == '*') {
      i += 2;
      while (i + 1 < end && !(raw[i] == '*' && raw[i + 1] == '/')) ++i;
      i = i + 2 <= end ? i + 2 : end;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      ++count;
      while (i < end && (std::isalnum(static_cast<unsigned char>(raw[i])) || raw[i] == '_')) ++i;
      continue;
    }
    ++count;
    ++i;
  }
  return count;
}

class JavaScanner {
 public:
  JavaScanner(const std::string& text, std::string path, const Registry& registry)
      : text_(text), path_(std::move(path)), registry_(registry) {
    tokens_ = JavaLexer(text_).run();
  }

  SourceModel run() {
    Construct file;
    file.id = make_construct_id(ContextKind::File, path_, "", "");
    file.context_kind = ContextKind::File;
    file.name = basename(path_);
    file.location = {path_, 1, 1};
    file.body_metrics.token_count = count_body_tokens(text_, 0, text_.size());
    file.body_metrics.signature = file.name;
    model_.constructs[file.id] = file;
    file_id_ = file.id;

    while (!at_end()) {
      if (cur().kind == Tok::DocComment) {
        take_doc_comment(true);
        continue;
      }
      if (cur().kind == Tok::Ident && (cur().text == "package" || cur().text == "import")) {
        flush_pending_to_file();
        skip_statement();
        continue;
      }
      parse_type_declaration(file_id_, "");
    }
    flush_pending_to_file();
    resolve_links();
    sort_diagnostics(model_.parse_diagnostics);
    return std::move(model_);
  }

 private:
  struct PendingDoc {
    DocCommentResult parsed;
    bool valid = false;
  };

  const Tok& cur() const { return tokens_[pos_]; }
  const Tok& peek(size_t ahead = 1) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at_end() const { return cur().kind == Tok::End; }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  static std::string basename(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
  }

  void take_doc_comment(bool top_level) {
    const Tok& t = cur();
    if (pending_.valid && top_level && !file_doc_attached_ && !any_declaration_) {
      attach_pending_to(file_id_);
      file_doc_attached_ = true;
    }
    pending_.parsed = parse_doc_comment(t.text, registry_, path_, t.line, t.column);
    pending_.valid = true;
    advance();
  }

  void flush_pending_to_file() {
    if (!pending_.valid) return;
    if (!file_doc_attached_ && !any_declaration_) {
      attach_pending_to(file_id_);
      file_doc_attached_ = true;
    }
    pending_ = {};
  }

  void attach_pending_to(const std::string& construct_id) {
    Construct* c = model_.find_mutable(construct_id);
    if (!c) return;
    if (c->description.empty()) c->description = pending_.parsed.description;
    for (auto& inst : pending_.parsed.instances) c->properties.push_back(inst);
    for (auto& d : pending_.parsed.diagnostics) {
      Diagnostic diag = d;
      diag.construct = construct_id;
      model_.parse_diagnostics.push_back(diag);
    }
    pending_ = {};
  }

  void skip_statement() {
    while (!at_end() && !(cur().kind == Tok::Punct && cur().text == ";")) advance();
    if (!at_end()) advance();
  }

  void skip_balanced_braces() {
    // expects cur() == '{'
    int depth = 0;
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "{") ++depth;
      if (cur().kind == Tok::Punct && cur().text == "}") {
        --depth;
        if (depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  void skip_generics() {
    // expects cur() == '<'
    int depth = 0;
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "<") ++depth;
      if (cur().kind == Tok::Punct && cur().text == ">") {
        --depth;
        if (depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  void skip_annotation() {
    // expects cur() == '@'
    advance();
    if (cur().kind == Tok::Ident) advance();
    if (cur().kind == Tok::Punct && cur().text == "(") {
      int depth = 0;
      while (!at_end()) {
        if (cur().kind == Tok::Punct && cur().text == "(") ++depth;
        if (cur().kind == Tok::Punct && cur().text == ")") {
          --depth;
          if (depth == 0) {
            advance();
            return;
          }
        }
        advance();
      }
    }
  }

  Visibility visibility_from(const std::vector<std::string>& modifiers) const {
    for (const auto& m : modifiers) {
      if (m == "public") return Visibility::Public;
      if (m == "private") return Visibility::Private;
      if (m == "protected") return Visibility::Children;
    }
    return Visibility::ModuleScoped;
  }

  void notice_skip(const Tok& at, const std::string& what) {
    model_.parse_diagnostics.push_back({Severity::Notice, "SP002",
                                        {path_, at.line, at.column},
                                        "skipped unclassified construct: " + what,
                                        "",
                                        ""});
  }

  void parse_type_declaration(const std::string& parent_id, const std::string& outer_name) {
    size_t decl_begin_tok = pos_;
    std::vector<std::string> modifiers;
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "@") {
        skip_annotation();
        decl_begin_tok = pos_;
        continue;
      }
      if (cur().kind == Tok::Ident && modifier_words().count(cur().text)) {
        modifiers.push_back(cur().text);
        advance();
        continue;
      }
      break;
    }
    if (at_end()) return;
    if (!(cur().kind == Tok::Ident && (cur().text == "class" || cur().text == "interface"))) {
      if (cur().kind == Tok::Ident && (cur().text == "enum" || cur().text == "record")) {
        Tok at = cur();
        while (!at_end() && !(cur().kind == Tok::Punct && cur().text == "{")) advance();
        if (!at_end()) skip_balanced_braces();
        notice_skip(at, at.text + " declaration");
        pending_ = {};
        return;
      }
      Tok at = cur();
      notice_skip(at, "token '" + cur().text + "'");
      advance();
      return;
    }

    any_declaration_ = true;
    advance();  // class/interface
    if (cur().kind != Tok::Ident) {
      notice_skip(cur(), "unnamed type declaration");
      return;
    }
    std::string name = cur().text;
    Tok name_tok = cur();
    advance();
    if (cur().kind == Tok::Punct && cur().text == "<") skip_generics();

    std::vector<std::string> supers;
    while (!at_end() && !(cur().kind == Tok::Punct && (cur().text == "{" || cur().text == ";"))) {
      if (cur().kind == Tok::Ident && (cur().text == "extends" || cur().text == "implements")) {
        advance();
        while (!at_end()) {
          if (cur().kind == Tok::Ident && cur().text != "extends" && cur().text != "implements") {
            std::string super = cur().text;
            advance();
            while (cur().kind == Tok::Punct && cur().text == ".") {  // qualified name: keep last part
              advance();
              if (cur().kind == Tok::Ident) {
                super = cur().text;
                advance();
              }
            }
            if (cur().kind == Tok::Punct && cur().text == "<") skip_generics();
            supers.push_back(super);
            if (cur().kind == Tok::Punct && cur().text == ",") {
              advance();
              continue;
            }
          }
          break;
        }
        continue;
      }
      advance();
    }
    size_t sig_end = cur().begin;

    std::string id = make_construct_id(ContextKind::Module, path_, "", name);
    if (model_.constructs.count(id)) {
      model_.parse_diagnostics.push_back({Severity::Error, "SP004",
                                          {path_, name_tok.line, name_tok.column},
                                          "duplicate module name '" + name + "'",
                                          id,
                                          ""});
      int n = 2;
      while (model_.constructs.count(id + "~" + std::to_string(n))) ++n;
      id += "~" + std::to_string(n);
    }

    Construct module;
    module.id = id;
    module.context_kind = ContextKind::Module;
    module.name = name;
    module.visibility = visibility_from(modifiers);
    module.parent = parent_id;
    module.supers = supers;
    module.location = {path_, name_tok.line, name_tok.column};
    module.body_metrics.signature =
        normalize_signature(text_, tokens_[decl_begin_tok].begin, sig_end);
    model_.constructs[id] = module;
    model_.find_mutable(parent_id)->children.push_back(id);
    model_.module_graph[id];
    for (const auto& s : supers) model_.module_graph[id].push_back({s, std::nullopt, false});
    if (pending_.valid) attach_pending_to(id);

    if (cur().kind == Tok::Punct && cur().text == ";") {
      advance();
      return;
    }
    if (!(cur().kind == Tok::Punct && cur().text == "{")) return;
    size_t body_begin = cur().end;
    advance();  // '{'
    parse_class_body(id, name);
    // body token count: up to the '}' consumed by parse_class_body
    size_t body_end = pos_ > 0 ? tokens_[pos_ - 1].begin : body_begin;
    Construct* stored = model_.find_mutable(id);
    stored->body_metrics.token_count = count_body_tokens(text_, body_begin, body_end);
  }

  void parse_class_body(const std::string& module_id, const std::string& module_name) {
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "}") {
        advance();
        pending_ = {};
        return;
      }
      if (cur().kind == Tok::DocComment) {
        take_doc_comment(false);
        continue;
      }
      if (cur().kind == Tok::Punct && cur().text == ";") {
        advance();
        continue;
      }
      parse_member(module_id, module_name);
    }
  }

  void parse_member(const std::string& module_id, const std::string& module_name) {
    size_t decl_begin_tok = pos_;
    std::vector<std::string> modifiers;
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "@") {
        skip_annotation();
        if (modifiers.empty()) decl_begin_tok = pos_;
        continue;
      }
      if (cur().kind == Tok::Ident && modifier_words().count(cur().text)) {
        modifiers.push_back(cur().text);
        advance();
        continue;
      }
      break;
    }
    if (at_end()) return;
    if (cur().kind == Tok::Punct && cur().text == "}") {
      pending_ = {};
      return;  // class body closes; let the caller consume it
    }

    // Nested types are out of scope for the shallow scanner.
    if (cur().kind == Tok::Ident &&
        (cur().text == "class" || cur().text == "interface" || cur().text == "enum" ||
         cur().text == "record")) {
      Tok at = cur();
      while (!at_end() && !(cur().kind == Tok::Punct && (cur().text == "{" || cur().text == ";")))
        advance();
      if (!at_end() && cur().text == "{") skip_balanced_braces();
      else if (!at_end()) advance();
      notice_skip(at, "nested " + at.text);
      pending_ = {};
      return;
    }

    // Initializer block.
    if (cur().kind == Tok::Punct && cur().text == "{") {
      skip_balanced_braces();
      pending_ = {};
      return;
    }

    // Collect the declaration head: type tokens and the declared name, up to
    // '(' (method), '=' or ';' or ',' (field).
    std::vector<size_t> head;
    while (!at_end()) {
      if (cur().kind == Tok::Punct &&
          (cur().text == "(" || cur().text == "=" || cur().text == ";" || cur().text == ",")) {
        break;
      }
      if (cur().kind == Tok::Punct && cur().text == "<") {
        skip_generics();
        continue;
      }
      if (cur().kind == Tok::Punct && cur().text == "{") break;  // malformed; bail below
      if (cur().kind == Tok::Punct && cur().text == "}") break;
      head.push_back(pos_);
      advance();
    }
    if (at_end()) return;

    auto last_ident_in_head = [&]() -> std::optional<size_t> {
      for (auto it = head.rbegin(); it != head.rend(); ++it) {
        if (tokens_[*it].kind == Tok::Ident) return *it;
      }
      return std::nullopt;
    };

    if (cur().kind == Tok::Punct && cur().text == "(") {
      auto name_idx = last_ident_in_head();
      if (!name_idx) {
        notice_skip(cur(), "parenthesis without declarator");
        skip_parens();
        pending_ = {};
        return;
      }
      std::string name = tokens_[*name_idx].text;
      std::string return_type;
      for (auto it = head.rbegin(); it != head.rend(); ++it) {
        if (*it == *name_idx) continue;
        if (tokens_[*it].kind == Tok::Ident && !modifier_words().count(tokens_[*it].text)) {
          return_type = tokens_[*it].text;
          break;
        }
      }
      skip_parens();
      // throws clause and annotations before body
      while (!at_end() && !(cur().kind == Tok::Punct && (cur().text == "{" || cur().text == ";")))
        advance();
      size_t sig_end = cur().begin;
      long body_tokens = 0;
      if (!at_end() && cur().text == "{") {
        size_t body_begin = cur().end;
        skip_balanced_braces();
        size_t body_end = pos_ > 0 ? tokens_[pos_ - 1].begin : body_begin;
        body_tokens = count_body_tokens(text_, body_begin, body_end);
      } else if (!at_end()) {
        advance();  // ';'
      }

      Construct feature;
      feature.context_kind = ContextKind::Feature;
      feature.name = name;
      feature.id = make_construct_id(ContextKind::Feature, path_, module_name, name);
      int n = 2;
      while (model_.constructs.count(feature.id)) {
        feature.id = make_construct_id(ContextKind::Feature, path_, module_name, name) + "~" +
                     std::to_string(n++);
      }
      feature.visibility = visibility_from(modifiers);
      feature.parent = module_id;
      feature.location = {path_, tokens_[*name_idx].line, tokens_[*name_idx].column};
      feature.body_metrics.signature =
          normalize_signature(text_, tokens_[decl_begin_tok].begin, sig_end);
      feature.body_metrics.token_count = body_tokens;
      bool is_constructor = return_type.empty() || name == module_name;
      feature.returns_value = !is_constructor && return_type != "void";
      model_.constructs[feature.id] = feature;
      model_.find_mutable(module_id)->children.push_back(feature.id);
      if (pending_.valid) attach_pending_to(feature.id);
      any_declaration_ = true;
      return;
    }

    if (cur().kind == Tok::Punct && cur().text == "{") {
      // Could not classify (e.g. syntax we do not scan); skip the block.
      notice_skip(cur(), "unrecognized member");
      skip_balanced_braces();
      pending_ = {};
      return;
    }

    // Field declaration: one Variable per declarator.
    auto emit_variable = [&](size_t name_tok_idx, size_t init_begin, size_t init_end) {
      std::string name = tokens_[name_tok_idx].text;
      Construct variable;
      variable.context_kind = ContextKind::Variable;
      variable.name = name;
      variable.id = make_construct_id(ContextKind::Variable, path_, module_name, name);
      int n = 2;
      while (model_.constructs.count(variable.id)) {
        variable.id = make_construct_id(ContextKind::Variable, path_, module_name, name) + "~" +
                      std::to_string(n++);
      }
      variable.visibility = visibility_from(modifiers);
      variable.parent = module_id;
      variable.location = {path_, tokens_[name_tok_idx].line, tokens_[name_tok_idx].column};
      variable.body_metrics.signature =
          normalize_signature(text_, tokens_[decl_begin_tok].begin, tokens_[name_tok_idx].end);
      if (init_end > init_begin) {
        variable.body_metrics.token_count = count_body_tokens(text_, init_begin, init_end);
      }
      model_.constructs[variable.id] = variable;
      model_.find_mutable(module_id)->children.push_back(variable.id);
      if (pending_.valid) attach_pending_to(variable.id);
      any_declaration_ = true;
    };

    auto name_idx = last_ident_in_head();
    if (!name_idx) {
      notice_skip(cur(), "statement without declarator");
      skip_statement();
      pending_ = {};
      return;
    }

    while (!at_end()) {
      size_t init_begin = 0, init_end = 0;
      if (cur().kind == Tok::Punct && cur().text == "=") {
        init_begin = cur().end;
        int depth = 0;
        while (!at_end()) {
          if (cur().kind == Tok::Punct && (cur().text == "(" || cur().text == "{" || cur().text == "["))
            ++depth;
          if (cur().kind == Tok::Punct && (cur().text == ")" || cur().text == "}" || cur().text == "]"))
            --depth;
          if (depth == 0 && cur().kind == Tok::Punct && (cur().text == ";" || cur().text == ","))
            break;
          advance();
        }
        init_end = cur().begin;
      }
      emit_variable(*name_idx, init_begin, init_end);
      if (cur().kind == Tok::Punct && cur().text == ",") {
        advance();
        if (cur().kind == Tok::Ident) {
          name_idx = pos_;
          advance();
          continue;
        }
        skip_statement();
        return;
      }
      if (cur().kind == Tok::Punct && cur().text == ";") advance();
      return;
    }
  }

  void skip_parens() {
    // expects cur() == '('
    int depth = 0;
    while (!at_end()) {
      if (cur().kind == Tok::Punct && cur().text == "(") ++depth;
      if (cur().kind == Tok::Punct && cur().text == ")") {
        --depth;
        if (depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  // Resolve super and override links inside this fragment. link_model runs
  // the same resolution again across fragments.
  void resolve_links() {
    std::map<std::string, std::string> modules_by_name;
    for (const auto& [id, c] : model_.constructs) {
      if (c.context_kind == ContextKind::Module && !modules_by_name.count(c.name))
        modules_by_name[c.name] = id;
    }
    for (auto& [id, links] : model_.module_graph) {
      for (auto& link : links) {
        if (!link.target) {
          auto it = modules_by_name.find(link.name);
          if (it != modules_by_name.end()) link.target = it->second;
        }
      }
    }
    for (auto& [id, c] : model_.constructs) {
      if (c.context_kind != ContextKind::Feature || !c.parent) continue;
      if (c.overrides_target) continue;
      // breadth-first over resolved supers
      std::vector<std::string> frontier = {*c.parent};
      std::set<std::string> seen = {*c.parent};
      while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& mid : frontier) {
          auto git = model_.module_graph.find(mid);
          if (git == model_.module_graph.end()) continue;
          for (const auto& link : git->second) {
            if (!link.target || seen.count(*link.target)) continue;
            seen.insert(*link.target);
            const Construct* super = model_.find(*link.target);
            if (!super) continue;
            for (const auto& child_id : super->children) {
              const Construct* member = model_.find(child_id);
              if (member && member->context_kind == ContextKind::Feature &&
                  member->name == c.name) {
                c.overrides = c.name;
                c.overrides_target = member->id;
                break;
              }
            }
            if (c.overrides_target) break;
            next.push_back(*link.target);
          }
          if (c.overrides_target) break;
        }
        if (c.overrides_target) break;
        frontier = std::move(next);
      }
    }
  }

  const std::string& text_;
  std::string path_;
  const Registry& registry_;
  std::vector<Tok> tokens_;
  size_t pos_ = 0;
  SourceModel model_;
  std::string file_id_;
  PendingDoc pending_;
  bool file_doc_attached_ = false;
  bool any_declaration_ = false;
};

}  // namespace

SourceModel parse_java_source(const std::string& text, const std::string& path,
                              const Registry& registry) {
  JavaScanner scanner(text, path, registry);
  return scanner.run();
}

}  // namespace semprop
