#include <cctype>
#include <cstring>
#include <set>

#include "semprop/frontends.hpp"

namespace semprop {

namespace {

struct ETok {
  enum Kind { Name, Str, Colon, Arrow, LParen, RParen, Other, End } kind = End;
  std::string text;  // Name: identifier; Str: unescaped content
  int line = 1;
  size_t begin = 0;
};

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw UsageError{path + ":" + std::to_string(line) + ": " + what};
}

std::vector<ETok> lex(const std::string& text, const std::string& path) {
  std::vector<ETok> out;
  size_t i = 0;
  int line = 1;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    ETok t;
    t.line = line;
    t.begin = i;
    if (c == '"') {
      t.kind = ETok::Str;
      ++i;
      std::string value;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '"') {
          value.push_back('"');
          i += 2;
          continue;
        }
        if (text[i] == '"') {
          closed = true;
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        value.push_back(text[i]);
        ++i;
      }
      if (!closed) fail(path, t.line, "unterminated string");
      t.text = value;
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = ETok::Name;
      size_t b = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      t.text = text.substr(b, i - b);
      out.push_back(t);
      continue;
    }
    if (c == ':') {
      t.kind = ETok::Colon;
      ++i;
      out.push_back(t);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = ETok::Arrow;
      i += 2;
      out.push_back(t);
      continue;
    }
    if (c == '(') {
      t.kind = ETok::LParen;
      ++i;
      out.push_back(t);
      continue;
    }
    if (c == ')') {
      t.kind = ETok::RParen;
      ++i;
      out.push_back(t);
      continue;
    }
    // Contract-expression glyphs pass through; the expression parser owns
    // the span between balanced parens. `--` and `->` were handled above.
    if (std::isdigit(static_cast<unsigned char>(c)) || std::strchr("<>=!&|-+", c) != nullptr) {
      t.kind = ETok::Other;
      size_t b = i;
      ++i;
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                                 std::strchr("<>=!&|+", text[i]) != nullptr)) {
        ++i;
      }
      t.text = text.substr(b, i - b);
      out.push_back(t);
      continue;
    }
    fail(path, line, std::string("unexpected character '") + c + "'");
  }
  ETok end;
  end.kind = ETok::End;
  end.line = line;
  end.begin = text.size();
  out.push_back(end);
  return out;
}

class EbonParser {
 public:
  EbonParser(const std::string& text, std::string path)
      : text_(text), path_(std::move(path)), tokens_(lex(text, path_)) {}

  SpecModel run() {
    SpecModel spec;
    spec.path = path_;
    std::set<std::string> names;
    while (cur().kind != ETok::End) {
      expect_keyword("class");
      SpecClass cls;
      cls.line = cur().line;
      cls.name = expect_name("class name");
      if (!names.insert(cls.name).second) {
        fail(path_, cls.line, "duplicate class name '" + cls.name + "'");
      }
      if (is_keyword("indexing")) {
        advance();
        while (cur().kind == ETok::Name && peek().kind == ETok::Colon && !is_keyword("feature") &&
               !is_keyword("end")) {
          std::string key = cur().text;
          advance();
          advance();  // ':'
          if (cur().kind != ETok::Str) fail(path_, cur().line, "expected string after ':'");
          cls.indexing.emplace_back(key, cur().text);
          advance();
        }
      }
      while (is_keyword("feature")) {
        advance();
        SpecFeature feature;
        feature.line = cur().line;
        feature.name = expect_name("feature name");
        if (cur().kind == ETok::Arrow) {
          advance();
          feature.type = expect_name("result type");
        }
        if (is_keyword("require")) {
          advance();
          feature.require_expr = parse_paren_expr();
        }
        if (is_keyword("ensure")) {
          advance();
          feature.ensure_expr = parse_paren_expr();
        }
        for (const auto& f : cls.features) {
          if (f.name == feature.name)
            fail(path_, feature.line, "duplicate feature '" + feature.name + "'");
        }
        cls.features.push_back(std::move(feature));
      }
      expect_keyword("end");
      spec.classes.push_back(std::move(cls));
    }
    return spec;
  }

 private:
  const ETok& cur() const { return tokens_[pos_]; }
  const ETok& peek() const {
    return pos_ + 1 < tokens_.size() ? tokens_[pos_ + 1] : tokens_.back();
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }
  bool is_keyword(const std::string& word) const {
    return cur().kind == ETok::Name && cur().text == word;
  }
  void expect_keyword(const std::string& word) {
    if (!is_keyword(word)) fail(path_, cur().line, "expected '" + word + "'");
    advance();
  }
  std::string expect_name(const std::string& what) {
    if (cur().kind != ETok::Name) fail(path_, cur().line, "expected " + what);
    std::string name = cur().text;
    advance();
    return name;
  }

  ContractExpr parse_paren_expr() {
    if (cur().kind != ETok::LParen) fail(path_, cur().line, "expected '('");
    size_t begin = cur().begin;
    int start_line = cur().line;
    int depth = 0;
    size_t end = std::string::npos;
    while (cur().kind != ETok::End) {
      if (cur().kind == ETok::LParen) ++depth;
      if (cur().kind == ETok::RParen) {
        --depth;
        if (depth == 0) {
          end = cur().begin + 1;
          advance();
          break;
        }
      }
      advance();
    }
    if (end == std::string::npos) fail(path_, start_line, "unterminated '('");
    ExprParseResult parsed = parse_contract_expr(text_.substr(begin, end - begin));
    if (!parsed.ok()) fail(path_, start_line, "bad contract expression: " + parsed.error);
    return parsed.expr;
  }

  const std::string& text_;
  std::string path_;
  std::vector<ETok> tokens_;
  size_t pos_ = 0;
};

}  // namespace

SpecModel parse_ebon_spec(const std::string& text, const std::string& path) {
  return EbonParser(text, path).run();
}

std::vector<PropertyInstance> ebon_indexing_instances(const SpecModel& spec,
                                                      const std::string& path,
                                                      const Registry& registry) {
  std::vector<PropertyInstance> out;
  std::vector<Diagnostic> sink;
  for (const auto& cls : spec.classes) {
    for (const auto& [key, value] : cls.indexing) {
      PropertyInstance instance;
      instance.name = key;
      instance.raw_value = value;
      instance.location = {path, cls.line, 1};
      instance.payload =
          derive_payload(key, value, registry, instance.location, sink, instance.grammar_fallback);
      out.push_back(instance);
    }
  }
  return out;
}

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::JavaDocComment: return "java-doc-comment";
    case Dialect::EiffelIndexing: return "eiffel-indexing";
    case Dialect::EbonIndexing: return "ebon-indexing";
  }
  return "java-doc-comment";
}

bool parse_dialect(const std::string& text, Dialect& out) {
  if (text == "java-doc-comment" || text == "java") out = Dialect::JavaDocComment;
  else if (text == "eiffel-indexing" || text == "eiffel") out = Dialect::EiffelIndexing;
  else if (text == "ebon-indexing" || text == "ebon") out = Dialect::EbonIndexing;
  else return false;
  return true;
}

Dialect detect_dialect(const std::string& path, Dialect fallback) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "java") return Dialect::JavaDocComment;
  if (ext == "e") return Dialect::EiffelIndexing;
  if (ext == "ebon" || ext == "bon") return Dialect::EbonIndexing;
  return fallback;
}

}  // namespace semprop
