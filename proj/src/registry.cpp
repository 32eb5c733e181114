#include "semprop/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace semprop {

const char* category_name(Category c) {
  switch (c) {
    case Category::MetaInformation: return "MetaInformation";
    case Category::PendingWork: return "PendingWork";
    case Category::Contracts: return "Contracts";
    case Category::Concurrency: return "Concurrency";
    case Category::Usage: return "Usage";
    case Category::Versioning: return "Versioning";
    case Category::Inheritance: return "Inheritance";
    case Category::Documentation: return "Documentation";
    case Category::Dependencies: return "Dependencies";
    case Category::Miscellaneous: return "Miscellaneous";
  }
  return "Miscellaneous";
}

const char* formality_name(Formality f) {
  switch (f) {
    case Formality::Informal: return "informal";
    case Formality::SemiFormal: return "semi-formal";
    case Formality::Formal: return "formal";
  }
  return "informal";
}

const char* context_kind_name(ContextKind k) {
  switch (k) {
    case ContextKind::File: return "file";
    case ContextKind::Module: return "module";
    case ContextKind::Feature: return "feature";
    case ContextKind::Variable: return "variable";
  }
  return "file";
}

const char* value_grammar_name(ValueGrammar g) {
  switch (g) {
    case ValueGrammar::Freeform: return "freeform";
    case ValueGrammar::NameThenText: return "name-then-text";
    case ValueGrammar::Expression: return "expression";
    case ValueGrammar::KeywordToken: return "keyword-token";
    case ValueGrammar::VersionString: return "version-string";
    case ValueGrammar::Reference: return "reference";
  }
  return "freeform";
}

const char* multiplicity_name(Multiplicity m) {
  return m == Multiplicity::AtMostOne ? "at-most-one" : "many";
}

const char* inherit_mode_name(InheritMode m) {
  switch (m) {
    case InheritMode::NotInherited: return "not-inherited";
    case InheritMode::Replacement: return "replacement";
    case InheritMode::Augmentation: return "augmentation";
  }
  return "not-inherited";
}

const std::vector<Category>& all_categories() {
  static const std::vector<Category> order = {
      Category::MetaInformation, Category::PendingWork,   Category::Contracts,
      Category::Concurrency,     Category::Usage,         Category::Versioning,
      Category::Inheritance,     Category::Documentation, Category::Dependencies,
      Category::Miscellaneous,
  };
  return order;
}

void Registry::add(PropertyDefinition def) {
  auto pos = std::lower_bound(definitions_.begin(), definitions_.end(), def,
                              [](const PropertyDefinition& a, const PropertyDefinition& b) {
                                if (a.category != b.category) return a.category < b.category;
                                return a.name < b.name;
                              });
  definitions_.insert(pos, std::move(def));
}

void Registry::add_alias(const std::string& alias, const std::string& canonical) {
  aliases_[alias] = canonical;
}

std::string Registry::resolve_name(const std::string& name_or_alias) const {
  auto it = aliases_.find(name_or_alias);
  return it != aliases_.end() ? it->second : name_or_alias;
}

const PropertyDefinition* Registry::find(const std::string& name_or_alias) const {
  std::string canonical = resolve_name(name_or_alias);
  for (const auto& def : definitions_) {
    if (def.name == canonical) return &def;
  }
  return nullptr;
}

PropertyDefinition* Registry::find_mutable(const std::string& name) {
  std::string canonical = resolve_name(name);
  for (auto& def : definitions_) {
    if (def.name == canonical) return &def;
  }
  return nullptr;
}

namespace {

const std::set<ContextKind> kFileModule = {ContextKind::File, ContextKind::Module};
const std::set<ContextKind> kFileModuleFeature = {ContextKind::File, ContextKind::Module,
                                                  ContextKind::Feature};
const std::set<ContextKind> kFeature = {ContextKind::Feature};
const std::set<ContextKind> kModule = {ContextKind::Module};
const std::set<ContextKind> kModuleFeature = {ContextKind::Module, ContextKind::Feature};
const std::set<ContextKind> kFeatureVariable = {ContextKind::Feature, ContextKind::Variable};
const std::set<ContextKind> kVariable = {ContextKind::Variable};
const std::set<ContextKind> kAll = {ContextKind::File, ContextKind::Module, ContextKind::Feature,
                                    ContextKind::Variable};

PropertyDefinition builtin(std::string name, Category category, Formality formality,
                           std::set<ContextKind> contexts, ValueGrammar grammar,
                           Multiplicity multiplicity, InheritMode inherit) {
  PropertyDefinition def;
  def.name = std::move(name);
  def.category = category;
  def.formality = formality;
  def.contexts = std::move(contexts);
  def.value_grammar = grammar;
  def.multiplicity = multiplicity;
  def.inheritance_mode = inherit;
  def.builtin = true;
  return def;
}

}  // namespace

Registry builtin_registry() {
  using C = Category;
  using F = Formality;
  using G = ValueGrammar;
  using M = Multiplicity;
  using I = InheritMode;

  Registry r;

  // Meta-information
  r.add(builtin("author", C::MetaInformation, F::SemiFormal, kFileModule, G::Freeform, M::Many, I::NotInherited));
  r.add(builtin("bon", C::MetaInformation, F::SemiFormal, kFileModule, G::Freeform, M::AtMostOne, I::NotInherited));
  r.add(builtin("bug", C::MetaInformation, F::SemiFormal, kFileModuleFeature, G::Freeform, M::Many, I::NotInherited));
  r.add(builtin("copyright", C::MetaInformation, F::SemiFormal, kFileModule, G::Freeform, M::AtMostOne, I::NotInherited));
  r.add(builtin("description", C::MetaInformation, F::Informal, kFileModule, G::Freeform, M::AtMostOne, I::Replacement));
  r.add(builtin("history", C::MetaInformation, F::Informal, kFileModule, G::Freeform, M::Many, I::NotInherited));
  r.add(builtin("license", C::MetaInformation, F::SemiFormal, kFileModule, G::Freeform, M::AtMostOne, I::NotInherited));
  r.add(builtin("title", C::MetaInformation, F::Informal, kFileModule, G::Freeform, M::AtMostOne, I::NotInherited));

  // Contracts
  r.add(builtin("ensure", C::Contracts, F::Formal, kFeature, G::Expression, M::Many, I::Augmentation));
  {
    auto def = builtin("generate", C::Contracts, F::Formal, kFeature, G::KeywordToken, M::AtMostOne, I::Augmentation);
    r.add(def);  // open identifier list
  }
  r.add(builtin("invariant", C::Contracts, F::Formal, kModule, G::Expression, M::Many, I::Augmentation));
  {
    auto def = builtin("modifies", C::Contracts, F::Formal, kFeature, G::KeywordToken, M::AtMostOne, I::Augmentation);
    def.vocabulary = {"QUERY"};  // QUERY or any identifier list
    r.add(def);
  }
  r.add(builtin("require", C::Contracts, F::Formal, kFeature, G::Expression, M::Many, I::Augmentation));

  // Concurrency
  {
    auto def = builtin("concurrency", C::Concurrency, F::Formal, kModuleFeature, G::KeywordToken, M::AtMostOne, I::NotInherited);
    def.vocabulary = {"CONCURRENT", "GUARDED", "SEQUENTIAL"};
    def.closed_vocabulary = true;
    r.add(def);
  }

  // Usage
  r.add(builtin("param", C::Usage, F::Formal, kFeature, G::NameThenText, M::Many, I::Replacement));
  r.add(builtin("return", C::Usage, F::Formal, kFeature, G::Freeform, M::AtMostOne, I::Replacement));
  r.add(builtin("exception", C::Usage, F::Formal, kFeature, G::NameThenText, M::Many, I::Replacement));

  // Versioning
  r.add(builtin("version", C::Versioning, F::SemiFormal, kFileModule, G::VersionString, M::AtMostOne, I::NotInherited));
  r.add(builtin("deprecated", C::Versioning, F::SemiFormal, kFileModuleFeature, G::Freeform, M::AtMostOne, I::NotInherited));
  r.add(builtin("since", C::Versioning, F::SemiFormal, kFileModuleFeature, G::VersionString, M::AtMostOne, I::NotInherited));

  // Inheritance
  r.add(builtin("hides", C::Inheritance, F::Formal, kFeatureVariable, G::Reference, M::AtMostOne, I::NotInherited));
  r.add(builtin("overrides", C::Inheritance, F::Formal, kFeatureVariable, G::Reference, M::AtMostOne, I::NotInherited));

  // Documentation
  r.add(builtin("design", C::Documentation, F::Informal, kAll, G::Freeform, M::Many, I::Replacement));
  r.add(builtin("equivalent", C::Documentation, F::Informal, kAll, G::Reference, M::Many, I::Replacement));
  r.add(builtin("example", C::Documentation, F::Informal, kAll, G::Freeform, M::Many, I::Replacement));
  r.add(builtin("see", C::Documentation, F::Informal, kAll, G::Reference, M::Many, I::Replacement));

  // Dependencies
  r.add(builtin("references", C::Dependencies, F::SemiFormal, kFileModule, G::Reference, M::Many, I::NotInherited));
  r.add(builtin("use", C::Dependencies, F::SemiFormal, kFileModule, G::Reference, M::Many, I::NotInherited));

  // Pending work
  r.add(builtin("idea", C::PendingWork, F::Informal, kAll, G::Freeform, M::Many, I::NotInherited));
  r.add(builtin("review", C::PendingWork, F::Informal, kAll, G::NameThenText, M::Many, I::NotInherited));
  r.add(builtin("todo", C::PendingWork, F::Informal, kAll, G::Freeform, M::Many, I::NotInherited));

  // Miscellaneous
  r.add(builtin("guard", C::Miscellaneous, F::Formal, kVariable, G::Expression, M::AtMostOne, I::NotInherited));
  r.add(builtin("values", C::Miscellaneous, F::Formal, kVariable, G::KeywordToken, M::AtMostOne, I::NotInherited));
  r.add(builtin("time-complexity", C::Miscellaneous, F::SemiFormal, kFeature, G::Freeform, M::AtMostOne, I::NotInherited));
  r.add(builtin("space-complexity", C::Miscellaneous, F::SemiFormal, kFeature, G::Freeform, M::AtMostOne, I::NotInherited));

  r.add_alias("modify", "modifies");
  return r;
}

// ---------------------------------------------------------------------------
// Override file parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Enum spellings ignore case and hyphens: "semi-formal" == "SemiFormal".
std::string fold(const std::string& s) {
  std::string out;
  for (char c : lower(s)) {
    if (c != '-' && c != '_' && c != ' ') out.push_back(c);
  }
  return out;
}

bool parse_category(const std::string& v, Category& out) {
  static const std::map<std::string, Category> table = {
      {"metainformation", Category::MetaInformation}, {"pendingwork", Category::PendingWork},
      {"contracts", Category::Contracts},             {"concurrency", Category::Concurrency},
      {"usage", Category::Usage},                     {"versioning", Category::Versioning},
      {"inheritance", Category::Inheritance},         {"documentation", Category::Documentation},
      {"dependencies", Category::Dependencies},       {"miscellaneous", Category::Miscellaneous},
  };
  auto it = table.find(fold(v));
  if (it == table.end()) return false;
  out = it->second;
  return true;
}

bool parse_formality(const std::string& v, Formality& out) {
  std::string f = fold(v);
  if (f == "informal") out = Formality::Informal;
  else if (f == "semiformal") out = Formality::SemiFormal;
  else if (f == "formal") out = Formality::Formal;
  else return false;
  return true;
}

bool parse_grammar(const std::string& v, ValueGrammar& out) {
  std::string f = fold(v);
  if (f == "freeform") out = ValueGrammar::Freeform;
  else if (f == "namethentext") out = ValueGrammar::NameThenText;
  else if (f == "expression") out = ValueGrammar::Expression;
  else if (f == "keywordtoken") out = ValueGrammar::KeywordToken;
  else if (f == "versionstring") out = ValueGrammar::VersionString;
  else if (f == "reference") out = ValueGrammar::Reference;
  else return false;
  return true;
}

bool parse_multiplicity(const std::string& v, Multiplicity& out) {
  std::string f = fold(v);
  if (f == "atmostone" || f == "one") out = Multiplicity::AtMostOne;
  else if (f == "many") out = Multiplicity::Many;
  else return false;
  return true;
}

bool parse_inherit(const std::string& v, InheritMode& out) {
  std::string f = fold(v);
  if (f == "notinherited" || f == "none") out = InheritMode::NotInherited;
  else if (f == "replacement") out = InheritMode::Replacement;
  else if (f == "augmentation") out = InheritMode::Augmentation;
  else return false;
  return true;
}

bool parse_contexts(const std::string& v, std::set<ContextKind>& out) {
  out.clear();
  std::string item;
  std::istringstream stream(v);
  std::string normalized = v;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream parts(normalized);
  while (parts >> item) {
    std::string f = fold(item);
    if (f == "file") out.insert(ContextKind::File);
    else if (f == "module") out.insert(ContextKind::Module);
    else if (f == "feature") out.insert(ContextKind::Feature);
    else if (f == "variable") out.insert(ContextKind::Variable);
    else if (f == "all") out = kAll;
    else return false;
  }
  return !out.empty();
}

struct PropertySection {
  int line = 0;
  std::optional<std::string> name;
  std::optional<Category> category;
  std::optional<Formality> formality;
  std::optional<std::set<ContextKind>> contexts;
  std::optional<ValueGrammar> grammar;
  std::optional<Multiplicity> multiplicity;
  std::optional<InheritMode> inherit;
  std::optional<std::vector<std::string>> tokens;
};

struct AliasSection {
  int line = 0;
  std::optional<std::string> from;
  std::optional<std::string> to;
};

[[noreturn]] void malformed(const std::string& path, int line, const std::string& what) {
  throw UsageError{path + ":" + std::to_string(line) + ": " + what};
}

}  // namespace

RegistryLoadResult load_registry_from_text(const std::string& text, const std::string& path) {
  RegistryLoadResult result;
  result.registry = builtin_registry();

  std::vector<PropertySection> properties;
  std::vector<AliasSection> aliases;
  enum class Section { None, Property, Alias } section = Section::None;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') malformed(path, line_no, "unterminated section header");
      std::string name = fold(line.substr(1, line.size() - 2));
      if (name == "property") {
        section = Section::Property;
        properties.push_back({});
        properties.back().line = line_no;
      } else if (name == "alias") {
        section = Section::Alias;
        aliases.push_back({});
        aliases.back().line = line_no;
      } else {
        malformed(path, line_no, "unknown section [" + name + "]");
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) malformed(path, line_no, "expected key = value");
    std::string key = lower(trim(line.substr(0, eq)));
    std::string value = trim(line.substr(eq + 1));
    if (section == Section::None) malformed(path, line_no, "key outside a section");

    if (section == Section::Alias) {
      AliasSection& a = aliases.back();
      if (key == "from") a.from = value;
      else if (key == "to") a.to = value;
      else {
        result.diagnostics.push_back({Severity::Warning, "SP094",
                                      {path, line_no, 1},
                                      "unknown key '" + key + "' ignored",
                                      "",
                                      ""});
      }
      continue;
    }

    PropertySection& p = properties.back();
    if (key == "name") {
      p.name = lower(value);
    } else if (key == "category") {
      Category c;
      if (!parse_category(value, c)) malformed(path, line_no, "unknown category '" + value + "'");
      p.category = c;
    } else if (key == "formality") {
      Formality f;
      if (!parse_formality(value, f)) malformed(path, line_no, "unknown formality '" + value + "'");
      p.formality = f;
    } else if (key == "contexts") {
      std::set<ContextKind> ctx;
      if (!parse_contexts(value, ctx)) malformed(path, line_no, "bad contexts '" + value + "'");
      p.contexts = ctx;
    } else if (key == "value") {
      ValueGrammar g;
      if (!parse_grammar(value, g)) malformed(path, line_no, "unknown value grammar '" + value + "'");
      p.grammar = g;
    } else if (key == "multiplicity") {
      Multiplicity m;
      if (!parse_multiplicity(value, m)) malformed(path, line_no, "bad multiplicity '" + value + "'");
      p.multiplicity = m;
    } else if (key == "inherit") {
      InheritMode m;
      if (!parse_inherit(value, m)) malformed(path, line_no, "bad inherit mode '" + value + "'");
      p.inherit = m;
    } else if (key == "tokens") {
      std::vector<std::string> toks;
      std::istringstream ts(value);
      std::string tok;
      while (ts >> tok) toks.push_back(tok);
      p.tokens = toks;
    } else {
      result.diagnostics.push_back({Severity::Warning, "SP094",
                                    {path, line_no, 1},
                                    "unknown key '" + key + "' ignored",
                                    "",
                                    ""});
    }
  }

  for (const auto& p : properties) {
    if (!p.name || p.name->empty()) malformed(path, p.line, "[property] section missing name");
    PropertyDefinition* existing = nullptr;
    for (auto& def : result.registry.definitions()) {
      if (def.name == *p.name) {
        existing = result.registry.find_mutable(*p.name);
        break;
      }
    }
    if (existing && existing->builtin) {
      if (p.category && *p.category != existing->category) {
        result.diagnostics.push_back({Severity::Error, "SP093",
                                      {path, p.line, 1},
                                      "built-in property '" + *p.name +
                                          "' may not be recategorized",
                                      "",
                                      *p.name});
      }
      if (p.contexts) existing->contexts = *p.contexts;
      if (p.formality) existing->formality = *p.formality;
      if (p.grammar) existing->value_grammar = *p.grammar;
      if (p.multiplicity) existing->multiplicity = *p.multiplicity;
      if (p.inherit) existing->inheritance_mode = *p.inherit;
      if (p.tokens) {
        existing->vocabulary = *p.tokens;
        existing->closed_vocabulary = true;
      }
      continue;
    }
    if (existing) {
      // Later [property] sections for the same user property win wholesale.
      result.diagnostics.push_back({Severity::Warning, "SP094",
                                    {path, p.line, 1},
                                    "property '" + *p.name + "' redefined",
                                    "",
                                    *p.name});
    }
    PropertyDefinition def;
    def.name = *p.name;
    def.category = p.category.value_or(Category::Miscellaneous);
    def.formality = p.formality.value_or(Formality::Informal);
    def.contexts = p.contexts.value_or(kAll);
    def.value_grammar = p.grammar.value_or(ValueGrammar::Freeform);
    def.multiplicity = p.multiplicity.value_or(Multiplicity::Many);
    def.inheritance_mode = p.inherit.value_or(InheritMode::NotInherited);
    if (p.tokens) {
      def.vocabulary = *p.tokens;
      def.closed_vocabulary = true;
    }
    if (existing) {
      *existing = def;
    } else {
      result.registry.add(def);
    }
  }

  for (const auto& a : aliases) {
    if (!a.from || !a.to) malformed(path, a.line, "[alias] section needs from and to");
    result.registry.add_alias(lower(*a.from), lower(*a.to));
  }

  auto validation = validate_registry(result.registry);
  result.diagnostics.insert(result.diagnostics.end(), validation.begin(), validation.end());
  sort_diagnostics(result.diagnostics);
  return result;
}

RegistryLoadResult load_registry(const std::optional<std::string>& override_path) {
  if (!override_path) {
    RegistryLoadResult result;
    result.registry = builtin_registry();
    return result;
  }
  std::ifstream in(*override_path);
  if (!in) throw UsageError{"cannot read registry override file: " + *override_path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_registry_from_text(buffer.str(), *override_path);
}

std::vector<Diagnostic> validate_registry(const Registry& registry) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& def : registry.definitions()) {
    if (!seen.insert(def.name).second) {
      out.push_back({Severity::Error, "SP090", {}, "duplicate property name '" + def.name + "'",
                     "", def.name});
    }
    bool name_ok = !def.name.empty();
    for (char c : def.name) {
      if (!(std::islower(static_cast<unsigned char>(c)) ||
            std::isdigit(static_cast<unsigned char>(c)) || c == '-'))
        name_ok = false;
    }
    if (!name_ok) {
      out.push_back({Severity::Error, "SP090", {}, "invalid property name '" + def.name + "'",
                     "", def.name});
    }
    if (def.contexts.empty()) {
      out.push_back({Severity::Error, "SP091", {}, "property '" + def.name + "' has no legal contexts",
                     "", def.name});
    }
  }
  for (const auto& [alias, canonical] : registry.aliases()) {
    bool target_exists = false;
    bool shadows = false;
    for (const auto& def : registry.definitions()) {
      if (def.name == canonical) target_exists = true;
      if (def.name == alias) shadows = true;
    }
    if (!target_exists) {
      out.push_back({Severity::Error, "SP092", {}, "alias '" + alias + "' targets unknown property '" + canonical + "'",
                     "", alias});
    }
    if (shadows) {
      out.push_back({Severity::Error, "SP092", {}, "alias '" + alias + "' shadows a property name",
                     "", alias});
    }
  }
  // Built-in parity, checked only for registries that carry built-ins:
  // every Table-1 property must be present with its original category.
  bool claims_builtins = std::any_of(registry.definitions().begin(), registry.definitions().end(),
                                     [](const PropertyDefinition& d) { return d.builtin; });
  if (claims_builtins) {
    Registry builtins = builtin_registry();
    for (const auto& expected : builtins.definitions()) {
      const PropertyDefinition* actual = nullptr;
      for (const auto& def : registry.definitions()) {
        if (def.name == expected.name) {
          actual = &def;
          break;
        }
      }
      if (!actual) {
        out.push_back({Severity::Error, "SP093", {}, "built-in property '" + expected.name + "' missing",
                       "", expected.name});
      } else if (actual->category != expected.category) {
        out.push_back({Severity::Error, "SP093", {},
                       "built-in property '" + expected.name + "' recategorized", "", expected.name});
      }
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace semprop
