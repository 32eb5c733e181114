#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "semprop/diagnostics.hpp"

namespace semprop {

enum class Category {
  MetaInformation,
  PendingWork,
  Contracts,
  Concurrency,
  Usage,
  Versioning,
  Inheritance,
  Documentation,
  Dependencies,
  Miscellaneous,
};

enum class Formality { Informal, SemiFormal, Formal };

enum class ContextKind { File, Module, Feature, Variable };

enum class ValueGrammar { Freeform, NameThenText, Expression, KeywordToken, VersionString, Reference };

enum class Multiplicity { AtMostOne, Many };

enum class InheritMode { NotInherited, Replacement, Augmentation };

const char* category_name(Category c);
const char* formality_name(Formality f);
const char* context_kind_name(ContextKind k);
const char* value_grammar_name(ValueGrammar g);
const char* multiplicity_name(Multiplicity m);
const char* inherit_mode_name(InheritMode m);

// All ten categories in the order documentation sections are emitted.
const std::vector<Category>& all_categories();

struct PropertyDefinition {
  std::string name;  // lowercase, hyphen permitted
  Category category = Category::Miscellaneous;
  Formality formality = Formality::Informal;
  std::set<ContextKind> contexts;
  ValueGrammar value_grammar = ValueGrammar::Freeform;
  Multiplicity multiplicity = Multiplicity::Many;
  InheritMode inheritance_mode = InheritMode::NotInherited;
  // KeywordToken only: permitted tokens. Empty set means any identifier;
  // closed_vocabulary rejects tokens outside the set.
  std::vector<std::string> vocabulary;
  bool closed_vocabulary = false;
  bool builtin = false;

  bool operator==(const PropertyDefinition&) const = default;
};

class Registry {
 public:
  // Keeps definitions ordered by (category, name) for stable listings.
  void add(PropertyDefinition def);
  void add_alias(const std::string& alias, const std::string& canonical);

  const PropertyDefinition* find(const std::string& name_or_alias) const;
  // Alias-resolved canonical name; returns the input when unknown.
  std::string resolve_name(const std::string& name_or_alias) const;

  const std::vector<PropertyDefinition>& definitions() const { return definitions_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }

  PropertyDefinition* find_mutable(const std::string& name);

  bool operator==(const Registry&) const = default;

 private:
  std::vector<PropertyDefinition> definitions_;
  std::map<std::string, std::string> aliases_;
};

// The built-in vocabulary: 35 properties in 10 categories, plus the
// `modify` -> `modifies` alias.
Registry builtin_registry();

struct RegistryLoadResult {
  Registry registry;
  std::vector<Diagnostic> diagnostics;
};

// Built-ins merged with an optional override file. Overrides may add
// properties, declare aliases, and adjust built-in contexts, multiplicity,
// formality, value grammar, or inheritance mode; they may not delete a
// built-in or change its category. Malformed files raise UsageError.
RegistryLoadResult load_registry(const std::optional<std::string>& override_path);

// Parses override text directly (used by load_registry and tests).
RegistryLoadResult load_registry_from_text(const std::string& text, const std::string& path);

std::vector<Diagnostic> validate_registry(const Registry& registry);

// Thrown on unusable input: CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& message)
      : std::runtime_error(message), message(message) {}
  std::string message;
};

}  // namespace semprop
