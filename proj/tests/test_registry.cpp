#include "doctest.h"

#include <map>

#include "semprop/registry.hpp"
#include "test_support.hpp"

using namespace semprop;

TEST_CASE("built-in registry matches the published vocabulary") {
  Registry registry = builtin_registry();
  CHECK(registry.definitions().size() == 35);

  std::map<Category, int> histogram;
  for (const auto& def : registry.definitions()) histogram[def.category]++;
  CHECK(histogram[Category::MetaInformation] == 8);
  CHECK(histogram[Category::Contracts] == 5);
  CHECK(histogram[Category::Versioning] == 3);
  CHECK(histogram[Category::Documentation] == 4);
  CHECK(histogram[Category::Concurrency] == 1);
  CHECK(histogram[Category::Usage] == 3);
  CHECK(histogram[Category::Dependencies] == 2);
  CHECK(histogram[Category::Inheritance] == 2);
  CHECK(histogram[Category::PendingWork] == 3);
  CHECK(histogram[Category::Miscellaneous] == 4);

  const char* names[] = {
      "author", "bon", "bug", "copyright", "description", "history", "license", "title",
      "ensure", "generate", "invariant", "modifies", "require",
      "concurrency",
      "param", "return", "exception",
      "version", "deprecated", "since",
      "hides", "overrides",
      "design", "equivalent", "example", "see",
      "references", "use",
      "idea", "review", "todo",
      "guard", "values", "time-complexity", "space-complexity",
  };
  for (const char* name : names) {
    CAPTURE(name);
    CHECK(registry.find(name) != nullptr);
  }
}

TEST_CASE("lookup resolves names, aliases, and misses") {
  Registry registry = builtin_registry();

  const PropertyDefinition* title = registry.find("title");
  REQUIRE(title);
  CHECK(title->category == Category::MetaInformation);
  CHECK(title->formality == Formality::Informal);

  const PropertyDefinition* concurrency = registry.find("concurrency");
  REQUIRE(concurrency);
  CHECK(concurrency->category == Category::Concurrency);
  CHECK(concurrency->formality == Formality::Formal);

  const PropertyDefinition* via_alias = registry.find("modify");
  const PropertyDefinition* canonical = registry.find("modifies");
  REQUIRE(via_alias);
  CHECK(via_alias == canonical);

  CHECK(registry.find("frobnicate") == nullptr);
}

TEST_CASE("generate is a Contracts property with formal tier") {
  Registry registry = builtin_registry();
  const PropertyDefinition* generate = registry.find("generate");
  REQUIRE(generate);
  CHECK(generate->category == Category::Contracts);
  CHECK(generate->formality == Formality::Formal);
}

TEST_CASE("built-in registry validates cleanly") {
  CHECK(validate_registry(builtin_registry()).empty());
}

TEST_CASE("validate flags duplicates and empty contexts") {
  Registry registry;
  PropertyDefinition def;
  def.name = "speed";
  def.contexts = {ContextKind::Feature};
  registry.add(def);
  registry.add(def);  // duplicate
  auto diagnostics = validate_registry(registry);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].code == "SP090");
  CHECK(diagnostics[0].severity == Severity::Error);

  Registry empty_ctx;
  PropertyDefinition bad;
  bad.name = "hollow";
  empty_ctx.add(bad);
  diagnostics = validate_registry(empty_ctx);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].code == "SP091");
}

TEST_CASE("validate flags alias problems") {
  Registry registry;
  PropertyDefinition def;
  def.name = "speed";
  def.contexts = {ContextKind::Feature};
  registry.add(def);
  registry.add_alias("velocity", "speeed");  // dangling target
  registry.add_alias("speed", "speed");      // shadows a canonical name
  auto diagnostics = validate_registry(registry);
  CHECK(diagnostics.size() == 2);
  for (const auto& d : diagnostics) CHECK(d.code == "SP092");
}

TEST_CASE("override file adds properties and aliases") {
  std::string text =
      "[property]\n"
      "name = risk\n"
      "category = miscellaneous\n"
      "formality = semi-formal\n"
      "contexts = all\n"
      "value = freeform\n"
      "multiplicity = many\n"
      "inherit = not-inherited\n"
      "\n"
      "[alias]\n"
      "from = risks\n"
      "to = risk\n";
  RegistryLoadResult result = load_registry_from_text(text, "over.cfg");
  CHECK(result.diagnostics.empty());
  CHECK(result.registry.definitions().size() == 36);
  const PropertyDefinition* risk = result.registry.find("risks");
  REQUIRE(risk);
  CHECK(risk->name == "risk");
  CHECK(risk->category == Category::Miscellaneous);
  CHECK_FALSE(risk->builtin);
}

TEST_CASE("override may adjust built-ins but not recategorize them") {
  std::string adjust =
      "[property]\n"
      "name = time-complexity\n"
      "contexts = feature, module\n"
      "multiplicity = many\n";
  RegistryLoadResult result = load_registry_from_text(adjust, "over.cfg");
  CHECK(result.diagnostics.empty());
  const PropertyDefinition* def = result.registry.find("time-complexity");
  REQUIRE(def);
  CHECK(def->multiplicity == Multiplicity::Many);
  CHECK(def->contexts.count(ContextKind::Module) == 1);
  CHECK(def->category == Category::Miscellaneous);  // unchanged

  std::string recategorize =
      "[property]\n"
      "name = require\n"
      "category = documentation\n";
  result = load_registry_from_text(recategorize, "over.cfg");
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].code == "SP093");
  const PropertyDefinition* require_def = result.registry.find("require");
  REQUIRE(require_def);
  CHECK(require_def->category == Category::Contracts);
}

TEST_CASE("override parsing reports malformed input with line numbers") {
  CHECK_THROWS_AS(load_registry_from_text("name = x\n", "over.cfg"), UsageError);
  try {
    load_registry_from_text("[property]\nname = ok\njunk line\n", "over.cfg");
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(e.message.find("over.cfg:3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_registry_from_text("[property]\ncategory = contracts\n", "over.cfg"),
                  UsageError);
  CHECK_THROWS_AS(load_registry_from_text("[weird]\n", "over.cfg"), UsageError);
}

TEST_CASE("unknown override keys warn but do not fail") {
  std::string text =
      "[property]\n"
      "name = risk\n"
      "color = green\n";
  RegistryLoadResult result = load_registry_from_text(text, "over.cfg");
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].code == "SP094");
  CHECK(result.diagnostics[0].severity == Severity::Warning);
  CHECK(result.registry.find("risk") != nullptr);
}

TEST_CASE("load_registry is idempotent over the same override") {
  std::string text =
      "[property]\n"
      "name = risk\n"
      "category = miscellaneous\n"
      "[property]\n"
      "name = require\n"
      "inherit = replacement\n";
  RegistryLoadResult first = load_registry_from_text(text, "over.cfg");
  RegistryLoadResult second = load_registry_from_text(text, "over.cfg");
  CHECK(first.registry == second.registry);
}

TEST_CASE("load_registry without override returns the built-ins") {
  RegistryLoadResult result = load_registry(std::nullopt);
  CHECK(result.registry == builtin_registry());
  CHECK(result.diagnostics.empty());
}

TEST_CASE("load_registry on a missing file is a usage error") {
  CHECK_THROWS_AS(load_registry(std::optional<std::string>("/nonexistent/registry.cfg")),
                  UsageError);
}
