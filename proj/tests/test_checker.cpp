#include "doctest.h"

#include <algorithm>

#include "semprop/checker.hpp"
#include "semprop/frontends.hpp"
#include "semprop/resolver.hpp"
#include "test_support.hpp"

using namespace semprop;

namespace {

SourceModel java_model(const std::string& text, const std::string& path = "t.java") {
  Registry registry = builtin_registry();
  return link_model({parse_java_source(text, path, registry)});
}

int count_code(const std::vector<Diagnostic>& diagnostics, const std::string& code) {
  return static_cast<int>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                        [&](const Diagnostic& d) { return d.code == code; }));
}

}  // namespace

TEST_CASE("context checks on the isOff fixture are clean") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(testsupport::read_file(testsupport::fixture_path("isoff.java")),
                                 testsupport::fixture_path("isoff.java"));
  auto diagnostics = check_contexts(model, registry);
  CHECK(count_code(diagnostics, "SP020") == 0);
  CHECK(count_code(diagnostics, "SP021") == 0);
  CHECK(count_code(diagnostics, "SP022") == 0);
  CHECK(count_code(diagnostics, "SP001") == 0);
}

TEST_CASE("invariant on a feature violates its module-only context") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "class T {\n"
      "  /** Does. \n"
      "   * @invariant (x > 0) misplaced\n"
      "   */\n"
      "  void f() { }\n"
      "}\n");
  auto diagnostics = check_contexts(model, registry);
  REQUIRE(count_code(diagnostics, "SP020") == 1);
  for (const auto& d : diagnostics) {
    if (d.code == "SP020") {
      CHECK(d.severity == Severity::Error);
      CHECK(d.property == "invariant");
      CHECK(d.location.line == 3);
    }
  }
}

TEST_CASE("two version instances on one file trip multiplicity") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "/**\n"
      " * File things.\n"
      " * @version 1.0\n"
      " * @version 1.1\n"
      " */\n"
      "package p;\n");
  auto diagnostics = check_contexts(model, registry);
  CHECK(count_code(diagnostics, "SP021") == 1);
}

TEST_CASE("unknown properties warn SP001") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "class T {\n"
      "  /** Doc. \n"
      "   * @frobnicate fully\n"
      "   */\n"
      "  void f() { }\n"
      "}\n");
  auto diagnostics = check_contexts(model, registry);
  REQUIRE(count_code(diagnostics, "SP001") == 1);
  for (const auto& d : diagnostics) {
    if (d.code == "SP001") CHECK(d.severity == Severity::Warning);
  }
}

TEST_CASE("keyword vocabulary violations are grammar mismatches") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "class T {\n"
      "  /** Doc. \n"
      "   * @concurrency LOCKFREE\n"
      "   */\n"
      "  void f() { }\n"
      "}\n");
  auto diagnostics = check_contexts(model, registry);
  CHECK(count_code(diagnostics, "SP022") == 1);
}

TEST_CASE("grammar fallback from SP010 does not double-report SP022") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "class T {\n"
      "  /** Doc. \n"
      "   * @require (x > 0 unded\n"
      "   */\n"
      "  void f() { }\n"
      "}\n");
  CHECK(count_code(model.parse_diagnostics, "SP010") == 1);
  auto diagnostics = check_contexts(model, registry);
  CHECK(count_code(diagnostics, "SP022") == 0);
}

TEST_CASE("coverage arithmetic over public features") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "/** The file. */\n"
      "/** Documented module. */\n"
      "class T {\n"
      "  /** Documented. */\n"
      "  public void a() { }\n"
      "  /** Also documented. */\n"
      "  public void b() { }\n"
      "  public void c() { }\n"
      "  public void d() { }\n"
      "}\n");
  CoverageResult result = check_coverage(model, registry);
  const CoverageBucket& features = result.report.per_kind.at(ContextKind::Feature);
  CHECK(features.total == 4);
  CHECK(features.documented == 2);
  CHECK(features.coverage_percent == doctest::Approx(50.0));
}

TEST_CASE("coverage of an empty model is all zeros with no diagnostics") {
  Registry registry = builtin_registry();
  SourceModel model;
  CoverageResult result = check_coverage(model, registry);
  for (const auto& [kind, bucket] : result.report.per_kind) {
    CHECK(bucket.total == 0);
    CHECK(bucket.coverage_percent == doctest::Approx(0.0));
  }
  CHECK(result.diagnostics.empty());
}

TEST_CASE("file without a description warns SP030") {
  Registry registry = builtin_registry();
  SourceModel model = java_model("package p;\n");
  CoverageResult result = check_coverage(model, registry);
  REQUIRE(count_code(result.diagnostics, "SP030") == 1);
  CHECK(result.diagnostics[0].property == "description");
  CHECK(result.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("value-returning public feature requires a return tag") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "/** f. */\n"
      "/** Mod. */\n"
      "class T {\n"
      "  /** No return doc. */\n"
      "  public int calc() { return 1; }\n"
      "  /** Void is waived. */\n"
      "  public void go() { }\n"
      "}\n");
  CoverageResult result = check_coverage(model, registry);
  REQUIRE(result.report.missing_required.size() == 1);
  CHECK(result.report.missing_required[0].second == "return");
}

TEST_CASE("private constructs are outside the default coverage floor") {
  Registry registry = builtin_registry();
  SourceModel model = java_model(
      "/** f. */\n"
      "/** Mod. */\n"
      "class T {\n"
      "  private int hidden() { return 1; }\n"
      "}\n");
  CoverageResult result = check_coverage(model, registry);
  CHECK(result.report.per_kind.at(ContextKind::Feature).total == 0);
  CHECK(result.diagnostics.empty());
}

// --- refinement -----------------------------------------------------------

namespace {

struct RefinementSetup {
  Registry registry;
  SourceModel model;
  ResolvedModel resolved;
  std::vector<Diagnostic> diagnostics;
};

RefinementSetup run_refinement(const std::string& java_text, const std::string& override_text) {
  RefinementSetup setup;
  if (override_text.empty()) {
    setup.registry = builtin_registry();
  } else {
    setup.registry = load_registry_from_text(override_text, "over.cfg").registry;
  }
  setup.model = link_model({parse_java_source(java_text, "r.java", setup.registry)});
  setup.resolved = resolve_inherited(setup.model, setup.registry);
  setup.diagnostics = check_refinement(setup.model, setup.registry, setup.resolved);
  return setup;
}

const std::string kReplacementOverride =
    "[property]\nname = require\ninherit = replacement\n"
    "[property]\nname = ensure\ninherit = replacement\n";

}  // namespace

TEST_CASE("replacement precondition strengthening is SP040 with a witness") {
  std::string text = testsupport::read_file(testsupport::fixture_path("refine.java"));
  RefinementSetup setup = run_refinement(text, kReplacementOverride);
  REQUIRE(count_code(setup.diagnostics, "SP040") == 1);
  for (const auto& d : setup.diagnostics) {
    if (d.code == "SP040") {
      CHECK(d.severity == Severity::Error);
      CHECK(d.message.find("witness x=1") != std::string::npos);
    }
  }
}

TEST_CASE("replacement postcondition strengthening by conjunction is sound") {
  std::string text =
      "class P {\n"
      "  /** d.\n   * @ensure (r >= 0) nonneg */\n"
      "  int f() { return 0; }\n"
      "}\n"
      "class C extends P {\n"
      "  /** d.\n   * @ensure (r >= 0 && r <= 10) bounded */\n"
      "  int f() { return 0; }\n"
      "}\n";
  RefinementSetup setup = run_refinement(text, kReplacementOverride);
  CHECK(count_code(setup.diagnostics, "SP041") == 0);
}

TEST_CASE("replacement postcondition weakening is SP041") {
  std::string text =
      "class P {\n"
      "  /** d.\n   * @ensure (r > 0) strict */\n"
      "  int f() { return 1; }\n"
      "}\n"
      "class C extends P {\n"
      "  /** d.\n   * @ensure (r >= 0) loose */\n"
      "  int f() { return 1; }\n"
      "}\n";
  RefinementSetup setup = run_refinement(text, kReplacementOverride);
  CHECK(count_code(setup.diagnostics, "SP041") == 1);
}

TEST_CASE("augmentation reports composed contracts as SP042") {
  std::string text =
      "class P {\n"
      "  /** d.\n   * @require (x > 0) pos */\n"
      "  void f(int x) { }\n"
      "}\n"
      "class C extends P {\n"
      "  /** d.\n   * @require (x > -1) nearly */\n"
      "  void f(int x) { }\n"
      "}\n";
  RefinementSetup setup = run_refinement(text, "");
  REQUIRE(count_code(setup.diagnostics, "SP042") == 1);
  for (const auto& d : setup.diagnostics) {
    if (d.code == "SP042") {
      CHECK(d.severity == Severity::Notice);
      CHECK(d.message.find("((x > 0) || (x > -1))") != std::string::npos);
    }
  }
}

TEST_CASE("unverifiable replacement refinement is SP043") {
  std::string text =
      "class P {\n"
      "  /** d.\n   * @require (v1 > 0 && v2 > 0 && v3 > 0 && v4 > 0 && v5 > 0 && v6 > 0 && v7 > 0) w */\n"
      "  void f() { }\n"
      "}\n"
      "class C extends P {\n"
      "  /** d.\n   * @require (v1 > 0) n */\n"
      "  void f() { }\n"
      "}\n";
  RefinementSetup setup = run_refinement(text, kReplacementOverride);
  CHECK(count_code(setup.diagnostics, "SP043") == 1);
}

// --- conformance ------------------------------------------------------------

TEST_CASE("identical contracts conform silently") {
  SpecModel spec = parse_ebon_spec("class STACK feature push -> VOID require (n >= 0) end");
  SourceModel model = java_model(
      "/** f. */\n"
      "/** Stack. */\n"
      "class STACK {\n"
      "  /** d.\n   * @require (n >= 0) n */\n"
      "  public void push(int n) { }\n"
      "}\n");
  auto diagnostics = check_conformance(spec, model);
  CHECK(diagnostics.empty());
}

TEST_CASE("missing spec feature is SP051") {
  SpecModel spec = parse_ebon_spec("class STACK feature push feature pop end");
  SourceModel model = java_model("class STACK { public void push(int n) { } }");
  auto diagnostics = check_conformance(spec, model);
  CHECK(count_code(diagnostics, "SP051") == 1);
}

TEST_CASE("missing spec class is SP050 and extra source class is SP054") {
  SpecModel spec = parse_ebon_spec("class QUEUE feature put end");
  SourceModel model = java_model("class STACK { }");
  auto diagnostics = check_conformance(spec, model);
  CHECK(count_code(diagnostics, "SP050") == 1);
  CHECK(count_code(diagnostics, "SP054") == 1);
}

TEST_CASE("non-equivalent contracts are SP053 with the witness") {
  SpecModel spec = parse_ebon_spec("class S feature f -> INT require (x > 0) end");
  SourceModel model = java_model(
      "class S {\n"
      "  /** d.\n   * @require (x >= 0) loose */\n"
      "  public int f(int x) { return x; }\n"
      "}\n");
  auto diagnostics = check_conformance(spec, model);
  REQUIRE(count_code(diagnostics, "SP053") == 1);
  for (const auto& d : diagnostics) {
    if (d.code == "SP053") CHECK(d.message.find("witness x=0") != std::string::npos);
  }
}

TEST_CASE("spec contract without a source contract is SP052") {
  SpecModel spec = parse_ebon_spec("class S feature f require (x > 0) end");
  SourceModel model = java_model("class S { public void f(int x) { } }");
  auto diagnostics = check_conformance(spec, model);
  CHECK(count_code(diagnostics, "SP052") == 1);
}

TEST_CASE("no SP020 on instances generated from the registry's own context table") {
  Registry registry = builtin_registry();
  SourceModel model;

  Construct file;
  file.id = "file:gen.java";
  file.context_kind = ContextKind::File;
  file.name = "gen.java";
  file.location = {"gen.java", 1, 1};

  Construct module;
  module.id = "module:gen.java#Gen";
  module.context_kind = ContextKind::Module;
  module.name = "Gen";
  module.parent = file.id;
  module.location = {"gen.java", 2, 1};
  file.children.push_back(module.id);

  Construct feature;
  feature.id = "feature:gen.java#Gen.f";
  feature.context_kind = ContextKind::Feature;
  feature.name = "f";
  feature.parent = module.id;
  feature.location = {"gen.java", 3, 1};
  module.children.push_back(feature.id);

  Construct variable;
  variable.id = "variable:gen.java#Gen.v";
  variable.context_kind = ContextKind::Variable;
  variable.name = "v";
  variable.parent = module.id;
  variable.location = {"gen.java", 4, 1};
  module.children.push_back(variable.id);

  model.constructs[file.id] = file;
  model.constructs[module.id] = module;
  model.constructs[feature.id] = feature;
  model.constructs[variable.id] = variable;

  auto target_for = [&](ContextKind kind) -> Construct& {
    switch (kind) {
      case ContextKind::File: return model.constructs.at("file:gen.java");
      case ContextKind::Module: return model.constructs.at("module:gen.java#Gen");
      case ContextKind::Feature: return model.constructs.at("feature:gen.java#Gen.f");
      case ContextKind::Variable: return model.constructs.at("variable:gen.java#Gen.v");
    }
    return model.constructs.at("file:gen.java");
  };
  auto sample_value = [](const PropertyDefinition& def) -> std::string {
    switch (def.value_grammar) {
      case ValueGrammar::Freeform: return "sample text";
      case ValueGrammar::NameThenText: return "name trailing text";
      case ValueGrammar::Expression: return "(x > 0) trailing";
      case ValueGrammar::KeywordToken:
        return def.vocabulary.empty() ? "TOKEN" : def.vocabulary.front();
      case ValueGrammar::VersionString: return "1.0";
      case ValueGrammar::Reference: return "Target trailing";
    }
    return "sample";
  };

  int line = 10;
  for (const auto& def : registry.definitions()) {
    for (ContextKind kind : def.contexts) {
      Construct& target = target_for(kind);
      PropertyInstance inst;
      inst.name = def.name;
      inst.raw_value = sample_value(def);
      inst.location = {"gen.java", line++, 1};
      std::vector<Diagnostic> sink;
      inst.payload = derive_payload(def.name, inst.raw_value, registry, inst.location, sink,
                                    inst.grammar_fallback);
      REQUIRE(sink.empty());
      target.properties.push_back(inst);
    }
  }

  auto diagnostics = check_contexts(model, registry);
  CHECK(count_code(diagnostics, "SP020") == 0);
  CHECK(count_code(diagnostics, "SP022") == 0);
  CHECK(count_code(diagnostics, "SP001") == 0);
}

TEST_CASE("diagnostics are deterministic across runs") {
  Registry registry = builtin_registry();
  std::string text = testsupport::read_file(testsupport::fixture_path("isoff.java"));
  SourceModel model = java_model(text, "isoff.java");
  auto first = check_contexts(model, registry);
  auto second = check_contexts(model, registry);
  CHECK(first == second);
}
