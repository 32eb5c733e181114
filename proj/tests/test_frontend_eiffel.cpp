#include "doctest.h"

#include "semprop/frontends.hpp"
#include "test_support.hpp"

using namespace semprop;

namespace {

SourceModel parse_text(const std::string& text, const std::string& path = "t.e") {
  Registry registry = builtin_registry();
  return parse_eiffel_source(text, path, registry);
}

}  // namespace

TEST_CASE("scanner fixture: indexing block becomes six file instances") {
  SourceModel model = parse_text(testsupport::read_file(testsupport::fixture_path("scanner.e")),
                                 "scanner.e");
  const Construct* file = model.find("file:scanner.e");
  REQUIRE(file);
  REQUIRE(file->properties.size() == 6);

  const std::pair<const char*, const char*> expected[] = {
      {"description", "The Extended BON scanner."},
      {"project", "The Extended BON Tool Suite"},
      {"author", "Joseph R. Kiniry <kiniry@acm.org>"},
      {"copyright", "Copyright (C) 2001 Joseph R. Kiniry"},
      {"version", "$Revision: 1.10 $"},
      {"license", "Eiffel Forum Freeware License v1"},
  };
  for (size_t i = 0; i < 6; ++i) {
    CHECK(file->properties[i].name == expected[i].first);
    CHECK(file->properties[i].raw_value == expected[i].second);
  }

  const Construct* module = model.find_module("EBON_SCANNER");
  REQUIRE(module);
  const Construct* feature = nullptr;
  for (const auto& child : module->children) {
    const Construct* c = model.find(child);
    if (c && c->name == "scan_tokens") feature = c;
  }
  REQUIRE(feature);
  CHECK(feature->context_kind == ContextKind::Feature);
  CHECK(feature->returns_value);
  CHECK(feature->description == "Scans the next token batch.");

  // `-- review: check bounds` attaches to the following feature
  REQUIRE(feature->properties.size() == 1);
  CHECK(feature->properties[0].name == "review");
  CHECK(feature->properties[0].raw_value == "check bounds");
}

TEST_CASE("file with no indexing block has zero file properties") {
  SourceModel model = parse_text("class EMPTY\nend\n");
  const Construct* file = model.find("file:t.e");
  REQUIRE(file);
  CHECK(file->properties.empty());
  CHECK(model.find_module("EMPTY") != nullptr);
}

TEST_CASE("indexing below the first class is SP011") {
  SourceModel model = parse_text(
      "class LATE\n"
      "end\n"
      "indexing\n"
      "   description: \"too late\"\n");
  bool saw = false;
  for (const auto& d : model.parse_diagnostics) {
    if (d.code == "SP011" && d.severity == Severity::Error) saw = true;
  }
  CHECK(saw);
  const Construct* file = model.find("file:t.e");
  REQUIRE(file);
  CHECK(file->properties.empty());
}

TEST_CASE("export lists map to visibility") {
  SourceModel model = parse_text(
      "class EXPORTS\n"
      "feature\n"
      "   open: INTEGER\n"
      "feature {NONE}\n"
      "   hidden: INTEGER\n"
      "feature {ANY}\n"
      "   shared: INTEGER\n"
      "feature {HEIR, OTHER}\n"
      "   family: INTEGER\n"
      "end\n");
  auto vis = [&](const std::string& name) {
    const Construct* c =
        model.find(make_construct_id(ContextKind::Variable, "t.e", "EXPORTS", name));
    REQUIRE(c);
    return c->visibility;
  };
  CHECK(vis("open") == Visibility::Public);
  CHECK(vis("hidden") == Visibility::Private);
  CHECK(vis("shared") == Visibility::Public);
  CHECK(vis("family") == Visibility::Children);
}

TEST_CASE("export names are matched whole, not by substring") {
  SourceModel model = parse_text(
      "class T\n"
      "feature {NONEXISTENT}\n"
      "   nearly: INTEGER\n"
      "end\n");
  const Construct* nearly =
      model.find(make_construct_id(ContextKind::Variable, "t.e", "T", "nearly"));
  REQUIRE(nearly);
  CHECK(nearly->visibility == Visibility::Children);
}

TEST_CASE("inherit section populates supers") {
  SourceModel model = parse_text(
      "class CHILD\n"
      "inherit\n"
      "   PARENT\n"
      "   MIXIN\n"
      "feature\n"
      "   go is\n"
      "      do\n"
      "      end\n"
      "end\n");
  const Construct* module = model.find_module("CHILD");
  REQUIRE(module);
  REQUIRE(module->supers.size() == 2);
  CHECK(module->supers[0] == "PARENT");
  CHECK(module->supers[1] == "MIXIN");
}

TEST_CASE("trailing structured comment attaches to the enclosing feature") {
  SourceModel model = parse_text(
      "class T\n"
      "feature\n"
      "   run is\n"
      "      do\n"
      "         -- todo: handle the empty case\n"
      "      end\n"
      "end\n");
  const Construct* run = model.find(make_construct_id(ContextKind::Feature, "t.e", "T", "run"));
  REQUIRE(run);
  REQUIRE(run->properties.size() == 1);
  CHECK(run->properties[0].name == "todo");
  CHECK(run->properties[0].raw_value == "handle the empty case");
}

TEST_CASE("structured comments may carry contract expressions") {
  SourceModel model = parse_text(
      "class T\n"
      "feature\n"
      "   -- require: (x > 0) positive input\n"
      "   eat (x: INTEGER) is\n"
      "      do\n"
      "      end\n"
      "end\n");
  const Construct* eat = model.find(make_construct_id(ContextKind::Feature, "t.e", "T", "eat"));
  REQUIRE(eat);
  REQUIRE(eat->properties.size() == 1);
  const auto* payload = std::get_if<ExpressionPayload>(&eat->properties[0].payload);
  REQUIRE(payload);
  CHECK(payload->expr.canonical() == "(x > 0)");
}
