#include "doctest.h"

#include "semprop/kindgraph.hpp"
#include "test_support.hpp"

using namespace semprop;

namespace {

KindGraph loop_fixture() {
  return load_kind_graph(testsupport::fixture_path("loop.kind"));
}

}  // namespace

TEST_CASE("loop fixture builds six nodes and five edges") {
  KindGraph graph = loop_fixture();
  CHECK(graph.nodes.size() == 6);
  CHECK(graph.edges.size() == 5);
}

TEST_CASE("ancestors over the loop fixture") {
  KindGraph graph = loop_fixture();
  CHECK(ancestors(graph, "Loop") == std::set<std::string>{"ComputationalStructure"});
  CHECK(ancestors(graph, "ComputationalStructure").empty());
  CHECK_THROWS_AS(ancestors(graph, "NoSuchKind"), UsageError);
}

TEST_CASE("ancestors is transitive over a chain") {
  KindGraph graph = build_graph({
      {"A", KindRelation::Inherits, "B"},
      {"B", KindRelation::Inherits, "C"},
  });
  CHECK(ancestors(graph, "A") == std::set<std::string>{"B", "C"});
  CHECK(ancestors(graph, "B") == std::set<std::string>{"C"});
  // irreflexive
  CHECK(ancestors(graph, "A").count("A") == 0);
}

TEST_CASE("parts are direct only") {
  KindGraph graph = loop_fixture();
  std::set<std::string> expected = {"InitialState", "IncrementFunction", "GuardPredicate",
                                    "LoopBody"};
  CHECK(parts(graph, "Loop") == expected);
  CHECK(parts(graph, "LoopBody").empty());

  KindGraph extended = graph;
  extended.nodes.insert("ExitCondition");
  extended.edges.insert({"ExitCondition", "Loop", KindRelation::PartOf});
  CHECK(parts(extended, "Loop").count("ExitCondition") == 1);
}

TEST_CASE("duplicate declarations are stored once") {
  KindGraph graph = build_graph({
      {"Loop", KindRelation::Inherits, "ComputationalStructure"},
      {"Loop", KindRelation::Inherits, "ComputationalStructure"},
  });
  CHECK(graph.edges.size() == 1);
}

TEST_CASE("equivalent edges close under symmetry") {
  KindGraph graph = build_graph({{"WhileLoop", KindRelation::Equivalent, "DoLoop"}});
  CHECK(graph.has_edge("WhileLoop", "DoLoop", KindRelation::Equivalent));
  CHECK(graph.has_edge("DoLoop", "WhileLoop", KindRelation::Equivalent));
}

TEST_CASE("check_graph accepts the fixture and flags self-inheritance") {
  KindGraph graph = loop_fixture();
  CHECK(check_graph(graph).empty());

  graph.edges.insert({"Loop", "Loop", KindRelation::Inherits});
  auto diagnostics = check_graph(graph);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].code == "SP070");
  CHECK(diagnostics[0].severity == Severity::Error);
}

TEST_CASE("check_graph flags longer inheritance cycles") {
  KindGraph graph = build_graph({
      {"A", KindRelation::Inherits, "B"},
      {"B", KindRelation::Inherits, "A"},
  });
  auto diagnostics = check_graph(graph);
  REQUIRE(diagnostics.size() >= 1);
  CHECK(diagnostics[0].code == "SP070");
}

TEST_CASE("dangling interprets target is SP071") {
  KindGraph graph = loop_fixture();
  graph.edges.insert({"Loop", "Undeclared", KindRelation::Interprets});
  auto diagnostics = check_graph(graph);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].code == "SP071");
}

TEST_CASE("taxonomy generated from the registry is consistent") {
  Registry registry = builtin_registry();
  KindGraph taxonomy = taxonomy_graph(registry);
  CHECK(registry_consistency(taxonomy, registry).empty());
  // 35 properties + 10 categories
  CHECK(taxonomy.nodes.size() == 45);
  CHECK(taxonomy.edges.size() == 35);
}

TEST_CASE("misclassified or missing property nodes are SP072") {
  Registry registry = builtin_registry();
  KindGraph taxonomy = taxonomy_graph(registry);
  taxonomy.edges.erase({"require", "Contracts", KindRelation::Inherits});
  taxonomy.edges.insert({"require", "Documentation", KindRelation::Inherits});
  auto diagnostics = registry_consistency(taxonomy, registry);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].code == "SP072");
  CHECK(diagnostics[0].property == "require");

  KindGraph missing = taxonomy_graph(registry);
  missing.nodes.erase("guard");
  missing.edges.erase({"guard", "Miscellaneous", KindRelation::Inherits});
  diagnostics = registry_consistency(missing, registry);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].property == "guard");
}

TEST_CASE("built-in taxonomy keeps parts and ancestors disjoint") {
  Registry registry = builtin_registry();
  KindGraph taxonomy = taxonomy_graph(registry);
  for (const auto& node : taxonomy.nodes) {
    std::set<std::string> up = ancestors(taxonomy, node);
    std::set<std::string> down = parts(taxonomy, node);
    for (const auto& p : down) CHECK(up.count(p) == 0);
  }
}

TEST_CASE("serialize then rebuild is the identity") {
  KindGraph graph = loop_fixture();
  graph.edges.insert({"WhileLoop", "DoLoop", KindRelation::Equivalent});
  graph.edges.insert({"DoLoop", "WhileLoop", KindRelation::Equivalent});
  graph.nodes.insert("WhileLoop");
  graph.nodes.insert("DoLoop");
  std::string text = serialize_kind_graph(graph);
  KindGraph rebuilt = build_graph(parse_kind_declarations(text, "round.kind"));
  CHECK(rebuilt.nodes == graph.nodes);
  CHECK(rebuilt.edges == graph.edges);
}

TEST_CASE("declaration parsing rejects malformed lines") {
  CHECK_THROWS_AS(parse_kind_declarations("Loop inherits", "k"), UsageError);
  CHECK_THROWS_AS(parse_kind_declarations("A strangely B", "k"), UsageError);
  CHECK_THROWS_AS(parse_kind_declarations("A inherits B C", "k"), UsageError);
  CHECK(parse_kind_declarations("# comment only\n\n", "k").empty());
}

TEST_CASE("dialect graph covers every translate pair both ways") {
  KindGraph dialects = builtin_dialect_graph();
  const char* names[] = {"java-doc-comment", "eiffel-indexing", "ebon-indexing"};
  for (const char* a : names) {
    for (const char* b : names) {
      if (a == b) continue;
      CHECK(dialects.has_edge(a, b, KindRelation::Interprets));
    }
  }
  CHECK(check_graph(dialects).empty());
}
