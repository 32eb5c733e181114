#include "semprop/kindgraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace semprop {

const char* kind_relation_name(KindRelation r) {
  switch (r) {
    case KindRelation::Inherits: return "inherits";
    case KindRelation::PrivateInherits: return "private-inherits";
    case KindRelation::PartOf: return "part-of";
    case KindRelation::Realizes: return "realizes";
    case KindRelation::Equivalent: return "equivalent";
    case KindRelation::Subsumes: return "subsumes";
    case KindRelation::Interprets: return "interprets";
  }
  return "inherits";
}

bool parse_kind_relation(const std::string& text, KindRelation& out) {
  if (text == "inherits") out = KindRelation::Inherits;
  else if (text == "private-inherits") out = KindRelation::PrivateInherits;
  else if (text == "part-of") out = KindRelation::PartOf;
  else if (text == "realizes") out = KindRelation::Realizes;
  else if (text == "equivalent") out = KindRelation::Equivalent;
  else if (text == "subsumes") out = KindRelation::Subsumes;
  else if (text == "interprets") out = KindRelation::Interprets;
  else return false;
  return true;
}

bool KindGraph::has_edge(const std::string& from, const std::string& to, KindRelation r) const {
  return edges.count({from, to, r}) > 0;
}

KindGraph build_graph(const std::vector<KindDeclaration>& declarations) {
  KindGraph graph;
  for (const auto& d : declarations) {
    graph.nodes.insert(d.from);
    graph.nodes.insert(d.to);
    graph.edges.insert({d.from, d.to, d.relation});
    if (d.relation == KindRelation::Equivalent) {
      graph.edges.insert({d.to, d.from, KindRelation::Equivalent});
    }
  }
  return graph;
}

std::set<std::string> ancestors(const KindGraph& graph, const std::string& kind) {
  if (!graph.nodes.count(kind)) throw UsageError{"unknown kind: " + kind};
  std::set<std::string> out;
  std::vector<std::string> frontier = {kind};
  while (!frontier.empty()) {
    std::string current = frontier.back();
    frontier.pop_back();
    for (const auto& edge : graph.edges) {
      if (edge.from != current) continue;
      if (edge.relation != KindRelation::Inherits && edge.relation != KindRelation::PrivateInherits)
        continue;
      if (edge.to == kind || out.count(edge.to)) continue;
      out.insert(edge.to);
      frontier.push_back(edge.to);
    }
  }
  return out;
}

std::set<std::string> parts(const KindGraph& graph, const std::string& kind) {
  if (!graph.nodes.count(kind)) throw UsageError{"unknown kind: " + kind};
  std::set<std::string> out;
  for (const auto& edge : graph.edges) {
    if (edge.relation == KindRelation::PartOf && edge.to == kind) out.insert(edge.from);
  }
  return out;
}

std::vector<Diagnostic> check_graph(const KindGraph& graph) {
  std::vector<Diagnostic> out;

  // Inheritance cycles via DFS coloring.
  std::map<std::string, int> state;
  std::vector<std::string> stack;
  std::set<std::string> reported;
  auto visit = [&](auto&& self, const std::string& node) -> void {
    state[node] = 1;
    stack.push_back(node);
    for (const auto& edge : graph.edges) {
      if (edge.from != node) continue;
      if (edge.relation != KindRelation::Inherits && edge.relation != KindRelation::PrivateInherits)
        continue;
      int s = state[edge.to];
      if (s == 0) {
        self(self, edge.to);
      } else if (s == 1) {
        auto pos = std::find(stack.begin(), stack.end(), edge.to);
        std::string names;
        for (auto walk = pos; walk != stack.end(); ++walk) {
          if (!names.empty()) names += " -> ";
          names += *walk;
        }
        names += " -> " + edge.to;
        if (reported.insert(names).second) {
          out.push_back({Severity::Error, "SP070", {}, "inheritance cycle: " + names, "", ""});
        }
      }
    }
    stack.pop_back();
    state[node] = 2;
  };
  for (const auto& node : graph.nodes) {
    if (state[node] == 0) visit(visit, node);
  }

  for (const auto& edge : graph.edges) {
    if (edge.relation != KindRelation::Interprets) continue;
    if (!graph.nodes.count(edge.to)) {
      out.push_back({Severity::Error, "SP071", {},
                     "interpretation from '" + edge.from + "' targets undeclared kind '" +
                         edge.to + "'",
                     "", ""});
    }
  }
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> registry_consistency(const KindGraph& graph, const Registry& registry) {
  std::vector<Diagnostic> out;
  for (const auto& def : registry.definitions()) {
    std::string expected_category = category_name(def.category);
    if (!graph.nodes.count(def.name)) {
      out.push_back({Severity::Error, "SP072", {},
                     "no kind node for property '" + def.name + "'", "", def.name});
      continue;
    }
    bool correct = graph.has_edge(def.name, expected_category, KindRelation::Inherits);
    int inherit_edges = 0;
    std::string actual;
    for (const auto& edge : graph.edges) {
      if (edge.from == def.name && edge.relation == KindRelation::Inherits) {
        ++inherit_edges;
        actual = edge.to;
      }
    }
    if (!correct || inherit_edges != 1) {
      out.push_back({Severity::Error, "SP072", {},
                     "property '" + def.name + "' must inherit exactly its category '" +
                         expected_category + "'" +
                         (inherit_edges == 1 && !correct ? " (found '" + actual + "')" : ""),
                     "", def.name});
    }
  }
  sort_diagnostics(out);
  return out;
}

KindGraph taxonomy_graph(const Registry& registry) {
  std::vector<KindDeclaration> declarations;
  for (const auto& def : registry.definitions()) {
    declarations.push_back({def.name, KindRelation::Inherits, category_name(def.category)});
  }
  return build_graph(declarations);
}

KindGraph builtin_dialect_graph() {
  const std::string java = "java-doc-comment";
  const std::string eiffel = "eiffel-indexing";
  const std::string ebon = "ebon-indexing";
  std::vector<KindDeclaration> declarations;
  for (const auto& a : {java, eiffel, ebon}) {
    for (const auto& b : {java, eiffel, ebon}) {
      if (a != b) declarations.push_back({a, KindRelation::Interprets, b});
    }
  }
  return build_graph(declarations);
}

std::vector<KindDeclaration> parse_kind_declarations(const std::string& text,
                                                     const std::string& path) {
  std::vector<KindDeclaration> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream parts(line);
    std::string from, relation, to, extra;
    if (!(parts >> from)) continue;  // blank line
    if (!(parts >> relation >> to) || (parts >> extra)) {
      throw UsageError{path + ":" + std::to_string(line_no) +
                       ": expected 'FROM <relation> TO'"};
    }
    KindRelation rel;
    if (!parse_kind_relation(relation, rel)) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": unknown relation '" + relation +
                       "'"};
    }
    out.push_back({from, rel, to});
  }
  return out;
}

KindGraph load_kind_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read kind graph file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return build_graph(parse_kind_declarations(buffer.str(), path));
}

std::string serialize_kind_graph(const KindGraph& graph) {
  std::ostringstream out;
  std::set<std::string> isolated = graph.nodes;
  std::set<KindEdge> emitted;
  for (const auto& edge : graph.edges) {
    if (edge.relation == KindRelation::Equivalent &&
        emitted.count({edge.to, edge.from, edge.relation}) > 0) {
      continue;  // symmetric twin already written
    }
    emitted.insert(edge);
    out << edge.from << " " << kind_relation_name(edge.relation) << " " << edge.to << "\n";
    isolated.erase(edge.from);
    isolated.erase(edge.to);
  }
  for (const auto& node : isolated) {
    out << "# isolated: " << node << "\n";
  }
  return out.str();
}

}  // namespace semprop
