#include <algorithm>
#include <set>

#include "semprop/frontends.hpp"

namespace semprop {

SourceModel link_model(std::vector<SourceModel> fragments) {
  SourceModel merged;
  for (auto& fragment : fragments) {
    for (auto& [id, c] : fragment.constructs) merged.constructs[id] = std::move(c);
    for (auto& [id, links] : fragment.module_graph) merged.module_graph[id] = std::move(links);
    for (auto& d : fragment.parse_diagnostics) merged.parse_diagnostics.push_back(std::move(d));
  }

  // Module names must be globally unique; later declarations lose.
  std::map<std::string, std::string> modules_by_name;
  {
    std::vector<const Construct*> modules;
    for (const auto& [id, c] : merged.constructs) {
      if (c.context_kind == ContextKind::Module) modules.push_back(&c);
    }
    std::sort(modules.begin(), modules.end(), [](const Construct* a, const Construct* b) {
      if (a->location.path != b->location.path) return a->location.path < b->location.path;
      return a->location.line < b->location.line;
    });
    std::map<std::string, const Construct*> first_seen;
    for (const Construct* m : modules) {
      auto [it, inserted] = first_seen.emplace(m->name, m);
      if (!inserted) {
        bool already_reported = false;
        for (const auto& d : merged.parse_diagnostics) {
          if (d.code == "SP004" && d.location.path == m->location.path &&
              d.location.line == m->location.line)
            already_reported = true;
        }
        if (!already_reported) {
          merged.parse_diagnostics.push_back(
              {Severity::Error, "SP004", m->location,
               "duplicate module name '" + m->name + "' (first declared in " +
                   it->second->location.path + ")",
               m->id, ""});
        }
      }
    }
    for (const auto& [name, c] : first_seen) modules_by_name[name] = c->id;
  }

  for (auto& [id, links] : merged.module_graph) {
    for (auto& link : links) {
      if (!link.target) {
        auto it = modules_by_name.find(link.name);
        if (it != modules_by_name.end()) {
          link.target = it->second;
        } else {
          link.external = true;
          const Construct* module = merged.find(id);
          merged.parse_diagnostics.push_back(
              {Severity::Notice, "SP003", module ? module->location : SourceLocation{},
               "super '" + link.name + "' not found in model; treated as external", id, ""});
        }
      }
    }
  }

  // Override links by feature name through the resolved super chain.
  for (auto& [id, c] : merged.constructs) {
    if (c.context_kind != ContextKind::Feature || !c.parent || c.overrides_target) continue;
    std::vector<std::string> frontier = {*c.parent};
    std::set<std::string> seen = {*c.parent};
    while (!frontier.empty() && !c.overrides_target) {
      std::vector<std::string> next;
      for (const auto& mid : frontier) {
        auto git = merged.module_graph.find(mid);
        if (git == merged.module_graph.end()) continue;
        for (const auto& link : git->second) {
          if (!link.target || seen.count(*link.target)) continue;
          seen.insert(*link.target);
          const Construct* super = merged.find(*link.target);
          if (!super) continue;
          for (const auto& child_id : super->children) {
            const Construct* member = merged.find(child_id);
            if (member && member->context_kind == ContextKind::Feature && member->name == c.name) {
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
      frontier = std::move(next);
    }
  }

  sort_diagnostics(merged.parse_diagnostics);
  return merged;
}

}  // namespace semprop
