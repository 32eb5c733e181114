#include "semprop/resolver.hpp"

#include <algorithm>
#include <set>

namespace semprop {

const ResolvedConstruct* ResolvedModel::find(const std::string& id) const {
  auto it = resolved.find(id);
  return it != resolved.end() ? &it->second : nullptr;
}

const char* view_kind_name(ViewKind k) {
  switch (k) {
    case ViewKind::Flat: return "flat";
    case ViewKind::Short: return "short";
    case ViewKind::Contract: return "contract";
    case ViewKind::FlatShort: return "flat-short";
    case ViewKind::FlatContract: return "flat-contract";
  }
  return "flat";
}

bool parse_view_kind(const std::string& text, ViewKind& out) {
  if (text == "flat") out = ViewKind::Flat;
  else if (text == "short") out = ViewKind::Short;
  else if (text == "contract") out = ViewKind::Contract;
  else if (text == "flat-short") out = ViewKind::FlatShort;
  else if (text == "flat-contract") out = ViewKind::FlatContract;
  else return false;
  return true;
}

namespace {

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Modules on an inheritance cycle keep their own properties untouched.
std::set<std::string> find_module_cycles(const SourceModel& model,
                                         std::vector<Diagnostic>& diagnostics) {
  std::set<std::string> cyclic;
  std::map<std::string, int> state;  // 0 unvisited, 1 in progress, 2 done
  std::vector<std::string> stack;

  auto visit = [&](auto&& self, const std::string& id) -> void {
    state[id] = 1;
    stack.push_back(id);
    auto it = model.module_graph.find(id);
    if (it != model.module_graph.end()) {
      for (const auto& link : it->second) {
        if (!link.target) continue;
        int s = state[*link.target];
        if (s == 0) {
          self(self, *link.target);
        } else if (s == 1) {
          std::string names;
          auto pos = std::find(stack.begin(), stack.end(), *link.target);
          for (auto walk = pos; walk != stack.end(); ++walk) {
            const Construct* c = model.find(*walk);
            if (!names.empty()) names += " -> ";
            names += c ? c->name : *walk;
            cyclic.insert(*walk);
          }
          const Construct* at = model.find(id);
          diagnostics.push_back({Severity::Error, "SP060",
                                 at ? at->location : SourceLocation{},
                                 "module inheritance cycle: " + names, id, ""});
        }
      }
    }
    stack.pop_back();
    state[id] = 2;
  };

  for (const auto& [id, links] : model.module_graph) {
    if (state[id] == 0) visit(visit, id);
  }
  return cyclic;
}

}  // namespace

std::vector<std::vector<std::string>> ancestor_levels(const SourceModel& model,
                                                      const std::string& construct_id) {
  std::vector<std::vector<std::string>> levels;
  const Construct* c = model.find(construct_id);
  if (!c) return levels;

  if (c->context_kind == ContextKind::Feature) {
    // Override chain: each hop is one level.
    std::set<std::string> seen = {construct_id};
    const Construct* walk = c;
    while (walk && walk->overrides_target) {
      const Construct* target = model.find(*walk->overrides_target);
      if (!target || seen.count(target->id)) break;
      seen.insert(target->id);
      levels.push_back({target->id});
      walk = target;
    }
    return levels;
  }

  if (c->context_kind != ContextKind::Module) return levels;

  std::set<std::string> seen = {construct_id};
  std::vector<std::string> frontier = {construct_id};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& id : frontier) {
      auto it = model.module_graph.find(id);
      if (it == model.module_graph.end()) continue;
      for (const auto& link : it->second) {
        if (!link.target || seen.count(*link.target)) continue;
        seen.insert(*link.target);
        next.push_back(*link.target);
      }
    }
    if (!next.empty()) levels.push_back(next);
    frontier = std::move(next);
  }
  return levels;
}

namespace {

struct Resolver {
  const SourceModel& model;
  const Registry& registry;
  ResolvedModel& out;
  const std::set<std::string>& cyclic;

  std::vector<const PropertyInstance*> own_instances(const Construct& c,
                                                     const std::string& canonical) const {
    std::vector<const PropertyInstance*> result;
    for (const auto& inst : c.properties) {
      if (registry.resolve_name(to_lower(inst.name)) == canonical) result.push_back(&inst);
    }
    return result;
  }

  // Own contract instances conjoined; Eiffel-style multiple clauses AND.
  ContractExpr own_contract(const Construct& c, const std::string& canonical,
                            std::vector<ContractSource>& sources) const {
    ContractExpr acc;
    for (const auto* inst : own_instances(c, canonical)) {
      if (const auto* payload = std::get_if<ExpressionPayload>(&inst->payload)) {
        if (!payload->expr.empty()) {
          acc = ContractExpr::conjoin(acc, payload->expr);
          sources.push_back({c.id, canonical, inst->location.line});
        }
      }
    }
    return acc;
  }

  void resolve_construct(const Construct& c) {
    ResolvedConstruct resolved;

    bool skip_inheritance = cyclic.count(c.id) > 0;
    std::vector<std::vector<std::string>> levels;
    if (!skip_inheritance) levels = ancestor_levels(model, c.id);

    // Descriptions: own wins; otherwise an undocumented override inherits
    // the overridden feature's text.
    resolved.effective_description = c.description;
    if (resolved.effective_description.empty()) {
      for (const auto& level : levels) {
        bool found = false;
        for (const auto& id : level) {
          const Construct* ancestor = model.find(id);
          if (ancestor && !ancestor->description.empty()) {
            resolved.effective_description = ancestor->description;
            resolved.description_source = ancestor->id;
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }

    // Property names in play: own plus every ancestor's, canonical form.
    std::vector<std::string> names;
    auto collect_names = [&](const Construct& from) {
      for (const auto& inst : from.properties) {
        std::string canonical = registry.resolve_name(to_lower(inst.name));
        if (std::find(names.begin(), names.end(), canonical) == names.end())
          names.push_back(canonical);
      }
    };
    collect_names(c);
    for (const auto& level : levels) {
      for (const auto& id : level) {
        if (const Construct* ancestor = model.find(id)) collect_names(*ancestor);
      }
    }

    for (const auto& canonical : names) {
      const PropertyDefinition* def = registry.find(canonical);
      InheritMode mode = def ? def->inheritance_mode : InheritMode::NotInherited;
      auto own = own_instances(c, canonical);

      if (mode == InheritMode::NotInherited || skip_inheritance) {
        for (const auto* inst : own)
          resolved.effective_properties.push_back({*inst, {c.id}});
        continue;
      }

      if (mode == InheritMode::Replacement) {
        if (!own.empty()) {
          for (const auto* inst : own)
            resolved.effective_properties.push_back({*inst, {c.id}});
          continue;
        }
        // Nearest level that provides the property wins; same-depth
        // conflicts resolve by declaration order with a warning.
        for (const auto& level : levels) {
          std::vector<const Construct*> providers;
          for (const auto& id : level) {
            const Construct* ancestor = model.find(id);
            if (ancestor && !own_instances(*ancestor, canonical).empty())
              providers.push_back(ancestor);
          }
          if (providers.empty()) continue;
          if (providers.size() > 1) {
            out.diagnostics.push_back(
                {Severity::Warning, "SP061", c.location,
                 "property '" + canonical + "' inherited from multiple ancestors at equal depth; "
                 "using '" + providers.front()->name + "'",
                 c.id, canonical});
          }
          for (const auto* inst : own_instances(*providers.front(), canonical)) {
            resolved.effective_properties.push_back({*inst, {c.id, providers.front()->id}});
          }
          break;
        }
        continue;
      }

      // Augmentation: ancestor-first concatenation, payload-equal instances
      // folded so repeated flattening is stable.
      std::vector<EffectiveInstance> chain;
      auto add = [&](const Construct& from, bool is_self) {
        for (const auto* inst : own_instances(from, canonical)) {
          bool duplicate = false;
          for (const auto& existing : chain) {
            if (registry.resolve_name(to_lower(existing.instance.name)) == canonical &&
                existing.instance.raw_value == inst->raw_value) {
              duplicate = true;
              break;
            }
          }
          if (duplicate) continue;
          if (is_self) {
            chain.push_back({*inst, {c.id}});
          } else {
            chain.push_back({*inst, {c.id, from.id}});
          }
        }
      };
      for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
        for (const auto& id : *level) {
          if (const Construct* ancestor = model.find(id)) add(*ancestor, false);
        }
      }
      add(c, true);
      for (auto& e : chain) resolved.effective_properties.push_back(std::move(e));
    }

    // Stable presentation order: declaration order of the holder first,
    // inherited items after, by provenance then line.
    std::stable_sort(resolved.effective_properties.begin(), resolved.effective_properties.end(),
                     [](const EffectiveInstance& a, const EffectiveInstance& b) {
                       if (a.inherited() != b.inherited()) return !a.inherited();
                       return false;
                     });

    resolve_contracts(c, levels, skip_inheritance, resolved);
    check_override_annotation(c);
    out.resolved[c.id] = std::move(resolved);
  }

  // pre = OR over the chain, post/invariant = AND; Replacement keeps the
  // nearest contract only; canonical-equal clauses are folded.
  void compose_chain(const Construct& c, const std::vector<std::vector<std::string>>& levels,
                     const std::string& property, bool disjunctive, ContractExpr& out_expr,
                     std::vector<ContractSource>& out_sources) const {
    const PropertyDefinition* def = registry.find(property);
    InheritMode mode = def ? def->inheritance_mode : InheritMode::NotInherited;

    std::vector<ContractSource> own_sources;
    ContractExpr own = own_contract(c, property, own_sources);

    if (mode == InheritMode::NotInherited) {
      out_expr = own;
      out_sources = own_sources;
      return;
    }
    if (mode == InheritMode::Replacement) {
      if (!own.empty()) {
        out_expr = own;
        out_sources = own_sources;
        return;
      }
      for (const auto& level : levels) {
        for (const auto& id : level) {
          const Construct* ancestor = model.find(id);
          if (!ancestor) continue;
          std::vector<ContractSource> sources;
          ContractExpr expr = own_contract(*ancestor, property, sources);
          if (!expr.empty()) {
            out_expr = expr;
            out_sources = sources;
            return;
          }
        }
      }
      return;
    }

    // Augmentation, ancestor-first.
    std::vector<std::pair<ContractExpr, std::vector<ContractSource>>> parts;
    for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
      for (const auto& id : *level) {
        const Construct* ancestor = model.find(id);
        if (!ancestor) continue;
        std::vector<ContractSource> sources;
        ContractExpr expr = own_contract(*ancestor, property, sources);
        if (!expr.empty()) parts.emplace_back(expr, sources);
      }
    }
    if (!own.empty()) parts.emplace_back(own, own_sources);

    std::set<std::string> seen;
    for (auto& [expr, sources] : parts) {
      if (!seen.insert(expr.canonical()).second) continue;
      out_expr = disjunctive ? ContractExpr::disjoin(out_expr, expr)
                             : ContractExpr::conjoin(out_expr, expr);
      out_sources.insert(out_sources.end(), sources.begin(), sources.end());
    }
  }

  void resolve_contracts(const Construct& c, const std::vector<std::vector<std::string>>& levels,
                         bool skip_inheritance, ResolvedConstruct& resolved) const {
    auto effective_levels = skip_inheritance ? std::vector<std::vector<std::string>>{} : levels;
    if (c.context_kind == ContextKind::Feature) {
      compose_chain(c, effective_levels, "require", true, resolved.contracts.precondition,
                    resolved.contracts.precondition_sources);
      compose_chain(c, effective_levels, "ensure", false, resolved.contracts.postcondition,
                    resolved.contracts.postcondition_sources);
    } else if (c.context_kind == ContextKind::Module) {
      compose_chain(c, effective_levels, "invariant", false, resolved.contracts.invariant,
                    resolved.contracts.invariant_sources);
    }
  }

  // `overrides`/`hides` properties only annotate; flag disagreement with the
  // scanner-detected link.
  void check_override_annotation(const Construct& c) {
    if (c.context_kind != ContextKind::Feature) return;
    for (const auto& inst : c.properties) {
      if (registry.resolve_name(to_lower(inst.name)) != "overrides") continue;
      std::string claimed;
      if (const auto* r = std::get_if<ReferencePayload>(&inst.payload)) claimed = r->target;
      else if (const auto* f = std::get_if<FreeformPayload>(&inst.payload)) claimed = f->text;
      std::string detected = c.overrides ? *c.overrides : "";
      std::string claimed_tail = claimed;
      auto dot = claimed_tail.find_last_of(".#");
      if (dot != std::string::npos) claimed_tail = claimed_tail.substr(dot + 1);
      if (claimed_tail != detected) {
        out.diagnostics.push_back(
            {Severity::Notice, "SP062", inst.location,
             detected.empty()
                 ? "overrides annotation present but no overridden feature was detected"
                 : "overrides annotation '" + claimed + "' disagrees with detected override '" +
                       detected + "'",
             c.id, "overrides"});
      }
    }
  }
};

}  // namespace

ResolvedModel resolve_inherited(const SourceModel& model, const Registry& registry) {
  ResolvedModel out;
  out.model = model;
  std::set<std::string> cyclic = find_module_cycles(model, out.diagnostics);
  Resolver resolver{model, registry, out, cyclic};
  for (const auto& [id, c] : model.constructs) resolver.resolve_construct(c);
  sort_diagnostics(out.diagnostics);
  return out;
}

// ---------------------------------------------------------------------------
// Views
// ---------------------------------------------------------------------------

namespace {

std::string instance_line(const Registry& registry, const EffectiveInstance& e,
                          const SourceModel& model) {
  std::string line = "- " + e.instance.name + ": ";
  if (const auto* expr = std::get_if<ExpressionPayload>(&e.instance.payload)) {
    line += expr->expr.canonical();
    if (!expr->trailing.empty()) line += " " + expr->trailing;
  } else {
    line += e.instance.raw_value;
  }
  if (e.inherited()) {
    const Construct* source = model.find(e.source());
    line += " [inherited from " + (source ? source->name : e.source()) + "]";
  }
  (void)registry;
  return line;
}

bool includes_properties(ViewKind kind) { return kind == ViewKind::Flat; }
bool includes_contracts(ViewKind kind) {
  return kind == ViewKind::Contract || kind == ViewKind::FlatContract;
}
bool flattens(ViewKind kind) {
  return kind == ViewKind::Flat || kind == ViewKind::FlatShort || kind == ViewKind::FlatContract;
}

struct ViewBuilder {
  const ResolvedModel& resolved;
  const Registry& registry;
  ViewKind kind;
  ViewDocument& doc;

  void property_sections(const std::string& construct_id, const std::string& prefix) {
    const ResolvedConstruct* r = resolved.find(construct_id);
    if (!r) return;
    for (Category category : all_categories()) {
      std::vector<const EffectiveInstance*> in_category;
      for (const auto& e : r->effective_properties) {
        std::string canonical = registry.resolve_name(to_lower_copy(e.instance.name));
        const PropertyDefinition* def = registry.find(canonical);
        Category c = def ? def->category : Category::Miscellaneous;
        if (c == category) in_category.push_back(&e);
      }
      if (in_category.empty()) continue;
      std::sort(in_category.begin(), in_category.end(),
                [this](const EffectiveInstance* a, const EffectiveInstance* b) {
                  std::string an = registry.resolve_name(to_lower_copy(a->instance.name));
                  std::string bn = registry.resolve_name(to_lower_copy(b->instance.name));
                  if (an != bn) return an < bn;
                  return a->instance.location.line < b->instance.location.line;
                });
      ViewSection section;
      section.heading = prefix.empty() ? std::string(category_name(category))
                                       : prefix + ": " + category_name(category);
      std::string body;
      for (const auto* e : in_category) {
        if (!body.empty()) body += "\n";
        body += instance_line(registry, *e, resolved.model);
      }
      section.body = body;
      doc.sections.push_back(section);
    }
  }

  static std::string to_lower_copy(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  void contract_section(const std::string& construct_id, const std::string& prefix) {
    const ResolvedConstruct* r = resolved.find(construct_id);
    if (!r) return;
    std::string body;
    auto add = [&](const char* label, const ContractExpr& e) {
      if (e.empty()) return;
      if (!body.empty()) body += "\n";
      body += std::string("- ") + label + ": " + e.canonical();
    };
    add("precondition", r->contracts.precondition);
    add("postcondition", r->contracts.postcondition);
    add("invariant", r->contracts.invariant);
    if (body.empty()) return;
    ViewSection section;
    section.heading = prefix.empty() ? "Contracts (effective)" : prefix + ": contracts";
    section.body = body;
    doc.sections.push_back(section);
  }

  void member_header(const Construct& member) {
    const ResolvedConstruct* r = resolved.find(member.id);
    ViewSection section;
    const char* kind_label = member.context_kind == ContextKind::Variable ? "variable " : "feature ";
    section.heading = kind_label + member.name;
    std::string body;
    if (!member.body_metrics.signature.empty()) body = "`" + member.body_metrics.signature + "`";
    if (r && !r->effective_description.empty()) {
      if (!body.empty()) body += "\n";
      body += r->effective_description;
      if (!r->description_source.empty()) {
        const Construct* source = resolved.model.find(r->description_source);
        body += " [inherited from " +
                (source ? owner_qualified(*source) : r->description_source) + "]";
      }
    }
    section.body = body;
    doc.sections.push_back(section);
  }

  std::string owner_qualified(const Construct& c) const {
    if (c.parent) {
      const Construct* parent = resolved.model.find(*c.parent);
      if (parent && parent->context_kind == ContextKind::Module)
        return parent->name + "." + c.name;
    }
    return c.name;
  }

  void member_sections(const Construct& member, bool inherited_from_ancestor,
                       const std::string& ancestor_name) {
    member_header(member);
    if (inherited_from_ancestor) {
      doc.sections.back().body += doc.sections.back().body.empty() ? "" : "\n";
      doc.sections.back().body += "[flattened from " + ancestor_name + "]";
    }
    if (includes_properties(kind)) property_sections(member.id, "feature " + member.name);
    if (includes_contracts(kind)) contract_section(member.id, "feature " + member.name);
  }
};

}  // namespace

ViewDocument view(const ResolvedModel& resolved, const std::string& construct_id, ViewKind kind,
                  const Registry& registry) {
  const Construct* c = resolved.model.find(construct_id);
  if (!c) throw UsageError{"unknown construct: " + construct_id};
  if (flattens(kind) && c->context_kind != ContextKind::Module) {
    throw UsageError{"flat views require a module construct: " + construct_id};
  }

  ViewDocument doc;
  doc.construct_id = construct_id;
  doc.view_kind = kind;

  ViewBuilder builder{resolved, registry, kind, doc};

  if (c->context_kind != ContextKind::Module) {
    doc.title = std::string(context_kind_name(c->context_kind)) + " " + c->name;
    builder.member_header(*c);
    if (includes_properties(kind)) builder.property_sections(construct_id, "");
    if (includes_contracts(kind)) builder.contract_section(construct_id, "");
    return doc;
  }

  doc.title = "module " + c->name;
  {
    ViewSection section;
    section.heading = "module " + c->name;
    const ResolvedConstruct* r = resolved.find(construct_id);
    std::string body;
    if (!c->body_metrics.signature.empty()) body = "`" + c->body_metrics.signature + "`";
    if (r && !r->effective_description.empty()) {
      if (!body.empty()) body += "\n";
      body += r->effective_description;
    }
    section.body = body;
    doc.sections.push_back(section);
  }
  if (includes_properties(kind)) builder.property_sections(construct_id, "");
  if (includes_contracts(kind)) builder.contract_section(construct_id, "");

  // Own members in declaration order.
  std::set<std::string> member_names;
  for (const auto& child_id : c->children) {
    const Construct* member = resolved.model.find(child_id);
    if (!member) continue;
    member_names.insert(member->name);
    builder.member_sections(*member, false, "");
  }

  // Flattened members from ancestors, nearest level first.
  if (flattens(kind)) {
    for (const auto& level : ancestor_levels(resolved.model, construct_id)) {
      for (const auto& ancestor_id : level) {
        const Construct* ancestor = resolved.model.find(ancestor_id);
        if (!ancestor) continue;
        for (const auto& child_id : ancestor->children) {
          const Construct* member = resolved.model.find(child_id);
          if (!member || member_names.count(member->name)) continue;
          member_names.insert(member->name);
          builder.member_sections(*member, true, ancestor->name);
        }
      }
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Perspective filtering
// ---------------------------------------------------------------------------

namespace {

Visibility effective_visibility(const PropertyInstance& inst, const Construct& holder) {
  return inst.explicit_visibility ? *inst.explicit_visibility : holder.visibility;
}

}  // namespace

ResolvedModel filter_perspective(const ResolvedModel& resolved, const std::string& role,
                                 Visibility floor) {
  (void)role;
  ResolvedModel out;
  out.diagnostics = resolved.diagnostics;

  std::set<std::string> kept;
  for (const auto& [id, c] : resolved.model.constructs) {
    if (c.visibility <= floor) kept.insert(id);
  }
  // Containment: drop subtrees under dropped constructs.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, c] : resolved.model.constructs) {
      if (kept.count(id) && c.parent && !kept.count(*c.parent)) {
        kept.erase(id);
        changed = true;
      }
    }
  }

  for (const auto& [id, c] : resolved.model.constructs) {
    if (!kept.count(id)) continue;
    Construct copy = c;
    copy.properties.clear();
    for (const auto& inst : c.properties) {
      if (effective_visibility(inst, c) <= floor) copy.properties.push_back(inst);
    }
    copy.children.clear();
    for (const auto& child : c.children) {
      if (kept.count(child)) copy.children.push_back(child);
    }
    out.model.constructs[id] = std::move(copy);
  }
  for (const auto& [id, links] : resolved.model.module_graph) {
    if (kept.count(id)) out.model.module_graph[id] = links;
  }
  out.model.parse_diagnostics = resolved.model.parse_diagnostics;

  for (const auto& [id, r] : resolved.resolved) {
    if (!kept.count(id)) continue;
    const Construct* holder = resolved.model.find(id);
    ResolvedConstruct copy = r;
    copy.effective_properties.clear();
    for (const auto& e : r.effective_properties) {
      if (holder && effective_visibility(e.instance, *holder) <= floor)
        copy.effective_properties.push_back(e);
    }
    out.resolved[id] = std::move(copy);
  }
  return out;
}

}  // namespace semprop
