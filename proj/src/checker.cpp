#include "semprop/checker.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "semprop/resolver.hpp"

namespace semprop {

namespace {

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool payload_matches(const PropertyInstance& inst, const PropertyDefinition& def,
                     std::string& detail) {
  switch (def.value_grammar) {
    case ValueGrammar::Freeform:
      if (!std::holds_alternative<FreeformPayload>(inst.payload)) {
        detail = "expected freeform text";
        return false;
      }
      return true;
    case ValueGrammar::VersionString:
      if (!std::holds_alternative<VersionStringPayload>(inst.payload)) {
        detail = "expected a version string";
        return false;
      }
      return true;
    case ValueGrammar::NameThenText: {
      const auto* p = std::get_if<NameThenTextPayload>(&inst.payload);
      if (!p) {
        detail = "expected a name followed by text";
        return false;
      }
      if (p->name.empty()) {
        detail = "missing leading name";
        return false;
      }
      return true;
    }
    case ValueGrammar::Reference: {
      const auto* p = std::get_if<ReferencePayload>(&inst.payload);
      if (!p) {
        detail = "expected a reference target";
        return false;
      }
      if (p->target.empty()) {
        detail = "missing reference target";
        return false;
      }
      return true;
    }
    case ValueGrammar::Expression: {
      const auto* p = std::get_if<ExpressionPayload>(&inst.payload);
      if (!p || p->expr.empty()) {
        detail = "expected a parenthesized expression";
        return false;
      }
      return true;
    }
    case ValueGrammar::KeywordToken: {
      const auto* p = std::get_if<KeywordTokenPayload>(&inst.payload);
      if (!p || p->tokens.empty()) {
        detail = "expected keyword token(s)";
        return false;
      }
      for (const auto& tok : p->tokens) {
        bool ident = !tok.empty() && (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_');
        for (char ch : tok) {
          if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) ident = false;
        }
        if (!ident) {
          detail = "token '" + tok + "' is not an identifier";
          return false;
        }
        if (def.closed_vocabulary &&
            std::find(def.vocabulary.begin(), def.vocabulary.end(), tok) == def.vocabulary.end()) {
          detail = "token '" + tok + "' not in vocabulary";
          return false;
        }
      }
      return true;
    }
  }
  detail = "unknown grammar";
  return false;
}

}  // namespace

std::vector<Diagnostic> check_contexts(const SourceModel& model, const Registry& registry) {
  std::vector<Diagnostic> out;
  for (const Construct* c : model.ordered_constructs()) {
    std::map<std::string, int> counts;
    for (const auto& inst : c->properties) {
      std::string canonical = registry.resolve_name(to_lower(inst.name));
      const PropertyDefinition* def = registry.find(canonical);
      if (!def) {
        out.push_back({Severity::Warning, "SP001", inst.location,
                       "unknown property '" + inst.name + "'", c->id, to_lower(inst.name)});
        continue;
      }
      if (!def->contexts.count(c->context_kind)) {
        out.push_back({Severity::Error, "SP020", inst.location,
                       "property '" + canonical + "' is not legal in " +
                           context_kind_name(c->context_kind) + " context",
                       c->id, canonical});
      }
      if (def->multiplicity == Multiplicity::AtMostOne) {
        if (++counts[canonical] == 2) {
          out.push_back({Severity::Error, "SP021", inst.location,
                         "property '" + canonical + "' appears more than once", c->id, canonical});
        }
      }
      std::string detail;
      if (!inst.grammar_fallback && !payload_matches(inst, *def, detail)) {
        out.push_back({Severity::Error, "SP022", inst.location,
                       "value of '" + canonical + "' does not match its grammar: " + detail,
                       c->id, canonical});
      }
    }
  }
  sort_diagnostics(out);
  return out;
}

CoveragePolicy CoveragePolicy::defaults() {
  CoveragePolicy policy;
  policy.required[ContextKind::File] = {"description"};
  policy.required[ContextKind::Module] = {"description"};
  policy.required[ContextKind::Feature] = {"return"};
  return policy;
}

CoverageResult check_coverage(const SourceModel& model, const Registry& registry,
                              const CoveragePolicy& policy) {
  CoverageResult result;
  for (ContextKind kind : {ContextKind::File, ContextKind::Module, ContextKind::Feature,
                           ContextKind::Variable}) {
    result.report.per_kind[kind] = {};
  }

  std::vector<const Construct*> ordered = model.ordered_constructs();
  for (const Construct* c : ordered) {
    if (c->visibility > policy.floor) continue;
    CoverageBucket& bucket = result.report.per_kind[c->context_kind];
    ++bucket.total;

    bool documented = !c->description.empty();
    if (!documented) {
      for (const auto& inst : c->properties) {
        const PropertyDefinition* def = registry.find(to_lower(inst.name));
        if (def && def->formality == Formality::Informal) {
          documented = true;
          break;
        }
      }
    }
    if (documented) ++bucket.documented;

    auto required_it = policy.required.find(c->context_kind);
    if (required_it == policy.required.end()) continue;
    for (const auto& required : required_it->second) {
      if (required == "return" && policy.waive_return_for_void &&
          c->context_kind == ContextKind::Feature && !c->returns_value) {
        continue;
      }
      bool present = false;
      for (const auto& inst : c->properties) {
        if (registry.resolve_name(to_lower(inst.name)) == required) {
          present = true;
          break;
        }
      }
      // A doc-comment description satisfies a required `description`,
      // mirroring how the documentation generators treat file comments.
      if (!present && required == "description" && !c->description.empty()) present = true;
      if (!present) {
        result.report.missing_required.emplace_back(c->id, required);
        result.diagnostics.push_back({Severity::Warning, "SP030", c->location,
                                      std::string(context_kind_name(c->context_kind)) + " '" +
                                          c->name + "' is missing required property '" +
                                          required + "'",
                                      c->id, required});
      }
    }
  }

  for (auto& [kind, bucket] : result.report.per_kind) {
    bucket.coverage_percent =
        bucket.total == 0 ? 0.0 : 100.0 * static_cast<double>(bucket.documented) /
                                       static_cast<double>(bucket.total);
  }
  sort_diagnostics(result.diagnostics);
  return result;
}

ContractExpr own_contract(const Construct& construct, const Registry& registry,
                          const std::string& property_name) {
  ContractExpr acc;
  for (const auto& inst : construct.properties) {
    if (registry.resolve_name(to_lower(inst.name)) != property_name) continue;
    if (const auto* payload = std::get_if<ExpressionPayload>(&inst.payload)) {
      if (!payload->expr.empty()) acc = ContractExpr::conjoin(acc, payload->expr);
    }
  }
  return acc;
}

std::vector<Diagnostic> check_refinement(const SourceModel& model, const Registry& registry,
                                         const ResolvedModel& resolved) {
  std::vector<Diagnostic> out;

  auto mode_of = [&](const char* name) {
    const PropertyDefinition* def = registry.find(name);
    return def ? def->inheritance_mode : InheritMode::NotInherited;
  };
  InheritMode require_mode = mode_of("require");
  InheritMode ensure_mode = mode_of("ensure");

  for (const Construct* c : model.ordered_constructs()) {
    if (c->context_kind != ContextKind::Feature || !c->overrides_target) continue;
    const Construct* parent = model.find(*c->overrides_target);
    if (!parent) continue;

    ContractExpr child_pre = own_contract(*c, registry, "require");
    ContractExpr parent_pre = own_contract(*parent, registry, "require");
    ContractExpr child_post = own_contract(*c, registry, "ensure");
    ContractExpr parent_post = own_contract(*parent, registry, "ensure");

    bool both_pre = !child_pre.empty() && !parent_pre.empty();
    bool both_post = !child_post.empty() && !parent_post.empty();
    if (!both_pre && !both_post) continue;

    if (require_mode == InheritMode::Replacement && both_pre) {
      ImplicationResult check = implies(parent_pre, child_pre);
      if (check.verdict == Verdict::False) {
        out.push_back({Severity::Error, "SP040", c->location,
                       "replacement precondition may only weaken: " + parent_pre.canonical() +
                           " does not imply " + child_pre.canonical() + " (witness " +
                           check.witness->to_string() + ")",
                       c->id, "require"});
      } else if (check.verdict == Verdict::Unknown) {
        out.push_back({Severity::Notice, check.type_inconsistent ? "SP023" : "SP043", c->location,
                       "precondition refinement unverifiable: " + check.reason, c->id, "require"});
      }
    }
    if (ensure_mode == InheritMode::Replacement && both_post) {
      ImplicationResult check = implies(child_post, parent_post);
      if (check.verdict == Verdict::False) {
        out.push_back({Severity::Error, "SP041", c->location,
                       "replacement postcondition may only strengthen: " + child_post.canonical() +
                           " does not imply " + parent_post.canonical() + " (witness " +
                           check.witness->to_string() + ")",
                       c->id, "ensure"});
      } else if (check.verdict == Verdict::Unknown) {
        out.push_back({Severity::Notice, check.type_inconsistent ? "SP023" : "SP043", c->location,
                       "postcondition refinement unverifiable: " + check.reason, c->id, "ensure"});
      }
    }

    if ((require_mode == InheritMode::Augmentation && both_pre) ||
        (ensure_mode == InheritMode::Augmentation && both_post)) {
      const ResolvedConstruct* r = resolved.find(c->id);
      std::string message = "augmentation composes contracts of '" + c->name + "':";
      if (r && require_mode == InheritMode::Augmentation && both_pre &&
          !r->contracts.precondition.empty()) {
        message += " effective precondition " + r->contracts.precondition.canonical();
      }
      if (r && ensure_mode == InheritMode::Augmentation && both_post &&
          !r->contracts.postcondition.empty()) {
        if (message.back() != ':') message += ";";
        message += " effective postcondition " + r->contracts.postcondition.canonical();
      }
      out.push_back({Severity::Notice, "SP042", c->location, message, c->id, ""});
    }
  }
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_conformance(const SpecModel& spec, const SourceModel& model) {
  std::vector<Diagnostic> out;
  Registry registry = builtin_registry();

  const std::string spec_path = spec.path.empty() ? "<spec>" : spec.path;
  std::set<std::string> spec_class_names;
  for (const auto& cls : spec.classes) spec_class_names.insert(cls.name);

  for (const auto& cls : spec.classes) {
    const Construct* module = model.find_module(cls.name);
    if (!module) {
      out.push_back({Severity::Error, "SP050", {spec_path, cls.line, 1},
                     "class '" + cls.name + "' from the specification is missing in the source",
                     "", ""});
      continue;
    }
    for (const auto& feature : cls.features) {
      const Construct* found = nullptr;
      for (const auto& child_id : module->children) {
        const Construct* member = model.find(child_id);
        if (member && member->context_kind == ContextKind::Feature &&
            member->name == feature.name) {
          found = member;
          break;
        }
      }
      if (!found) {
        out.push_back({Severity::Error, "SP051", {spec_path, feature.line, 1},
                       "feature '" + cls.name + "." + feature.name +
                           "' from the specification is missing in the source",
                       module->id, ""});
        continue;
      }
      struct Pair {
        const char* label;
        const ContractExpr& spec_expr;
        ContractExpr source_expr;
        const char* property;
      };
      Pair pairs[] = {
          {"precondition", feature.require_expr, own_contract(*found, registry, "require"),
           "require"},
          {"postcondition", feature.ensure_expr, own_contract(*found, registry, "ensure"),
           "ensure"},
      };
      for (const auto& pair : pairs) {
        if (pair.spec_expr.empty()) continue;
        if (pair.source_expr.empty()) {
          out.push_back({Severity::Warning, "SP052", found->location,
                         std::string(pair.label) + " " + pair.spec_expr.canonical() +
                             " is specified but the source carries no contract",
                         found->id, pair.property});
          continue;
        }
        ImplicationResult forward = implies(pair.spec_expr, pair.source_expr);
        ImplicationResult backward = implies(pair.source_expr, pair.spec_expr);
        if (forward.verdict == Verdict::Unknown || backward.verdict == Verdict::Unknown) {
          bool inconsistent = forward.type_inconsistent || backward.type_inconsistent;
          std::string reason = forward.verdict == Verdict::Unknown ? forward.reason : backward.reason;
          out.push_back({Severity::Notice, inconsistent ? "SP023" : "SP043", found->location,
                         std::string(pair.label) + " equivalence unverifiable: " + reason,
                         found->id, pair.property});
          continue;
        }
        if (forward.verdict == Verdict::False || backward.verdict == Verdict::False) {
          const Assignment& witness = forward.verdict == Verdict::False ? *forward.witness
                                                                        : *backward.witness;
          out.push_back({Severity::Error, "SP053", found->location,
                         std::string(pair.label) + " mismatch: spec " + pair.spec_expr.canonical() +
                             " vs source " + pair.source_expr.canonical() + " (witness " +
                             witness.to_string() + ")",
                         found->id, pair.property});
        }
      }
    }
  }

  for (const auto& [id, c] : model.constructs) {
    if (c.context_kind == ContextKind::Module && !spec_class_names.count(c.name)) {
      out.push_back({Severity::Notice, "SP054", c.location,
                     "source class '" + c.name + "' is absent from the specification", c.id, ""});
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace semprop
