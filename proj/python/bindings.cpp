#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "semprop/beliefs.hpp"
#include "semprop/checker.hpp"
#include "semprop/cli.hpp"
#include "semprop/emit.hpp"
#include "semprop/frontends.hpp"
#include "semprop/kindgraph.hpp"
#include "semprop/resolver.hpp"

namespace py = pybind11;
using namespace semprop;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

py::dict diagnostic_dict(const Diagnostic& d) {
  py::dict out;
  out["code"] = d.code;
  out["severity"] = severity_name(d.severity);
  out["path"] = d.location.path;
  out["line"] = d.location.line;
  out["column"] = d.location.column;
  out["message"] = d.message;
  out["construct"] = d.construct;
  out["property"] = d.property;
  return out;
}

py::list diagnostics_list(const std::vector<Diagnostic>& diagnostics) {
  py::list out;
  for (const auto& d : diagnostics) out.append(diagnostic_dict(d));
  return out;
}

py::dict instance_dict(const PropertyInstance& inst) {
  py::dict out;
  out["name"] = inst.name;
  out["raw_value"] = inst.raw_value;
  out["line"] = inst.location.line;
  out["column"] = inst.location.column;
  if (const auto* e = std::get_if<ExpressionPayload>(&inst.payload)) {
    out["payload_kind"] = "expression";
    out["expression"] = e->expr.canonical();
    out["trailing"] = e->trailing;
  } else if (const auto* k = std::get_if<KeywordTokenPayload>(&inst.payload)) {
    out["payload_kind"] = "keyword-token";
    out["tokens"] = k->tokens;
  } else if (const auto* n = std::get_if<NameThenTextPayload>(&inst.payload)) {
    out["payload_kind"] = "name-then-text";
    out["payload_name"] = n->name;
    out["text"] = n->text;
  } else if (const auto* r = std::get_if<ReferencePayload>(&inst.payload)) {
    out["payload_kind"] = "reference";
    out["target"] = r->target;
    out["text"] = r->text;
  } else if (const auto* v = std::get_if<VersionStringPayload>(&inst.payload)) {
    out["payload_kind"] = "version-string";
    out["text"] = v->text;
  } else if (const auto* f = std::get_if<FreeformPayload>(&inst.payload)) {
    out["payload_kind"] = "freeform";
    out["text"] = f->text;
  }
  return out;
}

SourceModel load_paths(const std::vector<std::string>& paths, const Registry& registry) {
  std::vector<SourceModel> fragments;
  for (const auto& path : paths) {
    std::string text = read_file(path);
    switch (detect_dialect(path)) {
      case Dialect::JavaDocComment:
        fragments.push_back(parse_java_source(text, path, registry));
        break;
      case Dialect::EiffelIndexing:
        fragments.push_back(parse_eiffel_source(text, path, registry));
        break;
      case Dialect::EbonIndexing:
        throw UsageError{"EBON design models are handled by conform(), not load_model()"};
    }
  }
  return link_model(std::move(fragments));
}

Registry registry_from(const std::optional<std::string>& override_path) {
  return load_registry(override_path).registry;
}

}  // namespace

PYBIND11_MODULE(_semprop, m) {
  m.doc() = "semantic property toolchain bindings";

  py::register_exception<UsageError>(m, "UsageError");

  m.def("registry_names", [](std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    std::vector<std::string> names;
    for (const auto& def : registry.definitions()) names.push_back(def.name);
    return names;
  }, py::arg("registry") = std::nullopt);

  m.def("registry_entry", [](const std::string& name, std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    const PropertyDefinition* def = registry.find(name);
    if (!def) throw UsageError{"unknown property: " + name};
    py::dict out;
    out["name"] = def->name;
    out["category"] = category_name(def->category);
    out["formality"] = formality_name(def->formality);
    std::vector<std::string> contexts;
    for (ContextKind kind : def->contexts) contexts.emplace_back(context_kind_name(kind));
    out["contexts"] = contexts;
    out["value_grammar"] = value_grammar_name(def->value_grammar);
    out["multiplicity"] = multiplicity_name(def->multiplicity);
    out["inheritance_mode"] = inherit_mode_name(def->inheritance_mode);
    return out;
  }, py::arg("name"), py::arg("registry") = std::nullopt);

  m.def("parse_doc_comment", [](const std::string& body, std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    DocCommentResult result = parse_doc_comment(body, registry);
    py::dict out;
    out["description"] = result.description;
    py::list instances;
    for (const auto& inst : result.instances) instances.append(instance_dict(inst));
    out["instances"] = instances;
    out["diagnostics"] = diagnostics_list(result.diagnostics);
    return out;
  }, py::arg("body"), py::arg("registry") = std::nullopt);

  m.def("lint", [](const std::vector<std::string>& paths, std::optional<std::string> override_path) {
    RegistryLoadResult registry = load_registry(override_path);
    SourceModel model = load_paths(paths, registry.registry);
    std::vector<Diagnostic> all = registry.diagnostics;
    all.insert(all.end(), model.parse_diagnostics.begin(), model.parse_diagnostics.end());
    auto contexts = check_contexts(model, registry.registry);
    all.insert(all.end(), contexts.begin(), contexts.end());
    auto coverage = check_coverage(model, registry.registry);
    all.insert(all.end(), coverage.diagnostics.begin(), coverage.diagnostics.end());
    ResolvedModel resolved = resolve_inherited(model, registry.registry);
    all.insert(all.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
    auto refinement = check_refinement(model, registry.registry, resolved);
    all.insert(all.end(), refinement.begin(), refinement.end());
    sort_diagnostics(all);
    return diagnostics_list(all);
  }, py::arg("paths"), py::arg("registry") = std::nullopt);

  m.def("constructs", [](const std::vector<std::string>& paths,
                         std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    SourceModel model = load_paths(paths, registry);
    py::list out;
    for (const Construct* c : model.ordered_constructs()) {
      py::dict entry;
      entry["id"] = c->id;
      entry["kind"] = context_kind_name(c->context_kind);
      entry["name"] = c->name;
      entry["visibility"] = visibility_name(c->visibility);
      entry["description"] = c->description;
      entry["signature"] = c->body_metrics.signature;
      entry["token_count"] = c->body_metrics.token_count;
      py::list instances;
      for (const auto& inst : c->properties) instances.append(instance_dict(inst));
      entry["properties"] = instances;
      out.append(entry);
    }
    return out;
  }, py::arg("paths"), py::arg("registry") = std::nullopt);

  m.def("coverage", [](const std::vector<std::string>& paths,
                       std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    SourceModel model = load_paths(paths, registry);
    CoverageResult result = check_coverage(model, registry);
    py::dict out;
    for (const auto& [kind, bucket] : result.report.per_kind) {
      py::dict entry;
      entry["total"] = bucket.total;
      entry["documented"] = bucket.documented;
      entry["coverage_percent"] = bucket.coverage_percent;
      out[context_kind_name(kind)] = entry;
    }
    py::list missing;
    for (const auto& [construct, property] : result.report.missing_required) {
      missing.append(py::make_tuple(construct, property));
    }
    out["missing_required"] = missing;
    return out;
  }, py::arg("paths"), py::arg("registry") = std::nullopt);

  m.def("implies", [](const std::string& antecedent, const std::string& consequent) {
    ExprParseResult a = parse_contract_expr(antecedent);
    if (!a.ok()) throw UsageError{"bad antecedent: " + a.error};
    ExprParseResult b = parse_contract_expr(consequent);
    if (!b.ok()) throw UsageError{"bad consequent: " + b.error};
    ImplicationResult result = implies(a.expr, b.expr);
    py::dict out;
    out["verdict"] = verdict_name(result.verdict);
    out["witness"] = result.witness ? py::object(py::str(result.witness->to_string()))
                                    : py::object(py::none());
    out["reason"] = result.reason;
    return out;
  }, py::arg("antecedent"), py::arg("consequent"));

  m.def("translate", [](const std::string& path, const std::string& from_dialect,
                        const std::string& to_dialect) {
    Dialect from, to;
    if (!parse_dialect(from_dialect, from)) throw UsageError{"unknown dialect: " + from_dialect};
    if (!parse_dialect(to_dialect, to)) throw UsageError{"unknown dialect: " + to_dialect};
    Registry registry = builtin_registry();
    std::string text = read_file(path);
    std::vector<TranslatableInstance> instances;
    switch (from) {
      case Dialect::JavaDocComment:
        if (text.find("/**") == std::string::npos) {
          for (const auto& inst : parse_doc_comment(text, registry, path).instances) {
            instances.push_back({inst, ContextKind::File});
          }
        } else {
          instances = collect_instances(parse_java_source(text, path, registry));
        }
        break;
      case Dialect::EiffelIndexing:
        instances = collect_instances(parse_eiffel_source(text, path, registry));
        break;
      case Dialect::EbonIndexing:
        for (const auto& inst :
             ebon_indexing_instances(parse_ebon_spec(text, path), path, registry)) {
          instances.push_back({inst, ContextKind::File});
        }
        break;
    }
    return translate_properties(instances, from, to, builtin_dialect_graph());
  }, py::arg("path"), py::arg("from_dialect"), py::arg("to_dialect"));

  m.def("flatten", [](const std::vector<std::string>& paths, const std::string& module,
                      std::optional<std::string> override_path) {
    Registry registry = registry_from(override_path);
    SourceModel model = load_paths(paths, registry);
    const Construct* found = model.find_module(module);
    if (!found) throw UsageError{"module not found (or ambiguous): " + module};
    ResolvedModel resolved = resolve_inherited(model, registry);
    return render_view_markdown(view(resolved, found->id, ViewKind::Flat, registry));
  }, py::arg("paths"), py::arg("module"), py::arg("registry") = std::nullopt);

  m.def("conform", [](const std::string& spec_path, const std::vector<std::string>& paths) {
    Registry registry = builtin_registry();
    SpecModel spec = parse_ebon_spec(read_file(spec_path), spec_path);
    SourceModel model = load_paths(paths, registry);
    return diagnostics_list(check_conformance(spec, model));
  }, py::arg("spec_path"), py::arg("paths"));

  m.def("kind_ancestors", [](const std::string& graph_path, const std::string& name) {
    return ancestors(load_kind_graph(graph_path), name);
  }, py::arg("graph_path"), py::arg("name"));

  m.def("kind_parts", [](const std::string& graph_path, const std::string& name) {
    return parts(load_kind_graph(graph_path), name);
  }, py::arg("graph_path"), py::arg("name"));

  m.def("fnv1a64_hex", [](const std::string& text) { return fnv1a64_hex(text); },
        py::arg("text"));

  m.def("run_cli", [](const std::vector<std::string>& args) { return cli::run(args); },
        py::arg("args"));
}
