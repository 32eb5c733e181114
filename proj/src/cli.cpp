#include "semprop/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "semprop/beliefs.hpp"
#include "semprop/checker.hpp"
#include "semprop/emit.hpp"
#include "semprop/frontends.hpp"
#include "semprop/kindgraph.hpp"
#include "semprop/resolver.hpp"

namespace semprop::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

RegistryLoadResult load_registry_option(const std::string& registry_path) {
  std::optional<std::string> path;
  if (!registry_path.empty()) {
    path = registry_path;
  } else if (const char* env = std::getenv("SEMPROP_REGISTRY"); env && *env) {
    path = std::string(env);
  }
  return load_registry(path);
}

struct LoadedModel {
  SourceModel model;
  std::vector<Diagnostic> diagnostics;  // registry + parse + link
};

LoadedModel load_model(const std::vector<std::string>& paths, const Registry& registry,
                       const std::string& dialect_override) {
  std::vector<SourceModel> fragments;
  for (const auto& path : paths) {
    Dialect dialect;
    if (!dialect_override.empty()) {
      if (!parse_dialect(dialect_override, dialect)) {
        throw UsageError{"unknown dialect: " + dialect_override};
      }
    } else {
      dialect = detect_dialect(path);
    }
    std::string text = read_file(path);
    switch (dialect) {
      case Dialect::JavaDocComment:
        fragments.push_back(parse_java_source(text, path, registry));
        break;
      case Dialect::EiffelIndexing:
        fragments.push_back(parse_eiffel_source(text, path, registry));
        break;
      case Dialect::EbonIndexing:
        throw UsageError{"EBON design models are checked with `semprop conform --spec " + path +
                         "`"};
    }
  }
  LoadedModel out;
  out.model = link_model(std::move(fragments));
  out.diagnostics = out.model.parse_diagnostics;
  return out;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, const std::string& format,
                       std::ostream& out) {
  for (const auto& d : diagnostics) {
    out << (format == "json" ? diagnostic_to_json(d) : diagnostic_to_text(d)) << "\n";
  }
}

// Findings computed over a whole input file (registry/graph validation)
// carry no inherent line; anchor them to the file itself.
void anchor_locations(std::vector<Diagnostic>& diagnostics, const std::string& path) {
  for (auto& d : diagnostics) {
    if (d.location.path.empty()) {
      d.location.path = path;
      if (d.location.line == 0) d.location.line = 1;
      if (d.location.column == 0) d.location.column = 1;
    }
  }
}

int exit_code_for(const std::vector<Diagnostic>& diagnostics, const std::string& fail_on) {
  Severity threshold = Severity::Error;
  if (!parse_severity(fail_on, threshold)) {
    throw UsageError{"bad --fail-on value: " + fail_on};
  }
  return meets_threshold(diagnostics, threshold) ? 1 : 0;
}

Visibility parse_visibility_or_throw(const std::string& text) {
  Visibility v;
  if (!parse_visibility(text, v)) throw UsageError{"bad visibility: " + text};
  return v;
}

// Full lint pipeline: context/multiplicity/grammar checks, coverage,
// inheritance resolution, and refinement soundness.
std::vector<Diagnostic> lint_pipeline(const SourceModel& model, const Registry& registry,
                                      std::vector<Diagnostic> seed) {
  std::vector<Diagnostic> all = std::move(seed);
  auto contexts = check_contexts(model, registry);
  all.insert(all.end(), contexts.begin(), contexts.end());
  auto coverage = check_coverage(model, registry);
  all.insert(all.end(), coverage.diagnostics.begin(), coverage.diagnostics.end());
  ResolvedModel resolved = resolve_inherited(model, registry);
  all.insert(all.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
  auto refinement = check_refinement(model, registry, resolved);
  all.insert(all.end(), refinement.begin(), refinement.end());
  sort_diagnostics(all);
  return all;
}

std::vector<TranslatableInstance> instances_for_translation(const std::string& path,
                                                            Dialect from,
                                                            const Registry& registry) {
  std::string text = read_file(path);
  switch (from) {
    case Dialect::JavaDocComment: {
      if (text.find("/**") == std::string::npos) {
        // Bare tag block: treat the whole input as one doc-comment body in
        // file context.
        DocCommentResult parsed = parse_doc_comment(text, registry, path, 1, 1);
        std::vector<TranslatableInstance> out;
        for (const auto& inst : parsed.instances) out.push_back({inst, ContextKind::File});
        return out;
      }
      return collect_instances(parse_java_source(text, path, registry));
    }
    case Dialect::EiffelIndexing:
      return collect_instances(parse_eiffel_source(text, path, registry));
    case Dialect::EbonIndexing: {
      SpecModel spec = parse_ebon_spec(text, path);
      std::vector<TranslatableInstance> out;
      for (const auto& inst : ebon_indexing_instances(spec, path, registry)) {
        out.push_back({inst, ContextKind::File});
      }
      return out;
    }
  }
  return {};
}

struct CommonOptions {
  std::vector<std::string> paths;
  std::string registry_path;
  std::string dialect;
  std::string fail_on = "error";
};

void add_common(CLI::App* cmd, CommonOptions& options, bool paths_required = true) {
  auto* paths = cmd->add_option("paths", options.paths, "annotated source files");
  if (paths_required) paths->required();
  cmd->add_option("--registry", options.registry_path, "registry override file");
  cmd->add_option("--dialect", options.dialect, "force dialect: java|eiffel|ebon");
  cmd->add_option("--fail-on", options.fail_on, "exit-1 threshold: notice|warning|error");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"semantic property toolchain"};
  app.name("semprop");
  app.require_subcommand(1);

  // --- lint ---------------------------------------------------------------
  CommonOptions lint_options;
  std::string lint_format = "text";
  auto* lint = app.add_subcommand("lint", "check annotated sources");
  add_common(lint, lint_options);
  lint->add_option("--format", lint_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- doc ----------------------------------------------------------------
  CommonOptions doc_options;
  std::string doc_out;
  std::string doc_view = "flat";
  std::string doc_perspective;
  std::string doc_visibility = "private";
  std::string doc_format = "markdown";
  auto* doc = app.add_subcommand("doc", "generate documentation views");
  add_common(doc, doc_options);
  doc->add_option("--out", doc_out, "output directory")->required();
  doc->add_option("--view", doc_view, "flat|short|contract|flat-short|flat-contract");
  doc->add_option("--perspective", doc_perspective, "viewing role");
  doc->add_option("--visibility", doc_visibility, "visibility floor");
  doc->add_option("--format", doc_format, "markdown|html")
      ->check(CLI::IsMember({"markdown", "html"}));

  // --- flatten ------------------------------------------------------------
  CommonOptions flatten_options;
  std::string flatten_module;
  auto* flatten = app.add_subcommand("flatten", "print the flat view of a module");
  add_common(flatten, flatten_options);
  flatten->add_option("--module", flatten_module, "module name")->required();

  // --- translate ----------------------------------------------------------
  std::string translate_from, translate_to, translate_file, translate_registry;
  auto* translate = app.add_subcommand("translate", "re-render properties in another dialect");
  translate->add_option("--from", translate_from, "source dialect")->required();
  translate->add_option("--to", translate_to, "target dialect")->required();
  translate->add_option("file", translate_file, "input file")->required();
  translate->add_option("--registry", translate_registry, "registry override file");

  // --- contracts ----------------------------------------------------------
  CommonOptions contracts_options;
  std::string contracts_out;
  auto* contracts = app.add_subcommand("contracts", "emit the assertion manifest");
  add_common(contracts, contracts_options);
  contracts->add_option("--out", contracts_out, "manifest file (- for stdout)")->required();

  // --- beliefs ------------------------------------------------------------
  auto* beliefs = app.add_subcommand("beliefs", "belief records and validity checking");
  beliefs->require_subcommand(1);

  CommonOptions beliefs_init_options;
  std::string init_db, init_holder = "anonymous", init_surety = "plausible", init_kind = "belief";
  std::vector<std::string> init_properties;
  auto* beliefs_init = beliefs->add_subcommand("init", "record beliefs for tracked properties");
  add_common(beliefs_init, beliefs_init_options);
  beliefs_init->add_option("--db", init_db, "belief store")->required();
  beliefs_init->add_option("--holder", init_holder, "agent recording the beliefs");
  beliefs_init->add_option("--surety", init_surety, "unsure|plausible|confident|convinced");
  beliefs_init->add_option("--kind", init_kind, "belief|claim");
  beliefs_init->add_option("--property", init_properties,
                           "properties to record (default: concurrency, time-complexity, "
                           "space-complexity)");

  CommonOptions beliefs_check_options;
  std::string check_db;
  double check_threshold = 0.5;
  auto* beliefs_check = beliefs->add_subcommand("check", "run continued-validity conditions");
  add_common(beliefs_check, beliefs_check_options);
  beliefs_check->add_option("--db", check_db, "belief store")->required();
  beliefs_check->add_option("--threshold", check_threshold, "size-change ratio (default 0.5)");

  CommonOptions beliefs_reval_options;
  std::string reval_db, reval_id, reval_holder, reval_surety;
  auto* beliefs_reval = beliefs->add_subcommand("revalidate", "revalidate a challenged record");
  beliefs_reval->add_option("id", reval_id, "record id")->required();
  add_common(beliefs_reval, beliefs_reval_options);
  beliefs_reval->add_option("--db", reval_db, "belief store")->required();
  beliefs_reval->add_option("--holder", reval_holder, "agent revalidating");
  beliefs_reval->add_option("--surety", reval_surety, "new surety");

  // --- conform ------------------------------------------------------------
  CommonOptions conform_options;
  std::string conform_spec;
  auto* conform = app.add_subcommand("conform", "check sources against an EBON-lite model");
  add_common(conform, conform_options);
  conform->add_option("--spec", conform_spec, "EBON-lite specification")->required();

  // --- registry -----------------------------------------------------------
  auto* registry_cmd = app.add_subcommand("registry", "inspect the property registry");
  registry_cmd->require_subcommand(1);
  std::string registry_list_category, registry_list_registry;
  auto* registry_list = registry_cmd->add_subcommand("list", "list property definitions");
  registry_list->add_option("--category", registry_list_category, "filter by category");
  registry_list->add_option("--registry", registry_list_registry, "registry override file");
  std::string registry_validate_registry, registry_validate_fail_on = "error";
  auto* registry_validate = registry_cmd->add_subcommand("validate", "validate the registry");
  registry_validate->add_option("--registry", registry_validate_registry,
                                "registry override file");
  registry_validate->add_option("--fail-on", registry_validate_fail_on,
                                "exit-1 threshold: notice|warning|error");

  // --- kind ---------------------------------------------------------------
  auto* kind = app.add_subcommand("kind", "classification graph queries");
  kind->require_subcommand(1);
  std::string kind_check_graph, kind_check_fail_on = "error";
  auto* kind_check = kind->add_subcommand("check", "validate a kind graph");
  kind_check->add_option("--graph", kind_check_graph, "graph fixture file")->required();
  kind_check->add_option("--fail-on", kind_check_fail_on,
                         "exit-1 threshold: notice|warning|error");
  std::string kind_query_what, kind_query_name, kind_query_graph;
  auto* kind_query = kind->add_subcommand("query", "query ancestors or parts");
  kind_query->add_option("what", kind_query_what, "ancestors|parts")->required();
  kind_query->add_option("name", kind_query_name, "kind name")->required();
  kind_query->add_option("--graph", kind_query_graph, "graph fixture file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    app.exit(e, sink, sink);
    std::cerr << sink.str();
    return 2;
  }

  try {
    if (*lint) {
      auto registry = load_registry_option(lint_options.registry_path);
      LoadedModel loaded = load_model(lint_options.paths, registry.registry, lint_options.dialect);
      std::vector<Diagnostic> seed = registry.diagnostics;
      seed.insert(seed.end(), loaded.diagnostics.begin(), loaded.diagnostics.end());
      auto all = lint_pipeline(loaded.model, registry.registry, std::move(seed));
      print_diagnostics(all, lint_format, std::cout);
      return exit_code_for(all, lint_options.fail_on);
    }

    if (*doc) {
      auto registry = load_registry_option(doc_options.registry_path);
      LoadedModel loaded = load_model(doc_options.paths, registry.registry, doc_options.dialect);
      ResolvedModel resolved = resolve_inherited(loaded.model, registry.registry);
      ResolvedModel filtered = filter_perspective(resolved, doc_perspective,
                                                  parse_visibility_or_throw(doc_visibility));
      ViewKind kind_value;
      if (!parse_view_kind(doc_view, kind_value)) throw UsageError{"bad --view: " + doc_view};
      DocFormat format;
      if (!parse_doc_format(doc_format, format)) throw UsageError{"bad --format: " + doc_format};

      std::vector<ViewDocument> views;
      std::vector<const Construct*> modules;
      for (const auto& [id, c] : filtered.model.constructs) {
        if (c.context_kind == ContextKind::Module) modules.push_back(&c);
      }
      std::sort(modules.begin(), modules.end(),
                [](const Construct* a, const Construct* b) { return a->name < b->name; });
      for (const Construct* m : modules) {
        views.push_back(view(filtered, m->id, kind_value, registry.registry));
      }
      auto documents = render_doc(views, format);
      fs::create_directories(doc_out);
      for (const auto& [filename, content] : documents) {
        std::ofstream out(fs::path(doc_out) / filename, std::ios::binary);
        if (!out) throw UsageError{"cannot write " + (fs::path(doc_out) / filename).string()};
        out << content;
        std::cout << (fs::path(doc_out) / filename).string() << "\n";
      }
      std::vector<Diagnostic> seed = registry.diagnostics;
      seed.insert(seed.end(), loaded.diagnostics.begin(), loaded.diagnostics.end());
      seed.insert(seed.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
      sort_diagnostics(seed);
      print_diagnostics(seed, "text", std::cerr);
      return exit_code_for(seed, doc_options.fail_on);
    }

    if (*flatten) {
      auto registry = load_registry_option(flatten_options.registry_path);
      LoadedModel loaded =
          load_model(flatten_options.paths, registry.registry, flatten_options.dialect);
      const Construct* module = loaded.model.find_module(flatten_module);
      if (!module) throw UsageError{"module not found (or ambiguous): " + flatten_module};
      ResolvedModel resolved = resolve_inherited(loaded.model, registry.registry);
      ViewDocument flat = view(resolved, module->id, ViewKind::Flat, registry.registry);
      std::cout << render_view_markdown(flat);
      return 0;
    }

    if (*translate) {
      Dialect from, to;
      if (!parse_dialect(translate_from, from)) {
        throw UsageError{"unknown dialect: " + translate_from};
      }
      if (!parse_dialect(translate_to, to)) throw UsageError{"unknown dialect: " + translate_to};
      auto registry = load_registry_option(translate_registry);
      auto instances = instances_for_translation(translate_file, from, registry.registry);
      std::cout << translate_properties(instances, from, to, builtin_dialect_graph());
      return 0;
    }

    if (*contracts) {
      auto registry = load_registry_option(contracts_options.registry_path);
      LoadedModel loaded =
          load_model(contracts_options.paths, registry.registry, contracts_options.dialect);
      ResolvedModel resolved = resolve_inherited(loaded.model, registry.registry);
      std::string manifest = emit_assertion_manifest(resolved);
      if (contracts_out == "-") {
        std::cout << manifest;
      } else {
        std::ofstream out(contracts_out, std::ios::binary);
        if (!out) throw UsageError{"cannot write " + contracts_out};
        out << manifest;
      }
      std::vector<Diagnostic> seed = loaded.diagnostics;
      seed.insert(seed.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
      sort_diagnostics(seed);
      print_diagnostics(seed, "text", std::cerr);
      return exit_code_for(seed, contracts_options.fail_on);
    }

    if (*beliefs_init) {
      auto registry = load_registry_option(beliefs_init_options.registry_path);
      LoadedModel loaded =
          load_model(beliefs_init_options.paths, registry.registry, beliefs_init_options.dialect);
      BeliefKind kind_value;
      if (!parse_belief_kind(init_kind, kind_value)) throw UsageError{"bad --kind: " + init_kind};
      Surety surety_value;
      if (!parse_surety(init_surety, surety_value)) throw UsageError{"bad --surety: " + init_surety};
      std::vector<std::string> tracked =
          init_properties.empty() ? related_property_names() : init_properties;

      BeliefStore store(init_db);
      std::string now = iso8601_now();
      int added = 0;
      for (const Construct* c : loaded.model.ordered_constructs()) {
        for (const auto& tracked_name : tracked) {
          std::string canonical = registry.registry.resolve_name(to_lower(tracked_name));
          bool has = false;
          for (const auto& inst : c->properties) {
            if (registry.registry.resolve_name(to_lower(inst.name)) == canonical) has = true;
          }
          if (!has) continue;
          bool exists = false;
          for (const auto& record : store.records()) {
            if (record.status != BeliefStatus::Retracted &&
                record.subject.path == c->location.path &&
                record.subject.property == canonical &&
                record.subject.signature == c->body_metrics.signature &&
                record.holder == init_holder) {
              exists = true;
            }
          }
          if (exists) continue;
          BeliefRecord record = record_belief(*c, loaded.model, registry.registry, canonical,
                                              init_holder, kind_value, surety_value, now);
          record.id = store.next_id();
          store.records().push_back(record);
          ++added;
        }
      }
      store.save();
      std::cout << "recorded " << added << " belief(s) in " << init_db << "\n";
      return 0;
    }

    if (*beliefs_check) {
      auto registry = load_registry_option(beliefs_check_options.registry_path);
      LoadedModel loaded =
          load_model(beliefs_check_options.paths, registry.registry, beliefs_check_options.dialect);
      BeliefStore store(check_db, /*must_exist=*/true);
      auto outcomes = check_beliefs(store.records(), loaded.model, registry.registry,
                                    check_threshold, iso8601_now());
      store.save();
      std::vector<Diagnostic> diagnostics;
      for (const auto& outcome : outcomes) {
        std::string reasons;
        for (const auto& reason : outcome.reasons) {
          if (!reasons.empty()) reasons += ", ";
          reasons += reason;
        }
        std::cout << "record " << outcome.record_id << ": "
                  << belief_status_name(outcome.old_status) << " -> "
                  << belief_status_name(outcome.new_status) << " (" << reasons << ")\n";
        diagnostics.push_back({Severity::Warning, "SP080", {check_db, 0, 0},
                               "belief " + outcome.record_id + " challenged: " + reasons, "", ""});
      }
      if (outcomes.empty()) std::cout << "all beliefs hold\n";
      return exit_code_for(diagnostics, beliefs_check_options.fail_on);
    }

    if (*beliefs_reval) {
      auto registry = load_registry_option(beliefs_reval_options.registry_path);
      LoadedModel loaded =
          load_model(beliefs_reval_options.paths, registry.registry, beliefs_reval_options.dialect);
      std::optional<Surety> surety_value;
      if (!reval_surety.empty()) {
        Surety s;
        if (!parse_surety(reval_surety, s)) throw UsageError{"bad --surety: " + reval_surety};
        surety_value = s;
      }
      BeliefStore store(reval_db, /*must_exist=*/true);
      revalidate(store.records(), reval_id, loaded.model, registry.registry, reval_holder,
                 surety_value, iso8601_now());
      store.save();
      std::cout << "record " << reval_id << " revalidated\n";
      return 0;
    }

    if (*conform) {
      auto registry = load_registry_option(conform_options.registry_path);
      SpecModel spec = parse_ebon_spec(read_file(conform_spec), conform_spec);
      LoadedModel loaded =
          load_model(conform_options.paths, registry.registry, conform_options.dialect);
      std::vector<Diagnostic> all = loaded.diagnostics;
      auto conformance = check_conformance(spec, loaded.model);
      all.insert(all.end(), conformance.begin(), conformance.end());
      sort_diagnostics(all);
      print_diagnostics(all, "text", std::cout);
      return exit_code_for(all, conform_options.fail_on);
    }

    if (*registry_list) {
      auto registry = load_registry_option(registry_list_registry);
      for (const auto& def : registry.registry.definitions()) {
        if (!registry_list_category.empty() &&
            registry_list_category != category_name(def.category)) {
          continue;
        }
        std::string contexts;
        for (ContextKind kind_value : def.contexts) {
          if (!contexts.empty()) contexts += ",";
          contexts += context_kind_name(kind_value);
        }
        std::cout << def.name << "\t" << category_name(def.category) << "\t"
                  << formality_name(def.formality) << "\t" << contexts << "\t"
                  << value_grammar_name(def.value_grammar) << "\t"
                  << multiplicity_name(def.multiplicity) << "\t"
                  << inherit_mode_name(def.inheritance_mode) << "\n";
      }
      return 0;
    }

    if (*registry_validate) {
      auto registry = load_registry_option(registry_validate_registry);
      std::vector<Diagnostic> all = registry.diagnostics;
      auto validation = validate_registry(registry.registry);
      all.insert(all.end(), validation.begin(), validation.end());
      anchor_locations(all, registry_validate_registry.empty() ? "<builtin-registry>"
                                                               : registry_validate_registry);
      sort_diagnostics(all);
      all.erase(std::unique(all.begin(), all.end()), all.end());
      print_diagnostics(all, "text", std::cout);
      if (all.empty()) std::cout << "registry ok (" << registry.registry.definitions().size()
                                 << " properties)\n";
      return exit_code_for(all, registry_validate_fail_on);
    }

    if (*kind_check) {
      KindGraph graph = load_kind_graph(kind_check_graph);
      auto diagnostics = check_graph(graph);
      anchor_locations(diagnostics, kind_check_graph);
      print_diagnostics(diagnostics, "text", std::cout);
      if (diagnostics.empty()) {
        std::cout << "graph ok (" << graph.nodes.size() << " kinds, " << graph.edges.size()
                  << " edges)\n";
      }
      return exit_code_for(diagnostics, kind_check_fail_on);
    }

    if (*kind_query) {
      KindGraph graph = load_kind_graph(kind_query_graph);
      std::set<std::string> result;
      if (kind_query_what == "ancestors") {
        result = ancestors(graph, kind_query_name);
      } else if (kind_query_what == "parts") {
        result = parts(graph, kind_query_name);
      } else {
        throw UsageError{"kind query expects 'ancestors' or 'parts', got '" + kind_query_what +
                         "'"};
      }
      for (const auto& name : result) std::cout << name << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "semprop: error: " << e.message << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace semprop::cli
