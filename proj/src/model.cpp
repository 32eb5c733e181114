#include "semprop/model.hpp"

#include <algorithm>

namespace semprop {

const char* visibility_name(Visibility v) {
  switch (v) {
    case Visibility::Public: return "public";
    case Visibility::Children: return "children";
    case Visibility::ModuleScoped: return "module";
    case Visibility::Private: return "private";
  }
  return "public";
}

bool parse_visibility(const std::string& text, Visibility& out) {
  if (text == "public") out = Visibility::Public;
  else if (text == "children") out = Visibility::Children;
  else if (text == "module") out = Visibility::ModuleScoped;
  else if (text == "private") out = Visibility::Private;
  else return false;
  return true;
}

const Construct* SourceModel::find(const std::string& id) const {
  auto it = constructs.find(id);
  return it != constructs.end() ? &it->second : nullptr;
}

Construct* SourceModel::find_mutable(const std::string& id) {
  auto it = constructs.find(id);
  return it != constructs.end() ? &it->second : nullptr;
}

const Construct* SourceModel::find_module(const std::string& name) const {
  const Construct* found = nullptr;
  for (const auto& [id, c] : constructs) {
    if (c.context_kind == ContextKind::Module && c.name == name) {
      if (found) return nullptr;  // ambiguous
      found = &c;
    }
  }
  return found;
}

std::vector<const Construct*> SourceModel::ordered_constructs() const {
  std::vector<const Construct*> files;
  for (const auto& [id, c] : constructs) {
    if (c.context_kind == ContextKind::File) files.push_back(&c);
  }
  std::sort(files.begin(), files.end(),
            [](const Construct* a, const Construct* b) { return a->location.path < b->location.path; });
  std::vector<const Construct*> out;
  auto emit = [&](auto&& self, const Construct* c) -> void {
    out.push_back(c);
    for (const auto& child_id : c->children) {
      if (const Construct* child = find(child_id)) self(self, child);
    }
  };
  for (const Construct* f : files) emit(emit, f);
  return out;
}

std::string make_construct_id(ContextKind kind, const std::string& path, const std::string& owner,
                              const std::string& name) {
  switch (kind) {
    case ContextKind::File: return "file:" + path;
    case ContextKind::Module: return "module:" + path + "#" + name;
    case ContextKind::Feature:
      return "feature:" + path + "#" + (owner.empty() ? name : owner + "." + name);
    case ContextKind::Variable:
      return "variable:" + path + "#" + (owner.empty() ? name : owner + "." + name);
  }
  return path + "#" + name;
}

}  // namespace semprop
