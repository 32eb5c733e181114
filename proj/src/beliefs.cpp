#include "semprop/beliefs.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace semprop {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buffer;
}

const char* belief_kind_name(BeliefKind k) { return k == BeliefKind::Claim ? "claim" : "belief"; }

bool parse_belief_kind(const std::string& text, BeliefKind& out) {
  if (text == "claim") out = BeliefKind::Claim;
  else if (text == "belief") out = BeliefKind::Belief;
  else return false;
  return true;
}

const char* surety_name(Surety s) {
  switch (s) {
    case Surety::Unsure: return "unsure";
    case Surety::Plausible: return "plausible";
    case Surety::Confident: return "confident";
    case Surety::Convinced: return "convinced";
  }
  return "unsure";
}

bool parse_surety(const std::string& text, Surety& out) {
  if (text == "unsure") out = Surety::Unsure;
  else if (text == "plausible") out = Surety::Plausible;
  else if (text == "confident") out = Surety::Confident;
  else if (text == "convinced") out = Surety::Convinced;
  else return false;
  return true;
}

const char* belief_status_name(BeliefStatus s) {
  switch (s) {
    case BeliefStatus::Valid: return "valid";
    case BeliefStatus::Challenged: return "challenged";
    case BeliefStatus::Retracted: return "retracted";
  }
  return "valid";
}

bool parse_belief_status(const std::string& text, BeliefStatus& out) {
  if (text == "valid") out = BeliefStatus::Valid;
  else if (text == "challenged") out = BeliefStatus::Challenged;
  else if (text == "retracted") out = BeliefStatus::Retracted;
  else return false;
  return true;
}

const std::vector<std::string>& related_property_names() {
  static const std::vector<std::string> names = {"concurrency", "space-complexity",
                                                 "time-complexity"};
  return names;
}

namespace {

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<std::string> property_value(const Construct& c, const Registry& registry,
                                          const std::string& canonical) {
  for (const auto& inst : c.properties) {
    if (registry.resolve_name(to_lower(inst.name)) == canonical) return inst.raw_value;
  }
  return std::nullopt;
}

// `author` may live on the construct itself or an enclosing module/file.
std::optional<std::string> author_of(const Construct& c, const SourceModel& model,
                                     const Registry& registry) {
  const Construct* walk = &c;
  while (walk) {
    if (auto value = property_value(*walk, registry, "author")) return value;
    if (!walk->parent) break;
    walk = model.find(*walk->parent);
  }
  return std::nullopt;
}

std::string module_name_of(const Construct& c, const SourceModel& model) {
  const Construct* walk = &c;
  while (walk) {
    if (walk->context_kind == ContextKind::Module) return walk->name;
    if (!walk->parent) break;
    walk = model.find(*walk->parent);
  }
  return "";
}

// The declared name embedded in a stored normalized signature: the
// identifier immediately before '(' when present, else the last identifier.
std::string subject_name_from_signature(const std::string& signature) {
  size_t paren = signature.find('(');
  std::string head = paren == std::string::npos ? signature : signature.substr(0, paren);
  size_t end = head.find_last_not_of(" \t");
  if (end == std::string::npos) return "";
  size_t begin = end;
  auto ident_char = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '$';
  };
  if (!ident_char(head[end])) {
    // e.g. "count: INTEGER" -- take the first identifier instead
    size_t b = head.find_first_not_of(" \t");
    size_t e = b;
    while (e < head.size() && ident_char(head[e])) ++e;
    return b == std::string::npos ? "" : head.substr(b, e - b);
  }
  while (begin > 0 && ident_char(head[begin - 1])) --begin;
  std::string name = head.substr(begin, end - begin + 1);
  // Eiffel attribute "count: INTEGER" would pick the type; prefer the first
  // identifier when a ':' separates name and type.
  size_t colon = head.find(':');
  if (colon != std::string::npos && begin > colon) {
    size_t b = head.find_first_not_of(" \t");
    size_t e = b;
    while (e < head.size() && ident_char(head[e])) ++e;
    if (b != std::string::npos) name = head.substr(b, e - b);
  }
  return name;
}

const Construct* locate_subject(const BeliefSubject& subject, const SourceModel& model) {
  // Exact signature match first; fall back to the declared name so that a
  // signature change reads as evidence drift rather than a missing subject.
  const Construct* by_name = nullptr;
  std::string wanted_name = subject_name_from_signature(subject.signature);
  for (const auto& [id, c] : model.constructs) {
    if (c.location.path != subject.path) continue;
    if (module_name_of(c, model) != subject.module) continue;
    if (c.body_metrics.signature == subject.signature) return &c;
    if (!wanted_name.empty() && c.name == wanted_name && !by_name) by_name = &c;
  }
  return by_name;
}

}  // namespace

Evidence compute_evidence(const Construct& construct, const SourceModel& model,
                          const Registry& registry) {
  Evidence evidence;
  evidence.body_token_count = construct.body_metrics.token_count;
  evidence.signature_hash = fnv1a64_hex(construct.body_metrics.signature);
  evidence.author_value = author_of(construct, model, registry);
  for (const auto& name : related_property_names()) {
    if (auto value = property_value(construct, registry, name)) evidence.related[name] = *value;
  }
  return evidence;
}

BeliefRecord record_belief(const Construct& construct, const SourceModel& model,
                           const Registry& registry, const std::string& property_name,
                           const std::string& holder, BeliefKind kind,
                           std::optional<Surety> surety, const std::string& timestamp) {
  std::string canonical = registry.resolve_name(to_lower(property_name));
  if (!property_value(construct, registry, canonical)) {
    throw UsageError{"construct '" + construct.id + "' carries no '" + canonical + "' property"};
  }
  BeliefRecord record;
  record.subject = {construct.location.path, module_name_of(construct, model),
                    construct.body_metrics.signature, canonical};
  record.holder = holder;
  record.kind = kind;
  record.surety = kind == BeliefKind::Claim ? std::nullopt : surety;
  record.status = BeliefStatus::Valid;
  record.evidence = compute_evidence(construct, model, registry);
  record.created_at = timestamp;
  record.checked_at = timestamp;
  return record;
}

std::vector<BeliefCheckOutcome> check_beliefs(std::vector<BeliefRecord>& records,
                                              const SourceModel& model, const Registry& registry,
                                              double threshold, const std::string& timestamp) {
  if (threshold <= 0) throw UsageError{"belief threshold must be positive"};
  std::vector<BeliefCheckOutcome> outcomes;
  for (auto& record : records) {
    if (record.status != BeliefStatus::Valid) continue;
    BeliefCheckOutcome outcome;
    outcome.record_id = record.id;
    outcome.old_status = record.status;
    outcome.new_status = record.status;

    const Construct* subject = locate_subject(record.subject, model);
    if (!subject) {
      outcome.new_status = BeliefStatus::Challenged;
      outcome.reasons.push_back("missing");
    } else {
      Evidence current = compute_evidence(*subject, model, registry);
      long old_count = record.evidence.body_token_count;
      long new_count = current.body_token_count;
      if (old_count > 0) {
        double change = std::abs(static_cast<double>(new_count - old_count));
        if (change > threshold * static_cast<double>(old_count)) {
          outcome.reasons.push_back("size");
        }
      } else if (new_count > 0) {
        outcome.reasons.push_back("size");
      }
      if (current.signature_hash != record.evidence.signature_hash) {
        outcome.reasons.push_back("signature");
      }
      if (current.author_value != record.evidence.author_value) {
        outcome.reasons.push_back("author");
      }
      for (const auto& name : related_property_names()) {
        auto old_it = record.evidence.related.find(name);
        auto new_it = current.related.find(name);
        bool old_has = old_it != record.evidence.related.end();
        bool new_has = new_it != current.related.end();
        if (old_has != new_has || (old_has && old_it->second != new_it->second)) {
          outcome.reasons.push_back("related:" + name);
        }
      }
      if (!outcome.reasons.empty()) outcome.new_status = BeliefStatus::Challenged;
    }

    record.status = outcome.new_status;
    record.checked_at = timestamp;
    if (!outcome.reasons.empty()) outcomes.push_back(outcome);
  }
  return outcomes;
}

void revalidate(std::vector<BeliefRecord>& records, const std::string& record_id,
                const SourceModel& model, const Registry& registry, const std::string& holder,
                std::optional<Surety> surety, const std::string& timestamp) {
  for (auto& record : records) {
    if (record.id != record_id) continue;
    if (record.status != BeliefStatus::Challenged) {
      throw UsageError{"record '" + record_id + "' is " + belief_status_name(record.status) +
                       "; only challenged records can be revalidated"};
    }
    const Construct* subject = locate_subject(record.subject, model);
    if (!subject) {
      throw UsageError{"subject of record '" + record_id + "' no longer exists"};
    }
    record.status = BeliefStatus::Valid;
    record.evidence = compute_evidence(*subject, model, registry);
    record.subject.signature = subject->body_metrics.signature;
    if (!holder.empty()) record.holder = holder;
    if (record.kind == BeliefKind::Belief && surety) record.surety = surety;
    record.checked_at = timestamp;
    return;
  }
  throw UsageError{"no belief record with id '" + record_id + "'"};
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

std::string belief_record_to_json(const BeliefRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["subject_path"] = record.subject.path;
  j["subject_module"] = record.subject.module;
  j["subject_signature"] = record.subject.signature;
  j["property"] = record.subject.property;
  j["holder"] = record.holder;
  j["kind"] = belief_kind_name(record.kind);
  if (record.surety) {
    j["surety"] = surety_name(*record.surety);
  } else {
    j["surety"] = nullptr;
  }
  j["status"] = belief_status_name(record.status);
  nlohmann::ordered_json evidence;
  evidence["token_count"] = record.evidence.body_token_count;
  evidence["signature_hash"] = record.evidence.signature_hash;
  if (record.evidence.author_value) {
    evidence["author"] = *record.evidence.author_value;
  } else {
    evidence["author"] = nullptr;
  }
  evidence["related"] = record.evidence.related;
  j["evidence"] = evidence;
  j["created_at"] = record.created_at;
  j["checked_at"] = record.checked_at;
  return j.dump();
}

BeliefRecord belief_record_from_json(const std::string& line, const std::string& path,
                                     int line_no) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw UsageError{path + ":" + std::to_string(line_no) + ": malformed belief record"};
  }
  try {
    BeliefRecord record;
    record.id = j.at("id").get<std::string>();
    record.subject.path = j.at("subject_path").get<std::string>();
    record.subject.module = j.at("subject_module").get<std::string>();
    record.subject.signature = j.at("subject_signature").get<std::string>();
    record.subject.property = j.at("property").get<std::string>();
    record.holder = j.at("holder").get<std::string>();
    if (!parse_belief_kind(j.at("kind").get<std::string>(), record.kind)) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": bad belief kind"};
    }
    if (j.contains("surety") && !j.at("surety").is_null()) {
      Surety s;
      if (!parse_surety(j.at("surety").get<std::string>(), s)) {
        throw UsageError{path + ":" + std::to_string(line_no) + ": bad surety"};
      }
      record.surety = s;
    }
    if (!parse_belief_status(j.at("status").get<std::string>(), record.status)) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": bad status"};
    }
    const auto& evidence = j.at("evidence");
    record.evidence.body_token_count = evidence.at("token_count").get<long>();
    record.evidence.signature_hash = evidence.at("signature_hash").get<std::string>();
    if (evidence.contains("author") && !evidence.at("author").is_null()) {
      record.evidence.author_value = evidence.at("author").get<std::string>();
    }
    if (evidence.contains("related")) {
      record.evidence.related =
          evidence.at("related").get<std::map<std::string, std::string>>();
    }
    record.created_at = j.at("created_at").get<std::string>();
    record.checked_at = j.at("checked_at").get<std::string>();
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError{path + ":" + std::to_string(line_no) + ": " + e.what()};
  }
}

BeliefStore::BeliefStore(std::string path, bool must_exist) : path_(std::move(path)) {
  lock_fd_ = ::open((path_ + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
  if (lock_fd_ < 0) throw UsageError{"cannot open belief store lock for " + path_};
  if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(lock_fd_);
    lock_fd_ = -1;
    throw UsageError{"belief store '" + path_ + "' is in use by another invocation"};
  }
  std::ifstream in(path_);
  if (must_exist && !in) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
    ::unlink((path_ + ".lock").c_str());
    lock_fd_ = -1;
    throw UsageError{"cannot read belief store: " + path_};
  }
  if (in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      records_.push_back(belief_record_from_json(line, path_, line_no));
    }
  }
}

BeliefStore::~BeliefStore() {
  if (lock_fd_ >= 0) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
    ::unlink((path_ + ".lock").c_str());
  }
}

std::string BeliefStore::next_id() const {
  long max_id = 0;
  for (const auto& record : records_) {
    try {
      max_id = std::max(max_id, std::stol(record.id));
    } catch (...) {
      // non-numeric ids participate only by count
      max_id = std::max(max_id, static_cast<long>(records_.size()));
    }
  }
  return std::to_string(max_id + 1);
}

void BeliefStore::save() {
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw UsageError{"cannot write belief store: " + path_};
    for (const auto& record : records_) {
      out << belief_record_to_json(record) << "\n";
    }
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) {
    throw UsageError{"cannot replace belief store: " + path_};
  }
}

std::string iso8601_now() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace semprop
