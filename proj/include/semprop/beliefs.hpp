#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semprop/model.hpp"
#include "semprop/registry.hpp"

namespace semprop {

// 64-bit FNV-1a over UTF-8 bytes, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

enum class BeliefKind { Claim, Belief };
enum class Surety { Unsure, Plausible, Confident, Convinced };
enum class BeliefStatus { Valid, Challenged, Retracted };

const char* belief_kind_name(BeliefKind k);
bool parse_belief_kind(const std::string& text, BeliefKind& out);
const char* surety_name(Surety s);
bool parse_surety(const std::string& text, Surety& out);
const char* belief_status_name(BeliefStatus s);
bool parse_belief_status(const std::string& text, BeliefStatus& out);

// Properties whose values feed the continued-validity condition.
const std::vector<std::string>& related_property_names();

struct Evidence {
  long body_token_count = 0;
  std::string signature_hash;  // 16 hex digits
  std::optional<std::string> author_value;
  std::map<std::string, std::string> related;  // concurrency, *-complexity raw values

  bool operator==(const Evidence&) const = default;
};

struct BeliefSubject {
  std::string path;
  std::string module;     // empty for file-level subjects
  std::string signature;  // normalized signature of the construct
  std::string property;

  bool operator==(const BeliefSubject&) const = default;
};

struct BeliefRecord {
  std::string id;
  BeliefSubject subject;
  std::string holder;
  BeliefKind kind = BeliefKind::Belief;
  std::optional<Surety> surety;  // absent for claims
  BeliefStatus status = BeliefStatus::Valid;
  Evidence evidence;
  std::string created_at;  // ISO-8601 UTC
  std::string checked_at;
};

Evidence compute_evidence(const Construct& construct, const SourceModel& model,
                          const Registry& registry);

BeliefRecord record_belief(const Construct& construct, const SourceModel& model,
                           const Registry& registry, const std::string& property_name,
                           const std::string& holder, BeliefKind kind,
                           std::optional<Surety> surety, const std::string& timestamp);

struct BeliefCheckOutcome {
  std::string record_id;
  BeliefStatus old_status = BeliefStatus::Valid;
  BeliefStatus new_status = BeliefStatus::Valid;
  std::vector<std::string> reasons;  // every tripped condition
};

// Continued-validity checking against the current model. Tripped records
// move Valid -> Challenged; evidence refreshes only on revalidation.
std::vector<BeliefCheckOutcome> check_beliefs(std::vector<BeliefRecord>& records,
                                              const SourceModel& model, const Registry& registry,
                                              double threshold, const std::string& timestamp);

// Challenged -> Valid with fresh evidence; anything else is a usage error.
void revalidate(std::vector<BeliefRecord>& records, const std::string& record_id,
                const SourceModel& model, const Registry& registry, const std::string& holder,
                std::optional<Surety> surety, const std::string& timestamp);

// JSON-lines store with exclusive-open semantics: a second simultaneous
// opener fails fast with a usage error. `must_exist` is for readers
// (check/revalidate); init creates the file on save.
class BeliefStore {
 public:
  explicit BeliefStore(std::string path, bool must_exist = false);
  ~BeliefStore();

  BeliefStore(const BeliefStore&) = delete;
  BeliefStore& operator=(const BeliefStore&) = delete;

  std::vector<BeliefRecord>& records() { return records_; }
  const std::string& path() const { return path_; }

  std::string next_id() const;
  void save();

 private:
  std::string path_;
  int lock_fd_ = -1;
  std::vector<BeliefRecord> records_;
};

std::string belief_record_to_json(const BeliefRecord& record);
BeliefRecord belief_record_from_json(const std::string& line, const std::string& path, int line_no);

// Current UTC time as ISO-8601; overridable for deterministic tests.
std::string iso8601_now();

}  // namespace semprop
