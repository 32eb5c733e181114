#include "doctest.h"

#include <numeric>

#include "semprop/beliefs.hpp"
#include "semprop/frontends.hpp"
#include "test_support.hpp"

using namespace semprop;

namespace {

// Second FNV-1a implementation, folded rather than looped, as a cross-check.
std::string fnv_reference(const std::string& text) {
  std::uint64_t hash = std::accumulate(text.begin(), text.end(), 14695981039346656037ULL,
                                       [](std::uint64_t h, char c) {
                                         return (h ^ static_cast<unsigned char>(c)) *
                                                1099511628211ULL;
                                       });
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

// n must be 0 mod 4 or 2 mod 4: fillers are `k = 1 ;` (4) and `k ;` (2).
std::string filler(long n) {
  std::string out;
  while (n >= 4) {
    out += "k = 1; ";
    n -= 4;
  }
  if (n == 2) out += "k; ";
  return out;
}

SourceModel model_with(long tokens, const std::string& extra_tag_lines,
                       const std::string& signature_suffix = "") {
  Registry registry = builtin_registry();
  std::string text =
      "/** F. */\n"
      "/** M. */\n"
      "class M {\n"
      "  /**\n"
      "   * Sorts the values in place.\n"
      "   * @time-complexity O(n log n)\n" +
      extra_tag_lines +
      "   */\n"
      "  public synchronized void sort(int[] v" + signature_suffix + ") { " + filler(tokens) +
      " }\n"
      "}\n";
  return link_model({parse_java_source(text, "m.java", registry)});
}

const Construct& sort_feature(const SourceModel& model) {
  const Construct* c = model.find(make_construct_id(ContextKind::Feature, "m.java", "M", "sort"));
  REQUIRE(c != nullptr);
  return *c;
}

const std::string kT0 = "2026-08-09T00:00:00Z";
const std::string kT1 = "2026-08-09T01:00:00Z";
const std::string kT2 = "2026-08-09T02:00:00Z";

}  // namespace

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
  for (const char* sample : {"", "a", "foobar", "public void f()"}) {
    CHECK(fnv1a64_hex(sample) == fnv_reference(sample));
  }
}

TEST_CASE("evidence of an empty body hashes the normalized signature") {
  Registry registry = builtin_registry();
  SourceModel model = link_model({parse_java_source(
      "class M {\n"
      "  /** d.\n"
      "   * @time-complexity O(1) */\n"
      "  public void f() { }\n"
      "}", "m.java", registry)});
  const Construct* f = model.find(make_construct_id(ContextKind::Feature, "m.java", "M", "f"));
  REQUIRE(f);
  Evidence evidence = compute_evidence(*f, model, registry);
  CHECK(evidence.body_token_count == 0);
  CHECK(f->body_metrics.signature == "public void f()");
  CHECK(evidence.signature_hash == fnv_reference("public void f()"));
  CHECK(evidence.related.at("time-complexity") == "O(1)");
}

TEST_CASE("identical constructs produce identical evidence") {
  SourceModel a = model_with(100, "");
  SourceModel b = model_with(100, "");
  Registry registry = builtin_registry();
  CHECK(compute_evidence(sort_feature(a), a, registry) ==
        compute_evidence(sort_feature(b), b, registry));
}

TEST_CASE("author values are captured from enclosing constructs") {
  Registry registry = builtin_registry();
  SourceModel model = link_model({parse_java_source(
      "/** F.\n * @author kiniry\n */\n"
      "package p;\n"
      "/** M. */\n"
      "class M {\n"
      "  /** d.\n"
      "   * @time-complexity O(1) */\n"
      "  public void f() { }\n"
      "}",
      "m.java", registry)});
  const Construct* f = model.find(make_construct_id(ContextKind::Feature, "m.java", "M", "f"));
  REQUIRE(f);
  Evidence evidence = compute_evidence(*f, model, registry);
  REQUIRE(evidence.author_value.has_value());
  CHECK(*evidence.author_value == "kiniry");
}

TEST_CASE("record_belief captures evidence; claims carry no surety") {
  Registry registry = builtin_registry();
  SourceModel model = model_with(100, "");
  BeliefRecord record = record_belief(sort_feature(model), model, registry, "time-complexity",
                                      "kiniry", BeliefKind::Belief, Surety::Confident, kT0);
  CHECK(record.status == BeliefStatus::Valid);
  REQUIRE(record.surety.has_value());
  CHECK(*record.surety == Surety::Confident);
  CHECK(record.evidence.body_token_count == 100);
  CHECK(record.subject.module == "M");

  BeliefRecord claim = record_belief(sort_feature(model), model, registry, "time-complexity",
                                     "kiniry", BeliefKind::Claim, Surety::Confident, kT0);
  CHECK_FALSE(claim.surety.has_value());

  CHECK_THROWS_AS(record_belief(sort_feature(model), model, registry, "space-complexity",
                                "kiniry", BeliefKind::Belief, Surety::Unsure, kT0),
                  UsageError);
}

TEST_CASE("size drift beyond the threshold challenges the belief") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel after = model_with(180, "");
  auto outcomes = check_beliefs(records, after, registry, 0.5, kT1);
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].new_status == BeliefStatus::Challenged);
  REQUIRE(outcomes[0].reasons.size() == 1);
  CHECK(outcomes[0].reasons[0] == "size");
  CHECK(records[0].status == BeliefStatus::Challenged);
  CHECK(records[0].checked_at == kT1);
}

TEST_CASE("size drift within the threshold keeps the belief valid") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel after = model_with(130, "");
  auto outcomes = check_beliefs(records, after, registry, 0.5, kT1);
  CHECK(outcomes.empty());
  CHECK(records[0].status == BeliefStatus::Valid);
  CHECK(records[0].checked_at == kT1);  // checked even when untripped
}

TEST_CASE("related concurrency change trips with reason related:concurrency") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "   * @concurrency GUARDED\n");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel after = model_with(100, "   * @concurrency SEQUENTIAL\n");
  auto outcomes = check_beliefs(records, after, registry, 0.5, kT1);
  REQUIRE(outcomes.size() == 1);
  REQUIRE(outcomes[0].reasons.size() == 1);
  CHECK(outcomes[0].reasons[0] == "related:concurrency");
}

TEST_CASE("signature changes trip as signature, not missing") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel after = model_with(100, "", ", int from");
  auto outcomes = check_beliefs(records, after, registry, 0.5, kT1);
  REQUIRE(outcomes.size() == 1);
  REQUIRE(outcomes[0].reasons.size() == 1);
  CHECK(outcomes[0].reasons[0] == "signature");
}

TEST_CASE("vanished subjects trip with reason missing") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel empty = link_model({parse_java_source("class M { }", "m.java", builtin_registry())});
  auto outcomes = check_beliefs(records, empty, registry, 0.5, kT1);
  REQUIRE(outcomes.size() == 1);
  REQUIRE(outcomes[0].reasons.size() == 1);
  CHECK(outcomes[0].reasons[0] == "missing");
}

TEST_CASE("checking twice on unchanged sources changes nothing the second time") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Confident, kT0)};
  records[0].id = "1";

  SourceModel after = model_with(180, "");
  auto first = check_beliefs(records, after, registry, 0.5, kT1);
  CHECK(first.size() == 1);
  auto second = check_beliefs(records, after, registry, 0.5, kT2);
  CHECK(second.empty());  // challenged records are not re-tripped
  CHECK(records[0].status == BeliefStatus::Challenged);
}

TEST_CASE("revalidate restores a challenged record and refreshes evidence") {
  Registry registry = builtin_registry();
  SourceModel before = model_with(100, "");
  std::vector<BeliefRecord> records = {record_belief(sort_feature(before), before, registry,
                                                     "time-complexity", "kiniry",
                                                     BeliefKind::Belief, Surety::Convinced, kT0)};
  records[0].id = "1";

  CHECK_THROWS_AS(revalidate(records, "1", before, registry, "kiniry", Surety::Confident, kT1),
                  UsageError);  // still valid

  SourceModel after = model_with(180, "");
  check_beliefs(records, after, registry, 0.5, kT1);
  REQUIRE(records[0].status == BeliefStatus::Challenged);

  // surety may go down on revalidation
  revalidate(records, "1", after, registry, "chalin", Surety::Plausible, kT2);
  CHECK(records[0].status == BeliefStatus::Valid);
  CHECK(records[0].evidence.body_token_count == 180);
  CHECK(records[0].holder == "chalin");
  CHECK(records[0].surety == Surety::Plausible);

  CHECK_THROWS_AS(revalidate(records, "404", after, registry, "x", std::nullopt, kT2),
                  UsageError);
}

TEST_CASE("surety is a total order and claims outrank beliefs") {
  CHECK(Surety::Unsure < Surety::Plausible);
  CHECK(Surety::Plausible < Surety::Confident);
  CHECK(Surety::Confident < Surety::Convinced);
}

TEST_CASE("store round-trips records as json lines") {
  testsupport::TempDir dir;
  std::string db = (dir.path() / "beliefs.jsonl").string();
  Registry registry = builtin_registry();
  SourceModel model = model_with(100, "   * @concurrency GUARDED\n");
  {
    BeliefStore store(db);
    BeliefRecord record = record_belief(sort_feature(model), model, registry, "time-complexity",
                                        "kiniry", BeliefKind::Belief, Surety::Confident, kT0);
    record.id = store.next_id();
    CHECK(record.id == "1");
    store.records().push_back(record);
    store.save();
  }
  {
    BeliefStore store(db);
    REQUIRE(store.records().size() == 1);
    const BeliefRecord& loaded = store.records()[0];
    CHECK(loaded.subject.property == "time-complexity");
    CHECK(loaded.evidence.related.at("concurrency") == "GUARDED");
    CHECK(loaded.evidence.body_token_count == 100);
    CHECK(loaded.created_at == kT0);
    CHECK(store.next_id() == "2");
  }
}

TEST_CASE("the store is exclusive per invocation") {
  testsupport::TempDir dir;
  std::string db = (dir.path() / "beliefs.jsonl").string();
  BeliefStore first(db);
  CHECK_THROWS_AS(BeliefStore second(db), UsageError);
}

TEST_CASE("malformed store lines are usage errors") {
  testsupport::TempDir dir;
  std::string db = dir.file("beliefs.jsonl", "this is not json\n");
  CHECK_THROWS_AS(BeliefStore store(db), UsageError);
}

TEST_CASE("readers require an existing store; init does not") {
  testsupport::TempDir dir;
  std::string db = (dir.path() / "beliefs.jsonl").string();
  CHECK_THROWS_AS(BeliefStore(db, /*must_exist=*/true), UsageError);
  BeliefStore creating(db);  // init-style open succeeds on a fresh path
  CHECK(creating.records().empty());
}
