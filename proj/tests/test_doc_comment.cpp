#include "doctest.h"

#include "semprop/frontends.hpp"
#include "test_support.hpp"

using namespace semprop;

namespace {

const char* kIsOffBody =
    "\n"
    " * Returns a boolean indicating whether any debugging \n"
    " * facilities are turned off for a particular thread.\n"
    " *\n"
    " * @concurrency GUARDED\n"
    " * @require (thread != null) Parameters must be valid.\n"
    " * @modify QUERY\n"
    " * @param thread we are checking the debugging condition \n"
    " * of this thread.\n"
    " * @return a boolean indicating whether any debugging \n"
    " * facilities are turned off for the specified thread.\n"
    " * @review kiniry Are the isOff() methods necessary at all?\n"
    " *";

}  // namespace

TEST_CASE("isOff doc comment parses into six instances") {
  Registry registry = builtin_registry();
  DocCommentResult result = parse_doc_comment(kIsOffBody, registry, "isoff.java", 1);

  CHECK(result.description ==
        "Returns a boolean indicating whether any debugging facilities are turned off for a "
        "particular thread.");
  REQUIRE(result.instances.size() == 6);
  CHECK(result.diagnostics.empty());

  CHECK(result.instances[0].name == "concurrency");
  const auto* concurrency = std::get_if<KeywordTokenPayload>(&result.instances[0].payload);
  REQUIRE(concurrency);
  REQUIRE(concurrency->tokens.size() == 1);
  CHECK(concurrency->tokens[0] == "GUARDED");

  CHECK(result.instances[1].name == "require");
  const auto* require_payload = std::get_if<ExpressionPayload>(&result.instances[1].payload);
  REQUIRE(require_payload);
  CHECK(require_payload->expr.canonical() == "(thread != null)");
  CHECK(require_payload->trailing == "Parameters must be valid.");

  CHECK(result.instances[2].name == "modify");  // written form preserved
  const auto* modify = std::get_if<KeywordTokenPayload>(&result.instances[2].payload);
  REQUIRE(modify);
  REQUIRE(modify->tokens.size() == 1);
  CHECK(modify->tokens[0] == "QUERY");

  CHECK(result.instances[3].name == "param");
  const auto* param = std::get_if<NameThenTextPayload>(&result.instances[3].payload);
  REQUIRE(param);
  CHECK(param->name == "thread");
  CHECK(param->text == "we are checking the debugging condition of this thread.");

  CHECK(result.instances[4].name == "return");
  const auto* ret = std::get_if<FreeformPayload>(&result.instances[4].payload);
  REQUIRE(ret);
  CHECK(ret->text ==
        "a boolean indicating whether any debugging facilities are turned off for the specified "
        "thread.");

  CHECK(result.instances[5].name == "review");
  const auto* review = std::get_if<NameThenTextPayload>(&result.instances[5].payload);
  REQUIRE(review);
  CHECK(review->name == "kiniry");
  CHECK(review->text == "Are the isOff() methods necessary at all?");

  // tag order equals textual order; lines are 1-based and increasing
  for (size_t i = 1; i < result.instances.size(); ++i) {
    CHECK(result.instances[i - 1].location.line < result.instances[i].location.line);
  }
}

TEST_CASE("prose-only comment has no instances") {
  Registry registry = builtin_registry();
  DocCommentResult result = parse_doc_comment(" only prose ", registry);
  CHECK(result.description == "only prose");
  CHECK(result.instances.empty());
  CHECK(result.diagnostics.empty());
}

TEST_CASE("expression payloads cross-check against hand-built ASTs") {
  Registry registry = builtin_registry();
  DocCommentResult result =
      parse_doc_comment("@require (x > 0) pos\n@ensure (r >= 0) nonneg", registry);
  REQUIRE(result.instances.size() == 2);

  ContractExpr want_pre = ContractExpr::compare(ContractExpr::variable("x"), CompareOp::Gt,
                                                ContractExpr::int_literal(0));
  ContractExpr want_post = ContractExpr::compare(ContractExpr::variable("r"), CompareOp::Ge,
                                                 ContractExpr::int_literal(0));
  const auto* pre = std::get_if<ExpressionPayload>(&result.instances[0].payload);
  const auto* post = std::get_if<ExpressionPayload>(&result.instances[1].payload);
  REQUIRE(pre);
  REQUIRE(post);
  CHECK(pre->expr == want_pre);
  CHECK(pre->trailing == "pos");
  CHECK(post->expr == want_post);
  CHECK(post->trailing == "nonneg");
}

TEST_CASE("unterminated contract expression degrades with SP010") {
  Registry registry = builtin_registry();
  DocCommentResult result = parse_doc_comment("@require (x > 0 never closed", registry);
  REQUIRE(result.instances.size() == 1);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].code == "SP010");
  CHECK(result.diagnostics[0].severity == Severity::Error);
  CHECK(std::holds_alternative<FreeformPayload>(result.instances[0].payload));
  CHECK(result.instances[0].grammar_fallback);
  CHECK(result.instances[0].raw_value == "(x > 0 never closed");
}

TEST_CASE("parse_doc_comment is total on arbitrary text") {
  Registry registry = builtin_registry();
  const char* nasty[] = {
      "",
      "@",
      "@@@",
      "* * * @",
      "@require",
      "@review\n@review\n@review",
      "\x01\x02 binary!\xff",
      "@param\n\n\n@param",
  };
  for (const char* body : nasty) {
    CAPTURE(body);
    DocCommentResult result = parse_doc_comment(body, registry);
    CHECK(result.instances.size() <= 8);  // no crash, sane output
  }
}

TEST_CASE("explicit visibility modifier on a tag") {
  Registry registry = builtin_registry();
  DocCommentResult result = parse_doc_comment("@review(private) kiniry internal note", registry);
  REQUIRE(result.instances.size() == 1);
  CHECK(result.instances[0].name == "review");
  REQUIRE(result.instances[0].explicit_visibility.has_value());
  CHECK(*result.instances[0].explicit_visibility == Visibility::Private);
}

TEST_CASE("unknown tags keep freeform payloads for later diagnosis") {
  Registry registry = builtin_registry();
  DocCommentResult result = parse_doc_comment("@frobnicate all the things", registry);
  REQUIRE(result.instances.size() == 1);
  CHECK(std::holds_alternative<FreeformPayload>(result.instances[0].payload));
  CHECK(result.diagnostics.empty());  // SP001 is the checker's job
}
