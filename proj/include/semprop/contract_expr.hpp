#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semprop {

// Boolean sub-language used by require/ensure/invariant/guard payloads.
// Deliberately small: comparisons over integer literals, `null`, and
// variables, combined with !, &&, || and ==>. No arithmetic, no calls.

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* compare_op_text(CompareOp op);

enum class OperandKind { IntLiteral, Null, Variable };

struct Operand {
  OperandKind kind = OperandKind::IntLiteral;
  long value = 0;    // IntLiteral
  std::string name;  // Variable

  bool operator==(const Operand&) const = default;
};

enum class ExprKind { Compare, Not, And, Or, Implies };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Compare;
  ExprPtr lhs;  // Not uses lhs only
  ExprPtr rhs;
  CompareOp op = CompareOp::Eq;  // Compare
  Operand left;                  // Compare
  Operand right;                 // Compare
};

// Value wrapper around an immutable AST; default-constructed means "absent".
class ContractExpr {
 public:
  ContractExpr() = default;
  explicit ContractExpr(ExprPtr node) : node_(std::move(node)) {}

  bool empty() const { return node_ == nullptr; }
  const ExprPtr& node() const { return node_; }

  // Fully parenthesized, single-spaced: (thread != null), ((x > 0) || (x > -1))
  std::string canonical() const;

  bool operator==(const ContractExpr& other) const;

  static ContractExpr compare(Operand lhs, CompareOp op, Operand rhs);
  static ContractExpr negate(ContractExpr e);
  static ContractExpr conjoin(ContractExpr a, ContractExpr b);
  static ContractExpr disjoin(ContractExpr a, ContractExpr b);
  static ContractExpr implication(ContractExpr a, ContractExpr b);

  static Operand int_literal(long v);
  static Operand null_literal();
  static Operand variable(std::string name);

 private:
  ExprPtr node_;
};

struct ExprParseResult {
  ContractExpr expr;
  std::string error;   // empty on success
  size_t consumed = 0; // bytes consumed from the input
  bool ok() const { return error.empty(); }
};

// Parses a full expression; trailing non-space input is an error.
ExprParseResult parse_contract_expr(std::string_view text);

// Parses a leading parenthesized expression "( ... )" and reports how much
// input it consumed, leaving trailing text to the caller.
ExprParseResult parse_leading_paren_expr(std::string_view text);

enum class VarType { Int, Ref };

struct TypeEnvironment {
  std::map<std::string, VarType> vars;
  bool consistent = true;
  std::string conflict;  // offending variable or construct when inconsistent
};

// Infers variable types across one or more expressions sharing a scope.
// Ref is inferred from comparison against null; everything else is Int.
TypeEnvironment infer_types(const std::vector<ContractExpr>& exprs);

// One concrete valuation: Int variables map to a value in [-2, 2], Ref
// variables to null (false) or nonnull (true).
struct Assignment {
  std::map<std::string, long> ints;
  std::map<std::string, bool> refs;  // true = nonnull

  std::string to_string() const;  // "x=0, y=null"
};

bool evaluate(const ContractExpr& expr, const Assignment& assignment);

enum class Verdict { True, False, Unknown };

const char* verdict_name(Verdict v);

struct ImplicationResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Assignment> witness;  // set when verdict == False
  std::string reason;                 // set when verdict == Unknown
  bool type_inconsistent = false;     // Unknown due to conflicting variable types
};

// Brute-force implication oracle. Int variables range over {-2..2}, Ref
// variables over {null, nonnull}. Returns Unknown beyond 6 Int / 4 Ref
// combined free variables or on inconsistent typing.
ImplicationResult implies(const ContractExpr& antecedent, const ContractExpr& consequent);

inline constexpr long kOracleIntMin = -2;
inline constexpr long kOracleIntMax = 2;
inline constexpr int kOracleMaxIntVars = 6;
inline constexpr int kOracleMaxRefVars = 4;

}  // namespace semprop
