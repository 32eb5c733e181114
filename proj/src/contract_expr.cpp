#include "semprop/contract_expr.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace semprop {

const char* compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "==";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

Operand ContractExpr::int_literal(long v) {
  Operand o;
  o.kind = OperandKind::IntLiteral;
  o.value = v;
  return o;
}

Operand ContractExpr::null_literal() {
  Operand o;
  o.kind = OperandKind::Null;
  return o;
}

Operand ContractExpr::variable(std::string name) {
  Operand o;
  o.kind = OperandKind::Variable;
  o.name = std::move(name);
  return o;
}

ContractExpr ContractExpr::compare(Operand lhs, CompareOp op, Operand rhs) {
  auto node = std::make_shared<ExprNode>();
  node->kind = ExprKind::Compare;
  node->op = op;
  node->left = std::move(lhs);
  node->right = std::move(rhs);
  return ContractExpr(node);
}

ContractExpr ContractExpr::negate(ContractExpr e) {
  auto node = std::make_shared<ExprNode>();
  node->kind = ExprKind::Not;
  node->lhs = e.node();
  return ContractExpr(node);
}

static ContractExpr binary(ExprKind kind, ContractExpr a, ContractExpr b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->lhs = a.node();
  node->rhs = b.node();
  return ContractExpr(node);
}

ContractExpr ContractExpr::conjoin(ContractExpr a, ContractExpr b) {
  return binary(ExprKind::And, std::move(a), std::move(b));
}

ContractExpr ContractExpr::disjoin(ContractExpr a, ContractExpr b) {
  return binary(ExprKind::Or, std::move(a), std::move(b));
}

ContractExpr ContractExpr::implication(ContractExpr a, ContractExpr b) {
  return binary(ExprKind::Implies, std::move(a), std::move(b));
}

static void print_operand(std::ostream& out, const Operand& o) {
  switch (o.kind) {
    case OperandKind::IntLiteral: out << o.value; break;
    case OperandKind::Null: out << "null"; break;
    case OperandKind::Variable: out << o.name; break;
  }
}

static void print_node(std::ostream& out, const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Compare:
      out << "(";
      print_operand(out, n.left);
      out << " " << compare_op_text(n.op) << " ";
      print_operand(out, n.right);
      out << ")";
      break;
    case ExprKind::Not:
      out << "(!";
      print_node(out, *n.lhs);
      out << ")";
      break;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Implies:
      out << "(";
      print_node(out, *n.lhs);
      out << (n.kind == ExprKind::And ? " && " : n.kind == ExprKind::Or ? " || " : " ==> ");
      print_node(out, *n.rhs);
      out << ")";
      break;
  }
}

std::string ContractExpr::canonical() const {
  if (empty()) return "";
  std::ostringstream out;
  print_node(out, *node_);
  return out.str();
}

static bool node_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Compare:
      return a->op == b->op && a->left == b->left && a->right == b->right;
    case ExprKind::Not:
      return node_equal(a->lhs, b->lhs);
    default:
      return node_equal(a->lhs, b->lhs) && node_equal(a->rhs, b->rhs);
  }
}

bool ContractExpr::operator==(const ContractExpr& other) const {
  return node_equal(node_, other.node_);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class TokKind { End, LParen, RParen, Not, AndAnd, OrOr, ImpliesArrow, Cmp, Int, Null, Ident };

struct Token {
  TokKind kind = TokKind::End;
  CompareOp cmp = CompareOp::Eq;
  long value = 0;
  std::string text;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Token t;
    t.pos = pos_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (c == '(') { ++pos_; t.kind = TokKind::LParen; return t; }
    if (c == ')') { ++pos_; t.kind = TokKind::RParen; return t; }
    if (two('&', '&')) { pos_ += 2; t.kind = TokKind::AndAnd; return t; }
    if (two('|', '|')) { pos_ += 2; t.kind = TokKind::OrOr; return t; }
    if (c == '=' && pos_ + 2 < text_.size() && text_[pos_ + 1] == '=' && text_[pos_ + 2] == '>') {
      pos_ += 3;
      t.kind = TokKind::ImpliesArrow;
      return t;
    }
    if (two('=', '=')) { pos_ += 2; t.kind = TokKind::Cmp; t.cmp = CompareOp::Eq; return t; }
    if (two('!', '=')) { pos_ += 2; t.kind = TokKind::Cmp; t.cmp = CompareOp::Ne; return t; }
    if (two('<', '=')) { pos_ += 2; t.kind = TokKind::Cmp; t.cmp = CompareOp::Le; return t; }
    if (two('>', '=')) { pos_ += 2; t.kind = TokKind::Cmp; t.cmp = CompareOp::Ge; return t; }
    if (c == '<') { ++pos_; t.kind = TokKind::Cmp; t.cmp = CompareOp::Lt; return t; }
    if (c == '>') { ++pos_; t.kind = TokKind::Cmp; t.cmp = CompareOp::Gt; return t; }
    if (c == '!') { ++pos_; t.kind = TokKind::Not; return t; }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      size_t start = pos_;
      if (c == '-') ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      t.kind = TokKind::Int;
      t.text = std::string(text_.substr(start, pos_ - start));
      t.value = std::stol(t.text);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      t.text = std::string(text_.substr(start, pos_ - start));
      t.kind = (t.text == "null") ? TokKind::Null : TokKind::Ident;
      return t;
    }
    t.kind = TokKind::End;
    t.text = std::string(1, c);
    t.pos = pos_;
    error_ = "unexpected character '" + t.text + "'";
    return t;
  }

  size_t pos() const { return pos_; }
  const std::string& error() const { return error_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  std::string error_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  ContractExpr parse_expression() {
    if (++depth_ > kMaxNesting) {
      fail("expression nested too deeply");
      return {};
    }
    ContractExpr result = parse_implies();
    --depth_;
    return result;
  }

  const std::string& error() const { return error_; }
  size_t consumed() const { return last_end_; }
  const Token& current() const { return cur_; }

 private:
  void advance() {
    last_end_ = lexer_.pos();
    cur_ = lexer_.next();
    if (error_.empty() && !lexer_.error().empty()) error_ = lexer_.error();
  }

  void fail(const std::string& message) {
    if (error_.empty()) error_ = message;
  }

  ContractExpr parse_implies() {
    ContractExpr lhs = parse_or();
    if (!error_.empty()) return {};
    if (cur_.kind == TokKind::ImpliesArrow) {
      advance();
      ContractExpr rhs = parse_implies();  // right-associative
      if (!error_.empty()) return {};
      return ContractExpr::implication(lhs, rhs);
    }
    return lhs;
  }

  ContractExpr parse_or() {
    ContractExpr lhs = parse_and();
    while (error_.empty() && cur_.kind == TokKind::OrOr) {
      advance();
      ContractExpr rhs = parse_and();
      if (!error_.empty()) return {};
      lhs = ContractExpr::disjoin(lhs, rhs);
    }
    return lhs;
  }

  ContractExpr parse_and() {
    ContractExpr lhs = parse_unary();
    while (error_.empty() && cur_.kind == TokKind::AndAnd) {
      advance();
      ContractExpr rhs = parse_unary();
      if (!error_.empty()) return {};
      lhs = ContractExpr::conjoin(lhs, rhs);
    }
    return lhs;
  }

  ContractExpr parse_unary() {
    if (cur_.kind == TokKind::Not) {
      if (++depth_ > kMaxNesting) {
        fail("expression nested too deeply");
        return {};
      }
      advance();
      ContractExpr inner = parse_unary();
      --depth_;
      if (!error_.empty()) return {};
      return ContractExpr::negate(inner);
    }
    return parse_primary();
  }

  ContractExpr parse_primary() {
    if (cur_.kind == TokKind::LParen) {
      advance();
      ContractExpr inner = parse_expression();
      if (!error_.empty()) return {};
      if (cur_.kind != TokKind::RParen) {
        fail("expected ')'");
        return {};
      }
      advance();
      // A parenthesized operand followed by a comparison is not supported;
      // comparisons bind operands directly.
      return inner;
    }
    return parse_comparison();
  }

  bool parse_operand(Operand& out) {
    switch (cur_.kind) {
      case TokKind::Int:
        out = ContractExpr::int_literal(cur_.value);
        advance();
        return true;
      case TokKind::Null:
        out = ContractExpr::null_literal();
        advance();
        return true;
      case TokKind::Ident:
        out = ContractExpr::variable(cur_.text);
        advance();
        return true;
      default:
        fail("expected variable, integer, or null");
        return false;
    }
  }

  ContractExpr parse_comparison() {
    Operand lhs;
    if (!parse_operand(lhs)) return {};
    if (cur_.kind != TokKind::Cmp) {
      fail("expected comparison operator");
      return {};
    }
    CompareOp op = cur_.cmp;
    advance();
    Operand rhs;
    if (!parse_operand(rhs)) return {};
    if ((lhs.kind == OperandKind::Null || rhs.kind == OperandKind::Null) &&
        op != CompareOp::Eq && op != CompareOp::Ne) {
      fail("null may only be compared with == or !=");
      return {};
    }
    return ContractExpr::compare(lhs, op, rhs);
  }

  static constexpr int kMaxNesting = 200;

  Lexer lexer_;
  Token cur_;
  std::string error_;
  size_t last_end_ = 0;
  int depth_ = 0;
};

}  // namespace

ExprParseResult parse_contract_expr(std::string_view text) {
  ExprParseResult result;
  Parser parser(text);
  ContractExpr expr = parser.parse_expression();
  if (!parser.error().empty()) {
    result.error = parser.error();
    return result;
  }
  if (parser.current().kind != TokKind::End) {
    result.error = "unexpected trailing input";
    return result;
  }
  if (expr.empty()) {
    result.error = "empty expression";
    return result;
  }
  result.expr = expr;
  result.consumed = text.size();
  return result;
}

ExprParseResult parse_leading_paren_expr(std::string_view text) {
  ExprParseResult result;
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size() || text[i] != '(') {
    result.error = "expected '('";
    return result;
  }
  // Find the matching close paren, then hand the span to the parser.
  int depth = 0;
  size_t end = std::string_view::npos;
  for (size_t j = i; j < text.size(); ++j) {
    if (text[j] == '(') ++depth;
    if (text[j] == ')') {
      --depth;
      if (depth == 0) {
        end = j;
        break;
      }
    }
  }
  if (end == std::string_view::npos) {
    result.error = "unterminated parenthesized expression";
    return result;
  }
  std::string_view span = text.substr(i, end - i + 1);
  ExprParseResult inner = parse_contract_expr(span);
  if (!inner.ok()) {
    result.error = inner.error;
    return result;
  }
  result.expr = inner.expr;
  result.consumed = end + 1;
  return result;
}

// ---------------------------------------------------------------------------
// Typing and evaluation
// ---------------------------------------------------------------------------

namespace {

bool assign_type(TypeEnvironment& env, const std::string& name, VarType type) {
  auto [it, inserted] = env.vars.emplace(name, type);
  if (!inserted && it->second != type) {
    env.consistent = false;
    if (env.conflict.empty()) env.conflict = name;
    return false;
  }
  return true;
}

void infer_node(TypeEnvironment& env, const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Compare: {
      bool has_null = n.left.kind == OperandKind::Null || n.right.kind == OperandKind::Null;
      bool has_int = n.left.kind == OperandKind::IntLiteral || n.right.kind == OperandKind::IntLiteral;
      bool relational = n.op != CompareOp::Eq && n.op != CompareOp::Ne;
      for (const Operand* o : {&n.left, &n.right}) {
        if (o->kind != OperandKind::Variable) continue;
        if (has_null) {
          assign_type(env, o->name, VarType::Ref);
        } else if (has_int || relational) {
          assign_type(env, o->name, VarType::Int);
        }
      }
      break;
    }
    case ExprKind::Not:
      infer_node(env, *n.lhs);
      break;
    default:
      infer_node(env, *n.lhs);
      infer_node(env, *n.rhs);
      break;
  }
}

// Variables equality-compared only against other variables get Int by default.
void default_untyped(TypeEnvironment& env, const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Compare:
      for (const Operand* o : {&n.left, &n.right}) {
        if (o->kind == OperandKind::Variable) env.vars.emplace(o->name, VarType::Int);
      }
      break;
    case ExprKind::Not:
      default_untyped(env, *n.lhs);
      break;
    default:
      default_untyped(env, *n.lhs);
      default_untyped(env, *n.rhs);
      break;
  }
}

// Two untyped variables compared with ==/!= must still agree; propagate after
// the first pass so `x == y && y == null` types x as Ref.
void propagate_equalities(TypeEnvironment& env, const ExprNode& n, bool& changed) {
  switch (n.kind) {
    case ExprKind::Compare: {
      if ((n.op == CompareOp::Eq || n.op == CompareOp::Ne) &&
          n.left.kind == OperandKind::Variable && n.right.kind == OperandKind::Variable) {
        auto l = env.vars.find(n.left.name);
        auto r = env.vars.find(n.right.name);
        if (l != env.vars.end() && r == env.vars.end()) {
          env.vars.emplace(n.right.name, l->second);
          changed = true;
        } else if (r != env.vars.end() && l == env.vars.end()) {
          env.vars.emplace(n.left.name, r->second);
          changed = true;
        } else if (l != env.vars.end() && r != env.vars.end() && l->second != r->second) {
          env.consistent = false;
          if (env.conflict.empty()) env.conflict = n.left.name;
        }
      }
      break;
    }
    case ExprKind::Not:
      propagate_equalities(env, *n.lhs, changed);
      break;
    default:
      propagate_equalities(env, *n.lhs, changed);
      propagate_equalities(env, *n.rhs, changed);
      break;
  }
}

}  // namespace

TypeEnvironment infer_types(const std::vector<ContractExpr>& exprs) {
  TypeEnvironment env;
  for (const auto& e : exprs) {
    if (!e.empty()) infer_node(env, *e.node());
  }
  bool changed = true;
  while (changed && env.consistent) {
    changed = false;
    for (const auto& e : exprs) {
      if (!e.empty()) propagate_equalities(env, *e.node(), changed);
    }
  }
  for (const auto& e : exprs) {
    if (!e.empty()) default_untyped(env, *e.node());
  }
  return env;
}

std::string Assignment::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : ints) {
    if (!first) out << ", ";
    out << name << "=" << value;
    first = false;
  }
  for (const auto& [name, nonnull] : refs) {
    if (!first) out << ", ";
    out << name << "=" << (nonnull ? "nonnull" : "null");
    first = false;
  }
  return out.str();
}

namespace {

// Operand value in the two-sorted oracle domain. Ints carry their value;
// refs are encoded 0 = null, 1 = nonnull.
long operand_value(const Operand& o, const Assignment& a) {
  switch (o.kind) {
    case OperandKind::IntLiteral: return o.value;
    case OperandKind::Null: return 0;
    case OperandKind::Variable: {
      auto it = a.ints.find(o.name);
      if (it != a.ints.end()) return it->second;
      auto rt = a.refs.find(o.name);
      if (rt != a.refs.end()) return rt->second ? 1 : 0;
      return 0;
    }
  }
  return 0;
}

bool eval_node(const ExprNode& n, const Assignment& a) {
  switch (n.kind) {
    case ExprKind::Compare: {
      long l = operand_value(n.left, a);
      long r = operand_value(n.right, a);
      switch (n.op) {
        case CompareOp::Eq: return l == r;
        case CompareOp::Ne: return l != r;
        case CompareOp::Lt: return l < r;
        case CompareOp::Le: return l <= r;
        case CompareOp::Gt: return l > r;
        case CompareOp::Ge: return l >= r;
      }
      return false;
    }
    case ExprKind::Not: return !eval_node(*n.lhs, a);
    case ExprKind::And: return eval_node(*n.lhs, a) && eval_node(*n.rhs, a);
    case ExprKind::Or: return eval_node(*n.lhs, a) || eval_node(*n.rhs, a);
    case ExprKind::Implies: return !eval_node(*n.lhs, a) || eval_node(*n.rhs, a);
  }
  return false;
}

}  // namespace

bool evaluate(const ContractExpr& expr, const Assignment& assignment) {
  if (expr.empty()) return true;
  return eval_node(*expr.node(), assignment);
}

ImplicationResult implies(const ContractExpr& antecedent, const ContractExpr& consequent) {
  ImplicationResult result;
  TypeEnvironment env = infer_types({antecedent, consequent});
  if (!env.consistent) {
    result.verdict = Verdict::Unknown;
    result.type_inconsistent = true;
    result.reason = "variable '" + env.conflict + "' used as both Int and Ref";
    return result;
  }
  std::vector<std::string> int_vars;
  std::vector<std::string> ref_vars;
  for (const auto& [name, type] : env.vars) {
    (type == VarType::Int ? int_vars : ref_vars).push_back(name);
  }
  if (int_vars.size() > kOracleMaxIntVars || ref_vars.size() > kOracleMaxRefVars) {
    result.verdict = Verdict::Unknown;
    result.reason = "too many free variables for exhaustive evaluation";
    return result;
  }

  Assignment a;
  for (const auto& v : int_vars) a.ints[v] = kOracleIntMin;
  for (const auto& v : ref_vars) a.refs[v] = false;

  // Odometer over the full domain; map iteration order is by variable name,
  // so the first counterexample found is deterministic.
  const long range = kOracleIntMax - kOracleIntMin + 1;
  size_t total = 1;
  for (size_t i = 0; i < int_vars.size(); ++i) total *= static_cast<size_t>(range);
  for (size_t i = 0; i < ref_vars.size(); ++i) total *= 2;

  for (size_t step = 0; step < total; ++step) {
    size_t rem = step;
    for (const auto& v : int_vars) {
      a.ints[v] = kOracleIntMin + static_cast<long>(rem % range);
      rem /= static_cast<size_t>(range);
    }
    for (const auto& v : ref_vars) {
      a.refs[v] = (rem % 2) != 0;
      rem /= 2;
    }
    if (evaluate(antecedent, a) && !evaluate(consequent, a)) {
      result.verdict = Verdict::False;
      result.witness = a;
      return result;
    }
  }
  result.verdict = Verdict::True;
  return result;
}

}  // namespace semprop
