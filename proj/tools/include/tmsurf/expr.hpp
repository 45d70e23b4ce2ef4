#pragma once

/// Single-variable real expressions for potential input.
///
/// expr   := term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := '-' factor | base ('^' integer)?
/// base   := number | variable | func '(' expr ')' | '(' expr ')'
/// func   := sinh | cosh | sin | cos | exp
///
/// '^' binds tighter than unary minus, so "-u^2" is -(u^2).

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tms::cli {

enum class ExprKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Sinh, Cosh, Sin, Cos, Exp };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Number;
  double value = 0.0;      // Number
  unsigned exponent = 0;   // Pow
  ExprPtr lhs;             // unary operand or left operand
  ExprPtr rhs;
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(ExprPtr root, char variable) : root_(std::move(root)), variable_(variable) {}

  /// Throws tms::Error(InvalidDomain) on division by zero.
  double operator()(double x) const;
  Expr derivative() const;
  /// Canonical text; parse(to_string()) reproduces the tree.
  std::string to_string() const;

  const ExprPtr& root() const { return root_; }
  char variable() const { return variable_; }

 private:
  ExprPtr root_;
  char variable_ = 'u';
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { SyntaxError, WrongVariable };
  ParseError(Kind kind, std::size_t position, std::vector<std::string> expected, const std::string& message);

  Kind kind() const { return kind_; }
  /// Zero-based byte offset into the input.
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Parses text in the given variable ('u' or 'v'). Throws ParseError.
Expr parse_potential(const std::string& text, char variable);

}  // namespace tms::cli
