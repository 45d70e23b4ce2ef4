#include "tmsurf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "tms/error.hpp"

namespace tms::cli {

namespace {

ExprPtr make(ExprKind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

ExprPtr literal(double c) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Number;
  n->value = c;
  return n;
}

bool constant_of(const ExprPtr& e, double& c) {
  if (e->kind == ExprKind::Number) {
    c = e->value;
    return true;
  }
  if (e->kind == ExprKind::Negate && e->lhs->kind == ExprKind::Number) {
    c = -e->lhs->value;
    return true;
  }
  return false;
}

bool is_const(const ExprPtr& e, double c) {
  double x = 0.0;
  return constant_of(e, x) && x == c;
}

ExprPtr num(double c) { return c < 0.0 ? make(ExprKind::Negate, literal(-c)) : literal(c == 0.0 ? 0.0 : c); }

ExprPtr neg(const ExprPtr& a) {
  double c = 0.0;
  if (constant_of(a, c)) return num(-c);
  if (a->kind == ExprKind::Negate) return a->lhs;
  return make(ExprKind::Negate, a);
}

ExprPtr add(const ExprPtr& a, const ExprPtr& b) {
  double x = 0.0, y = 0.0;
  if (constant_of(a, x) && constant_of(b, y)) return num(x + y);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(ExprKind::Add, a, b);
}

ExprPtr sub(const ExprPtr& a, const ExprPtr& b) {
  double x = 0.0, y = 0.0;
  if (constant_of(a, x) && constant_of(b, y)) return num(x - y);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(b);
  return make(ExprKind::Sub, a, b);
}

ExprPtr mul(const ExprPtr& a, const ExprPtr& b) {
  double x = 0.0, y = 0.0;
  if (constant_of(a, x) && constant_of(b, y)) return num(x * y);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return num(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(b);
  if (is_const(b, -1.0)) return neg(a);
  return make(ExprKind::Mul, a, b);
}

ExprPtr divide(const ExprPtr& a, const ExprPtr& b) {
  if (is_const(a, 0.0)) return num(0.0);
  if (is_const(b, 1.0)) return a;
  return make(ExprKind::Div, a, b);
}

ExprPtr power(const ExprPtr& a, unsigned n) {
  if (n == 0) return num(1.0);
  if (n == 1) return a;
  auto p = std::make_shared<ExprNode>();
  p->kind = ExprKind::Pow;
  p->exponent = n;
  p->lhs = a;
  return p;
}

ExprPtr diff(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number: return num(0.0);
    case ExprKind::Variable: return num(1.0);
    case ExprKind::Negate: return neg(diff(e->lhs));
    case ExprKind::Add: return add(diff(e->lhs), diff(e->rhs));
    case ExprKind::Sub: return sub(diff(e->lhs), diff(e->rhs));
    case ExprKind::Mul: return add(mul(diff(e->lhs), e->rhs), mul(e->lhs, diff(e->rhs)));
    case ExprKind::Div:
      return divide(sub(mul(diff(e->lhs), e->rhs), mul(e->lhs, diff(e->rhs))), power(e->rhs, 2));
    case ExprKind::Pow:
      return mul(mul(num(static_cast<double>(e->exponent)), power(e->lhs, e->exponent - 1)), diff(e->lhs));
    case ExprKind::Sinh: return mul(make(ExprKind::Cosh, e->lhs), diff(e->lhs));
    case ExprKind::Cosh: return mul(make(ExprKind::Sinh, e->lhs), diff(e->lhs));
    case ExprKind::Sin: return mul(make(ExprKind::Cos, e->lhs), diff(e->lhs));
    case ExprKind::Cos: return mul(neg(make(ExprKind::Sin, e->lhs)), diff(e->lhs));
    case ExprKind::Exp: return mul(e, diff(e->lhs));
  }
  return num(0.0);
}

double eval(const ExprPtr& e, double x) {
  switch (e->kind) {
    case ExprKind::Number: return e->value;
    case ExprKind::Variable: return x;
    case ExprKind::Negate: return -eval(e->lhs, x);
    case ExprKind::Add: return eval(e->lhs, x) + eval(e->rhs, x);
    case ExprKind::Sub: return eval(e->lhs, x) - eval(e->rhs, x);
    case ExprKind::Mul: return eval(e->lhs, x) * eval(e->rhs, x);
    case ExprKind::Div: {
      const double d = eval(e->rhs, x);
      if (d == 0.0) throw Error(ErrorKind::InvalidDomain, "division by zero at " + std::to_string(x));
      return eval(e->lhs, x) / d;
    }
    case ExprKind::Pow: return std::pow(eval(e->lhs, x), static_cast<double>(e->exponent));
    case ExprKind::Sinh: return std::sinh(eval(e->lhs, x));
    case ExprKind::Cosh: return std::cosh(eval(e->lhs, x));
    case ExprKind::Sin: return std::sin(eval(e->lhs, x));
    case ExprKind::Cos: return std::cos(eval(e->lhs, x));
    case ExprKind::Exp: return std::exp(eval(e->lhs, x));
  }
  return 0.0;
}

const char* function_name(ExprKind k) {
  switch (k) {
    case ExprKind::Sinh: return "sinh";
    case ExprKind::Cosh: return "cosh";
    case ExprKind::Sin: return "sin";
    case ExprKind::Cos: return "cos";
    case ExprKind::Exp: return "exp";
    default: return nullptr;
  }
}

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Negate: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
  }
}

std::string format_number(double c) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, c);
  return std::string(buf, res.ptr);
}

void print(const ExprPtr& e, char var, int min_prec, std::string& out) {
  const int p = precedence(e->kind);
  const bool paren = p < min_prec;
  if (paren) out += '(';
  switch (e->kind) {
    case ExprKind::Number: out += format_number(e->value); break;
    case ExprKind::Variable: out += var; break;
    case ExprKind::Negate:
      out += '-';
      print(e->lhs, var, 3, out);
      break;
    case ExprKind::Add:
    case ExprKind::Sub:
      print(e->lhs, var, 1, out);
      out += e->kind == ExprKind::Add ? " + " : " - ";
      print(e->rhs, var, 2, out);
      break;
    case ExprKind::Mul:
    case ExprKind::Div:
      print(e->lhs, var, 2, out);
      out += e->kind == ExprKind::Mul ? "*" : "/";
      print(e->rhs, var, 3, out);
      break;
    case ExprKind::Pow:
      print(e->lhs, var, 5, out);
      out += '^';
      out += std::to_string(e->exponent);
      break;
    default:
      out += function_name(e->kind);
      out += '(';
      print(e->lhs, var, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

class Parser {
 public:
  Parser(const std::string& text, char var) : s_(text), var_(var) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ < s_.size()) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return e;
  }

 private:
  const std::string& s_;
  char var_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "syntax error at position " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    throw ParseError(ParseError::Kind::SyntaxError, pos_, std::move(expected), msg);
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+')) e = make(ExprKind::Add, e, term());
      else if (accept('-')) e = make(ExprKind::Sub, e, term());
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (accept('*')) e = make(ExprKind::Mul, e, factor());
      else if (accept('/')) e = make(ExprKind::Div, e, factor());
      else return e;
    }
  }

  ExprPtr factor() {
    if (accept('-')) return make(ExprKind::Negate, factor());
    ExprPtr b = base();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) fail({"nonnegative integer exponent"});
      unsigned n = 0;
      const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, n);
      if (res.ec != std::errc()) {
        pos_ = start;
        fail({"exponent that fits in 32 bits"});
      }
      auto p = std::make_shared<ExprNode>();
      p->kind = ExprKind::Pow;
      p->exponent = n;
      p->lhs = b;
      return p;
    }
    return b;
  }

  ExprPtr base() {
    skip();
    if (pos_ >= s_.size()) fail({"number", std::string("'") + var_ + "'", "function", "'('", "'-'"});
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      if (++depth_ > 500) fail({"shallower nesting"});
      ExprPtr e = expr();
      --depth_;
      if (!accept(')')) fail({"')'"});
      return e;
    }
    fail({"number", std::string("'") + var_ + "'", "function", "'('", "'-'"});
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - b;
    };
    std::size_t n = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail({"digit"});
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = save + 1;
        fail({"exponent digits"});
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      pos_ = start;
      fail({"finite number"});
    }
    return literal(v);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    static const std::pair<const char*, ExprKind> funcs[] = {
        {"sinh", ExprKind::Sinh}, {"cosh", ExprKind::Cosh}, {"sin", ExprKind::Sin},
        {"cos", ExprKind::Cos},   {"exp", ExprKind::Exp}};
    for (const auto& [name, kind] : funcs) {
      if (id == name) {
        if (!accept('(')) fail({"'('"});
        if (++depth_ > 500) fail({"shallower nesting"});
        ExprPtr arg = expr();
        --depth_;
        if (!accept(')')) fail({"')'"});
        return make(kind, arg);
      }
    }
    if (id.size() == 1 && id[0] == var_) return make(ExprKind::Variable);
    if (id == "u" || id == "v") {
      throw ParseError(ParseError::Kind::WrongVariable, start, {std::string("'") + var_ + "'"},
                       "wrong variable '" + id + "' at position " + std::to_string(start) + ": expression must use '" +
                           var_ + "'");
    }
    pos_ = start;
    fail({"number", std::string("'") + var_ + "'", "sinh", "cosh", "sin", "cos", "exp", "'('"});
  }
};

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message), kind_(kind), position_(position), expected_(std::move(expected)) {}

double Expr::operator()(double x) const { return eval(root_, x); }

Expr Expr::derivative() const { return Expr(diff(root_), variable_); }

std::string Expr::to_string() const {
  std::string out;
  print(root_, variable_, 0, out);
  return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  if (a->kind == ExprKind::Number) return a->value == b->value;
  if (a->kind == ExprKind::Pow && a->exponent != b->exponent) return false;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

Expr parse_potential(const std::string& text, char variable) {
  if (variable != 'u' && variable != 'v') throw std::invalid_argument("variable must be 'u' or 'v'");
  Parser p(text, variable);
  return Expr(p.parse(), variable);
}

}  // namespace tms::cli
