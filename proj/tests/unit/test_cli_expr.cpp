#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "tms/error.hpp"
#include "tmsurf/expr.hpp"

using namespace tms::cli;

namespace {

ParseError::Kind parse_error_kind(const std::string& text, char var) {
  try {
    parse_potential(text, var);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("no parse error for " << text);
  return ParseError::Kind::SyntaxError;
}

// Random well-formed expression text in u.
std::string random_text(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_int_distribution<int> digit(0, 9);
  switch (pick(rng)) {
    case 0: return std::to_string(digit(rng)) + "." + std::to_string(digit(rng));
    case 1: return "u";
    case 2: return "(" + random_text(rng, depth - 1) + "+" + random_text(rng, depth - 1) + ")";
    case 3: return "(" + random_text(rng, depth - 1) + "-" + random_text(rng, depth - 1) + ")";
    case 4: return random_text(rng, depth - 1) + "*" + random_text(rng, depth - 1);
    case 5: return "-" + random_text(rng, depth - 1);
    case 6: return "(" + random_text(rng, depth - 1) + ")^" + std::to_string(digit(rng) % 4);
    case 7: return "sin(" + random_text(rng, depth - 1) + ")";
    case 8: return "cosh(" + random_text(rng, depth - 1) + ")";
    default: return "exp(" + random_text(rng, depth - 1) + ")/2";
  }
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(parse_potential("u", 'u')(3.0) == 3.0);
  CHECK(parse_potential("-(1+u^2)/2", 'u')(1.0) == -1.0);
  CHECK(parse_potential("-u^2", 'u')(3.0) == -9.0);
  CHECK(parse_potential("sinh(v) + cosh(v)", 'v')(0.5) == doctest::Approx(std::exp(0.5)));
  CHECK(parse_potential("1.5e-1 * u", 'u')(2.0) == doctest::Approx(0.3));
  CHECK(parse_potential("exp(u) - sin(u)*cos(u)", 'u')(0.2) ==
        doctest::Approx(std::exp(0.2) - std::sin(0.2) * std::cos(0.2)));
  CHECK(parse_potential("8/2/2", 'u')(0.0) == 2.0);
  CHECK(parse_potential("1-2-3", 'u')(0.0) == -4.0);
  try {
    parse_potential("1/u", 'u')(0.0);
    FAIL("expected division error");
  } catch (const tms::Error& e) {
    CHECK(e.kind() == tms::ErrorKind::InvalidDomain);
  }
}

TEST_CASE("parse errors") {
  CHECK(parse_error_kind("sinh(v)", 'u') == ParseError::Kind::WrongVariable);
  CHECK(parse_error_kind("u", 'v') == ParseError::Kind::WrongVariable);
  CHECK(parse_error_kind("", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("u +", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("tan(u)", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("(u", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("u^1.5", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("u u", 'u') == ParseError::Kind::SyntaxError);
  CHECK(parse_error_kind("u^2^3", 'u') == ParseError::Kind::SyntaxError);
  try {
    parse_potential("u + * 2", 'u');
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(!e.expected().empty());
  }
  CHECK(parse_error_kind(std::string(2000, '(') + "u" + std::string(2000, ')'), 'u') == ParseError::Kind::SyntaxError);
}

TEST_CASE("derivatives") {
  const Expr e = parse_potential("u^3 - 2*sin(u) + exp(2*u)/u", 'u');
  const Expr d = e.derivative();
  for (double x : {0.3, 1.1, -2.0}) {
    const double want = 3 * x * x - 2 * std::cos(x) + (2 * std::exp(2 * x) * x - std::exp(2 * x)) / (x * x);
    CHECK(d(x) == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(parse_potential("7", 'v').derivative()(1.0) == 0.0);
  CHECK(parse_potential("v", 'v').derivative().to_string() == "1");
}

TEST_CASE("canonical printing round trip") {
  for (const char* text : {"-(1+u^2)/2", "u", "-u^2", "(-u)^2", "u-(u-1)", "u/(u*2)", "sinh(cosh(u))^2", "1e-20*u"}) {
    const Expr e = parse_potential(text, 'u');
    const Expr back = parse_potential(e.to_string(), 'u');
    CHECK_MESSAGE(structurally_equal(e.root(), back.root()), text << " -> " << e.to_string());
    CHECK(back.to_string() == e.to_string());
  }
  CHECK(parse_potential("(-u)^2", 'u')(3.0) == 9.0);
}

TEST_CASE("fuzzed round trips") {
  std::mt19937_64 rng(20240229);
  for (int t = 0; t < 500; ++t) {
    const std::string text = random_text(rng, 4);
    const Expr e = parse_potential(text, 'u');
    const Expr back = parse_potential(e.to_string(), 'u');
    CHECK_MESSAGE(structurally_equal(e.root(), back.root()), text);
    const double a = e(0.37), b = back(0.37);
    if (std::isfinite(a)) CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}
