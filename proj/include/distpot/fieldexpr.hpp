#pragma once
// A small expression language for scalar data fields. Variables x, y and the
// polar pair r, theta (taken about a configurable anchor point), the constant
// pi, arithmetic with + - * / ^, the functions sin, cos, exp, ln (alias log),
// sqrt, abs, and the catalog entry hadamard(alpha, K) for the lacunary
// trigonometric trace sum_{k=1..K} 2^(-k*alpha) cos(2^k theta).

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "distpot/geometry.hpp"

namespace distpot::fieldexpr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position;  // 0-based offset into the source text
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalPoint {
  double x = 0.0, y = 0.0;
  double r = 0.0, theta = 0.0;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Parses the expression; throws ParseError with a position on malformed input
// or unknown identifiers.
ExprPtr parse(std::string_view text);

// Canonical rendering; parse(print(e)) reproduces e and printing is then a
// fixed point.
std::string print(const ExprPtr& e);

// Evaluates at a point; domain violations (log of a non-positive value,
// division by zero, fractional power of a negative base) throw EvalError.
double evaluate(const ExprPtr& e, const EvalPoint& p);

// Direct summation of the lacunary trace.
double hadamard_trace_value(double alpha, int K, double theta);

// A scalar data field on the plane. Fields built from expressions measure
// r and theta about the supplied anchor (by convention the anchor of the
// first domain component). A default-constructed field is the zero field.
struct ScalarField {
  std::function<double(Vec2)> value = [](Vec2) { return 0.0; };
  std::string source = "0";    // expression text when available
  bool structurally_zero = true;

  double operator()(Vec2 p) const { return value(p); }

  static ScalarField zero();
  static ScalarField constant(double c);
  static ScalarField from_expression(std::string_view text, Vec2 anchor);
  static ScalarField from_function(std::function<double(Vec2)> f,
                                   std::string name);
};

// The lacunary boundary trace as a field (theta measured about the anchor).
ScalarField hadamard_trace(double alpha, int K, Vec2 anchor);

}  // namespace distpot::fieldexpr
