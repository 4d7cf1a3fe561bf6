#include "distpot/fieldexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace distpot::fieldexpr {

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " (position " + std::to_string(pos) + ")"),
      position(pos) {}

enum class Op { Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Ln, Sqrt, Abs };
enum class Var { X, Y, R, Theta };

class Expr {
 public:
  enum class Tag { Number, Variable, Unary, Binary, Hadamard };

  Tag tag;
  double number = 0.0;
  Var var = Var::X;
  Op op = Op::Add;
  ExprPtr lhs, rhs;
  double alpha = 0.0;  // hadamard
  int K = 0;

  static ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->tag = Tag::Number;
    e->number = v;
    return e;
  }
  static ExprPtr make_var(Var v) {
    auto e = std::make_shared<Expr>();
    e->tag = Tag::Variable;
    e->var = v;
    return e;
  }
  static ExprPtr make_unary(Op op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->tag = Tag::Unary;
    e->op = op;
    e->lhs = std::move(a);
    return e;
  }
  static ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->tag = Tag::Binary;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  static ExprPtr make_hadamard(double alpha, int K) {
    auto e = std::make_shared<Expr>();
    e->tag = Tag::Hadamard;
    e->alpha = alpha;
    e->K = K;
    return e;
  }
};

double hadamard_trace_value(double alpha, int K, double theta) {
  double sum = 0.0;
  double freq = 1.0;
  for (int k = 1; k <= K; ++k) {
    freq *= 2.0;
    sum += std::pow(2.0, -k * alpha) * std::cos(freq * theta);
  }
  return sum;
}

namespace {

struct Token {
  enum class Kind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End
  };
  Kind kind;
  double number = 0.0;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = i;
      std::size_t j = i;
      while (j < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.'))
        ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          ++k;
          while (k < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[k])))
            ++k;
          j = k;
        }
      }
      const std::string text(src.substr(start, j - start));
      try {
        const double v = std::stod(text);
        out.push_back({Token::Kind::Number, v, text, start});
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + text + "'", start);
      }
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      out.push_back(
          {Token::Kind::Ident, 0.0, std::string(src.substr(start, j - start)),
           start});
      i = j;
      continue;
    }
    Token tok{Token::Kind::End, 0.0, std::string(1, c), i};
    switch (c) {
      case '+': tok.kind = Token::Kind::Plus; break;
      case '-': tok.kind = Token::Kind::Minus; break;
      case '*': tok.kind = Token::Kind::Star; break;
      case '/': tok.kind = Token::Kind::Slash; break;
      case '^': tok.kind = Token::Kind::Caret; break;
      case '(': tok.kind = Token::Kind::LParen; break;
      case ')': tok.kind = Token::Kind::RParen; break;
      case ',': tok.kind = Token::Kind::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back(tok);
    ++i;
  }
  out.push_back({Token::Kind::End, 0.0, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    if (peek().kind != Token::Kind::End)
      throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }
  Token consume() { return tokens_[cursor_++]; }
  bool accept(Token::Kind k) {
    if (peek().kind == k) {
      ++cursor_;
      return true;
    }
    return false;
  }
  void expect(Token::Kind k, const char* what) {
    if (!accept(k))
      throw ParseError(std::string("expected ") + what + " before '" +
                           (peek().text.empty() ? "end of input" : peek().text) +
                           "'",
                       peek().pos);
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      if (accept(Token::Kind::Plus))
        e = Expr::make_binary(Op::Add, e, parse_product());
      else if (accept(Token::Kind::Minus))
        e = Expr::make_binary(Op::Sub, e, parse_product());
      else
        return e;
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept(Token::Kind::Star))
        e = Expr::make_binary(Op::Mul, e, parse_unary());
      else if (accept(Token::Kind::Slash))
        e = Expr::make_binary(Op::Div, e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Token::Kind::Minus))
      return Expr::make_unary(Op::Neg, parse_unary());
    return parse_power();
  }

  // '^' binds tighter than unary minus and associates to the right.
  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (accept(Token::Kind::Caret))
      return Expr::make_binary(Op::Pow, base, parse_unary());
    return base;
  }

  ExprPtr parse_primary() {
    const Token tok = consume();
    switch (tok.kind) {
      case Token::Kind::Number:
        return Expr::make_number(tok.number);
      case Token::Kind::LParen: {
        ExprPtr e = parse_sum();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident:
        return parse_ident(tok);
      default:
        throw ParseError("unexpected token '" +
                             (tok.text.empty() ? "end of input" : tok.text) + "'",
                         tok.pos);
    }
  }

  ExprPtr parse_ident(const Token& tok) {
    const std::string& name = tok.text;
    if (peek().kind != Token::Kind::LParen) {
      if (name == "x") return Expr::make_var(Var::X);
      if (name == "y") return Expr::make_var(Var::Y);
      if (name == "r") return Expr::make_var(Var::R);
      if (name == "theta") return Expr::make_var(Var::Theta);
      if (name == "pi") return Expr::make_number(std::numbers::pi);
      throw ParseError("unknown identifier '" + name + "'", tok.pos);
    }
    consume();  // '('
    if (name == "hadamard") {
      ExprPtr a = parse_sum();
      expect(Token::Kind::Comma, "','");
      ExprPtr k = parse_sum();
      expect(Token::Kind::RParen, "')'");
      return fold_hadamard(a, k, tok.pos);
    }
    Op op;
    if (name == "sin") op = Op::Sin;
    else if (name == "cos") op = Op::Cos;
    else if (name == "exp") op = Op::Exp;
    else if (name == "ln" || name == "log") op = Op::Ln;
    else if (name == "sqrt") op = Op::Sqrt;
    else if (name == "abs") op = Op::Abs;
    else throw ParseError("unknown function '" + name + "'", tok.pos);
    ExprPtr arg = parse_sum();
    expect(Token::Kind::RParen, "')'");
    return Expr::make_unary(op, arg);
  }

  ExprPtr fold_hadamard(const ExprPtr& a, const ExprPtr& k, std::size_t pos) {
    double alpha, kval;
    try {
      const EvalPoint origin{};
      alpha = evaluate(a, origin);
      kval = evaluate(k, origin);
    } catch (const EvalError&) {
      throw ParseError("hadamard arguments must be constants", pos);
    }
    if (!(alpha > 0.0 && alpha < 0.5))
      throw ParseError("hadamard exponent must lie in (0, 1/2)", pos);
    const int K = static_cast<int>(std::lround(kval));
    if (std::abs(kval - K) > 1e-9 || K < 1 || K > 24)
      throw ParseError("hadamard truncation order must be an integer in 1..24",
                       pos);
    return Expr::make_hadamard(alpha, K);
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

bool has_variables(const ExprPtr& e) {
  switch (e->tag) {
    case Expr::Tag::Number: return false;
    case Expr::Tag::Variable: return true;
    case Expr::Tag::Hadamard: return true;
    case Expr::Tag::Unary: return has_variables(e->lhs);
    case Expr::Tag::Binary: return has_variables(e->lhs) || has_variables(e->rhs);
  }
  return false;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Precedence levels used for canonical printing: sums 1, products 2, unary
// minus 3, powers 4, atoms 5.
int precedence(const ExprPtr& e) {
  switch (e->tag) {
    case Expr::Tag::Binary:
      switch (e->op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Pow: return 4;
        default: return 5;
      }
    case Expr::Tag::Unary:
      return e->op == Op::Neg ? 3 : 5;
    default:
      return 5;
  }
}

void print_rec(const ExprPtr& e, int min_prec, std::string& out) {
  const int prec = precedence(e);
  const bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (e->tag) {
    case Expr::Tag::Number:
      out += format_number(e->number);
      break;
    case Expr::Tag::Variable:
      switch (e->var) {
        case Var::X: out += 'x'; break;
        case Var::Y: out += 'y'; break;
        case Var::R: out += 'r'; break;
        case Var::Theta: out += "theta"; break;
      }
      break;
    case Expr::Tag::Hadamard: {
      out += "hadamard(";
      out += format_number(e->alpha);
      out += ", ";
      out += std::to_string(e->K);
      out += ')';
      break;
    }
    case Expr::Tag::Unary:
      if (e->op == Op::Neg) {
        out += '-';
        print_rec(e->lhs, 3, out);
      } else {
        switch (e->op) {
          case Op::Sin: out += "sin("; break;
          case Op::Cos: out += "cos("; break;
          case Op::Exp: out += "exp("; break;
          case Op::Ln: out += "ln("; break;
          case Op::Sqrt: out += "sqrt("; break;
          case Op::Abs: out += "abs("; break;
          default: break;
        }
        print_rec(e->lhs, 0, out);
        out += ')';
      }
      break;
    case Expr::Tag::Binary: {
      const char* opstr = nullptr;
      int lmin, rmin;
      switch (e->op) {
        case Op::Add: opstr = " + "; lmin = 1; rmin = 2; break;
        case Op::Sub: opstr = " - "; lmin = 1; rmin = 2; break;
        case Op::Mul: opstr = " * "; lmin = 2; rmin = 3; break;
        case Op::Div: opstr = " / "; lmin = 2; rmin = 3; break;
        case Op::Pow: opstr = "^"; lmin = 5; rmin = 4; break;
        default: opstr = "?"; lmin = rmin = 0; break;
      }
      print_rec(e->lhs, lmin, out);
      out += opstr;
      print_rec(e->rhs, rmin, out);
      break;
    }
  }
  if (wrap) out += ')';
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const ExprPtr& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

double evaluate(const ExprPtr& e, const EvalPoint& p) {
  switch (e->tag) {
    case Expr::Tag::Number:
      return e->number;
    case Expr::Tag::Variable:
      switch (e->var) {
        case Var::X: return p.x;
        case Var::Y: return p.y;
        case Var::R: return p.r;
        case Var::Theta: return p.theta;
      }
      return 0.0;
    case Expr::Tag::Hadamard:
      return hadamard_trace_value(e->alpha, e->K, p.theta);
    case Expr::Tag::Unary: {
      const double a = evaluate(e->lhs, p);
      switch (e->op) {
        case Op::Neg: return -a;
        case Op::Sin: return std::sin(a);
        case Op::Cos: return std::cos(a);
        case Op::Exp: return std::exp(a);
        case Op::Ln:
          if (!(a > 0.0)) {
            std::ostringstream msg;
            msg << "ln of non-positive value " << a;
            throw EvalError(msg.str());
          }
          return std::log(a);
        case Op::Sqrt:
          if (a < 0.0) {
            std::ostringstream msg;
            msg << "sqrt of negative value " << a;
            throw EvalError(msg.str());
          }
          return std::sqrt(a);
        case Op::Abs: return std::abs(a);
        default: return 0.0;
      }
    }
    case Expr::Tag::Binary: {
      const double a = evaluate(e->lhs, p);
      const double b = evaluate(e->rhs, p);
      switch (e->op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div:
          if (b == 0.0) throw EvalError("division by zero");
          return a / b;
        case Op::Pow: {
          if (a == 0.0 && b < 0.0)
            throw EvalError("zero raised to a negative power");
          if (a < 0.0 && b != std::floor(b))
            throw EvalError("fractional power of a negative base");
          return std::pow(a, b);
        }
        default: return 0.0;
      }
    }
  }
  return 0.0;
}

ScalarField ScalarField::zero() {
  ScalarField f;
  f.value = [](Vec2) { return 0.0; };
  f.source = "0";
  f.structurally_zero = true;
  return f;
}

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.value = [c](Vec2) { return c; };
  f.source = format_number(c);
  f.structurally_zero = (c == 0.0);
  return f;
}

ScalarField ScalarField::from_expression(std::string_view text, Vec2 anchor) {
  ExprPtr ast = parse(text);
  ScalarField f;
  f.source = std::string(text);
  f.structurally_zero =
      !has_variables(ast) && evaluate(ast, EvalPoint{}) == 0.0;
  f.value = [ast, anchor](Vec2 p) {
    EvalPoint ep;
    ep.x = p.x;
    ep.y = p.y;
    ep.r = std::hypot(p.x - anchor.x, p.y - anchor.y);
    ep.theta = std::atan2(p.y - anchor.y, p.x - anchor.x);
    return evaluate(ast, ep);
  };
  return f;
}

ScalarField ScalarField::from_function(std::function<double(Vec2)> f,
                                       std::string name) {
  ScalarField out;
  out.value = std::move(f);
  out.source = std::move(name);
  out.structurally_zero = false;
  return out;
}

ScalarField hadamard_trace(double alpha, int K, Vec2 anchor) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("hadamard exponent must lie in (0, 1/2)");
  if (K < 1 || K > 24)
    throw std::invalid_argument("hadamard truncation order must be in 1..24");
  ScalarField f;
  f.source = "hadamard(" + format_number(alpha) + ", " + std::to_string(K) + ")";
  f.structurally_zero = false;
  f.value = [alpha, K, anchor](Vec2 p) {
    const double theta = std::atan2(p.y - anchor.y, p.x - anchor.x);
    return hadamard_trace_value(alpha, K, theta);
  };
  return f;
}

}  // namespace distpot::fieldexpr
