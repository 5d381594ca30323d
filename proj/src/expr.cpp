#include "orlicz/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "orlicz/errors.hpp"

namespace orlicz {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  ScalarExpr run()
  {
    ScalarExpr e;
    e.text_ = s_;
    parse_sum(e.ops_);
    skip_ws();
    if (pos_ != s_.size())
      throw ExprParseError("trailing input in expression at position " +
                           std::to_string(pos_) + ": '" + s_ + "'");
    int depth = 0, max_depth = 0;
    for (const auto& in : e.ops_) {
      switch (in.op) {
        case Op::PushConst: case Op::PushVar: ++depth; break;
        case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Pow: --depth; break;
        default: break;
      }
      max_depth = std::max(max_depth, depth);
    }
    if (max_depth > 63) throw ExprParseError("expression too deeply nested");
    return e;
  }

 private:
  using Instr = ScalarExpr::Instr;
  using Op = ScalarExpr::Op;

  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(char c)
  {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  char peek()
  {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void parse_sum(std::vector<Instr>& out)
  {
    parse_term(out);
    for (;;) {
      if (consume('+')) { parse_term(out); out.push_back({Op::Add, 0, 0}); }
      else if (consume('-')) { parse_term(out); out.push_back({Op::Sub, 0, 0}); }
      else return;
    }
  }

  void parse_term(std::vector<Instr>& out)
  {
    parse_power(out);
    for (;;) {
      if (consume('*')) { parse_power(out); out.push_back({Op::Mul, 0, 0}); }
      else if (consume('/')) { parse_power(out); out.push_back({Op::Div, 0, 0}); }
      else return;
    }
  }

  // '^' binds tighter than unary minus on the left and is right-associative.
  void parse_power(std::vector<Instr>& out)
  {
    parse_unary(out);
    if (consume('^')) {
      parse_power(out);
      out.push_back({Op::Pow, 0, 0});
    }
  }

  void parse_unary(std::vector<Instr>& out)
  {
    if (consume('-')) {
      parse_unary(out);
      out.push_back({Op::Neg, 0, 0});
      return;
    }
    parse_primary(out);
  }

  void parse_primary(std::vector<Instr>& out)
  {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprParseError("unexpected end of expression: '" + s_ + "'");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      parse_sum(out);
      if (!consume(')')) throw ExprParseError("missing ')' in '" + s_ + "'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(s_.c_str() + pos_, &end);
      if (end == s_.c_str() + pos_) throw ExprParseError("bad number in '" + s_ + "'");
      pos_ = static_cast<std::size_t>(end - s_.c_str());
      out.push_back({Op::PushConst, v, 0});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x0") { out.push_back({Op::PushVar, 0, 0}); return; }
      if (name == "x1") { out.push_back({Op::PushVar, 0, 1}); return; }
      if (name == "y0") { out.push_back({Op::PushVar, 0, 2}); return; }
      if (name == "y1") { out.push_back({Op::PushVar, 0, 3}); return; }
      if (name == "pi") { out.push_back({Op::PushConst, 3.14159265358979323846, 0}); return; }
      Op fn;
      if (name == "sin") fn = Op::Sin;
      else if (name == "cos") fn = Op::Cos;
      else if (name == "exp") fn = Op::Exp;
      else if (name == "ln") fn = Op::Ln;
      else if (name == "abs") fn = Op::Abs;
      else throw ExprParseError("unknown identifier '" + name + "' in '" + s_ + "'");
      if (!consume('(')) throw ExprParseError("expected '(' after '" + name + "'");
      parse_sum(out);
      if (!consume(')')) throw ExprParseError("missing ')' after '" + name + "(...'");
      out.push_back({fn, 0, 0});
      return;
    }
    throw ExprParseError(std::string("unexpected character '") + c + "' in '" + s_ + "'");
  }
};

ScalarExpr ScalarExpr::parse(const std::string& text)
{
  return ExprParser(text).run();
}

double ScalarExpr::eval(const Point& x, const Point& y) const
{
  double stack[64];
  int top = -1;
  for (const Instr& in : ops_) {
    switch (in.op) {
      case Op::PushConst: stack[++top] = in.imm; break;
      case Op::PushVar:   stack[++top] = in.var < 2 ? x[in.var] : y[in.var - 2]; break;
      case Op::Add: { const double b = stack[top--]; stack[top] += b; break; }
      case Op::Sub: { const double b = stack[top--]; stack[top] -= b; break; }
      case Op::Mul: { const double b = stack[top--]; stack[top] *= b; break; }
      case Op::Div: { const double b = stack[top--]; stack[top] /= b; break; }
      case Op::Pow: { const double b = stack[top--]; stack[top] = std::pow(stack[top], b); break; }
      case Op::Neg: stack[top] = -stack[top]; break;
      case Op::Sin: stack[top] = std::sin(stack[top]); break;
      case Op::Cos: stack[top] = std::cos(stack[top]); break;
      case Op::Exp: stack[top] = std::exp(stack[top]); break;
      case Op::Ln:  stack[top] = std::log(stack[top]); break;
      case Op::Abs: stack[top] = std::fabs(stack[top]); break;
    }
  }
  return top >= 0 ? stack[top] : 0.0;
}

}  // namespace orlicz
