#ifndef ORLICZ_EXPR_HPP
#define ORLICZ_EXPR_HPP

#include <array>
#include <string>
#include <vector>

namespace orlicz {

/// A point in the domain; unused trailing components are zero.
using Point = std::array<double, 2>;

/// Closed-form scalar field over a pair of points. The grammar supports
/// +, -, *, /, ^, sin, cos, exp, ln, abs, numeric literals and the
/// variables x0, x1, y0, y1. Compiled once into a stack program.
class ScalarExpr {
 public:
  ScalarExpr() = default;

  static ScalarExpr parse(const std::string& text);

  double eval(const Point& x, const Point& y) const;

  /// Evaluates with only the x slots bound (y = 0). Used for functions of
  /// a single point, e.g. grid data or kernel offsets.
  double eval(const Point& x) const { return eval(x, Point{0.0, 0.0}); }

  const std::string& text() const { return text_; }
  bool empty() const { return ops_.empty(); }

 private:
  enum class Op : unsigned char {
    PushConst, PushVar,
    Add, Sub, Mul, Div, Pow, Neg,
    Sin, Cos, Exp, Ln, Abs
  };
  struct Instr {
    Op op;
    double imm = 0.0;
    int var = 0;  // 0..1 -> x0,x1; 2..3 -> y0,y1
  };
  std::vector<Instr> ops_;
  std::string text_;

  friend class ExprParser;
};

}  // namespace orlicz

#endif
