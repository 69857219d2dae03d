#ifndef INVEX_EXPR_HPP_
#define INVEX_EXPR_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invex {

// Positioned parse/evaluation failure. Columns are 1-based.
struct ExprError : std::runtime_error {
  int line;
  int column;
  ExprError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) +
                           ", column " + std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// Variable bindings for evaluation. Small, so a flat list suffices.
struct Env {
  std::vector<std::pair<std::string, double>> vars;

  Env() = default;
  Env(std::initializer_list<std::pair<std::string, double>> init) : vars(init) {}

  double lookup(const std::string& name) const {
    for (const auto& [n, v] : vars)
      if (n == name) return v;
    throw std::runtime_error("unbound variable '" + name + "'");
  }
};

// Evaluation side for one-sided limits at kinks: -1 left, 0 two-sided, +1 right.
using Side = int;

namespace detail {

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call, Piecewise };

enum class Func { Abs, Ln, Exp, Min, Max };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct PiecewisePiece {
  double lo;
  double hi;
  NodePtr body;
};

struct Node {
  NodeKind kind;
  double value = 0.0;           // Const
  std::string name;             // Var
  Func func = Func::Abs;        // Call
  NodePtr a, b;                 // operands
  std::vector<PiecewisePiece> pieces;  // Piecewise, ordered by lo
};

inline NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->value = v;
  return n;
}

inline NodePtr make_var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  n->name = std::move(name);
  return n;
}

inline NodePtr make_unary(NodeKind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

inline NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

inline NodePtr make_call(Func f, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

double eval(const Node& n, const Env& env, Side side = 0);
double deriv(const Node& n, const Env& env, const std::string& var, Side side);

// Sign of `n` in the limit approached from `side`. Resolves ties at zero
// through the first derivative, so abs(x) gets the correct one-sided slope
// at the kink.
inline int sign_at(const Node& n, const Env& env, const std::string& var,
                   Side side) {
  double v = eval(n, env, side);
  if (v > 0) return 1;
  if (v < 0) return -1;
  if (side == 0) return 0;
  double d = deriv(n, env, var, side);
  int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
  return side > 0 ? s : -s;
}

// Index of the active piece for argument value x. At interior boundaries the
// side decides: right limits take the upper piece, left limits the lower one.
inline std::size_t select_piece(const Node& n, double x, Side side, int line = 0,
                                int col = 0) {
  const auto& ps = n.pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (x < ps[i].lo || x > ps[i].hi) continue;
    bool at_hi = (x == ps[i].hi) && i + 1 < ps.size() && ps[i + 1].lo == x;
    if (at_hi && side >= 0) continue;  // prefer the piece starting at x
    return i;
  }
  // Fell past the last piece boundary going right.
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (x >= ps[i].lo && x <= ps[i].hi) return i;
  throw ExprError("argument " + std::to_string(x) + " outside piecewise cover",
                  line, col);
}

inline double eval(const Node& n, const Env& env, Side side) {
  switch (n.kind) {
    case NodeKind::Const: return n.value;
    case NodeKind::Var: return env.lookup(n.name);
    case NodeKind::Neg: return -eval(*n.a, env, side);
    case NodeKind::Add: return eval(*n.a, env, side) + eval(*n.b, env, side);
    case NodeKind::Sub: return eval(*n.a, env, side) - eval(*n.b, env, side);
    case NodeKind::Mul: return eval(*n.a, env, side) * eval(*n.b, env, side);
    case NodeKind::Div: return eval(*n.a, env, side) / eval(*n.b, env, side);
    case NodeKind::Pow:
      return std::pow(eval(*n.a, env, side), eval(*n.b, env, side));
    case NodeKind::Call: {
      double a = eval(*n.a, env, side);
      switch (n.func) {
        case Func::Abs: return std::fabs(a);
        case Func::Ln: return std::log(a);
        case Func::Exp: return std::exp(a);
        case Func::Min: return std::min(a, eval(*n.b, env, side));
        case Func::Max: return std::max(a, eval(*n.b, env, side));
      }
      break;
    }
    case NodeKind::Piecewise: {
      double x = env.lookup("x");
      return eval(*n.pieces[select_piece(n, x, side)].body, env, side);
    }
  }
  throw std::logic_error("eval: bad node");
}

// Exact derivative w.r.t. `var`, evaluated at env. Branches of abs/min/max/
// piecewise are resolved at the evaluation point using `side`, so the result
// is the one-sided derivative limit at declared kinks.
inline double deriv(const Node& n, const Env& env, const std::string& var,
                    Side side) {
  switch (n.kind) {
    case NodeKind::Const: return 0.0;
    case NodeKind::Var: return n.name == var ? 1.0 : 0.0;
    case NodeKind::Neg: return -deriv(*n.a, env, var, side);
    case NodeKind::Add:
      return deriv(*n.a, env, var, side) + deriv(*n.b, env, var, side);
    case NodeKind::Sub:
      return deriv(*n.a, env, var, side) - deriv(*n.b, env, var, side);
    case NodeKind::Mul:
      return deriv(*n.a, env, var, side) * eval(*n.b, env, side) +
             eval(*n.a, env, side) * deriv(*n.b, env, var, side);
    case NodeKind::Div: {
      double fa = eval(*n.a, env, side), fb = eval(*n.b, env, side);
      return (deriv(*n.a, env, var, side) * fb -
              fa * deriv(*n.b, env, var, side)) /
             (fb * fb);
    }
    case NodeKind::Pow: {
      double base = eval(*n.a, env, side);
      double da = deriv(*n.a, env, var, side);
      if (n.b->kind == NodeKind::Const) {
        double c = n.b->value;
        if (c == 0.0) return 0.0;
        return c * std::pow(base, c - 1.0) * da;
      }
      double expo = eval(*n.b, env, side);
      double db = deriv(*n.b, env, var, side);
      // a^b = exp(b ln a); requires base > 0 for a varying exponent.
      return std::pow(base, expo) * (db * std::log(base) + expo * da / base);
    }
    case NodeKind::Call: {
      double da = deriv(*n.a, env, var, side);
      switch (n.func) {
        case Func::Abs: return sign_at(*n.a, env, var, side) * da;
        case Func::Ln: return da / eval(*n.a, env, side);
        case Func::Exp: return std::exp(eval(*n.a, env, side)) * da;
        case Func::Min:
        case Func::Max: {
          double a = eval(*n.a, env, side), b = eval(*n.b, env, side);
          double db = deriv(*n.b, env, var, side);
          bool is_min = n.func == Func::Min;
          if (a == b) {
            // At a tie the one-sided slope follows the branch that wins
            // immediately to that side.
            bool lower = (side >= 0) == is_min;
            return lower ? std::min(da, db) : std::max(da, db);
          }
          return (a < b) == is_min ? da : db;
        }
      }
      break;
    }
    case NodeKind::Piecewise: {
      double x = env.lookup("x");
      Side use = var == "x" ? side : 0;
      return deriv(*n.pieces[select_piece(n, x, use)].body, env, var, side);
    }
  }
  throw std::logic_error("deriv: bad node");
}

inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Const: return a.value == b.value;
    case NodeKind::Var: return a.name == b.name;
    case NodeKind::Neg: return structurally_equal(*a.a, *b.a);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow:
      return structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
    case NodeKind::Call:
      if (a.func != b.func) return false;
      if (!structurally_equal(*a.a, *b.a)) return false;
      if ((a.b == nullptr) != (b.b == nullptr)) return false;
      return a.b == nullptr || structurally_equal(*a.b, *b.b);
    case NodeKind::Piecewise: {
      if (a.pieces.size() != b.pieces.size()) return false;
      for (std::size_t i = 0; i < a.pieces.size(); ++i) {
        if (a.pieces[i].lo != b.pieces[i].lo) return false;
        if (a.pieces[i].hi != b.pieces[i].hi) return false;
        if (!structurally_equal(*a.pieces[i].body, *b.pieces[i].body))
          return false;
      }
      return true;
    }
  }
  return false;
}

inline std::string fmt_num(double v) {
  if (v == static_cast<long long>(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void print(const Node& n, std::string& out);

inline void print_paren(const Node& n, std::string& out) {
  bool atom = n.kind == NodeKind::Const || n.kind == NodeKind::Var ||
              n.kind == NodeKind::Call || n.kind == NodeKind::Piecewise;
  if (atom && !(n.kind == NodeKind::Const && n.value < 0)) {
    print(n, out);
  } else {
    out += '(';
    print(n, out);
    out += ')';
  }
}

inline void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Const: out += fmt_num(n.value); return;
    case NodeKind::Var: out += n.name; return;
    case NodeKind::Neg:
      out += '-';
      print_paren(*n.a, out);
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow: {
      const char* op = n.kind == NodeKind::Add   ? " + "
                       : n.kind == NodeKind::Sub ? " - "
                       : n.kind == NodeKind::Mul ? "*"
                       : n.kind == NodeKind::Div ? "/"
                                                 : "^";
      print_paren(*n.a, out);
      out += op;
      print_paren(*n.b, out);
      return;
    }
    case NodeKind::Call: {
      const char* f = n.func == Func::Abs   ? "abs"
                      : n.func == Func::Ln  ? "ln"
                      : n.func == Func::Exp ? "exp"
                      : n.func == Func::Min ? "min"
                                            : "max";
      out += f;
      out += '(';
      print(*n.a, out);
      if (n.b) {
        out += ", ";
        print(*n.b, out);
      }
      out += ')';
      return;
    }
    case NodeKind::Piecewise: {
      out += "piecewise{ ";
      for (std::size_t i = 0; i < n.pieces.size(); ++i) {
        if (i) out += "; ";
        out += '[';
        out += fmt_num(n.pieces[i].lo);
        out += ", ";
        out += fmt_num(n.pieces[i].hi);
        out += "]: ";
        print(*n.pieces[i].body, out);
      }
      out += " }";
      return;
    }
  }
}

inline void collect_vars(const Node& n, std::vector<std::string>& out) {
  switch (n.kind) {
    case NodeKind::Const: return;
    case NodeKind::Var: {
      for (const auto& v : out)
        if (v == n.name) return;
      out.push_back(n.name);
      return;
    }
    case NodeKind::Piecewise:
      for (const auto& p : n.pieces) collect_vars(*p.body, out);
      return;
    default:
      if (n.a) collect_vars(*n.a, out);
      if (n.b) collect_vars(*n.b, out);
  }
}

inline bool has_vars(const Node& n) {
  std::vector<std::string> vs;
  collect_vars(n, vs);
  return !vs.empty();
}

// Affine in `var`: constants, var, sums/differences, and products/quotients
// with a variable-free factor. Enough to locate abs-kinks exactly.
inline bool is_affine_in(const Node& n, const std::string& var) {
  switch (n.kind) {
    case NodeKind::Const: return true;
    case NodeKind::Var: return true;
    case NodeKind::Neg: return is_affine_in(*n.a, var);
    case NodeKind::Add:
    case NodeKind::Sub:
      return is_affine_in(*n.a, var) && is_affine_in(*n.b, var);
    case NodeKind::Mul:
      return (!has_vars(*n.a) && is_affine_in(*n.b, var)) ||
             (!has_vars(*n.b) && is_affine_in(*n.a, var));
    case NodeKind::Div: return is_affine_in(*n.a, var) && !has_vars(*n.b);
    default: return false;
  }
}

// Breakpoint candidates in `var`: piecewise boundaries plus roots of affine
// abs-arguments. Non-affine abs arguments contribute nothing; such kinks must
// be declared through explicit piecewise splits.
inline void collect_breakpoints(const Node& n, const std::string& var,
                                std::vector<double>& out) {
  switch (n.kind) {
    case NodeKind::Call:
      if (n.func == Func::Abs && is_affine_in(*n.a, var)) {
        Env e0{{var, 0.0}}, e1{{var, 1.0}};
        double c = eval(*n.a, e0);
        double slope = eval(*n.a, e1) - c;
        if (slope != 0.0) out.push_back(-c / slope);
      }
      if (n.a) collect_breakpoints(*n.a, var, out);
      if (n.b) collect_breakpoints(*n.b, var, out);
      return;
    case NodeKind::Piecewise:
      for (const auto& p : n.pieces) {
        out.push_back(p.lo);
        out.push_back(p.hi);
        collect_breakpoints(*p.body, var, out);
      }
      return;
    default:
      if (n.a) collect_breakpoints(*n.a, var, out);
      if (n.b) collect_breakpoints(*n.b, var, out);
  }
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

struct Token {
  enum Type { Number, Ident, Op, End } type;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src, int line = 1) : src_(src), line_(line) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_base_ = pos_ + 1;
      }
      ++pos_;
    }
    tok_.line = line_;
    tok_.column = static_cast<int>(pos_ - col_base_) + 1;
    if (pos_ >= src_.size()) {
      tok_.type = Token::End;
      tok_.text = "<end>";
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t mark = pos_++;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        } else {
          pos_ = mark;  // bare 'e' belongs to the next token
        }
      }
      tok_.type = Token::Number;
      tok_.text = src_.substr(start, pos_ - start);
      tok_.number = std::strtod(tok_.text.c_str(), nullptr);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.type = Token::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    tok_.type = Token::Op;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t col_base_ = 0;
  Token tok_;
  int line_;
};

class Parser {
 public:
  Parser(const std::string& src, std::vector<std::string> allowed_vars, int line)
      : lex_(src, line), allowed_(std::move(allowed_vars)) {}

  NodePtr parse() {
    NodePtr e = parse_sum();
    if (lex_.peek().type != Token::End)
      fail("unexpected trailing input '" + lex_.peek().text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg, lex_.peek().line, lex_.peek().column);
  }

  bool accept_op(const char* op) {
    if (lex_.peek().type == Token::Op && lex_.peek().text == op) {
      lex_.next();
      return true;
    }
    return false;
  }

  void expect_op(const char* op) {
    if (!accept_op(op)) fail(std::string("expected '") + op + "'");
  }

  NodePtr parse_sum() {
    NodePtr e = parse_term();
    for (;;) {
      if (accept_op("+"))
        e = make_binary(NodeKind::Add, e, parse_term());
      else if (accept_op("-"))
        e = make_binary(NodeKind::Sub, e, parse_term());
      else
        return e;
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    for (;;) {
      if (accept_op("*"))
        e = make_binary(NodeKind::Mul, e, parse_unary());
      else if (accept_op("/"))
        e = make_binary(NodeKind::Div, e, parse_unary());
      else
        return e;
    }
  }

  // Unary minus binds looser than '^': -x^2 is -(x^2).
  NodePtr parse_unary() {
    if (accept_op("-")) return make_unary(NodeKind::Neg, parse_unary());
    if (accept_op("+")) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept_op("^")) return make_binary(NodeKind::Pow, base, parse_unary());
    return base;
  }

  double parse_const_bound() {
    NodePtr e = parse_sum();
    if (has_vars(*e)) fail("piecewise bound must be constant");
    return eval(*e, Env{});
  }

  NodePtr parse_primary() {
    const Token& t = lex_.peek();
    if (t.type == Token::Number) return make_const(lex_.next().number);
    if (t.type == Token::Ident) {
      if (t.text == "piecewise") return parse_piecewise();
      Token id = lex_.next();
      Func f;
      bool is_func = true;
      bool binary = false;
      if (id.text == "abs") f = Func::Abs;
      else if (id.text == "ln") f = Func::Ln;
      else if (id.text == "exp") f = Func::Exp;
      else if (id.text == "min") f = Func::Min, binary = true;
      else if (id.text == "max") f = Func::Max, binary = true;
      else is_func = false;
      if (is_func) {
        expect_op("(");
        NodePtr a = parse_sum();
        NodePtr b;
        if (binary) {
          expect_op(",");
          b = parse_sum();
        }
        expect_op(")");
        return make_call(f, a, b);
      }
      for (const auto& v : allowed_)
        if (v == id.text) return make_var(id.text);
      throw ExprError("unknown identifier '" + id.text + "'", id.line, id.column);
    }
    if (accept_op("(")) {
      NodePtr e = parse_sum();
      expect_op(")");
      return e;
    }
    fail("expected expression, got '" + t.text + "'");
  }

  NodePtr parse_piecewise() {
    lex_.next();  // 'piecewise'
    expect_op("{");
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Piecewise;
    for (;;) {
      expect_op("[");
      double lo = parse_const_bound();
      expect_op(",");
      double hi = parse_const_bound();
      expect_op("]");
      if (!(lo < hi)) fail("piecewise interval must have lo < hi");
      expect_op(":");
      NodePtr body = parse_sum();
      node->pieces.push_back({lo, hi, body});
      if (accept_op(";")) {
        if (accept_op("}")) break;  // trailing separator
        continue;
      }
      expect_op("}");
      break;
    }
    for (std::size_t i = 1; i < node->pieces.size(); ++i) {
      if (node->pieces[i].lo != node->pieces[i - 1].hi)
        fail("piecewise intervals must be contiguous");
    }
    return node;
  }

  Lexer lex_;
  std::vector<std::string> allowed_;
};

}  // namespace detail

// A parsed expression over named variables, with exact evaluation and
// one-sided derivatives.
class ExprFn {
 public:
  ExprFn() = default;

  static ExprFn parse(const std::string& text,
                      std::vector<std::string> allowed_vars = {"x"},
                      int line = 1) {
    detail::Parser p(text, std::move(allowed_vars), line);
    ExprFn fn;
    fn.root_ = p.parse();
    detail::collect_vars(*fn.root_, fn.vars_);
    return fn;
  }

  static ExprFn constant(double v) {
    ExprFn fn;
    fn.root_ = detail::make_const(v);
    return fn;
  }

  bool valid() const { return root_ != nullptr; }

  double eval(const Env& env, Side side = 0) const {
    return detail::eval(*root_, env, side);
  }

  double eval_x(double x) const { return eval(Env{{"x", x}}); }

  // One-sided derivative limit w.r.t. `var` at env. Exact within each
  // smooth piece of the expression.
  double derivative(const Env& env, const std::string& var = "x",
                    Side side = 0) const {
    return detail::deriv(*root_, env, var, side);
  }

  const std::vector<std::string>& variables() const { return vars_; }

  std::string to_string() const {
    std::string out;
    detail::print(*root_, out);
    return out;
  }

  bool structurally_equal(const ExprFn& other) const {
    return detail::structurally_equal(*root_, *other.root_);
  }

  // Candidate kink locations in `var` (piecewise boundaries, affine abs roots).
  std::vector<double> breakpoint_candidates(const std::string& var = "x") const {
    std::vector<double> out;
    detail::collect_breakpoints(*root_, var, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // scale * this + offset, as a new expression tree.
  ExprFn affine(double scale, double offset) const {
    ExprFn fn;
    detail::NodePtr scaled =
        scale == 1.0 ? root_
                     : detail::make_binary(detail::NodeKind::Mul,
                                           detail::make_const(scale), root_);
    fn.root_ = offset == 0.0
                   ? scaled
                   : detail::make_binary(detail::NodeKind::Add, scaled,
                                         detail::make_const(offset));
    return fn;
  }

 private:
  detail::NodePtr root_;
  std::vector<std::string> vars_;
};

inline ExprFn parse_expression(const std::string& text,
                               std::vector<std::string> allowed_vars = {"x"}) {
  return ExprFn::parse(text, std::move(allowed_vars));
}

}  // namespace invex

#endif  // INVEX_EXPR_HPP_
