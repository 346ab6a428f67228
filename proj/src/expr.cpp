#include "metsymp/expr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace metsymp {

struct Expr::Node {
  Op op;
  double value = 0.0;
  int index = -1;
  std::shared_ptr<const Node> a, b;
};

namespace {

bool is_const(const std::shared_ptr<const Expr::Node>& n, double v) {
  return n->op == Expr::Op::constant && n->value == v;
}

bool integral_exponent(double e, int& n) {
  if (std::abs(e) > 64.0 || std::nearbyint(e) != e) return false;
  n = static_cast<int>(e);
  return true;
}

double eval_node(const Expr::Node& n, std::span<const double> x) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return x[static_cast<std::size_t>(n.index)];
    case Op::neg: return -eval_node(*n.a, x);
    case Op::add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Op::sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Op::mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Op::div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Op::pow: {
      const double base = eval_node(*n.a, x);
      int k = 0;
      if (n.b->op == Op::constant && integral_exponent(n.b->value, k)) return std::pow(base, k);
      return std::pow(base, eval_node(*n.b, x));
    }
    case Op::exp: return std::exp(eval_node(*n.a, x));
    case Op::log: return std::log(eval_node(*n.a, x));
    case Op::sin: return std::sin(eval_node(*n.a, x));
    case Op::cos: return std::cos(eval_node(*n.a, x));
    case Op::sqrt: return std::sqrt(eval_node(*n.a, x));
  }
  return 0.0;
}

Jet eval_node(const Expr::Node& n, std::span<const Jet> x) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::constant: return Jet(x[0].layout(), n.value);
    case Op::variable: return x[static_cast<std::size_t>(n.index)];
    case Op::neg: return -eval_node(*n.a, x);
    case Op::add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Op::sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Op::mul: {
      if (n.a->op == Op::constant) return eval_node(*n.b, x) * n.a->value;
      if (n.b->op == Op::constant) return eval_node(*n.a, x) * n.b->value;
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    }
    case Op::div: {
      if (n.b->op == Op::constant) return eval_node(*n.a, x) / n.b->value;
      return eval_node(*n.a, x) / eval_node(*n.b, x);
    }
    case Op::pow: {
      const Jet base = eval_node(*n.a, x);
      if (n.b->op == Op::constant) {
        int k = 0;
        if (integral_exponent(n.b->value, k)) return pow(base, k);
        return pow(base, n.b->value);
      }
      return exp(eval_node(*n.b, x) * log(base));
    }
    case Op::exp: return exp(eval_node(*n.a, x));
    case Op::log: return log(eval_node(*n.a, x));
    case Op::sin: return sin(eval_node(*n.a, x));
    case Op::cos: return cos(eval_node(*n.a, x));
    case Op::sqrt: return sqrt(eval_node(*n.a, x));
  }
  return Jet(x[0].layout(), 0.0);
}

const char* fn_name(Expr::Op op) {
  switch (op) {
    case Expr::Op::exp: return "exp";
    case Expr::Op::log: return "log";
    case Expr::Op::sin: return "sin";
    case Expr::Op::cos: return "cos";
    case Expr::Op::sqrt: return "sqrt";
    default: return "?";
  }
}

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::add:
    case Expr::Op::sub: return 1;
    case Expr::Op::mul:
    case Expr::Op::div: return 2;
    case Expr::Op::neg: return 3;
    case Expr::Op::pow: return 4;
    default: return 5;
  }
}

void print(const Expr::Node& n, std::span<const std::string> names, std::ostream& os) {
  using Op = Expr::Op;
  auto child = [&](const Expr::Node& c, int min_prec) {
    const bool paren = precedence(c.op) < min_prec;
    if (paren) os << '(';
    print(c, names, os);
    if (paren) os << ')';
  };
  switch (n.op) {
    case Op::constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      if (n.value < 0) os << '(' << tmp.str() << ')';
      else os << tmp.str();
      return;
    }
    case Op::variable:
      if (static_cast<std::size_t>(n.index) < names.size()) os << names[static_cast<std::size_t>(n.index)];
      else os << "x" << n.index;
      return;
    case Op::neg: os << '-'; child(*n.a, 4); return;
    case Op::add: child(*n.a, 1); os << " + "; child(*n.b, 2); return;
    case Op::sub: child(*n.a, 1); os << " - "; child(*n.b, 2); return;
    case Op::mul: child(*n.a, 2); os << "*"; child(*n.b, 3); return;
    case Op::div: child(*n.a, 2); os << "/"; child(*n.b, 3); return;
    case Op::pow: child(*n.a, 5); os << "^"; child(*n.b, 4); return;
    default: os << fn_name(n.op) << '('; print(*n.a, names, os); os << ')'; return;
  }
}

}  // namespace

Expr::Expr(double c) : node_(std::make_shared<const Node>(Node{Op::constant, c, -1, nullptr, nullptr})) {}

Expr Expr::var(int index) {
  return Expr(std::make_shared<const Node>(Node{Op::variable, 0.0, index, nullptr, nullptr}));
}

Expr::Op Expr::op() const { return node_->op; }

double Expr::constant_value() const {
  if (node_->op != Op::constant) throw std::logic_error("expr: not a constant");
  return node_->value;
}

int Expr::var_index() const {
  if (node_->op != Op::variable) throw std::logic_error("expr: not a variable");
  return node_->index;
}

double Expr::eval(std::span<const double> x) const { return eval_node(*node_, x); }
Jet Expr::eval(std::span<const Jet> x) const { return eval_node(*node_, x); }

std::string Expr::to_string(std::span<const std::string> names) const {
  std::ostringstream os;
  print(*node_, names, os);
  return os.str();
}

Expr Expr::make(Op op, const Expr& a) {
  return Expr(std::make_shared<const Node>(Node{op, 0.0, -1, a.node_, nullptr}));
}

Expr Expr::make(Op op, const Expr& a, const Expr& b) {
  return Expr(std::make_shared<const Node>(Node{op, 0.0, -1, a.node_, b.node_}));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return a.constant_value() + b.constant_value();
  if (is_const(a.node_, 0.0)) return b;
  if (is_const(b.node_, 0.0)) return a;
  return Expr::make(Expr::Op::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return a.constant_value() - b.constant_value();
  if (is_const(b.node_, 0.0)) return a;
  if (is_const(a.node_, 0.0)) return -b;
  return Expr::make(Expr::Op::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return a.constant_value() * b.constant_value();
  if (is_const(a.node_, 0.0) || is_const(b.node_, 0.0)) return 0.0;
  if (is_const(a.node_, 1.0)) return b;
  if (is_const(b.node_, 1.0)) return a;
  return Expr::make(Expr::Op::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return a.constant_value() / b.constant_value();
  if (is_const(b.node_, 1.0)) return a;
  if (is_const(a.node_, 0.0)) return 0.0;
  return Expr::make(Expr::Op::div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return -a.constant_value();
  if (a.op() == Expr::Op::neg) return Expr(a.node_->a);
  return Expr::make(Expr::Op::neg, a);
}

Expr pow(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return std::pow(a.constant_value(), b.constant_value());
  if (is_const(b.node_, 0.0)) return 1.0;
  if (is_const(b.node_, 1.0)) return a;
  return Expr::make(Expr::Op::pow, a, b);
}

Expr exp(const Expr& a) {
  if (a.is_constant()) return std::exp(a.constant_value());
  return Expr::make(Expr::Op::exp, a);
}

Expr log(const Expr& a) {
  if (a.is_constant()) return std::log(a.constant_value());
  return Expr::make(Expr::Op::log, a);
}

Expr sin(const Expr& a) {
  if (a.is_constant()) return std::sin(a.constant_value());
  return Expr::make(Expr::Op::sin, a);
}

Expr cos(const Expr& a) {
  if (a.is_constant()) return std::cos(a.constant_value());
  return Expr::make(Expr::Op::cos, a);
}

Expr sqrt(const Expr& a) {
  if (a.is_constant()) return std::sqrt(a.constant_value());
  return Expr::make(Expr::Op::sqrt, a);
}

}  // namespace metsymp
