#include "metsymp/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "metsymp/errors.hpp"

namespace metsymp {

namespace {

// Multi-byte operator spellings accepted in place of their ASCII forms.
struct Alias {
  std::string_view utf8;
  char ascii;
};
constexpr Alias kAliases[] = {{"\xC3\x97", '*'}, {"\xC3\xB7", '/'}, {"\xE2\x88\x92", '-'}, {"\xE2\x8B\x85", '*'}};

class Cursor {
 public:
  Cursor(std::string_view text, int line, int column) : text_(text), line_(line), col0_(column) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  // Next operator character, with Unicode spellings normalized.
  std::optional<char> peek_op() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    for (const auto& a : kAliases)
      if (text_.substr(pos_).starts_with(a.utf8)) return a.ascii;
    return text_[pos_];
  }
  void advance_op() {
    for (const auto& a : kAliases)
      if (text_.substr(pos_).starts_with(a.utf8)) {
        pos_ += a.utf8.size();
        return;
      }
    ++pos_;
  }
  bool accept(char c) {
    if (peek_op() != c) return false;
    advance_op();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string_view rest() const { return text_.substr(pos_); }
  void skip(std::size_t n) { pos_ += n; }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    int col = col0_;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i)
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
    throw ParseError(msg, line_, col);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class ExprParser {
 public:
  ExprParser(Cursor& c, const std::vector<std::string>& names) : c_(c), names_(names) {}

  Expr parse_all() {
    Expr e = sum();
    if (!c_.done()) c_.fail("unexpected input");
    return e;
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (c_.accept('+')) e = e + product();
      else if (c_.accept('-')) e = e - product();
      else return e;
    }
  }

 private:
  Expr product() {
    Expr e = unary();
    while (true) {
      if (c_.accept('*')) e = e * unary();
      else if (c_.accept('/')) e = e / unary();
      else return e;
    }
  }

  Expr unary() {
    if (c_.accept('-')) return -unary();
    if (c_.accept('+')) return unary();
    return power();
  }

  // Right associative; binds tighter than unary minus: -x^2 = -(x^2).
  Expr power() {
    Expr base = primary();
    if (c_.accept('^')) return pow(base, unary());
    return base;
  }

  Expr primary() {
    const auto op = c_.peek_op();
    if (!op) c_.fail("unexpected end of expression");
    if (*op == '(') {
      c_.advance_op();
      Expr e = sum();
      c_.expect(')');
      return e;
    }
    const std::string_view rest = c_.rest();
    if (std::isdigit(static_cast<unsigned char>(rest[0])) || rest[0] == '.') return number();
    if (rest.starts_with("\xCF\x80")) {
      c_.skip(2);
      return std::numbers::pi;
    }
    if (!ident_char(rest[0])) c_.fail(std::string("unexpected character '") + rest[0] + "'");
    const std::size_t start = c_.pos();
    std::size_t n = 0;
    while (n < rest.size() && ident_char(rest[n])) ++n;
    const std::string id(rest.substr(0, n));
    c_.skip(n);
    const auto var = std::find(names_.begin(), names_.end(), id);
    if (var != names_.end()) return Expr::var(static_cast<int>(var - names_.begin()));
    if (id == "pi") return std::numbers::pi;
    using Fn = Expr (*)(const Expr&);
    static const std::pair<const char*, Fn> functions[] = {
        {"exp", [](const Expr& a) { return exp(a); }},  {"log", [](const Expr& a) { return log(a); }},
        {"sin", [](const Expr& a) { return sin(a); }},  {"cos", [](const Expr& a) { return cos(a); }},
        {"sqrt", [](const Expr& a) { return sqrt(a); }}};
    for (const auto& [fname, fn] : functions)
      if (id == fname) {
        c_.expect('(');
        Expr arg = sum();
        c_.expect(')');
        return fn(arg);
      }
    c_.fail_at(start, "unknown identifier '" + id + "'");
  }

  Expr number() {
    const std::string_view rest = c_.rest();
    std::size_t n = 0;
    auto digits = [&] {
      while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
    };
    digits();
    if (n < rest.size() && rest[n] == '.') {
      ++n;
      digits();
    }
    if (n < rest.size() && (rest[n] == 'e' || rest[n] == 'E')) {
      std::size_t m = n + 1;
      if (m < rest.size() && (rest[m] == '+' || rest[m] == '-')) ++m;
      if (m < rest.size() && std::isdigit(static_cast<unsigned char>(rest[m]))) {
        n = m;
        digits();
      }
    }
    const std::string s(rest.substr(0, n));
    if (s == ".") c_.fail("malformed number");
    c_.skip(n);
    return std::stod(s);
  }

  Cursor& c_;
  const std::vector<std::string>& names_;
};

double constant_of(const Expr& e, const Cursor& c) {
  if (!e.is_constant()) c.fail("expected a constant expression");
  return e.constant_value();
}

struct Assignment {
  int rank = 0;
  std::vector<int> index;
  Expr value = 0.0;
};

}  // namespace

Expr parse_expression(std::string_view text, const std::vector<std::string>& names) {
  Cursor c(text, 1, 1);
  return ExprParser(c, names).parse_all();
}

StructureFile parse_structure(std::string_view text) {
  std::string name;
  std::vector<std::string> names;
  std::vector<Interval> domain;
  std::vector<Expr> eta, g, phi;
  bool seen_component = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Cursor c(line, lineno, 1);
    if (c.done()) continue;
    const std::string_view rest = c.rest();
    std::size_t n = 0;
    while (n < rest.size() && ident_char(rest[n])) ++n;
    const std::string keyword(rest.substr(0, n));
    if (keyword.empty()) c.fail("expected a keyword");
    c.skip(n);

    if (keyword == "name") {
      c.skip_space();
      name = std::string(c.rest());
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      continue;
    }
    if (keyword == "chart") {
      if (seen_component) c.fail("chart lines must precede components");
      c.skip_space();
      const std::string_view r = c.rest();
      std::size_t m = 0;
      while (m < r.size() && ident_char(r[m])) ++m;
      if (m == 0 || std::isdigit(static_cast<unsigned char>(r[0]))) c.fail("expected a coordinate name");
      const std::string coord(r.substr(0, m));
      if (std::find(names.begin(), names.end(), coord) != names.end()) c.fail("duplicate coordinate '" + coord + "'");
      c.skip(m);
      // Two constant expressions separated by whitespace.
      c.skip_space();
      const std::string_view bounds = c.rest();
      std::size_t split = 0;
      int depth = 0;
      for (; split < bounds.size(); ++split) {
        if (bounds[split] == '(') ++depth;
        if (bounds[split] == ')') --depth;
        if (depth == 0 && std::isspace(static_cast<unsigned char>(bounds[split]))) break;
      }
      const std::vector<std::string> none;
      // Bounds get their own cursors; columns stay relative to the line.
      const int col = static_cast<int>(line.size() - bounds.size()) + 1;
      Cursor lo_cur(bounds.substr(0, split), lineno, col);
      const double lo = constant_of(ExprParser(lo_cur, none).parse_all(), lo_cur);
      if (split >= bounds.size()) c.fail("expected an upper bound");
      const std::string_view hi_text = bounds.substr(split);
      Cursor hi_cur(hi_text, lineno, col + static_cast<int>(split));
      if (hi_cur.done()) c.fail("expected an upper bound");
      const double hi = constant_of(ExprParser(hi_cur, none).parse_all(), hi_cur);
      if (!(lo < hi)) c.fail("empty interval");
      names.push_back(coord);
      domain.push_back({lo, hi});
      continue;
    }

    int rank = 0;
    if (keyword == "eta") rank = 1;
    else if (keyword == "g" || keyword == "phi") rank = 2;
    else c.fail_at(0, "unknown keyword '" + keyword + "'");
    if (names.empty()) c.fail_at(0, "components before any chart line");
    if (!seen_component) {
      const std::size_t d = names.size();
      eta.assign(d, 0.0);
      g.assign(d * d, 0.0);
      phi.assign(d * d, 0.0);
      seen_component = true;
    }
    const int dim = static_cast<int>(names.size());
    c.expect('[');
    std::vector<int> index;
    for (int k = 0; k < rank; ++k) {
      if (k > 0) c.expect(',');
      c.skip_space();
      const std::string_view r = c.rest();
      std::size_t m = 0;
      while (m < r.size() && ident_char(r[m])) ++m;
      const std::string id(r.substr(0, m));
      int idx = -1;
      if (!id.empty() && std::all_of(id.begin(), id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        idx = std::stoi(id);
      else if (const auto it = std::find(names.begin(), names.end(), id); it != names.end())
        idx = static_cast<int>(it - names.begin());
      if (idx < 0 || idx >= dim) c.fail("bad index '" + id + "'");
      c.skip(m);
      index.push_back(idx);
    }
    c.expect(']');
    c.expect('=');
    const Expr value = ExprParser(c, names).parse_all();
    const auto d = static_cast<std::size_t>(dim);
    if (rank == 1) {
      eta[static_cast<std::size_t>(index[0])] = value;
    } else {
      const auto i = static_cast<std::size_t>(index[0]), j = static_cast<std::size_t>(index[1]);
      auto& target = keyword == "g" ? g : phi;
      target[i * d + j] = value;
      if (keyword == "g") g[j * d + i] = value;
    }
  }
  if (names.empty()) throw ParseError("no chart declared", lineno + 1, 1);
  if (!seen_component) throw ParseError("no components declared", lineno + 1, 1);
  const Chart chart(names, domain);
  return {name, ContactMetricStructure(TensorField::from_exprs(chart, {0, 1}, Symmetry::none, eta),
                                      TensorField::from_exprs(chart, {0, 2}, Symmetry::symmetric, g),
                                      TensorField::from_exprs(chart, {1, 1}, Symmetry::none, phi))};
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open structure file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_structure(buf.str());
}

}  // namespace metsymp
