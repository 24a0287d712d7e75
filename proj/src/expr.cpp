#include "spinr/expr.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <set>

#include "spinr/errors.hpp"
#include "spinr/smith.hpp"

namespace spinr::format {

struct Expr::Node {
  enum class Op { Const, Var, Neg, Not, Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Cond };
  Op op = Op::Const;
  std::int64_t value = 0;
  std::string name;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

NodePtr make(Op op, std::vector<NodePtr> kids) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    auto n = conditional();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("expression \"" + std::string(src_) + "\" column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  // Matches `tok` unless it is the prefix of a longer operator such as "<=" or "==".
  bool eat_exact(std::string_view tok) {
    skip_ws();
    if (src_.substr(pos_, tok.size()) != tok) return false;
    const auto next = pos_ + tok.size();
    if (next < src_.size() && src_[next] == '=') return false;
    pos_ = next;
    return true;
  }

  NodePtr conditional() {
    auto c = logical_or();
    if (eat("?")) {
      auto a = conditional();
      if (!eat(":")) fail("expected ':'");
      auto b = conditional();
      return make(Op::Cond, {c, a, b});
    }
    return c;
  }
  NodePtr logical_or() {
    auto l = logical_and();
    while (eat("||")) l = make(Op::Or, {l, logical_and()});
    return l;
  }
  NodePtr logical_and() {
    auto l = equality();
    while (eat("&&")) l = make(Op::And, {l, equality()});
    return l;
  }
  NodePtr equality() {
    auto l = relational();
    for (;;) {
      if (eat("==")) l = make(Op::Eq, {l, relational()});
      else if (eat("!=")) l = make(Op::Ne, {l, relational()});
      else return l;
    }
  }
  NodePtr relational() {
    auto l = additive();
    for (;;) {
      if (eat("<=")) l = make(Op::Le, {l, additive()});
      else if (eat(">=")) l = make(Op::Ge, {l, additive()});
      else if (eat_exact("<")) l = make(Op::Lt, {l, additive()});
      else if (eat_exact(">")) l = make(Op::Gt, {l, additive()});
      else return l;
    }
  }
  NodePtr additive() {
    auto l = multiplicative();
    for (;;) {
      if (eat("+")) l = make(Op::Add, {l, multiplicative()});
      else if (eat("-")) l = make(Op::Sub, {l, multiplicative()});
      else return l;
    }
  }
  NodePtr multiplicative() {
    auto l = unary();
    for (;;) {
      if (eat("*")) l = make(Op::Mul, {l, unary()});
      else if (eat("/")) l = make(Op::Div, {l, unary()});
      else if (eat("%")) l = make(Op::Mod, {l, unary()});
      else return l;
    }
  }
  NodePtr unary() {
    if (eat("-")) return make(Op::Neg, {unary()});
    if (eat_exact("!")) return make(Op::Not, {unary()});
    return primary();
  }
  NodePtr primary() {
    skip_ws();
    if (eat("(")) {
      auto n = conditional();
      if (!eat(")")) fail("expected ')'");
      return n;
    }
    if (pos_ >= src_.size()) fail("unexpected end");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        v = abelian::checked::add(abelian::checked::mul(v, 10), src_[pos_++] - '0');
      auto n = std::make_shared<Expr::Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      auto n = std::make_shared<Expr::Node>();
      n->op = Op::Var;
      n->name = std::string(src_.substr(start, pos_ - start));
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

std::int64_t eval_node(const Expr::Node& n, const Env& env, const std::string& src) {
  using abelian::checked::add;
  using abelian::checked::mul;
  auto k = [&](std::size_t i) { return eval_node(*n.kids[i], env, src); };
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: {
      const auto it = env.find(n.name);
      if (it == env.end()) throw InvalidInput("expression \"" + src + "\": unbound variable '" + n.name + "'");
      return it->second;
    }
    case Op::Neg: return mul(-1, k(0));
    case Op::Not: return k(0) == 0;
    case Op::Add: return add(k(0), k(1));
    case Op::Sub: return add(k(0), mul(-1, k(1)));
    case Op::Mul: return mul(k(0), k(1));
    case Op::Div: {
      const auto a = k(0), b = k(1);
      if (b == 0) throw InvalidInput("expression \"" + src + "\": division by zero");
      if (a % b != 0)
        throw InvalidInput("expression \"" + src + "\": " + std::to_string(a) + "/" + std::to_string(b) +
                           " is not an integer");
      return a / b;
    }
    case Op::Mod: {
      const auto a = k(0), b = k(1);
      if (b <= 0) throw InvalidInput("expression \"" + src + "\": modulus must be positive");
      return abelian::checked::mod(a, b);
    }
    case Op::Eq: return k(0) == k(1);
    case Op::Ne: return k(0) != k(1);
    case Op::Lt: return k(0) < k(1);
    case Op::Le: return k(0) <= k(1);
    case Op::Gt: return k(0) > k(1);
    case Op::Ge: return k(0) >= k(1);
    case Op::And: return k(0) != 0 && k(1) != 0;
    case Op::Or: return k(0) != 0 || k(1) != 0;
    case Op::Cond: return k(0) != 0 ? k(1) : k(2);
  }
  return 0;
}

void collect_vars(const Expr::Node& n, std::set<std::string>& out) {
  if (n.op == Op::Var) out.insert(n.name);
  for (const auto& kid : n.kids) collect_vars(*kid, out);
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  Expr e;
  e.source_ = std::string(source);
  e.root_ = Parser(source).parse_all();
  return e;
}

Expr Expr::constant(std::int64_t value) {
  Expr e;
  auto n = std::make_shared<Node>();
  n->value = value;
  e.root_ = n;
  e.source_ = std::to_string(value);
  return e;
}

std::int64_t Expr::eval(const Env& env) const { return eval_node(*root_, env, source_); }

std::vector<std::string> Expr::variables() const {
  std::set<std::string> vars;
  collect_vars(*root_, vars);
  return {vars.begin(), vars.end()};
}

Interpolated Interpolated::parse(std::string_view pattern) {
  Interpolated out;
  out.pattern_ = std::string(pattern);
  std::string literal;
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const auto close = pattern.find('}', i);
      if (close == std::string_view::npos) throw InvalidInput("pattern \"" + out.pattern_ + "\": unclosed '{'");
      if (literal.empty() && !out.segments_.empty())
        throw InvalidInput("pattern \"" + out.pattern_ + "\": adjacent placeholders");
      out.segments_.push_back({literal, Expr::parse(pattern.substr(i + 1, close - i - 1))});
      literal.clear();
      i = close + 1;
    } else if (pattern[i] == '}') {
      throw InvalidInput("pattern \"" + out.pattern_ + "\": stray '}'");
    } else {
      literal += pattern[i++];
    }
  }
  out.segments_.push_back({literal, std::nullopt});
  return out;
}

bool Interpolated::has_expressions() const {
  return std::any_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.expr.has_value(); });
}

std::string Interpolated::render(const Env& env) const {
  std::string out;
  for (const auto& seg : segments_) {
    out += seg.literal;
    if (seg.expr) out += std::to_string(seg.expr->eval(env));
  }
  return out;
}

std::vector<std::int64_t> Interpolated::match(std::string_view text, const std::string& var, std::int64_t lo,
                                              std::int64_t hi) const {
  // Split `text` along the literals, capturing one signed integer per placeholder.
  std::vector<std::pair<const Expr*, std::int64_t>> captures;
  std::size_t pos = 0;
  for (const auto& seg : segments_) {
    if (text.substr(pos, seg.literal.size()) != seg.literal) return {};
    pos += seg.literal.size();
    if (!seg.expr) continue;
    const auto start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    const auto digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits || pos - digits > 15) return {};
    captures.emplace_back(&*seg.expr, std::stoll(std::string(text.substr(start, pos - start))));
  }
  if (pos != text.size()) return {};

  std::optional<std::set<std::int64_t>> candidates;
  auto at = [&](const Expr& e, std::int64_t v) -> std::optional<std::int64_t> {
    try {
      return e.eval(Env{{var, v}});
    } catch (const InvalidInput&) {
      return std::nullopt;
    }
  };
  for (const auto& [expr, value] : captures) {
    std::set<std::int64_t> sols;
    if (expr->is_constant()) {
      if (expr->eval({}) != value) return {};
      continue;
    }
    const auto e0 = at(*expr, lo), e1 = at(*expr, lo + 1), e2 = at(*expr, lo + 2), e3 = at(*expr, lo + 3);
    const bool affine = e0 && e1 && e2 && e3 && *e1 - *e0 == *e2 - *e1 && *e3 - *e2 == *e2 - *e1 && *e1 != *e0;
    if (affine) {
      const auto slope = *e1 - *e0;
      if ((value - *e0) % slope == 0) {
        const auto v = lo + (value - *e0) / slope;
        if (v >= lo && v <= hi && at(*expr, v) == value) sols.insert(v);
      }
    } else {
      for (auto v = lo; v <= hi; ++v)
        if (at(*expr, v) == value) sols.insert(v);
    }
    if (candidates) {
      std::set<std::int64_t> both;
      std::set_intersection(candidates->begin(), candidates->end(), sols.begin(), sols.end(),
                            std::inserter(both, both.begin()));
      candidates = std::move(both);
    } else {
      candidates = std::move(sols);
    }
  }
  std::vector<std::int64_t> out;
  if (!candidates) return out;  // no placeholders: caller compares the plain string
  for (auto v : *candidates) {
    try {
      if (render(Env{{var, v}}) == text) out.push_back(v);
    } catch (const InvalidInput&) {
    }
  }
  return out;
}

}  // namespace spinr::format
