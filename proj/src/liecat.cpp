#include "spinr/liecat.hpp"

#include <regex>
#include <sstream>

#include "spinr/errors.hpp"

namespace spinr::liecat {

using format::Env;
using format::Expr;
using format::Interpolated;
using format::Value;

std::int64_t AlgebraProfile::dimension() const {
  std::int64_t d = center_rank;
  for (const auto& i : ideals) d += i.dim;
  return d;
}

std::string AlgebraProfile::to_string() const {
  std::vector<std::string> parts;
  if (center_rank == 1) parts.emplace_back("u(1)");
  if (center_rank > 1) parts.push_back("u(1)^" + std::to_string(center_rank));
  for (const auto& i : ideals) parts.push_back(i.kind);
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "⊕" + parts[i];
  return out;
}

abelian::FgAbGroup standard_so_pi1(int k) {
  if (k <= 0) throw InvalidInput("SO(k) needs k >= 1, got " + std::to_string(k));
  std::string label = "SO(" + std::to_string(k) + ").loop";
  if (k == 1) return abelian::FgAbGroup::trivial();
  if (k == 2) return abelian::FgAbGroup::integers(label);
  return abelian::FgAbGroup::cyclic(2, label);
}

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '\t') continue;
    if (c == '*' || (c == '.' && !out.empty() && out.back() == ')')) {
      out += "·";
      continue;
    }
    out += c;
  }
  return out;
}

void check_ideal(const SimpleIdeal& ideal, int line) {
  auto fail = [&](const std::string& why) { throw CatalogError(line, "ideal " + ideal.kind + ": " + why); };
  if (ideal.dim < 3) fail("dimension must be at least 3");
  if (ideal.min_orth_rep_dim < 2) fail("min_orth_rep_dim must be at least 2");
  static const std::regex series(R"(^(so|su|sp)\((\d+)\)$)");
  std::smatch m;
  if (ideal.kind == "g2") {
    if (ideal.dim != 14) fail("g2 has dimension 14");
    if (ideal.min_orth_rep_dim != 7) fail("g2 has min_orth_rep_dim 7");
    return;
  }
  if (!std::regex_match(ideal.kind, m, series)) fail("unknown kind");
  std::int64_t k = std::stoll(m[2]);
  std::string s = m[1];
  if (s == "so") {
    if (k == 3) {
      if (ideal.dim != 3 || ideal.min_orth_rep_dim != 3) fail("so(3) has dimension 3 and min_orth_rep_dim 3");
      return;
    }
    if (k < 5) fail("so(k) is simple only for k = 3 or k >= 5");
    if (ideal.dim != k * (k - 1) / 2) fail("so(k) has dimension k(k-1)/2");
    if (ideal.min_orth_rep_dim != k) fail("so(k) has min_orth_rep_dim k for k >= 5");
  } else if (s == "su") {
    if (k < 2) fail("su(k) needs k >= 2");
    if (ideal.dim != k * k - 1) fail("su(k) has dimension k^2-1");
  } else {
    if (k < 1) fail("sp(k) needs k >= 1");
    if (ideal.dim != k * (2 * k + 1)) fail("sp(k) has dimension k(2k+1)");
  }
  // the adjoint representation is faithful
  if (ideal.min_orth_rep_dim > ideal.dim) fail("min_orth_rep_dim exceeds the dimension");
}

// ---------------------------------------------------------------- Template

Template::Template(const Value& body, int line) : line_(line) {
  if (const auto* p = body.find("param")) param_ = p->as_string();
  if (const auto* w = body.find("where")) {
    if (!param_) throw CatalogError(w->line, "'where' without 'param'");
    try {
      guard_ = Expr::parse(w->as_string());
    } catch (const InvalidInput& e) {
      throw CatalogError(w->line, e.what());
    }
  }
}

Env Template::env(std::optional<std::int64_t> value) const {
  Env e;
  if (param_ && value) e[*param_] = *value;
  return e;
}

bool Template::admits(std::int64_t value) const {
  if (!guard_) return true;
  try {
    return guard_->eval(env(value)) != 0;
  } catch (const InvalidInput& e) {
    throw CatalogError(line_, std::string("guard: ") + e.what());
  }
}

std::optional<Env> Template::resolve(const Interpolated& pattern, std::string_view text) const {
  if (!param_) {
    if (pattern.render({}) == text) return Env{};
    return std::nullopt;
  }
  for (auto v : pattern.match(text, *param_, 0, kParamLimit))
    if (admits(v)) return env(v);
  return std::nullopt;
}

std::vector<std::optional<std::int64_t>> Template::validation_points() const {
  if (!param_) return {std::nullopt};
  std::vector<std::optional<std::int64_t>> out;
  for (std::int64_t v = 0; v <= kValidationSpan; ++v)
    if (admits(v)) out.emplace_back(v);
  return out;
}

// ------------------------------------------------------------ GroupCatalog

namespace {

Expr read_expr(const Value& v) {
  try {
    return Expr::parse(v.as_expression_source());
  } catch (const InvalidInput& e) {
    throw CatalogError(v.line, e.what());
  }
}

Interpolated read_pattern(const Value& v) {
  try {
    return Interpolated::parse(v.as_string());
  } catch (const InvalidInput& e) {
    throw CatalogError(v.line, e.what());
  }
}

std::int64_t eval_at(const Expr& e, const Env& env, int line) {
  try {
    return e.eval(env);
  } catch (const InvalidInput& ex) {
    throw CatalogError(line, ex.what());
  }
}

}  // namespace

GroupCatalog::GroupTemplate GroupCatalog::read(const format::Record& record) {
  const Value& b = record.body;
  GroupTemplate g;
  g.tmpl = Template(b, record.line);
  g.name = read_pattern(b.at("name"));
  const Value& pi1 = b.at("pi1");
  g.free_rank = read_expr(pi1.at("free_rank"));
  for (const auto& t : pi1.at("torsion").as_list()) g.torsion.push_back(read_expr(t));
  for (const auto& l : b.at("generators").as_list()) g.generators.push_back(read_pattern(l));
  const Value& alg = b.at("algebra");
  g.center_rank = alg.find("center_rank") ? read_expr(alg.at("center_rank")) : Expr::constant(0);
  for (const auto& i : alg.at("ideals").as_list()) {
    if (i.kind != Value::Kind::Block || i.text != "ideal") throw CatalogError(i.line, "expected ideal { ... }");
    GroupTemplate::IdealTemplate it;
    it.kind = read_pattern(i.at("kind"));
    it.dim = read_expr(i.at("dim"));
    it.min_orth_rep_dim = read_expr(i.at("min_orth_rep_dim"));
    if (const auto* c = i.find("cite")) it.citation = c->as_string();
    g.ideals.push_back(std::move(it));
  }
  g.connected = b.at("connected").as_bool();
  g.provenance = read_pattern(b.at("provenance"));
  return g;
}

CompactGroupRec GroupCatalog::instantiate(const GroupTemplate& g, std::optional<std::int64_t> value) {
  const int line = g.tmpl.line();
  Env env = g.tmpl.env(value);
  CompactGroupRec rec;
  rec.source_line = line;
  rec.connected = g.connected;
  try {
    rec.name = g.name.render(env);
    std::int64_t free_rank = eval_at(g.free_rank, env, line);
    if (free_rank < 0) throw CatalogError(line, "negative free_rank");
    std::vector<std::int64_t> torsion;
    for (const auto& t : g.torsion) torsion.push_back(eval_at(t, env, line));
    std::vector<std::string> labels;
    for (const auto& l : g.generators) labels.push_back(l.render(env));
    if (labels.size() != static_cast<std::size_t>(free_rank) + torsion.size())
      throw CatalogError(line, rec.name + ": generator count does not match pi1");
    rec.pi1 = abelian::FgAbGroup(static_cast<int>(free_rank), torsion, labels);
    rec.algebra.center_rank = static_cast<int>(eval_at(g.center_rank, env, line));
    if (rec.algebra.center_rank < 0) throw CatalogError(line, "negative center_rank");
    for (const auto& it : g.ideals) {
      SimpleIdeal ideal{it.kind.render(env), eval_at(it.dim, env, line), eval_at(it.min_orth_rep_dim, env, line),
                        it.citation};
      check_ideal(ideal, line);
      rec.algebra.ideals.push_back(std::move(ideal));
    }
    rec.provenance = g.provenance.render(env);
  } catch (const InvalidInput& e) {
    throw CatalogError(line, e.what());
  }
  if (rec.provenance.empty()) throw CatalogError(line, rec.name + ": empty provenance");
  if (rec.algebra.center_rank < rec.pi1.free_rank())
    throw CatalogError(line, rec.name + ": free rank of pi1 exceeds the center rank");

  static const std::regex so_name(R"(^SO\((\d+)\)$)");
  std::smatch m;
  if (std::regex_match(rec.name, m, so_name)) {
    int k = std::stoi(m[1]);
    if (k >= 1 && !(rec.pi1 == standard_so_pi1(k)))
      throw CatalogError(line, rec.name + ": pi1 must be " + standard_so_pi1(k).to_string());
  }
  return rec;
}

GroupCatalog GroupCatalog::from_records(const std::vector<format::Record>& records) {
  GroupCatalog cat;
  for (const auto& r : records) {
    if (r.type != "group") continue;
    cat.groups_.push_back(read(r));
    const auto& g = cat.groups_.back();
    for (auto v : g.tmpl.validation_points()) instantiate(g, v);
  }
  return cat;
}

std::optional<CompactGroupRec> GroupCatalog::try_lookup(std::string_view name) const {
  const std::string key = normalize_name(name);
  for (const auto& g : groups_) {
    auto env = g.tmpl.resolve(g.name, key);
    if (!env) continue;
    std::optional<std::int64_t> value;
    if (g.tmpl.param()) value = env->at(*g.tmpl.param());
    return instantiate(g, value);
  }
  return std::nullopt;
}

CompactGroupRec GroupCatalog::lookup(std::string_view name) const {
  if (auto r = try_lookup(name)) return *r;
  throw NotInCatalog("group", std::string(name), names());
}

bool GroupCatalog::contains(std::string_view name) const { return try_lookup(name).has_value(); }

std::vector<std::string> GroupCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& g : groups_) out.push_back(g.name.pattern());
  return out;
}

CompactGroupRec GroupCatalog::so_group(int k) const {
  if (k <= 0) throw InvalidInput("SO(k) needs k >= 1, got " + std::to_string(k));
  auto rec = lookup("SO(" + std::to_string(k) + ")");
  if (!(rec.pi1 == standard_so_pi1(k))) throw CatalogError(rec.source_line, rec.name + ": nonstandard pi1");
  return rec;
}

}  // namespace spinr::liecat
