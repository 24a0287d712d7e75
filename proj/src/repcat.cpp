#include "spinr/repcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spinr/errors.hpp"
#include "spinr/lifting.hpp"
#include "spinr/smith.hpp"

namespace spinr::repcat {

using abelian::AbElem;
using abelian::AbHom;
using abelian::FgAbGroup;
using format::Env;
using format::Expr;
using format::Interpolated;
using format::Value;
using liecat::standard_so_pi1;
namespace checked = abelian::checked;

// ------------------------------------------------------------------ params

bool IntParam::admissible(std::int64_t s) const { return checked::mod(s - residue, modulus) == 0; }

std::string IntParam::describe() const { return render_constraint(name, modulus, {residue}); }

std::string render_constraint(const std::string& name, std::int64_t m, std::vector<std::int64_t> residues,
                              std::optional<std::int64_t> trivial_at) {
  if (m < 1) throw InvalidInput("modulus must be positive");
  std::set<std::int64_t> set;
  for (auto r : residues) set.insert(checked::mod(r, m));
  if (set.empty()) return "none";

  std::int64_t period = m;
  std::set<std::int64_t> reduced = set;
  for (std::int64_t p = 1; p < m; ++p) {
    if (m % p != 0) continue;
    std::set<std::int64_t> q;
    for (auto x : set) q.insert(x % p);
    bool periodic = true;
    for (std::int64_t x = 0; x < m && periodic; ++x) periodic = set.count(x) == q.count(x % p);
    if (periodic) {
      period = p;
      reduced = q;
      break;
    }
  }

  std::string out;
  if (period == 1) {
    out = name + " ∈ Z";
  } else if (period == 2) {
    out = name + (*reduced.begin() == 0 ? " even" : " odd");
  } else {
    out = name + " ≡ ";
    bool first = true;
    for (auto x : reduced) {
      if (!first) out += ", ";
      out += std::to_string(x);
      first = false;
    }
    out += " mod " + std::to_string(period);
  }
  if (trivial_at && set.count(checked::mod(*trivial_at, m))) out += ", " + name + " ≠ " + std::to_string(*trivial_at);
  return out;
}

// ---------------------------------------------------------------- families

std::vector<std::int64_t> OrthRepFamily::raw_images(std::optional<std::int64_t> s) const {
  Env e = env;
  if (is_parametric()) {
    if (!s) throw InvalidInput(id + ": a value for " + param().name + " is required");
    if (!param().admissible(*s))
      throw InvalidInput(id + ": " + param().name + " = " + std::to_string(*s) + " violates " + param().describe());
    e[param().name] = *s;
  } else if (s) {
    throw InvalidInput(id + ": family has no integer parameter");
  }
  std::vector<std::int64_t> out;
  for (const auto& gen : images)
    for (const auto& c : gen) out.push_back(c.eval(e));
  return out;
}

AbHom OrthRepFamily::pi1_map(std::optional<std::int64_t> s) const {
  FgAbGroup target = standard_so_pi1(target_r);
  if (is_trivial) return AbHom::zero(domain_pi1, target);
  const int r0 = induced_from.value_or(target_r);
  FgAbGroup codomain = standard_so_pi1(r0);
  auto raw = raw_images(s);
  const std::size_t width = codomain.generator_count();
  if (images.size() != domain_pi1.generator_count() || raw.size() != width * images.size())
    throw InvalidInput(id + ": pi1 image shape does not match the domain and target");
  std::vector<AbElem> imgs;
  for (std::size_t g = 0; g < images.size(); ++g)
    imgs.push_back(codomain.element(std::vector<std::int64_t>(raw.begin() + g * width, raw.begin() + (g + 1) * width)));
  AbHom map(domain_pi1, codomain, std::move(imgs));
  if (induced_from) return lifting::induce(map, r0, target_r);
  return map;
}

OrthRepFamily trivial_family(const liecat::CompactGroupRec& h, int r) {
  OrthRepFamily f;
  f.id = "trivial";
  f.domain = h.name;
  f.target_r = r;
  f.params = ClassList{{"trivial"}};
  f.distinct_classes = "single class";
  f.extends_to = std::nullopt;
  f.certificate = "the constant homomorphism always exists";
  f.provenance = "constant homomorphism, zero on pi1";
  f.domain_pi1 = h.pi1;
  f.is_trivial = true;
  return f;
}

OrthRepFamily induce_family(const OrthRepFamily& f, int s) {
  if (s <= f.target_r) throw InvalidInput("block inclusion needs a larger target");
  OrthRepFamily g = f;
  g.target_r = s;
  if (f.is_trivial) return g;
  const int r0 = f.induced_from.value_or(f.target_r);
  g.induced_from = r0;
  std::string base = f.id;
  if (f.induced_from) base = base.substr(0, base.rfind(" ⊕ "));
  g.id = base + " ⊕ trivial R^" + std::to_string(s - r0);
  return g;
}

// ------------------------------------------------------------- rule engine

RuleVerdict prove_trivial(const liecat::AlgebraProfile& a, int r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  const std::size_t k = a.ideals.size();
  if (k > 20) throw InvalidInput("too many simple ideals for the rule engine");
  const std::int64_t so_dim = static_cast<std::int64_t>(r) * (r - 1) / 2;
  const std::string target = "so(" + std::to_string(r) + ")";

  RuleVerdict v;
  std::vector<std::string> survivors;
  for (int c = 0; c <= a.center_rank; ++c) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      if (c == 0 && mask == 0) continue;
      liecat::AlgebraProfile q;
      q.center_rank = c;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) q.ideals.push_back(a.ideals[i]);
      const std::string name = q.to_string();
      const std::int64_t dim = q.dimension();
      if (dim > so_dim) {
        v.trace.push_back("quotient " + name + ": dimension " + std::to_string(dim) + " exceeds dim " + target + " = " +
                          std::to_string(so_dim));
        continue;
      }
      if (r <= 2 && !q.is_abelian()) {
        v.trace.push_back("quotient " + name + ": not abelian, but " + target + " is");
        continue;
      }
      auto big = std::find_if(q.ideals.begin(), q.ideals.end(),
                              [r](const liecat::SimpleIdeal& i) { return i.min_orth_rep_dim > r; });
      if (big != q.ideals.end()) {
        v.trace.push_back("quotient " + name + ": " + big->kind + " has no nonzero map to " + target +
                          " (smallest faithful orthogonal representation has dimension " +
                          std::to_string(big->min_orth_rep_dim) + ")");
        continue;
      }
      v.trace.push_back("quotient " + name + ": not ruled out");
      survivors.push_back(name);
    }
  }
  v.only_trivial = survivors.empty();
  if (v.only_trivial)
    v.summary = a.to_string() + " admits no nontrivial map to " + target;
  else
    v.summary = "cannot rule out a map " + a.to_string() + " -> " + target + " with image " + survivors.front();
  return v;
}

bool no_nontrivial_hom(const liecat::AlgebraProfile& a, int r) { return prove_trivial(a, r).only_trivial; }

// ----------------------------------------------------------------- catalog

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

}  // namespace

RepCatalog::FamilyTemplate RepCatalog::read(const format::Record& record) {
  const Value& b = record.body;
  FamilyTemplate t;
  t.tmpl = liecat::Template(b, record.line);
  t.id = read_pattern(b.at("id"));
  t.domain = read_pattern(b.at("domain"));
  t.target_r = read_expr(b.at("target_r"));
  const Value& p = b.at("params");
  if (const auto* cls = p.find("classes")) {
    ClassList c;
    for (const auto& l : cls->as_list()) c.labels.push_back(l.as_string());
    if (c.labels.empty()) throw CatalogError(cls->line, "empty class list");
    t.params = c;
  } else if (const auto* name = p.find("int")) {
    IntParam ip;
    ip.name = name->as_string();
    if (ip.name.empty()) throw CatalogError(name->line, "empty parameter name");
    ip.modulus = p.find("modulus") ? p.at("modulus").as_integer() : 1;
    if (ip.modulus < 1) throw CatalogError(p.line, "modulus must be positive");
    ip.residue = checked::mod(p.find("residue") ? p.at("residue").as_integer() : 0, ip.modulus);
    if (const auto* z = p.find("trivial_at")) ip.trivial_at = z->as_integer();
    t.params = ip;
  } else {
    throw CatalogError(p.line, "params needs 'classes' or 'int'");
  }
  for (const auto& gen : b.at("pi1_images").as_list()) {
    std::vector<Expr> coords;
    for (const auto& c : gen.as_list()) coords.push_back(read_expr(c));
    t.images.push_back(std::move(coords));
  }
  t.distinct_classes = read_pattern(b.at("distinct_classes"));
  if (const auto* e = b.find("extends_to")) t.extends_to = read_pattern(*e);
  const Value& cert = b.at("certificate");
  if (cert.as_string() != "incomplete") t.certificate = read_pattern(cert);
  t.provenance = read_pattern(b.at("provenance"));
  return t;
}

OrthRepFamily RepCatalog::instantiate(const FamilyTemplate& t, const Env& env, const liecat::CompactGroupRec& h,
                                      int r) {
  OrthRepFamily f;
  f.id = t.id.render(env);
  f.domain = h.name;
  f.target_r = r;
  f.params = t.params;
  f.distinct_classes = t.distinct_classes.render(env);
  if (t.extends_to) f.extends_to = t.extends_to->render(env);
  if (t.certificate) f.certificate = t.certificate->render(env);
  f.provenance = t.provenance.render(env);
  f.source_line = t.tmpl.line();
  f.domain_pi1 = h.pi1;
  f.images = t.images;
  f.env = env;
  return f;
}

void RepCatalog::validate(const OrthRepFamily& f, const liecat::CompactGroupRec& h) {
  const int line = f.source_line;
  if (f.provenance.empty()) throw CatalogError(line, f.id + ": empty provenance");
  if (f.images.size() != h.pi1.generator_count())
    throw CatalogError(line, f.id + ": pi1_images needs one entry per generator of pi1(" + h.name + ")");
  const std::size_t width = standard_so_pi1(f.target_r).generator_count();
  for (const auto& gen : f.images)
    if (gen.size() != width)
      throw CatalogError(line, f.id + ": each image needs " + std::to_string(width) + " coordinate(s) in pi1(SO(" +
                                   std::to_string(f.target_r) + "))");
  if (no_nontrivial_hom(h.algebra, f.target_r))
    throw CatalogError(line, f.id + ": contradicts the rule engine, " + prove_trivial(h.algebra, f.target_r).summary);
  try {
    if (!f.is_parametric()) {
      f.pi1_map();
      return;
    }
    const IntParam& p = f.param();
    std::vector<std::vector<std::int64_t>> raw;
    for (std::int64_t t = -2; t <= 3; ++t) {
      std::int64_t s = p.residue + t * p.modulus;
      f.pi1_map(s);
      raw.push_back(f.raw_images(s));
    }
    for (std::size_t i = 2; i < raw.size(); ++i)
      for (std::size_t c = 0; c < raw[i].size(); ++c)
        if (raw[i][c] - 2 * raw[i - 1][c] + raw[i - 2][c] != 0)
          throw CatalogError(line, f.id + ": pi1 images are not affine in " + p.name);
    if (p.trivial_at) {
      if (!p.admissible(*p.trivial_at)) throw CatalogError(line, f.id + ": trivial_at is not admissible");
      if (!f.pi1_map(*p.trivial_at).is_zero()) throw CatalogError(line, f.id + ": nonzero pi1 map at trivial_at");
    }
  } catch (const InvalidInput& e) {
    throw CatalogError(line, e.what());
  }
}

RepCatalog RepCatalog::from_records(const std::vector<format::Record>& records, const liecat::GroupCatalog& groups) {
  RepCatalog cat;
  for (const auto& rec : records) {
    if (rec.type != "repfamily") continue;
    FamilyTemplate t = read(rec);
    for (auto v : t.tmpl.validation_points()) {
      Env env = t.tmpl.env(v);
      std::string domain;
      std::int64_t r = 0;
      try {
        domain = t.domain.render(env);
        r = t.target_r.eval(env);
      } catch (const InvalidInput& e) {
        throw CatalogError(rec.line, e.what());
      }
      if (r < 1) throw CatalogError(rec.line, "target_r must be at least 1");
      if (!groups.contains(domain)) throw CatalogError(rec.line, "domain " + domain + " is not a catalog group");
      auto h = groups.lookup(domain);
      if (!t.tmpl.resolve(t.domain, h.name))
        throw CatalogError(rec.line, "domain " + domain + " does not resolve back to this record");
      auto f = instantiate(t, env, h, static_cast<int>(r));
      if (f.extends_to && !groups.contains(*f.extends_to))
        throw CatalogError(rec.line, "extends_to " + *f.extends_to + " is not a catalog group");
      validate(f, h);
    }
    cat.templates_.push_back(std::move(t));
  }
  return cat;
}

std::vector<OrthRepFamily> RepCatalog::families(const liecat::CompactGroupRec& h, int r) const {
  std::vector<OrthRepFamily> out;
  for (const auto& t : templates_) {
    auto env = t.tmpl.resolve(t.domain, h.name);
    if (!env) continue;
    std::int64_t target = 0;
    try {
      target = t.target_r.eval(*env);
    } catch (const InvalidInput& e) {
      throw CatalogError(t.tmpl.line(), e.what());
    }
    if (target != r) continue;
    out.push_back(instantiate(t, *env, h, r));
  }
  return out;
}

EnumResult enumerate_homs(const liecat::GroupCatalog& groups, const RepCatalog& reps, std::string_view h_name, int r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  auto h = groups.lookup(h_name);
  EnumResult res;
  res.families.push_back(trivial_family(h, r));
  RuleVerdict rule = prove_trivial(h.algebra, r);
  res.trace = rule.trace;
  auto listed = reps.families(h, r);

  if (rule.only_trivial) {
    if (!listed.empty()) throw std::logic_error("catalog family contradicts the rule engine at " + h.name);
    res.complete = true;
    res.certificate = rule.summary;
    return res;
  }

  bool certified = !listed.empty() && std::all_of(listed.begin(), listed.end(),
                                                  [](const OrthRepFamily& f) { return f.certificate.has_value(); });
  for (auto& f : listed) res.families.push_back(f);
  if (certified) {
    res.complete = true;
    std::set<std::string> seen;
    for (const auto& f : listed) {
      if (!seen.insert(*f.certificate).second) continue;
      if (!res.certificate.empty()) res.certificate += "; ";
      res.certificate += *f.certificate;
    }
    return res;
  }

  res.complete = false;
  res.certificate = listed.empty() ? "no catalog certificate covers " + h.name + " -> SO(" + std::to_string(r) + "); " +
                                         rule.summary
                                   : "catalog families for " + h.name + " -> SO(" + std::to_string(r) +
                                         ") are flagged incomplete";
  for (int r0 = 1; r0 < r; ++r0)
    for (const auto& f : reps.families(h, r0)) {
      res.families.push_back(induce_family(f, r));
      res.trace.push_back("added " + res.families.back().id + " from SO(" + std::to_string(r0) + ")");
    }
  return res;
}

// ---------------------------------------------------------- parameter solver

ParamSolution solve_parameter(const OrthRepFamily& f, const std::function<bool(const AbHom&)>& passes) {
  if (!f.is_parametric()) throw InvalidInput(f.id + ": not a parametric family");
  const IntParam& p = f.param();
  std::vector<std::int64_t> values;
  std::vector<std::vector<std::int64_t>> raw;
  std::vector<bool> ok;
  for (std::int64_t t = 0; t < 4; ++t) {
    std::int64_t s = p.residue + t * p.modulus;
    values.push_back(s);
    raw.push_back(f.raw_images(s));
    ok.push_back(passes(f.pi1_map(s)));
  }
  for (std::size_t i = 2; i < raw.size(); ++i)
    for (std::size_t c = 0; c < raw[i].size(); ++c)
      if (raw[i][c] - 2 * raw[i - 1][c] + raw[i - 2][c] != 0)
        throw CatalogError(f.source_line, f.id + ": pi1 images are not affine in " + p.name);
  // membership in the covering subgroup depends on images mod 2
  if (ok[0] != ok[2] || ok[1] != ok[3]) throw std::logic_error(f.id + ": lift verdict is not 2-periodic");

  ParamSolution sol;
  sol.modulus = 2 * p.modulus;
  sol.representative = values[0];
  for (int t = 1; t >= 0; --t)
    if (ok[t]) {
      sol.residues.push_back(checked::mod(values[t], sol.modulus));
      sol.representative = values[t];
    }
  std::sort(sol.residues.begin(), sol.residues.end());
  sol.constraint = render_constraint(p.name, sol.modulus, sol.residues, p.trivial_at);
  return sol;
}

}  // namespace spinr::repcat
