#include "spinr/spaces.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>

#include "spinr/errors.hpp"

namespace spinr::spaces {

using abelian::AbElem;
using abelian::AbHom;
using abelian::FgAbGroup;
using format::Env;
using format::Expr;
using format::Interpolated;
using format::Value;
using liecat::standard_so_pi1;

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

std::vector<std::vector<Expr>> read_images(const Value& v) {
  std::vector<std::vector<Expr>> out;
  for (const auto& gen : v.as_list()) {
    std::vector<Expr> coords;
    for (const auto& c : gen.as_list()) coords.push_back(read_expr(c));
    out.push_back(std::move(coords));
  }
  return out;
}

// pi1(domain) -> pi1(SO(n)) from per-generator coordinate expressions.
AbHom build_map(const std::vector<std::vector<Expr>>& images, const Env& env, const FgAbGroup& domain, int n,
                const std::string& what, int line) {
  if (n < 1) throw CatalogError(line, what + ": dimension must be at least 1");
  FgAbGroup target = standard_so_pi1(n);
  if (images.size() != domain.generator_count())
    throw CatalogError(line, what + ": needs one pi1 image per generator of " + domain.to_string());
  std::vector<AbElem> imgs;
  try {
    for (const auto& gen : images) {
      if (gen.size() != target.generator_count())
        throw CatalogError(line, what + ": images in pi1(SO(" + std::to_string(n) + ")) need " +
                                     std::to_string(target.generator_count()) + " coordinate(s)");
      std::vector<std::int64_t> coords;
      for (const auto& c : gen) coords.push_back(c.eval(env));
      imgs.push_back(target.element(coords));
    }
    return AbHom(domain, target, imgs);
  } catch (const InvalidInput& e) {
    throw CatalogError(line, what + ": " + e.what());
  }
}

int eval_int(const Expr& e, const Env& env, int line) {
  try {
    return static_cast<int>(e.eval(env));
  } catch (const InvalidInput& ex) {
    throw CatalogError(line, ex.what());
  }
}

}  // namespace

// ----------------------------------------------------------- SpaceCatalog

HomSpaceRec SpaceCatalog::instantiate(const SpaceTemplate& t, const Env& env) const {
  const int line = t.tmpl.line();
  HomSpaceRec s;
  s.source_line = line;
  try {
    s.name = t.name.render(env);
    s.G = t.G.render(env);
    s.H = t.H.render(env);
    s.provenance = t.provenance.render(env);
  } catch (const InvalidInput& e) {
    throw CatalogError(line, e.what());
  }
  s.n = eval_int(t.n, env, line);
  if (!groups_->contains(s.G)) throw CatalogError(line, s.name + ": G = " + s.G + " is not a catalog group");
  if (!groups_->contains(s.H)) throw CatalogError(line, s.name + ": H = " + s.H + " is not a catalog group");
  auto g = groups_->lookup(s.G);
  auto h = groups_->lookup(s.H);
  s.G = g.name;
  s.H = h.name;
  s.sigma_pi1 = build_map(t.sigma, env, h.pi1, s.n, s.name, line);
  if (g.algebra.dimension() - h.algebra.dimension() != s.n)
    throw CatalogError(line, s.name + ": dim G - dim H = " +
                                 std::to_string(g.algebra.dimension() - h.algebra.dimension()) + ", but n = " +
                                 std::to_string(s.n));
  if (s.provenance.empty()) throw CatalogError(line, s.name + ": empty provenance");
  return s;
}

HolonomyRec SpaceCatalog::instantiate(const HolonomyTemplate& t, const Env& env) const {
  const int line = t.tmpl.line();
  HolonomyRec h;
  h.source_line = line;
  try {
    h.group = t.group.render(env);
    h.provenance = t.provenance.render(env);
  } catch (const InvalidInput& e) {
    throw CatalogError(line, e.what());
  }
  h.m = eval_int(t.m, env, line);
  if (!groups_->contains(h.group)) throw CatalogError(line, "holonomy group " + h.group + " is not a catalog group");
  auto g = groups_->lookup(h.group);
  h.group = g.name;
  h.h_pi1 = build_map(t.h, env, g.pi1, h.m, h.group, line);
  if (g.algebra.dimension() > static_cast<std::int64_t>(h.m) * (h.m - 1) / 2)
    throw CatalogError(line, h.group + " is too large to act on R^" + std::to_string(h.m));
  if (h.provenance.empty()) throw CatalogError(line, h.group + ": empty provenance");
  return h;
}

SpaceCatalog SpaceCatalog::from_records(const std::vector<format::Record>& records,
                                        const liecat::GroupCatalog& groups) {
  SpaceCatalog cat;
  cat.groups_ = &groups;
  for (const auto& rec : records) {
    const Value& b = rec.body;
    if (rec.type == "space") {
      SpaceTemplate t;
      t.tmpl = liecat::Template(b, rec.line);
      t.name = read_pattern(b.at("name"));
      t.G = read_pattern(b.at("G"));
      t.H = read_pattern(b.at("H"));
      t.n = read_expr(b.at("n"));
      t.sigma = read_images(b.at("sigma_pi1_images"));
      t.provenance = read_pattern(b.at("provenance"));
      for (auto v : t.tmpl.validation_points()) cat.instantiate(t, t.tmpl.env(v));
      cat.spaces_.push_back(std::move(t));
    } else if (rec.type == "holonomy") {
      HolonomyTemplate t;
      t.tmpl = liecat::Template(b, rec.line);
      t.group = read_pattern(b.at("group"));
      t.m = read_expr(b.at("m"));
      t.h = read_images(b.at("h_pi1_images"));
      t.provenance = read_pattern(b.at("provenance"));
      for (auto v : t.tmpl.validation_points()) cat.instantiate(t, t.tmpl.env(v));
      cat.holonomy_.push_back(std::move(t));
    }
  }
  return cat;
}

HomSpaceRec SpaceCatalog::lookup(std::string_view name) const {
  const std::string key = liecat::normalize_name(name);
  for (const auto& t : spaces_)
    if (auto env = t.tmpl.resolve(t.name, key)) return instantiate(t, *env);
  throw NotInCatalog("space", std::string(name), names());
}

std::vector<std::string> SpaceCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& t : spaces_) out.push_back(t.name.pattern());
  return out;
}

std::vector<HomSpaceRec> SpaceCatalog::sample() const {
  std::vector<HomSpaceRec> out;
  for (const auto& t : spaces_)
    for (auto v : t.tmpl.validation_points()) out.push_back(instantiate(t, t.tmpl.env(v)));
  return out;
}

HolonomyRec SpaceCatalog::holonomy(std::string_view group, int m) const {
  const std::string key = liecat::normalize_name(group);
  for (const auto& t : holonomy_) {
    auto env = t.tmpl.resolve(t.group, key);
    if (!env) continue;
    if (eval_int(t.m, *env, t.tmpl.line()) != m) continue;
    return instantiate(t, *env);
  }
  throw NotInCatalog("holonomy record", std::string(group) + " in SO(" + std::to_string(m) + ")", holonomy_names());
}

std::vector<std::string> SpaceCatalog::holonomy_names() const {
  std::vector<std::string> out;
  for (const auto& t : holonomy_) out.push_back(t.group.pattern() + " in SO(" + t.m.source() + ")");
  return out;
}

std::vector<HolonomyRec> SpaceCatalog::holonomy_sample() const {
  std::vector<HolonomyRec> out;
  for (const auto& t : holonomy_)
    for (auto v : t.tmpl.validation_points()) out.push_back(instantiate(t, t.tmpl.env(v)));
  return out;
}

// ------------------------------------------------------------------ loading

std::unique_ptr<Catalog> load_catalog_text(std::string_view text) {
  auto records = format::parse_catalog_text(text);
  if (records.empty() || records.front().type != "version")
    throw CatalogError(records.empty() ? 1 : records.front().line, "catalog must start with 'version 1'");
  const auto& version = records.front().body;
  if (version.kind != Value::Kind::Integer || version.integer != 1)
    throw CatalogError(version.line, "unsupported catalog version");
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& t = records[i].type;
    if (t != "group" && t != "repfamily" && t != "space" && t != "holonomy")
      throw CatalogError(records[i].line, "unknown record type '" + t + "'");
    if (records[i].body.kind != Value::Kind::Block) throw CatalogError(records[i].line, "expected a { block }");
  }
  auto cat = std::make_unique<Catalog>();
  cat->groups = liecat::GroupCatalog::from_records(records);
  cat->reps = repcat::RepCatalog::from_records(records, cat->groups);
  cat->spaces = SpaceCatalog::from_records(records, cat->groups);
  return cat;
}

std::unique_ptr<Catalog> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError(0, "cannot open catalog file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_catalog_text(ss.str());
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("SPINR_CATALOG"); env && *env) return env;
  return SPINR_DEFAULT_CATALOG;
}

// ----------------------------------------------------------- classification

namespace {

lifting::LiftVerdict lift_test(const HomSpaceRec& space, int r, const AbHom& phi) {
  return lifting::lifts(lifting::LiftQuery{space.n, r, space.sigma_pi1, phi});
}

ClassEntry entry_for(const repcat::OrthRepFamily& f, std::string label) {
  ClassEntry e;
  e.family_id = f.id;
  e.label = std::move(label);
  e.induced_from = f.induced_from;
  e.extends_to = f.extends_to;
  e.distinct_classes = f.distinct_classes;
  e.provenance = f.provenance;
  return e;
}

}  // namespace

Classification classify(const Catalog& cat, const HomSpaceRec& space, int r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  auto h = cat.groups.lookup(space.H);
  if (!h.connected)
    throw HypothesisViolation("isotropy group " + h.name +
                              " is not connected; invariant spin^r structures are classified only for connected H");
  if (!space.sigma_pi1.domain().same_labels(h.pi1))
    throw InvalidInput(space.name + ": sigma must be defined on pi1(" + h.name + ") = " + h.pi1.to_string());

  auto e = repcat::enumerate_homs(cat.groups, cat.reps, h.name, r);
  Classification c;
  c.r = r;
  c.complete = e.complete;
  c.certificate = e.certificate;
  c.trace = e.trace;
  std::int64_t finite = 0;
  bool infinite = false;
  for (const auto& f : e.families) {
    if (f.is_parametric()) {
      auto sol = repcat::solve_parameter(f, [&](const AbHom& phi) { return lift_test(space, r, phi).lifts; });
      if (sol.any()) {
        ClassEntry entry = entry_for(f, sol.constraint);
        entry.constraint = sol.constraint;
        entry.infinite = true;
        c.classes.push_back(std::move(entry));
        infinite = true;
      } else {
        auto v = lift_test(space, r, f.pi1_map(sol.representative));
        c.rejected.push_back({f.id, "every " + f.param().describe(), v.witness_failures, f.provenance});
      }
      continue;
    }
    auto v = lift_test(space, r, f.pi1_map());
    for (const auto& label : f.classes().labels) {
      if (v.lifts) {
        c.classes.push_back(entry_for(f, label));
        ++finite;
      } else {
        c.rejected.push_back({f.id, label, v.witness_failures, f.provenance});
      }
    }
  }
  if (infinite)
    c.count = std::nullopt;
  else
    c.count = finite;
  return c;
}

namespace {

SpinTypeResult assemble(const Catalog& cat, const HomSpaceRec& space, const std::vector<Classification>& scan) {
  SpinTypeResult res;
  std::optional<int> first_incomplete;
  for (const auto& c : scan) {
    if (!c.empty()) {
      res.hi = c.r;
      res.lo = first_incomplete.value_or(c.r);
      res.exact = !first_incomplete.has_value();
      res.witnesses = c.classes;
      if (!res.exact)
        res.notes.push_back("enumeration at r = " + std::to_string(*first_incomplete) +
                            " is incomplete, so a smaller spin type is not ruled out");
      return res;
    }
    if (!c.complete && !first_incomplete) first_incomplete = c.r;
  }
  // nothing found in the catalog up to n; the canonical structure bounds the type
  res.hi = space.n;
  res.lo = first_incomplete.value_or(space.n);
  res.exact = false;
  if (space.n >= 3) {
    res.witnesses = canonical_structure(cat, space).classes;
    res.notes.push_back("witness at r = n from the canonical structure");
  } else {
    res.notes.push_back("no witness found up to r = n");
  }
  return res;
}

}  // namespace

SpinTypeResult invariant_spin_type_serial(const Catalog& cat, const HomSpaceRec& space) {
  if (space.n < 1) throw InvalidInput(space.name + ": n must be at least 1");
  std::vector<Classification> scan;
  for (int r = 1; r <= space.n; ++r) {
    scan.push_back(classify(cat, space, r));
    if (!scan.back().empty()) break;
  }
  return assemble(cat, space, scan);
}

SpinTypeResult invariant_spin_type(const Catalog& cat, const HomSpaceRec& space) {
  if (space.n < 1) throw InvalidInput(space.name + ": n must be at least 1");
  const int n = space.n;
  std::vector<Classification> scan(static_cast<std::size_t>(n));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int r = 1; r <= n; ++r) {
    try {
      scan[static_cast<std::size_t>(r - 1)] = classify(cat, space, r);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return assemble(cat, space, scan);
}

Classification canonical_structure(const Catalog& cat, const HomSpaceRec& space) {
  if (space.n < 3)
    throw HypothesisViolation(space.name + ": the canonical structure needs n >= 3, got n = " + std::to_string(space.n));
  auto h = cat.groups.lookup(space.H);
  if (!h.connected) throw HypothesisViolation("isotropy group " + h.name + " is not connected");

  Classification c;
  c.count = 1;
  c.complete = false;
  ClassEntry e;
  AbHom phi = space.sigma_pi1;
  if (space.sigma_pi1.is_zero()) {
    c.r = 1;
    phi = AbHom::zero(space.sigma_pi1.domain(), standard_so_pi1(1));
    e.family_id = "trivial";
    e.label = "trivial";
    e.provenance = "sigma is zero on pi1, so the isotropy representation lifts to Spin(n)";
  } else {
    c.r = space.n;
    e.family_id = "isotropy";
    e.label = "phi = sigma";
    e.provenance = "phi equal to the isotropy representation; sigma x sigma lands in the parity diagonal";
  }
  e.distinct_classes = "single canonical class";
  auto v = lift_test(space, c.r, phi);
  if (!v.lifts) throw std::logic_error(space.name + ": canonical structure failed the lift test");
  c.classes.push_back(std::move(e));
  c.certificate = "canonical structure only, not a classification at this r";
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

HolonomyResult holonomy_lift(const Catalog& cat, std::string_view group, int m, int r) {
  HolonomyRec rec = cat.spaces.holonomy(group, m);
  HomSpaceRec as_space;
  as_space.name = rec.group + " in SO(" + std::to_string(m) + ")";
  as_space.G = rec.group;
  as_space.H = rec.group;
  as_space.n = m;
  as_space.sigma_pi1 = rec.h_pi1;
  as_space.provenance = rec.provenance;

  HolonomyResult res;
  res.provenance = rec.provenance;
  res.classification = classify(cat, as_space, r);
  if (!res.classification.empty())
    res.verdict = Verdict::Yes;
  else
    res.verdict = res.classification.complete ? Verdict::No : Verdict::Unknown;
  return res;
}

}  // namespace spinr::spaces
