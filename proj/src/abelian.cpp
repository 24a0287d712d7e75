#include "spinr/abelian.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

#include "spinr/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinr::abelian {

FgAbGroup::FgAbGroup(int free_rank, std::vector<std::int64_t> torsion_orders, std::vector<std::string> labels)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)), labels_(std::move(labels)) {
  if (free_rank_ < 0) throw InvalidInput("FgAbGroup: negative free rank");
  for (auto d : torsion_)
    if (d < 2) throw InvalidInput("FgAbGroup: torsion order " + std::to_string(d) + " < 2");
  const auto count = static_cast<std::size_t>(free_rank_) + torsion_.size();
  if (labels_.empty()) {
    for (std::size_t i = 0; i < count; ++i) labels_.push_back("g" + std::to_string(i));
  } else if (labels_.size() != count) {
    throw InvalidInput("FgAbGroup: " + std::to_string(labels_.size()) + " labels for " + std::to_string(count) +
                       " generators");
  }
}

std::int64_t FgAbGroup::order_of(std::size_t i) const {
  if (i >= generator_count()) throw InvalidInput("FgAbGroup: generator index out of range");
  const auto f = static_cast<std::size_t>(free_rank_);
  return i < f ? 0 : torsion_[i - f];
}

AbElem FgAbGroup::zero() const { return AbElem{std::vector<std::int64_t>(generator_count(), 0)}; }

AbElem FgAbGroup::generator(std::size_t i) const {
  auto x = zero();
  x.coords.at(i) = 1;
  return element(std::move(x.coords));
}

AbElem FgAbGroup::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != generator_count())
    throw InvalidInput("element has " + std::to_string(coords.size()) + " coordinates, group " + to_string() +
                       " has " + std::to_string(generator_count()) + " generators");
  for (std::size_t i = static_cast<std::size_t>(free_rank_); i < coords.size(); ++i)
    coords[i] = checked::mod(coords[i], order_of(i));
  return AbElem{std::move(coords)};
}

bool FgAbGroup::is_valid(const AbElem& x) const {
  if (x.coords.size() != generator_count()) return false;
  for (std::size_t i = static_cast<std::size_t>(free_rank_); i < x.coords.size(); ++i)
    if (x.coords[i] < 0 || x.coords[i] >= order_of(i)) return false;
  return true;
}

bool FgAbGroup::is_zero(const AbElem& x) const {
  return std::all_of(x.coords.begin(), x.coords.end(), [](auto c) { return c == 0; });
}

AbElem FgAbGroup::add(const AbElem& x, const AbElem& y) const {
  if (x.coords.size() != generator_count() || y.coords.size() != generator_count())
    throw InvalidInput("add: element not in " + to_string());
  std::vector<std::int64_t> out(x.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked::add(x.coords[i], y.coords[i]);
  return element(std::move(out));
}

AbElem FgAbGroup::negate(const AbElem& x) const { return scale(-1, x); }

AbElem FgAbGroup::scale(std::int64_t k, const AbElem& x) const {
  if (x.coords.size() != generator_count()) throw InvalidInput("scale: element not in " + to_string());
  std::vector<std::int64_t> out(x.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked::mul(k, x.coords[i]);
  return element(std::move(out));
}

bool FgAbGroup::isomorphic(const FgAbGroup& other) const {
  auto a = torsion_, b = other.torsion_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return free_rank_ == other.free_rank_ && a == b;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << " x ";
    first = false;
  };
  for (int i = 0; i < free_rank_; ++i) sep(), out << "Z";
  for (auto d : torsion_) sep(), out << "Z" << d;
  return out.str();
}

std::string FgAbGroup::format(const AbElem& x) const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) out << (i ? "," : "") << x.coords[i];
  out << ")";
  return out.str();
}

AbHom::AbHom(FgAbGroup domain, FgAbGroup codomain, std::vector<AbElem> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (images.size() != domain_.generator_count())
    throw InvalidInput("AbHom: " + std::to_string(images.size()) + " images for " +
                       std::to_string(domain_.generator_count()) + " domain generators");
  images_.reserve(images.size());
  for (auto& img : images) images_.push_back(codomain_.element(std::move(img.coords)));
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto d = domain_.order_of(i);
    if (d != 0 && !codomain_.is_zero(codomain_.scale(d, images_[i])))
      throw InvalidInput("AbHom: generator '" + domain_.labels()[i] + "' has order " + std::to_string(d) +
                         " but its image " + codomain_.format(images_[i]) + " does not");
  }
}

AbHom AbHom::zero(FgAbGroup domain, FgAbGroup codomain) {
  std::vector<AbElem> images(domain.generator_count(), codomain.zero());
  return AbHom(std::move(domain), std::move(codomain), std::move(images));
}

AbHom AbHom::identity(FgAbGroup group) {
  std::vector<AbElem> images;
  for (std::size_t i = 0; i < group.generator_count(); ++i) images.push_back(group.generator(i));
  return AbHom(group, group, std::move(images));
}

AbElem AbHom::apply(const AbElem& x) const {
  if (x.coords.size() != domain_.generator_count()) throw InvalidInput("AbHom::apply: element not in domain");
  auto acc = codomain_.zero();
  for (std::size_t i = 0; i < images_.size(); ++i) acc = codomain_.add(acc, codomain_.scale(x.coords[i], images_[i]));
  return acc;
}

bool AbHom::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [&](const AbElem& x) { return codomain_.is_zero(x); });
}

IntMatrix AbHom::matrix() const {
  IntMatrix m(codomain_.generator_count(), domain_.generator_count());
  for (std::size_t c = 0; c < images_.size(); ++c)
    for (std::size_t r = 0; r < codomain_.generator_count(); ++r) m(r, c) = images_[c].coords[r];
  return m;
}

Subgroup::Subgroup(FgAbGroup ambient, std::vector<AbElem> generators) : ambient_(std::move(ambient)) {
  generators_.reserve(generators.size());
  for (auto& g : generators) generators_.push_back(ambient_.element(std::move(g.coords)));
}

std::string Subgroup::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) out << (i ? ", " : "") << ambient_.format(generators_[i]);
  out << "> in " << ambient_.to_string();
  return out.str();
}

FgAbGroup direct_product(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<std::string> labels;
  const auto fa = static_cast<std::size_t>(a.free_rank());
  const auto fb = static_cast<std::size_t>(b.free_rank());
  for (std::size_t i = 0; i < fa; ++i) labels.push_back("1:" + a.labels()[i]);
  for (std::size_t i = 0; i < fb; ++i) labels.push_back("2:" + b.labels()[i]);
  for (std::size_t i = fa; i < a.generator_count(); ++i) labels.push_back("1:" + a.labels()[i]);
  for (std::size_t i = fb; i < b.generator_count(); ++i) labels.push_back("2:" + b.labels()[i]);
  auto torsion = a.torsion_orders();
  torsion.insert(torsion.end(), b.torsion_orders().begin(), b.torsion_orders().end());
  return FgAbGroup(a.free_rank() + b.free_rank(), std::move(torsion), std::move(labels));
}

namespace {

// Coordinate positions of factor a / b inside direct_product(a, b).
std::vector<std::size_t> factor_positions(const FgAbGroup& a, const FgAbGroup& b, bool first) {
  const auto fa = static_cast<std::size_t>(a.free_rank());
  const auto fb = static_cast<std::size_t>(b.free_rank());
  const auto ta = a.torsion_orders().size();
  std::vector<std::size_t> pos;
  if (first) {
    for (std::size_t i = 0; i < fa; ++i) pos.push_back(i);
    for (std::size_t i = 0; i < ta; ++i) pos.push_back(fa + fb + i);
  } else {
    for (std::size_t i = 0; i < fb; ++i) pos.push_back(fa + i);
    for (std::size_t i = 0; i < b.torsion_orders().size(); ++i) pos.push_back(fa + fb + ta + i);
  }
  return pos;
}

// Columns: the given generators, then one relation column d * e_i per torsion coordinate.
IntMatrix relation_matrix(const FgAbGroup& g, const std::vector<AbElem>& gens) {
  const auto k = g.generator_count();
  const auto t = g.torsion_orders().size();
  IntMatrix m(k, gens.size() + t);
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) m(r, c) = gens[c].coords[r];
  const auto f = static_cast<std::size_t>(g.free_rank());
  for (std::size_t i = 0; i < t; ++i) m(f + i, gens.size() + i) = g.torsion_orders()[i];
  return m;
}

bool solvable(const SmithForm& smith, const std::vector<std::int64_t>& x) {
  const auto y = smith.U.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < smith.rank) {
      if (y[i] % smith.diagonal(i) != 0) return false;
    } else if (y[i] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

AbElem pair_elements(const FgAbGroup& a, const AbElem& x, const FgAbGroup& b, const AbElem& y) {
  const auto xa = a.element(x.coords);
  const auto yb = b.element(y.coords);
  const auto prod = direct_product(a, b);
  auto out = prod.zero();
  const auto pa = factor_positions(a, b, true);
  const auto pb = factor_positions(a, b, false);
  for (std::size_t i = 0; i < pa.size(); ++i) out.coords[pa[i]] = xa.coords[i];
  for (std::size_t i = 0; i < pb.size(); ++i) out.coords[pb[i]] = yb.coords[i];
  return prod.element(std::move(out.coords));
}

AbHom compose(const AbHom& f, const AbHom& g) {
  if (!(g.codomain() == f.domain()))
    throw InvalidInput("compose: codomain " + g.codomain().to_string() + " does not match domain " +
                       f.domain().to_string());
  std::vector<AbElem> images;
  images.reserve(g.images().size());
  for (const auto& img : g.images()) images.push_back(f.apply(img));
  return AbHom(g.domain(), f.codomain(), std::move(images));
}

AbHom pair(const AbHom& f, const AbHom& g) {
  if (!(f.domain() == g.domain())) throw InvalidInput("pair: domains differ");
  std::vector<AbElem> images;
  for (std::size_t i = 0; i < f.images().size(); ++i)
    images.push_back(pair_elements(f.codomain(), f.images()[i], g.codomain(), g.images()[i]));
  return AbHom(f.domain(), direct_product(f.codomain(), g.codomain()), std::move(images));
}

AbHom product_map(const AbHom& f, const AbHom& g) {
  const auto dom = direct_product(f.domain(), g.domain());
  const auto cod = direct_product(f.codomain(), g.codomain());
  std::vector<AbElem> images(dom.generator_count());
  const auto pa = factor_positions(f.domain(), g.domain(), true);
  const auto pb = factor_positions(f.domain(), g.domain(), false);
  for (std::size_t i = 0; i < pa.size(); ++i)
    images[pa[i]] = pair_elements(f.codomain(), f.images()[i], g.codomain(), g.codomain().zero());
  for (std::size_t i = 0; i < pb.size(); ++i)
    images[pb[i]] = pair_elements(f.codomain(), f.codomain().zero(), g.codomain(), g.images()[i]);
  return AbHom(dom, cod, std::move(images));
}

Subgroup image_subgroup(const AbHom& f) { return Subgroup(f.codomain(), f.images()); }

Subgroup kernel(const AbHom& f) {
  const auto& a = f.domain();
  const auto& c = f.codomain();
  const auto na = a.generator_count();
  const auto rc = relation_matrix(c, {});
  IntMatrix m(c.generator_count(), na + rc.cols());
  const auto fm = f.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < na; ++j) m(r, j) = fm(r, j);
    for (std::size_t j = 0; j < rc.cols(); ++j) m(r, na + j) = -rc(r, j);
  }
  const auto smith = smith_normal_form(m);
  std::vector<AbElem> gens;
  for (std::size_t col = smith.rank; col < m.cols(); ++col) {
    std::vector<std::int64_t> x(na);
    for (std::size_t r = 0; r < na; ++r) x[r] = smith.V(r, col);
    auto e = a.element(std::move(x));
    if (!a.is_zero(e)) gens.push_back(std::move(e));
  }
  return Subgroup(a, std::move(gens));
}

AbHom mod2(const FgAbGroup& g) {
  std::vector<std::int64_t> torsion;
  std::vector<std::string> labels;
  std::vector<std::size_t> slot(g.generator_count(), SIZE_MAX);
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const auto d = g.order_of(i);
    if (d == 0 || d % 2 == 0) {
      slot[i] = torsion.size();
      torsion.push_back(2);
      labels.push_back(g.labels()[i] + "/2");
    }
  }
  FgAbGroup target(0, std::move(torsion), std::move(labels));
  std::vector<AbElem> images;
  for (std::size_t i = 0; i < g.generator_count(); ++i)
    images.push_back(slot[i] == SIZE_MAX ? target.zero() : target.generator(slot[i]));
  return AbHom(g, std::move(target), std::move(images));
}

MembershipTester::MembershipTester(const Subgroup& s)
    : ambient_(s.ambient()), smith_(smith_normal_form(relation_matrix(s.ambient(), s.generators()))) {}

bool MembershipTester::contains(const AbElem& x) const {
  return solvable(smith_, ambient_.element(x.coords).coords);
}

std::vector<char> MembershipTester::contains_all(std::span<const AbElem> xs) const {
  for (const auto& x : xs)
    if (x.coords.size() != ambient_.generator_count())
      throw InvalidInput("contains_all: element not in " + ambient_.to_string());
  std::vector<char> out(xs.size(), 0);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = contains(xs[static_cast<std::size_t>(i)]) ? 1 : 0;
    } catch (...) {
#pragma omp critical(spinr_contains_all)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<char> MembershipTester::contains_all_serial(std::span<const AbElem> xs) const {
  std::vector<char> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(contains(x) ? 1 : 0);
  return out;
}

bool contains(const Subgroup& s, const AbElem& x) { return MembershipTester(s).contains(x); }

bool is_subset(const Subgroup& s, const Subgroup& t) {
  if (!(s.ambient() == t.ambient())) throw InvalidInput("is_subset: different ambient groups");
  MembershipTester tester(t);
  return std::all_of(s.generators().begin(), s.generators().end(),
                     [&](const AbElem& g) { return tester.contains(g); });
}

bool same_subgroup(const Subgroup& s, const Subgroup& t) { return is_subset(s, t) && is_subset(t, s); }

std::optional<std::int64_t> index(const Subgroup& s) {
  const auto smith = smith_normal_form(relation_matrix(s.ambient(), s.generators()));
  if (smith.rank < s.ambient().generator_count()) return std::nullopt;
  std::int64_t idx = 1;
  for (std::size_t i = 0; i < smith.rank; ++i) idx = checked::mul(idx, smith.diagonal(i));
  return idx;
}

}  // namespace spinr::abelian
