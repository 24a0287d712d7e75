#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinr/smith.hpp"

namespace spinr::abelian {

/// An element of a finitely generated abelian group, given by coordinates
/// against the group's ordered generators. Torsion coordinates are reduced.
struct AbElem {
  std::vector<std::int64_t> coords;

  friend bool operator==(const AbElem&, const AbElem&) = default;
};

/// Z^free_rank x Z/d_1 x ... x Z/d_k with fixed, labelled generators.
///
/// Coordinates are positional: the free generators come first, then the
/// torsion generators in the order of `torsion_orders()`. Every torsion order
/// is at least 2, so the trivial group is (0, {}).
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Labels default to "g0", "g1", ... when empty.
  FgAbGroup(int free_rank, std::vector<std::int64_t> torsion_orders, std::vector<std::string> labels = {});

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup integers(std::string label = "g0") { return FgAbGroup(1, {}, {std::move(label)}); }
  static FgAbGroup cyclic(std::int64_t order, std::string label = "g0") {
    return FgAbGroup(0, {order}, {std::move(label)});
  }

  int free_rank() const noexcept { return free_rank_; }
  const std::vector<std::int64_t>& torsion_orders() const noexcept { return torsion_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t generator_count() const noexcept { return labels_.size(); }
  bool is_trivial() const noexcept { return labels_.empty(); }

  /// Order of generator i, 0 for a free generator.
  std::int64_t order_of(std::size_t i) const;

  AbElem zero() const;
  AbElem generator(std::size_t i) const;
  /// Builds an element, reducing torsion coordinates. Throws on wrong length.
  AbElem element(std::vector<std::int64_t> coords) const;
  bool is_valid(const AbElem& x) const;
  bool is_zero(const AbElem& x) const;

  AbElem add(const AbElem& x, const AbElem& y) const;
  AbElem negate(const AbElem& x) const;
  AbElem scale(std::int64_t k, const AbElem& x) const;

  /// Same rank and same torsion list up to order.
  bool isomorphic(const FgAbGroup& other) const;
  /// Same coordinate layout (labels ignored).
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  bool same_labels(const FgAbGroup& other) const { return *this == other && labels_ == other.labels_; }

  std::string to_string() const;
  std::string format(const AbElem& x) const;

 private:
  int free_rank_ = 0;
  std::vector<std::int64_t> torsion_;
  std::vector<std::string> labels_;
};

/// A homomorphism given by the images of the domain generators.
/// Construction checks that every torsion generator of order d has d * image = 0.
class AbHom {
 public:
  AbHom(FgAbGroup domain, FgAbGroup codomain, std::vector<AbElem> images);

  static AbHom zero(FgAbGroup domain, FgAbGroup codomain);
  static AbHom identity(FgAbGroup group);

  const FgAbGroup& domain() const noexcept { return domain_; }
  const FgAbGroup& codomain() const noexcept { return codomain_; }
  const std::vector<AbElem>& images() const noexcept { return images_; }
  const AbElem& image_of(std::size_t generator) const { return images_.at(generator); }

  AbElem apply(const AbElem& x) const;
  bool is_zero() const;
  /// codomain generators x domain generators.
  IntMatrix matrix() const;

  friend bool operator==(const AbHom& a, const AbHom& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  FgAbGroup domain_;
  FgAbGroup codomain_;
  std::vector<AbElem> images_;
};

/// The subgroup of `ambient` generated by `generators`.
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, std::vector<AbElem> generators);

  const FgAbGroup& ambient() const noexcept { return ambient_; }
  const std::vector<AbElem>& generators() const noexcept { return generators_; }

  std::string to_string() const;

 private:
  FgAbGroup ambient_;
  std::vector<AbElem> generators_;
};

FgAbGroup direct_product(const FgAbGroup& a, const FgAbGroup& b);

/// Embeds (x, y) in direct_product(a, b).
AbElem pair_elements(const FgAbGroup& a, const AbElem& x, const FgAbGroup& b, const AbElem& y);

/// f o g. Throws InvalidInput unless codomain(g) == domain(f).
AbHom compose(const AbHom& f, const AbHom& g);

/// x |-> (f(x), g(x)) into codomain(f) x codomain(g). Domains must agree.
AbHom pair(const AbHom& f, const AbHom& g);

/// f x g : A x B -> C x D.
AbHom product_map(const AbHom& f, const AbHom& g);

Subgroup image_subgroup(const AbHom& f);

/// Generators of ker f, computed from the integer null space of [F | -R_codomain].
Subgroup kernel(const AbHom& f);

/// The canonical map onto (Z/2)^k: free generators and even-order torsion
/// generators each get their own Z/2 factor, odd-order torsion maps to 0.
AbHom mod2(const FgAbGroup& g);

bool contains(const Subgroup& s, const AbElem& x);

/// s subset of t (same ambient group).
bool is_subset(const Subgroup& s, const Subgroup& t);
bool same_subgroup(const Subgroup& s, const Subgroup& t);

/// [ambient : s], or nullopt when the index is infinite.
std::optional<std::int64_t> index(const Subgroup& s);

/// Precomputed Smith form of a subgroup's relation matrix; answers many
/// membership queries against one subgroup.
class MembershipTester {
 public:
  explicit MembershipTester(const Subgroup& s);

  bool contains(const AbElem& x) const;

  /// One verdict per element, evaluated in parallel when OpenMP is enabled.
  std::vector<char> contains_all(std::span<const AbElem> xs) const;
  /// Reference loop for contains_all.
  std::vector<char> contains_all_serial(std::span<const AbElem> xs) const;

 private:
  FgAbGroup ambient_;
  SmithForm smith_;
};

}  // namespace spinr::abelian
