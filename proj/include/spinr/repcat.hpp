#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinr/abelian.hpp"
#include "spinr/catalog_format.hpp"
#include "spinr/expr.hpp"
#include "spinr/liecat.hpp"

namespace spinr::repcat {

/// Finitely many conjugacy classes sharing one pi1 map.
struct ClassList {
  std::vector<std::string> labels;
};

/// One integer parameter s with s = residue (mod modulus).
struct IntParam {
  std::string name = "s";
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  /// Parameter value giving the trivial homomorphism, listed separately.
  std::optional<std::int64_t> trivial_at;

  bool admissible(std::int64_t s) const;
  /// "s ∈ Z", "s even", "s ≡ 1 mod 3".
  std::string describe() const;
};

/// A conjugacy family of homomorphisms H -> SO(r) together with its map on pi1.
struct OrthRepFamily {
  std::string id;
  std::string domain;
  int target_r = 1;
  std::variant<ClassList, IntParam> params;
  std::string distinct_classes;
  std::optional<std::string> extends_to;
  /// nullopt when the record is flagged "incomplete".
  std::optional<std::string> certificate;
  std::string provenance;
  int source_line = 0;
  /// Target of the catalog family before the block inclusion SO(r0) -> SO(target_r).
  std::optional<int> induced_from;

  abelian::FgAbGroup domain_pi1;
  /// Per domain generator, the coordinates of its image in pi1(SO(r0)).
  std::vector<std::vector<format::Expr>> images;
  format::Env env;
  bool is_trivial = false;

  bool is_parametric() const { return std::holds_alternative<IntParam>(params); }
  const IntParam& param() const { return std::get<IntParam>(params); }
  const ClassList& classes() const { return std::get<ClassList>(params); }

  /// The map on pi1 into pi1(SO(target_r)). Parametric families need an
  /// admissible s (InvalidInput otherwise); others take no value.
  abelian::AbHom pi1_map(std::optional<std::int64_t> s = std::nullopt) const;
  /// Raw coordinate values before reduction, used to check affinity in s.
  std::vector<std::int64_t> raw_images(std::optional<std::int64_t> s) const;
};

OrthRepFamily trivial_family(const liecat::CompactGroupRec& h, int r);

/// The family composed with the block inclusion SO(target_r) -> SO(s).
OrthRepFamily induce_family(const OrthRepFamily& f, int s);

struct RuleVerdict {
  bool only_trivial = false;
  /// One line per candidate quotient and the rule that discards it.
  std::vector<std::string> trace;
  /// "so(3)⊕so(3) admits no nontrivial map to so(2)" or the first surviving quotient.
  std::string summary;
};

/// Tries every kernel (a central subspace plus a sum of simple ideals) and
/// discards the quotient when it is too large for so(r), non-abelian with
/// r <= 2, or has a simple summand without a faithful representation of
/// dimension <= r. Only a necessary-condition pruner.
RuleVerdict prove_trivial(const liecat::AlgebraProfile& a, int r);
bool no_nontrivial_hom(const liecat::AlgebraProfile& a, int r);

struct EnumResult {
  std::vector<OrthRepFamily> families;  // trivial family first
  bool complete = false;
  std::string certificate;
  std::vector<std::string> trace;
};

class RepCatalog {
 public:
  RepCatalog() = default;

  /// Reads every `repfamily` record and checks it against `groups` and the rule engine.
  static RepCatalog from_records(const std::vector<format::Record>& records, const liecat::GroupCatalog& groups);

  /// Catalog families with the given domain record and target.
  std::vector<OrthRepFamily> families(const liecat::CompactGroupRec& h, int r) const;
  std::size_t size() const noexcept { return templates_.size(); }

 private:
  struct FamilyTemplate {
    liecat::Template tmpl;
    format::Interpolated id;
    format::Interpolated domain;
    format::Expr target_r;
    std::variant<ClassList, IntParam> params;
    std::vector<std::vector<format::Expr>> images;
    format::Interpolated distinct_classes;
    std::optional<format::Interpolated> extends_to;
    std::optional<format::Interpolated> certificate;
    format::Interpolated provenance;
  };

  static FamilyTemplate read(const format::Record& record);
  static OrthRepFamily instantiate(const FamilyTemplate& t, const format::Env& env, const liecat::CompactGroupRec& h,
                                   int r);
  static void validate(const OrthRepFamily& f, const liecat::CompactGroupRec& h);

  std::vector<FamilyTemplate> templates_;
};

/// Catalog families at (H, r) plus the trivial homomorphism. When neither the
/// rule engine nor the catalog certificates cover (H, r), families from
/// smaller targets are added through block inclusions and complete = false.
EnumResult enumerate_homs(const liecat::GroupCatalog& groups, const RepCatalog& reps, std::string_view h, int r);

/// Parameter values of a parametric family for which `passes` holds.
struct ParamSolution {
  std::int64_t modulus = 1;               // passing set is periodic mod this
  std::vector<std::int64_t> residues;     // passing residues in [0, modulus)
  std::string constraint;                 // "s odd", "s ≡ 2 mod 4", "s ∈ Z"
  std::int64_t representative = 0;        // a passing value, or an admissible value when none pass
  bool any() const { return !residues.empty(); }
};

/// Uses that pi1 images are affine in s, so lifting depends only on the
/// parity of (s - residue) / modulus. Throws CatalogError when images are not affine.
ParamSolution solve_parameter(const OrthRepFamily& f, const std::function<bool(const abelian::AbHom&)>& passes);

/// Canonical text for the set {s : s mod m in residues}. `trivial_at` adds "s ≠ v" when v is in the set.
std::string render_constraint(const std::string& name, std::int64_t m, std::vector<std::int64_t> residues,
                              std::optional<std::int64_t> trivial_at = std::nullopt);

}  // namespace spinr::repcat
