#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinr/abelian.hpp"
#include "spinr/catalog_format.hpp"
#include "spinr/lifting.hpp"
#include "spinr/liecat.hpp"
#include "spinr/repcat.hpp"

namespace spinr::spaces {

/// G/H with isotropy sigma : H -> SO(n), given on pi1.
struct HomSpaceRec {
  std::string name;  // "S7:Sp(2)"
  std::string G;
  std::string H;
  int n = 0;
  abelian::AbHom sigma_pi1{abelian::FgAbGroup{}, abelian::FgAbGroup{}, {}};
  std::string provenance;
  int source_line = 0;
};

/// A Berger holonomy group with its pi1 map into pi1(SO(m)).
struct HolonomyRec {
  std::string group;
  int m = 0;
  abelian::AbHom h_pi1{abelian::FgAbGroup{}, abelian::FgAbGroup{}, {}};
  std::string provenance;
  int source_line = 0;
};

class SpaceCatalog {
 public:
  SpaceCatalog() = default;
  static SpaceCatalog from_records(const std::vector<format::Record>& records, const liecat::GroupCatalog& groups);

  /// Accepts "S7:Sp(2)·Sp(1)" as well as "." or "*" for the dot. Throws NotInCatalog.
  HomSpaceRec lookup(std::string_view name) const;
  /// Record patterns such as "S{n}:SO({n+1})".
  std::vector<std::string> names() const;
  /// Every record instantiated at its validation parameters (0..kValidationSpan).
  std::vector<HomSpaceRec> sample() const;

  HolonomyRec holonomy(std::string_view group, int m) const;
  std::vector<std::string> holonomy_names() const;
  std::vector<HolonomyRec> holonomy_sample() const;

 private:
  struct SpaceTemplate {
    liecat::Template tmpl;
    format::Interpolated name;
    format::Interpolated G;
    format::Interpolated H;
    format::Expr n;
    std::vector<std::vector<format::Expr>> sigma;
    format::Interpolated provenance;
  };
  struct HolonomyTemplate {
    liecat::Template tmpl;
    format::Interpolated group;
    format::Expr m;
    std::vector<std::vector<format::Expr>> h;
    format::Interpolated provenance;
  };

  HomSpaceRec instantiate(const SpaceTemplate& t, const format::Env& env) const;
  HolonomyRec instantiate(const HolonomyTemplate& t, const format::Env& env) const;

  const liecat::GroupCatalog* groups_ = nullptr;
  std::vector<SpaceTemplate> spaces_;
  std::vector<HolonomyTemplate> holonomy_;
};

/// Everything loaded from one catalog file.
struct Catalog {
  liecat::GroupCatalog groups;
  repcat::RepCatalog reps;
  SpaceCatalog spaces;

  Catalog() = default;
  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;
};

/// Parses and validates catalog text. Throws CatalogError.
std::unique_ptr<Catalog> load_catalog_text(std::string_view text);
std::unique_ptr<Catalog> load_catalog(const std::string& path);
/// $SPINR_CATALOG when set, otherwise the bundled catalog.
std::string default_catalog_path();

/// One conjugacy class (or parametric family of classes) passing the lift test.
struct ClassEntry {
  std::string family_id;
  std::string label;       // class label, or the parameter constraint for families
  std::string constraint;  // "s odd" for parametric families, empty otherwise
  bool infinite = false;
  std::optional<int> induced_from;
  std::optional<std::string> extends_to;
  std::string distinct_classes;
  std::string provenance;
};

struct Rejection {
  std::string family_id;
  std::string label;
  std::vector<lifting::WitnessFailure> witnesses;
  std::string provenance;
};

struct Classification {
  int r = 0;
  std::vector<ClassEntry> classes;
  /// nullopt when some parametric family contributes infinitely many classes.
  std::optional<std::int64_t> count = 0;
  bool complete = false;
  std::string certificate;
  std::vector<std::string> trace;
  std::vector<Rejection> rejected;

  bool empty() const { return classes.empty(); }
};

/// Lift test for every family of enumerate_homs(H, r).
/// Throws HypothesisViolation when H is not connected.
Classification classify(const Catalog& cat, const HomSpaceRec& space, int r);

struct SpinTypeResult {
  int lo = 1;
  int hi = 1;
  bool exact = false;
  std::vector<ClassEntry> witnesses;
  std::vector<std::string> notes;

  std::string status() const { return exact ? "exact" : "bounded"; }
};

/// Least r with a G-invariant spin^r structure. Candidate r values are
/// classified in parallel when OpenMP is enabled.
SpinTypeResult invariant_spin_type(const Catalog& cat, const HomSpaceRec& space);
SpinTypeResult invariant_spin_type_serial(const Catalog& cat, const HomSpaceRec& space);

/// Spin structure when sigma is zero on pi1, otherwise the spin^n structure
/// with phi = sigma. Throws HypothesisViolation for n < 3.
Classification canonical_structure(const Catalog& cat, const HomSpaceRec& space);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct HolonomyResult {
  Verdict verdict = Verdict::Unknown;
  Classification classification;
  std::string provenance;
};

/// Whether the holonomy representation of G in SO(m) lifts to Spin^r(m).
/// Throws NotInCatalog when (G, m) is not a Berger holonomy record.
HolonomyResult holonomy_lift(const Catalog& cat, std::string_view group, int m, int r);

}  // namespace spinr::spaces
