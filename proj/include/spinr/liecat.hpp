#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinr/abelian.hpp"
#include "spinr/catalog_format.hpp"
#include "spinr/expr.hpp"

namespace spinr::liecat {

/// Largest template parameter considered when resolving a name.
inline constexpr std::int64_t kParamLimit = 4096;
/// Template parameters 0..kValidationSpan are instantiated at load time.
inline constexpr std::int64_t kValidationSpan = 48;

struct SimpleIdeal {
  std::string kind;  // "so(5)", "su(3)", "sp(2)", "g2"
  std::int64_t dim = 0;
  std::int64_t min_orth_rep_dim = 0;
  std::string citation;
};

/// Lie algebra of a compact group: R^center_rank + simple ideals.
struct AlgebraProfile {
  int center_rank = 0;
  std::vector<SimpleIdeal> ideals;

  std::int64_t dimension() const;
  bool is_abelian() const { return ideals.empty(); }
  /// "u(1)⊕su(3)", "so(3)⊕so(3)", "0".
  std::string to_string() const;
};

struct CompactGroupRec {
  std::string name;
  abelian::FgAbGroup pi1;
  AlgebraProfile algebra;
  bool connected = true;
  std::string provenance;
  int source_line = 0;
};

/// pi1(SO(k)): trivial for k = 1, Z for k = 2, Z/2 for k >= 3.
/// The single generator is labelled "SO(k).loop".
abelian::FgAbGroup standard_so_pi1(int k);

/// Accepts "." or "*" for the central dot and ignores spaces:
/// "Sp(2).Sp(1)" -> "Sp(2)·Sp(1)".
std::string normalize_name(std::string_view name);

/// Throws CatalogError when the ideal's kind, dimension and minimal faithful
/// dimension are inconsistent.
void check_ideal(const SimpleIdeal& ideal, int line);

/// A record with at most one integer template parameter and a guard.
/// Shared by every record type in the catalog.
class Template {
 public:
  Template() = default;
  /// Reads `param` and `where` from `body`.
  Template(const format::Value& body, int line);

  const std::optional<std::string>& param() const noexcept { return param_; }
  int line() const noexcept { return line_; }

  bool admits(std::int64_t value) const;
  /// Binding of the smallest parameter value that renders `pattern` as `text`
  /// and passes the guard; an empty Env for a parameterless match.
  std::optional<format::Env> resolve(const format::Interpolated& pattern, std::string_view text) const;
  format::Env env(std::optional<std::int64_t> value) const;
  /// Parameter values 0..kValidationSpan that pass the guard (or {nullopt}).
  std::vector<std::optional<std::int64_t>> validation_points() const;

 private:
  std::optional<std::string> param_;
  std::optional<format::Expr> guard_;
  int line_ = 0;
};

class GroupCatalog {
 public:
  GroupCatalog() = default;

  /// Reads every `group` record, instantiating templates on the validation
  /// span to check them. Other record types are ignored.
  static GroupCatalog from_records(const std::vector<format::Record>& records);

  /// Resolves a name such as "SO(7)" or "Sp(2)·U(1)". The first matching
  /// record in file order wins. Throws NotInCatalog.
  CompactGroupRec lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
  /// Record patterns, e.g. "SO({k})", for error messages.
  std::vector<std::string> names() const;

  /// The catalog's SO(k), checked against standard_so_pi1. Throws InvalidInput for k <= 0.
  CompactGroupRec so_group(int k) const;

 private:
  struct GroupTemplate {
    Template tmpl;
    format::Interpolated name;
    format::Expr free_rank;
    std::vector<format::Expr> torsion;
    std::vector<format::Interpolated> generators;
    format::Expr center_rank;
    struct IdealTemplate {
      format::Interpolated kind;
      format::Expr dim;
      format::Expr min_orth_rep_dim;
      std::string citation;
    };
    std::vector<IdealTemplate> ideals;
    bool connected = true;
    format::Interpolated provenance;
  };

  static GroupTemplate read(const format::Record& record);
  static CompactGroupRec instantiate(const GroupTemplate& g, std::optional<std::int64_t> value);
  std::optional<CompactGroupRec> try_lookup(std::string_view name) const;

  std::vector<GroupTemplate> groups_;
};

}  // namespace spinr::liecat
