#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinr {

/// Malformed arguments: mismatched domains, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A group, space or holonomy record that the loaded catalog does not contain.
class NotInCatalog : public std::out_of_range {
 public:
  NotInCatalog(const std::string& what_kind, const std::string& name,
               std::vector<std::string> available);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& available() const noexcept { return available_; }

 private:
  std::string name_;
  std::vector<std::string> available_;
};

/// A hypothesis of the lifting criterion does not hold (disconnected isotropy, n < 3, ...).
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Catalog text that fails to parse or violates a record invariant.
class CatalogError : public std::runtime_error {
 public:
  CatalogError(int line, const std::string& message);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace spinr
