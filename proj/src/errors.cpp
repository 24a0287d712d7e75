#include "spinr/errors.hpp"

namespace spinr {

namespace {

std::string not_found_message(const std::string& kind, const std::string& name,
                              const std::vector<std::string>& available) {
  std::string msg = kind + " '" + name + "' not in catalog; available:";
  for (const auto& a : available) msg += "\n  " + a;
  return msg;
}

}  // namespace

NotInCatalog::NotInCatalog(const std::string& what_kind, const std::string& name,
                           std::vector<std::string> available)
    : std::out_of_range(not_found_message(what_kind, name, available)),
      name_(name),
      available_(std::move(available)) {}

CatalogError::CatalogError(int line, const std::string& message)
    : std::runtime_error("catalog line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace spinr
