#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spinr::format {

/// A parsed catalog value. Text layout:
///
///   version 1
///   group { name "SO({k})" param "k" where "k >= 5" pi1 { free_rank 0 torsion [2] } ... }
///
/// Values are integers, "strings", bare identifiers, [lists] and {blocks} of
/// `key value` fields. Inside a list, `tag { ... }` is a tagged block. Commas
/// are whitespace, `#` starts a comment.
struct Value {
  enum class Kind { Integer, String, Identifier, List, Block };

  Kind kind = Kind::Block;
  int line = 0;
  std::int64_t integer = 0;
  std::string text;  // String / Identifier contents; tag of a tagged block
  std::vector<Value> items;
  std::vector<std::string> keys;  // Block fields, parallel to `values`
  std::vector<Value> values;

  const Value* find(std::string_view key) const;
  /// Throws CatalogError naming the missing key and this block's line.
  const Value& at(std::string_view key) const;

  const std::string& as_string() const;
  const std::string& as_identifier() const;
  std::int64_t as_integer() const;
  bool as_bool() const;
  const std::vector<Value>& as_list() const;
  /// Integer literal or an expression string.
  std::string as_expression_source() const;
  std::string kind_name() const;
};

struct Record {
  std::string type;
  Value body;
  int line = 0;
};

/// Splits catalog text into top-level records. Throws CatalogError.
std::vector<Record> parse_catalog_text(std::string_view text);

}  // namespace spinr::format
