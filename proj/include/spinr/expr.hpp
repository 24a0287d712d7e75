#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinr::format {

using Env = std::map<std::string, std::int64_t, std::less<>>;

/// Integer expression used in catalog fields: literals, variables, + - * / %,
/// comparisons, && || !, and c ? a : b. Division must be exact; % is the
/// non-negative remainder. Booleans are 0/1.
class Expr {
 public:
  /// Throws InvalidInput with the offending column on a syntax error.
  static Expr parse(std::string_view source);
  static Expr constant(std::int64_t value);

  std::int64_t eval(const Env& env) const;
  const std::string& source() const noexcept { return source_; }
  /// Variable names referenced anywhere in the expression.
  std::vector<std::string> variables() const;
  bool is_constant() const { return variables().empty(); }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

/// A string such as "S{2*m+1}:U({m+1})": literal text with embedded expressions.
class Interpolated {
 public:
  static Interpolated parse(std::string_view pattern);

  std::string render(const Env& env) const;
  const std::string& pattern() const noexcept { return pattern_; }
  bool has_expressions() const;

  /// Values of `var` in [lo, hi] for which render({var}) == text, smallest first.
  /// Other variables must not occur. Affine placeholders are solved directly.
  std::vector<std::int64_t> match(std::string_view text, const std::string& var, std::int64_t lo,
                                  std::int64_t hi) const;

 private:
  struct Segment {
    std::string literal;
    std::optional<Expr> expr;
  };
  std::vector<Segment> segments_;
  std::string pattern_;
};

}  // namespace spinr::format
