#include <gtest/gtest.h>

#include "spinr/catalog_format.hpp"
#include "spinr/errors.hpp"
#include "spinr/expr.hpp"

using spinr::CatalogError;
using spinr::InvalidInput;
using namespace spinr::format;

TEST(Expr, Precedence) {
  Env env{{"k", 5}};
  EXPECT_EQ(Expr::parse("1 + 2 * 3").eval(env), 7);
  EXPECT_EQ(Expr::parse("(1 + 2) * 3").eval(env), 9);
  EXPECT_EQ(Expr::parse("k*(k-1)/2").eval(env), 10);
  EXPECT_EQ(Expr::parse("-k + 1").eval(env), -4);
  EXPECT_EQ(Expr::parse("k >= 5 && k % 2 == 1").eval(env), 1);
  EXPECT_EQ(Expr::parse("k == 2 ? 3 : (k <= 4 ? 6 : 2*k)").eval(env), 10);
  EXPECT_EQ(Expr::parse("1 || 0 && 0").eval(env), 1);
  EXPECT_EQ(Expr::parse("!0 + 1").eval(env), 2);
}

TEST(Expr, ModulusIsNonNegative) {
  EXPECT_EQ(Expr::parse("-3 % 2").eval({}), 1);
  EXPECT_EQ(Expr::parse("(0 - 7) % 4").eval({}), 1);
}

TEST(Expr, Errors) {
  EXPECT_THROW(Expr::parse("3 / 2").eval({}), InvalidInput);
  EXPECT_THROW(Expr::parse("3 % 0").eval({}), InvalidInput);
  EXPECT_THROW(Expr::parse("k + 1").eval({}), InvalidInput);
  EXPECT_THROW(Expr::parse("1 +"), InvalidInput);
  EXPECT_THROW(Expr::parse("(1"), InvalidInput);
  EXPECT_THROW(Expr::parse("1 2"), InvalidInput);
}

TEST(Expr, Variables) {
  auto e = Expr::parse("m + 2*n - m");
  auto vars = e.variables();
  EXPECT_EQ(vars.size(), 2u);
  EXPECT_FALSE(e.is_constant());
  EXPECT_TRUE(Expr::parse("4").is_constant());
}

TEST(Interpolated, RenderAndMatch) {
  auto p = Interpolated::parse("S{2*m+1}:U({m+1})");
  EXPECT_EQ(p.render({{"m", 3}}), "S7:U(4)");
  EXPECT_EQ(p.match("S7:U(4)", "m", 0, 100), std::vector<std::int64_t>{3});
  EXPECT_TRUE(p.match("S7:U(5)", "m", 0, 100).empty());
  EXPECT_TRUE(p.match("S8:U(4)", "m", 0, 100).empty());
  EXPECT_TRUE(p.match("S7:SU(4)", "m", 0, 100).empty());
  EXPECT_TRUE(p.match("S7:U(4)", "m", 4, 100).empty());
}

TEST(Interpolated, MatchNonAffine) {
  auto p = Interpolated::parse("X{k*k}");
  EXPECT_EQ(p.match("X49", "k", 0, 20), std::vector<std::int64_t>{7});
}

TEST(Interpolated, ConstantPattern) {
  auto p = Interpolated::parse("G2");
  EXPECT_FALSE(p.has_expressions());
  EXPECT_EQ(p.render({}), "G2");
}

TEST(Interpolated, AdjacentPlaceholdersRejected) {
  EXPECT_THROW(Interpolated::parse("{k}{k}"), InvalidInput);
}

TEST(CatalogText, ParsesRecords) {
  auto records = parse_catalog_text(R"cat(version 1
# comment
group {
  name "SO({k})"
  pi1 { free_rank 0 torsion [2] }
  algebra { ideals [ ideal { kind "so(3)" dim 3 }, ideal { kind "g2" dim 14 } ] }
  connected true
  offset -3
  note "a \"quoted\" word"
}
)cat");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].type, "version");
  EXPECT_EQ(records[1].type, "group");
  EXPECT_EQ(records[1].line, 3);
  const auto& body = records[1].body;
  EXPECT_EQ(body.at("name").as_string(), "SO({k})");
  EXPECT_EQ(body.at("pi1").at("torsion").as_list().at(0).as_integer(), 2);
  const auto& ideals = body.at("algebra").at("ideals").as_list();
  ASSERT_EQ(ideals.size(), 2u);
  EXPECT_EQ(ideals[1].text, "ideal");
  EXPECT_EQ(ideals[1].at("dim").as_integer(), 14);
  EXPECT_TRUE(body.at("connected").as_bool());
  EXPECT_EQ(body.at("offset").as_integer(), -3);
  EXPECT_EQ(body.at("note").as_string(), "a \"quoted\" word");
  EXPECT_EQ(body.find("missing"), nullptr);
}

int error_line(std::string_view text) {
  try {
    parse_catalog_text(text);
  } catch (const CatalogError& e) {
    return e.line();
  }
  return -1;
}

TEST(CatalogText, ErrorsCarryLine) {
  EXPECT_EQ(error_line("group {\n  name \"x\"\n  name \"y\"\n}\n"), 3);
  EXPECT_EQ(error_line("group {\n  name \"unterminated\n}\n"), 2);
  EXPECT_EQ(error_line("group {\n\n  dims [1 2\n"), 4);
  EXPECT_EQ(error_line("group {\n  x @\n}"), 2);
}

TEST(CatalogText, MissingFieldNamesLine) {
  auto records = parse_catalog_text("\n\nspace {\n  G \"SO(3)\"\n}\n");
  try {
    records[0].body.at("H");
    FAIL();
  } catch (const CatalogError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("H"), std::string::npos);
  }
}
