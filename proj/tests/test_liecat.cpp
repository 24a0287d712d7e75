#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "spinr/errors.hpp"
#include "spinr/liecat.hpp"

using namespace spinr;
using namespace spinr::liecat;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const GroupCatalog& shipped() {
  static const GroupCatalog cat =
      GroupCatalog::from_records(format::parse_catalog_text(read_file(SPINR_DEFAULT_CATALOG)));
  return cat;
}

GroupCatalog from_text(const std::string& text) { return GroupCatalog::from_records(format::parse_catalog_text(text)); }

int catalog_error_line(const std::string& text) {
  try {
    from_text(text);
  } catch (const CatalogError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(StandardSoPi1, Values) {
  EXPECT_TRUE(standard_so_pi1(1).is_trivial());
  EXPECT_EQ(standard_so_pi1(2), abelian::FgAbGroup::integers());
  for (int k = 3; k < 40; ++k) EXPECT_EQ(standard_so_pi1(k), abelian::FgAbGroup::cyclic(2));
  EXPECT_THROW(standard_so_pi1(0), InvalidInput);
}

TEST(GroupCatalog, SoGroupMatchesStandardPi1) {
  for (int k = 1; k <= 200; ++k) {
    auto g = shipped().so_group(k);
    EXPECT_EQ(g.pi1, standard_so_pi1(k)) << k;
    EXPECT_TRUE(g.connected);
    EXPECT_EQ(g.algebra.dimension(), k * (k - 1) / 2) << k;
  }
  EXPECT_THROW(shipped().so_group(0), InvalidInput);
  EXPECT_THROW(shipped().so_group(-3), InvalidInput);
}

TEST(GroupCatalog, AlgebraDimensions) {
  for (int k = 1; k <= 30; ++k) {
    EXPECT_EQ(shipped().lookup("U(" + std::to_string(k) + ")").algebra.dimension(), k * k);
    EXPECT_EQ(shipped().lookup("SU(" + std::to_string(k) + ")").algebra.dimension(), k * k - 1);
    EXPECT_EQ(shipped().lookup("Sp(" + std::to_string(k) + ")").algebra.dimension(), k * (2 * k + 1));
    EXPECT_EQ(shipped().lookup("Sp(" + std::to_string(k) + ")·U(1)").algebra.dimension(), k * (2 * k + 1) + 1);
    EXPECT_EQ(shipped().lookup("Sp(" + std::to_string(k) + ")·Sp(1)").algebra.dimension(), k * (2 * k + 1) + 3);
  }
}

TEST(GroupCatalog, Pi1Examples) {
  EXPECT_EQ(shipped().lookup("U(3)").pi1, abelian::FgAbGroup::integers());
  EXPECT_TRUE(shipped().lookup("SU(3)").pi1.is_trivial());
  EXPECT_TRUE(shipped().lookup("G2").pi1.is_trivial());
  EXPECT_TRUE(shipped().lookup("Spin(7)").pi1.is_trivial());
  EXPECT_EQ(shipped().lookup("Sp(2)·U(1)").pi1, abelian::FgAbGroup::integers());
  EXPECT_EQ(shipped().lookup("Sp(2)·Sp(1)").pi1, abelian::FgAbGroup::cyclic(2));
  EXPECT_EQ(shipped().lookup("SO(4)").algebra.to_string(), "so(3)⊕so(3)");
  EXPECT_EQ(shipped().lookup("U(3)").algebra.to_string(), "u(1)⊕su(3)");
}

TEST(GroupCatalog, NameNormalization) {
  EXPECT_EQ(normalize_name("Sp(2).Sp(1)"), "Sp(2)·Sp(1)");
  EXPECT_EQ(normalize_name("Sp(2)*U(1)"), "Sp(2)·U(1)");
  EXPECT_EQ(normalize_name(" SO (3) "), "SO(3)");
  EXPECT_EQ(shipped().lookup("Sp(1).Sp(1)").name, "Sp(1)·Sp(1)");
}

TEST(GroupCatalog, UnknownNameListsAvailable) {
  try {
    shipped().lookup("E8");
    FAIL();
  } catch (const NotInCatalog& e) {
    EXPECT_EQ(e.name(), "E8");
    EXPECT_FALSE(e.available().empty());
  }
  EXPECT_FALSE(shipped().contains("Spin(3)"));
  EXPECT_FALSE(shipped().contains("SO(-1)"));
}

TEST(GroupCatalog, MinimalRepDims) {
  EXPECT_EQ(shipped().lookup("SO(7)").algebra.ideals.at(0).min_orth_rep_dim, 7);
  EXPECT_EQ(shipped().lookup("SU(3)").algebra.ideals.at(0).min_orth_rep_dim, 6);
  EXPECT_EQ(shipped().lookup("SU(4)").algebra.ideals.at(0).min_orth_rep_dim, 6);
  EXPECT_EQ(shipped().lookup("SU(5)").algebra.ideals.at(0).min_orth_rep_dim, 10);
  EXPECT_EQ(shipped().lookup("Sp(2)").algebra.ideals.at(0).min_orth_rep_dim, 5);
  EXPECT_EQ(shipped().lookup("Sp(3)").algebra.ideals.at(0).min_orth_rep_dim, 12);
  EXPECT_EQ(shipped().lookup("G2").algebra.ideals.at(0).min_orth_rep_dim, 7);
}

TEST(GroupCatalog, RejectsBadSoPi1) {
  EXPECT_EQ(catalog_error_line(R"cat(version 1

group {
  name "SO(3)"
  pi1 { free_rank 1 torsion [] }
  generators ["x"]
  algebra { center_rank 1 ideals [ ideal { kind "so(3)" dim 3 min_orth_rep_dim 3 } ] }
  connected true
  provenance "wrong"
}
)cat"),
            3);
}

TEST(GroupCatalog, RejectsBadIdeal) {
  EXPECT_EQ(catalog_error_line(R"cat(group {
  name "X"
  pi1 { free_rank 0 torsion [] }
  generators []
  algebra { ideals [ ideal { kind "so(6)" dim 15 min_orth_rep_dim 4 } ] }
  connected true
  provenance "p"
}
)cat"),
            1);
  EXPECT_EQ(catalog_error_line(R"cat(
group {
  name "X({k})"
  param "k"
  where "k >= 1"
  pi1 { free_rank 0 torsion [] }
  generators []
  algebra { ideals [ ideal { kind "so({k})" dim "k*(k-1)/2" min_orth_rep_dim "k" } ] }
  connected true
  provenance "p"
}
)cat"),
            2);
}

TEST(GroupCatalog, RejectsGeneratorMismatch) {
  EXPECT_GT(catalog_error_line(R"cat(group {
  name "X"
  pi1 { free_rank 1 torsion [2] }
  generators ["a"]
  algebra { center_rank 1 ideals [] }
  connected true
  provenance "p"
}
)cat"),
            0);
}

TEST(GroupCatalog, FirstMatchWins) {
  auto cat = from_text(R"cat(
group { name "A" pi1 { free_rank 0 torsion [] } generators [] algebra { ideals [] } connected true provenance "first" }
group { name "A" pi1 { free_rank 0 torsion [] } generators [] algebra { ideals [] } connected true provenance "second" }
)cat");
  EXPECT_EQ(cat.lookup("A").provenance, "first");
}
