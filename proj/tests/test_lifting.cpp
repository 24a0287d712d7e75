#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spinr/errors.hpp"
#include "spinr/liecat.hpp"
#include "spinr/lifting.hpp"

using namespace spinr;
using namespace spinr::lifting;
using abelian::AbElem;
using abelian::AbHom;
using abelian::FgAbGroup;
using abelian::Subgroup;
using liecat::standard_so_pi1;
namespace oracle = spinr::testing;

namespace {

AbElem pair_of(int n, std::int64_t a, int r, std::int64_t b) {
  FgAbGroup A = standard_so_pi1(n), B = standard_so_pi1(r);
  AbElem x = A.is_trivial() ? A.zero() : A.element({a});
  AbElem y = B.is_trivial() ? B.zero() : B.element({b});
  return abelian::pair_elements(A, x, B, y);
}

// (B x A) -> (A x B), swapping the factors.
AbHom swap_map(int n, int r) {
  FgAbGroup A = standard_so_pi1(n), B = standard_so_pi1(r);
  FgAbGroup P = abelian::direct_product(B, A), Q = abelian::direct_product(A, B);
  std::vector<AbElem> images;
  auto from_b = [&](std::size_t i) { return abelian::pair_elements(A, A.zero(), B, B.generator(i)); };
  auto from_a = [&](std::size_t i) { return abelian::pair_elements(A, A.generator(i), B, B.zero()); };
  const auto bf = static_cast<std::size_t>(B.free_rank()), af = static_cast<std::size_t>(A.free_rank());
  for (std::size_t i = 0; i < bf; ++i) images.push_back(from_b(i));
  for (std::size_t i = 0; i < af; ++i) images.push_back(from_a(i));
  for (std::size_t i = bf; i < B.generator_count(); ++i) images.push_back(from_b(i));
  for (std::size_t i = af; i < A.generator_count(); ++i) images.push_back(from_a(i));
  return AbHom(P, Q, images);
}

Subgroup image_under(const AbHom& f, const Subgroup& s) {
  std::vector<AbElem> gens;
  for (const auto& g : s.generators()) gens.push_back(f.apply(g));
  return Subgroup(f.codomain(), gens);
}

}  // namespace

TEST(LiftSubgroup, CaseTwoTwo) {
  auto L = lift_subgroup(2, 2);
  FgAbGroup zz = abelian::direct_product(standard_so_pi1(2), standard_so_pi1(2));
  Subgroup expected(zz, {pair_of(2, 1, 2, 1), pair_of(2, 1, 2, -1)});
  EXPECT_TRUE(abelian::same_subgroup(L, expected));
  EXPECT_EQ(abelian::index(L), 2);
}

TEST(LiftSubgroup, CaseNTwo) {
  for (int n : {3, 5, 9}) {
    auto L = lift_subgroup(n, 2);
    Subgroup expected(L.ambient(), {pair_of(n, 1, 2, 1)});
    EXPECT_TRUE(abelian::same_subgroup(L, expected)) << n;
    EXPECT_EQ(abelian::index(L), 2) << n;
  }
}

TEST(LiftSubgroup, CaseBothAtLeastThree) {
  for (int n = 3; n <= 9; ++n)
    for (int r = 3; r <= 9; ++r) {
      auto L = lift_subgroup(n, r);
      Subgroup expected(L.ambient(), {pair_of(n, 1, r, 1)});
      EXPECT_TRUE(abelian::same_subgroup(L, expected)) << n << "," << r;
      EXPECT_EQ(abelian::index(L), 2);
    }
}

TEST(LiftSubgroup, IndexTwoWhenBothFactorsAtLeastTwo) {
  for (int n = 2; n <= 12; ++n)
    for (int r = 2; r <= 12; ++r) EXPECT_EQ(abelian::index(lift_subgroup(n, r)), 2) << n << "," << r;
}

TEST(LiftSubgroup, SymmetricUnderSwap) {
  for (int n = 1; n <= 9; ++n)
    for (int r = 1; r <= 9; ++r) {
      auto swapped = image_under(swap_map(n, r), lift_subgroup(r, n));
      EXPECT_TRUE(abelian::same_subgroup(swapped, lift_subgroup(n, r))) << n << "," << r;
    }
}

TEST(LiftSubgroup, MatchesParityOracle) {
  // membership in the box [-4, 4]^2 against the parity-diagonal description
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 4; ++r) {
      abelian::MembershipTester t(lift_subgroup(n, r));
      FgAbGroup A = standard_so_pi1(n), B = standard_so_pi1(r);
      for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) {
          AbElem x = A.is_trivial() ? A.zero() : A.element({a});
          AbElem y = B.is_trivial() ? B.zero() : B.element({b});
          bool expected = oracle::so_parity(x) == oracle::so_parity(y);
          EXPECT_EQ(t.contains(abelian::pair_elements(A, x, B, y)), expected) << n << "," << r << ": " << a << "," << b;
        }
    }
}

TEST(LiftSubgroup, DegenerateCases) {
  // n = 1: phi's image must be even
  auto L = lift_subgroup(1, 2);
  EXPECT_TRUE(abelian::contains(L, pair_of(1, 0, 2, 2)));
  EXPECT_FALSE(abelian::contains(L, pair_of(1, 0, 2, 1)));
  EXPECT_EQ(abelian::index(lift_subgroup(1, 1)), 1);
  EXPECT_EQ(abelian::index(lift_subgroup(3, 1)), 2);
  EXPECT_THROW(lift_subgroup(0, 3), InvalidInput);
  EXPECT_THROW(lift_subgroup(3, 0), InvalidInput);
}

TEST(Lifts, WitnessNamesGenerator) {
  FgAbGroup h = FgAbGroup::integers("U(2).det");
  AbHom sigma(h, standard_so_pi1(5), {standard_so_pi1(5).generator(0)});
  auto v = lifts({5, 1, sigma, AbHom::zero(h, standard_so_pi1(1))});
  EXPECT_FALSE(v.lifts);
  ASSERT_EQ(v.witness_failures.size(), 1u);
  EXPECT_EQ(v.witness_failures[0].generator, "U(2).det");

  AbHom phi(h, standard_so_pi1(2), {standard_so_pi1(2).element({3})});
  EXPECT_TRUE(lifts({5, 2, sigma, phi}).lifts);
  AbHom phi_even(h, standard_so_pi1(2), {standard_so_pi1(2).element({-4})});
  EXPECT_FALSE(lifts({5, 2, sigma, phi_even}).lifts);
}

TEST(Lifts, RejectsMismatchedInputs) {
  FgAbGroup h = FgAbGroup::integers("a");
  FgAbGroup h2 = FgAbGroup::integers("b");
  AbHom sigma = AbHom::zero(h, standard_so_pi1(4));
  EXPECT_THROW(lifts({4, 2, sigma, AbHom::zero(h2, standard_so_pi1(2))}), InvalidInput);
  EXPECT_THROW(lifts({4, 2, sigma, AbHom::zero(h, standard_so_pi1(3))}), InvalidInput);
  EXPECT_THROW(lifts({5, 2, sigma, AbHom::zero(h, standard_so_pi1(2))}), InvalidInput);
}

TEST(Lifts, SpinCaseIffSigmaZero) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    FgAbGroup h = oracle::random_small_group(rng);
    int n = 1 + static_cast<int>(rng() % 9);
    AbHom sigma = oracle::random_hom_to_cyclic(rng, h, standard_so_pi1(n));
    bool sigma_zero_mod2 = true;
    for (const auto& img : sigma.images()) sigma_zero_mod2 = sigma_zero_mod2 && oracle::so_parity(img) == 0;
    auto v = lifts({n, 1, sigma, AbHom::zero(h, standard_so_pi1(1))});
    EXPECT_EQ(v.lifts, sigma_zero_mod2);
    // for n >= 3 the isotropy map on pi1 is zero exactly when it is zero mod 2
    if (n >= 3) EXPECT_EQ(v.lifts, sigma.is_zero());
  }
}

TEST(Lifts, AgreesWithParityOracle) {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 500; ++iter) {
    FgAbGroup h = oracle::random_small_group(rng);
    int n = 1 + static_cast<int>(rng() % 9), r = 1 + static_cast<int>(rng() % 9);
    AbHom sigma = oracle::random_hom_to_cyclic(rng, h, standard_so_pi1(n));
    AbHom phi = oracle::random_hom_to_cyclic(rng, h, standard_so_pi1(r));
    std::size_t bad = 0;
    for (std::size_t i = 0; i < h.generator_count(); ++i)
      bad += oracle::so_parity(sigma.image_of(i)) != oracle::so_parity(phi.image_of(i));
    auto v = lifts({n, r, sigma, phi});
    EXPECT_EQ(v.lifts, bad == 0);
    EXPECT_EQ(v.witness_failures.size(), bad);
  }
}

TEST(Induce, InclusionMaps) {
  EXPECT_TRUE(inclusion_pi1(1, 4).is_zero());
  EXPECT_EQ(inclusion_pi1(2, 3).image_of(0), standard_so_pi1(3).generator(0));
  EXPECT_EQ(inclusion_pi1(2, 3).apply(standard_so_pi1(2).element({2})), standard_so_pi1(3).zero());
  EXPECT_EQ(inclusion_pi1(4, 7).image_of(0), standard_so_pi1(7).generator(0));
  EXPECT_THROW(inclusion_pi1(3, 3), InvalidInput);
  EXPECT_THROW(inclusion_pi1(4, 2), InvalidInput);
  FgAbGroup h = FgAbGroup::integers("z");
  EXPECT_THROW(induce(AbHom::zero(h, standard_so_pi1(3)), 2, 4), InvalidInput);
}

TEST(Induce, MonotonicityOfLifting) {
  std::mt19937_64 rng(777);
  int passing = 0;
  for (int iter = 0; iter < 400; ++iter) {
    FgAbGroup h = oracle::random_small_group(rng);
    int n = 1 + static_cast<int>(rng() % 9), r = 1 + static_cast<int>(rng() % 8);
    AbHom sigma = oracle::random_hom_to_cyclic(rng, h, standard_so_pi1(n));
    AbHom phi = oracle::random_hom_to_cyclic(rng, h, standard_so_pi1(r));
    if (!lifts({n, r, sigma, phi}).lifts) continue;
    ++passing;
    for (int s = r + 1; s <= 9; ++s) EXPECT_TRUE(lifts({n, s, sigma, induce(phi, r, s)}).lifts) << n << " " << r << " " << s;
  }
  EXPECT_GT(passing, 50);
}
