#pragma once

// Test-only oracles. Nothing here calls into the Smith-form code paths.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "spinr/abelian.hpp"

namespace spinr::testing {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

/// Membership by exhaustive search over coefficient vectors in [-bound, bound]^k.
inline bool brute_force_contains(const abelian::FgAbGroup& g, const std::vector<std::vector<std::int64_t>>& gens,
                                 std::vector<std::int64_t> x, int bound = 8) {
  const auto n = g.generator_count();
  const auto f = static_cast<std::size_t>(g.free_rank());
  auto reduce = [&](std::vector<std::int64_t>& v) {
    for (std::size_t i = f; i < n; ++i) v[i] = floor_mod(v[i], g.torsion_orders()[i - f]);
  };
  reduce(x);
  std::vector<int> coeff(gens.size(), -bound);
  for (;;) {
    std::vector<std::int64_t> sum(n, 0);
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) sum[i] += coeff[j] * gens[j][i];
    reduce(sum);
    if (sum == x) return true;
    std::size_t j = 0;
    while (j < coeff.size() && coeff[j] == bound) coeff[j++] = -bound;
    if (j == coeff.size()) return false;
    ++coeff[j];
  }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline std::int64_t bareiss_det(std::vector<std::vector<std::int64_t>> m) {
  const auto n = m.size();
  if (n == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// A random group with free rank <= 2 and at most two torsion factors of order <= 8.
/// With `box_exhaustive`, the torsion orders have lcm <= 17, so every residue class of a
/// torsion coefficient has a representative in [-8, 8] and the box oracle is not cut short there.
inline abelian::FgAbGroup random_small_group(std::mt19937_64& rng, bool box_exhaustive = false) {
  std::uniform_int_distribution<int> free_rank(0, 2), torsion_count(0, 2), order(2, 8);
  for (;;) {
    const int f = free_rank(rng);
    std::vector<std::int64_t> torsion(static_cast<std::size_t>(torsion_count(rng)));
    for (auto& d : torsion) d = order(rng);
    if (f == 0 && torsion.empty()) torsion.push_back(order(rng));
    std::int64_t l = 1;
    for (auto d : torsion) l = std::lcm(l, d);
    if (!box_exhaustive || l <= 17) return abelian::FgAbGroup(f, torsion);
  }
}

inline std::vector<std::int64_t> random_coords(std::mt19937_64& rng, const abelian::FgAbGroup& g, int free_span) {
  std::uniform_int_distribution<std::int64_t> free_coord(-free_span, free_span);
  std::vector<std::int64_t> v(g.generator_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto d = g.order_of(i);
    v[i] = d == 0 ? free_coord(rng) : std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng);
  }
  return v;
}

/// A random well-defined homomorphism `domain` -> `codomain`, where the
/// codomain is trivial, Z or Z/2.
inline abelian::AbHom random_hom_to_cyclic(std::mt19937_64& rng, const abelian::FgAbGroup& domain,
                                           const abelian::FgAbGroup& codomain) {
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  std::vector<abelian::AbElem> images;
  for (std::size_t i = 0; i < domain.generator_count(); ++i) {
    std::vector<std::int64_t> c(codomain.generator_count());
    const auto d = domain.order_of(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto e = codomain.order_of(j);
      if (d == 0)
        c[j] = coord(rng);
      else if (e != 0 && d % e == 0)
        c[j] = coord(rng);
      else
        c[j] = 0;
    }
    images.push_back(codomain.element(c));
  }
  return abelian::AbHom(domain, codomain, images);
}

/// Parity of the image of a pi1(SO(k)) coordinate vector (empty for k = 1).
inline std::int64_t so_parity(const abelian::AbElem& x) {
  return x.coords.empty() ? 0 : floor_mod(x.coords[0], 2);
}

}  // namespace spinr::testing
