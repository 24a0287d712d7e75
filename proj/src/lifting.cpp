#include "spinr/lifting.hpp"

#include "spinr/errors.hpp"
#include "spinr/liecat.hpp"

namespace spinr::lifting {

using abelian::AbElem;
using abelian::AbHom;
using abelian::FgAbGroup;
using liecat::standard_so_pi1;

namespace {

void check_rank(int k, const char* what) {
  if (k < 1) throw InvalidInput(std::string(what) + " must be at least 1, got " + std::to_string(k));
}

}  // namespace

abelian::Subgroup lift_subgroup(int n, int r) {
  check_rank(n, "n");
  check_rank(r, "r");
  FgAbGroup a = standard_so_pi1(n);
  FgAbGroup b = standard_so_pi1(r);
  AbHom parity = abelian::product_map(abelian::mod2(a), abelian::mod2(b));
  // (Z/2)^j -> Z/2, sum of coordinates
  FgAbGroup z2 = FgAbGroup::cyclic(2, "parity");
  std::vector<AbElem> ones(parity.codomain().generator_count(), z2.generator(0));
  AbHom sum(parity.codomain(), z2, ones);
  return abelian::kernel(abelian::compose(sum, parity));
}

LiftVerdict lifts(const LiftQuery& q) {
  check_rank(q.n, "n");
  check_rank(q.r, "r");
  if (!q.sigma_pi1.domain().same_labels(q.phi_pi1.domain()))
    throw InvalidInput("sigma and phi must have the same domain pi1(H): " + q.sigma_pi1.domain().to_string() +
                       " vs " + q.phi_pi1.domain().to_string());
  if (!q.sigma_pi1.codomain().same_labels(standard_so_pi1(q.n)))
    throw InvalidInput("sigma must land in pi1(SO(" + std::to_string(q.n) + "))");
  if (!q.phi_pi1.codomain().same_labels(standard_so_pi1(q.r)))
    throw InvalidInput("phi must land in pi1(SO(" + std::to_string(q.r) + "))");

  abelian::MembershipTester tester(lift_subgroup(q.n, q.r));
  AbHom both = abelian::pair(q.sigma_pi1, q.phi_pi1);
  const FgAbGroup& h = both.domain();
  LiftVerdict v;
  for (std::size_t i = 0; i < h.generator_count(); ++i) {
    const AbElem& img = both.image_of(i);
    if (tester.contains(img)) continue;
    WitnessFailure w;
    w.generator = h.labels()[i];
    w.image = img;
    w.description = w.generator + " -> (sigma: " + q.sigma_pi1.codomain().format(q.sigma_pi1.image_of(i)) +
                    ", phi: " + q.phi_pi1.codomain().format(q.phi_pi1.image_of(i)) + ")";
    v.witness_failures.push_back(std::move(w));
  }
  v.lifts = v.witness_failures.empty();
  return v;
}

AbHom inclusion_pi1(int r, int s) {
  check_rank(r, "r");
  if (s <= r) throw InvalidInput("block inclusion SO(r) -> SO(s) needs r < s");
  FgAbGroup from = standard_so_pi1(r);
  FgAbGroup to = standard_so_pi1(s);
  if (r == 1) return AbHom::zero(from, to);
  // s >= 3 here: the loop of SO(2) and of SO(r >= 3) maps to the generator of Z/2
  return AbHom(from, to, {to.generator(0)});
}

AbHom induce(const AbHom& phi, int r, int s) {
  if (!phi.codomain().same_labels(standard_so_pi1(r)))
    throw InvalidInput("phi must land in pi1(SO(" + std::to_string(r) + "))");
  return abelian::compose(inclusion_pi1(r, s), phi);
}

}  // namespace spinr::lifting
