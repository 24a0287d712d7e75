#pragma once

#include <string>
#include <vector>

#include "spinr/abelian.hpp"

namespace spinr::lifting {

/// The subgroup of pi1(SO(n)) x pi1(SO(r)) that Spin^r(n) covers: pairs whose
/// mod-2 reductions have equal parity.
abelian::Subgroup lift_subgroup(int n, int r);

/// sigma x phi : H -> SO(n) x SO(r), given on pi1.
struct LiftQuery {
  int n = 0;
  int r = 0;
  abelian::AbHom sigma_pi1;  // pi1(H) -> pi1(SO(n))
  abelian::AbHom phi_pi1;    // pi1(H) -> pi1(SO(r))
};

struct WitnessFailure {
  std::string generator;
  abelian::AbElem image;  // in pi1(SO(n)) x pi1(SO(r))
  std::string description;
};

struct LiftVerdict {
  bool lifts = false;
  /// Generators of pi1(H) whose image leaves lift_subgroup(n, r). Empty when lifts.
  std::vector<WitnessFailure> witness_failures;
};

/// Decides whether sigma x phi lifts to Spin^r(n). Throws InvalidInput when
/// the maps do not share a labelled domain or land in the wrong pi1(SO(k)).
LiftVerdict lifts(const LiftQuery& q);

/// pi1 of the block inclusion SO(r) -> SO(s), A -> diag(A, 1).
abelian::AbHom inclusion_pi1(int r, int s);

/// phi followed by the block inclusion SO(r) -> SO(s). Needs r < s.
abelian::AbHom induce(const abelian::AbHom& phi, int r, int s);

}  // namespace spinr::lifting
