#pragma once

#include "averma/weylops.hpp"

namespace averma {

struct Filtration {
  int ambient = 0;            // dim V_lambda
  std::vector<int> dims;      // dim F_i for i = 0, 1, ... until full
  bool operator==(const Filtration&) const = default;
};

// F_i = ker e^{i+1} on V_lambda, e the sum of the simple root vectors
Filtration bkFiltration(const WeightModule& V, const Weight& lambda);

// phi in t* with (ad* e)^2 phi = 0 and phi regular; integral, deterministic
std::vector<Rat> admissiblePhi(const ChevalleyAlgebra& alg);

// the slice-degree filtration of the classical invariants at phi,
// transported to V_lambda by evaluation at phi; index i corresponds to the
// doubled degree 2i (odd steps coincide with the even ones by parity)
Filtration sliceFiltration(ThetaContext& ctx, const WeightModule& V, const Weight& lambda,
                           const std::vector<Rat>& phi);

}  // namespace averma
