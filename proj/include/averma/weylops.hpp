#pragma once

#include <map>
#include <memory>

#include "averma/verma.hpp"

namespace averma {

// Owns the Verma modules appearing along Weyl-operator compositions so that
// TensorVec module pointers stay valid for the lifetime of the context.
class ThetaContext {
 public:
  ThetaContext(const ChevalleyAlgebra& alg, LeviDatum levi);

  const ChevalleyAlgebra& algebra() const { return *alg_; }
  const LeviDatum& levi() const { return levi_; }
  const VermaModule& module(const Weight& lambda);
  const VermaModule& moduleRootLast(const Weight& lambda, int posId);

  // re-expresses x in the target module over the same Levi and lambda
  TensorVec restraighten(const TensorVec& x, const VermaModule& target);

  // cached invariant bases over the pooled modules
  const InvariantBasis& invariants(const WeightModule& V, const Weight& lambda);
  const InvariantBasis& classicalInvariants(const WeightModule& V, const Weight& lambda);

  // kappa of Theta_s(x), from the f_alpha-pure column of the reflection
  // formula (the other columns of the naive formula drop straightening
  // corrections; the kappa column is exact)
  std::vector<PolyS> thetaKappa(const TensorVec& x, int simpleIdx, bool classical);

  // the simple-reflection operator; input must be B-invariant, output lands
  // in module(s lambda) and is checked to be B-invariant. Computed as the
  // unique invariant at s lambda whose kappa matches the reflection formula.
  TensorVec thetaS(const TensorVec& x, int simpleIdx);
  // composition along the word, rightmost letter first
  TensorVec thetaWord(const TensorVec& x, const WeylWord& w);

  // classical counterparts acting on hbar-free vectors
  TensorVec sigmaS(const TensorVec& xbar, int simpleIdx);
  TensorVec sigmaWord(const TensorVec& xbar, const WeylWord& w);

  // grading shift metadata: lambda(2 rho-check) before and after
  std::pair<long, long> shiftPair(const Weight& lambda, const WeylWord& w) const;

 private:
  TensorVec solveAgainstBasis(const std::vector<PolyS>& kappaVec, const InvariantBasis& basis,
                              const char* who);

  const ChevalleyAlgebra* alg_;
  LeviDatum levi_;
  std::map<std::pair<Weight, std::vector<int>>, std::unique_ptr<VermaModule>> pool_;
  struct CachedBasis {
    const WeightModule* owner;
    InvariantBasis basis;
  };
  std::map<std::pair<std::string, Weight>, CachedBasis> invCache_, clInvCache_;
};

// determinant of a small polynomial matrix by Laplace expansion
PolyS polyDet(const std::vector<std::vector<PolyS>>& m);

// algebraic convolution: phi in (V (x) M(lambda))^B, psi in (V' (x) M(mu))^B,
// output in (V (x) V' (x) M(lambda+mu))^B; VW must be tensorModule(V, V')
// and Mout the canonical module at lambda + mu
TensorVec convAlg(const TensorVec& phi, const TensorVec& psi, const WeightModule& VW,
                  const VermaModule& Mout);

// graded projection of kappa(z) onto the V_lambda (x) V'_mu piece of
// (V (x) V')_{lambda+mu}; entries indexed by (a, b) over the two weight spaces
std::vector<std::vector<PolyS>> kappaGradedPiece(const TensorVec& z, const WeightModule& V,
                                                 const WeightModule& Vp, const Weight& lambda,
                                                 const Weight& mu);

// Theta_w on the invariant basis at lambda, written over the basis at
// w lambda: columns are the coefficient vectors in S_h
std::vector<std::vector<PolyS>> thetaMatrix(ThetaContext& ctx, const WeightModule& V,
                                            const Weight& lambda, const WeylWord& w);

// scalar n(w, lambda, mu) relating Sp_{w mu} Theta_w and Psi_w Sp_mu
HbarLaurent thetaSpecScalar(const RootDatum& rd, const WeylWord& w, const Weight& lambda,
                            const Weight& mu);

}  // namespace averma
