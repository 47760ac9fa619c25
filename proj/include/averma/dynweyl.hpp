#pragma once

#include "averma/weylops.hpp"

namespace averma {

// -----------------------------------------------------------------------
// Classical intertwiner oracle.
//
// bar-M_loc(eta) with its right U_loc(g)-action is the classical Verma
// V(-eta-rho) (x) C[hbar, 1/hbar] through x -> -x/hbar. All oracle
// computations run on the classical side over Q; the hbar bookkeeping is
// confined to the two dictionary functions below. Classical vectors are
// written on the descending-normal-form monomial basis c_k, related to the
// right-module monomials by bar-v . f^k = (-hbar)^{|k|} c_k.

struct ClassicalVec {
  const WeightModule* V = nullptr;
  std::map<std::pair<int, std::vector<int>>, HbarLaurent> c;

  bool isZero() const { return c.empty(); }
  void add(int vIdx, const std::vector<int>& k, const HbarLaurent& h);
  bool operator==(const ClassicalVec&) const;
};

class IntertwinerOracle {
 public:
  explicit IntertwinerOracle(const ChevalleyAlgebra& alg);

  const ChevalleyAlgebra& algebra() const { return *alg_; }
  // the classical Verma realizing bar-M_loc(eta)
  const ClassicalVerma& verma(const Weight& eta);

  // dictionary between bar-M-side spec vectors (canonical slot order) and
  // classical vectors: coefficients pick up (-hbar)^{+-|k|}
  ClassicalVec fromSpec(const SpecTensorVec& x);
  SpecTensorVec toSpec(const ClassicalVec& y);

  // basis of Hom(bar-M_loc(mu), V (x) bar-M_loc(lambda+mu)) as singular
  // vectors: support wt(v) = lambda + gamma(k), killed by all e_i
  std::vector<ClassicalVec> singularBasis(const WeightModule& V, const Weight& lambda,
                                          const Weight& mu);

  // expectation value: coordinates at (v in V_lambda, empty monomial)
  std::vector<HbarLaurent> expectation(const ClassicalVec& y, const Weight& lambda);

  // one Psi_{s,mu} step; requires mu(coroot_a) < 0 and (lambda+mu)(coroot_a) <= 0
  ClassicalVec psiStep(const ClassicalVec& y, const Weight& lambda, const Weight& mu,
                       int simpleIdx);
  // Psi along a reduced word (rightmost letter first), tracking (lambda, mu)
  ClassicalVec psiWord(const ClassicalVec& y, const Weight& lambda, const Weight& mu,
                       const WeylWord& w);

  // DW_{V, lambda, w, mu} = E_{w mu} o Psi_{w, mu} o E_mu^{-1}; entries are
  // rational numbers after the asymptotic dictionary cancels the hbar powers
  QMatrix dwMatrix(const WeightModule& V, const Weight& lambda, const WeylWord& w,
                   const Weight& mu);

 private:
  const ChevalleyAlgebra* alg_;
  std::map<Weight, std::unique_ptr<ClassicalVerma>> vermaPool_;
};

// -----------------------------------------------------------------------
// dw_alg: the symbolic dynamical Weyl group over the fraction field.

struct RatS {
  PolyS num, den;  // den nonzero; reduced by cancelling linear factors

  static RatS of(PolyS n) { return RatS{std::move(n), PolyS(Rat(1))}; }
  bool isZero() const { return num.isZero(); }
  RatS operator+(const RatS&) const;
  RatS operator*(const RatS&) const;
  bool equals(const RatS&) const;  // cross-multiplied
  std::string str() const;
};

struct DWMatrix {
  Weight lambda, wlambda;
  std::vector<std::vector<RatS>> m;  // rows over V_{w lambda}, cols over V_lambda
};

// reduce by cancelling common linear factors of the shape c (root-coroot) + n hbar
RatS reduceRatS(const RootDatum& rd, RatS r);
// factor a polynomial into such linear forms; returns false if a nonconstant
// factor remains
bool factorLinearForms(const RootDatum& rd, const PolyS& p, std::vector<PolyS>* factors);

// the operator of Lemma 8.3.1: kappa-conjugated Theta_s with the stated
// scalar normalization, composed along a reduced word of w
DWMatrix dwAlg(ThetaContext& ctx, const WeightModule& V, const Weight& lambda, const WeylWord& w);

// evaluation of entries at t -> hbar (w mu)(t); compares against the oracle
// matrix by cross multiplication
bool dwMatchesOracle(const RootDatum& rd, const DWMatrix& dw, const QMatrix& oracle,
                     const Weight& wmu);

}  // namespace averma
