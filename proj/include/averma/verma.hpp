#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "averma/liealg.hpp"

namespace averma {

// A Levi slice: subset I of the simple roots with the induced positive
// system. The full group is the slice with all simple roots; the torus is
// the empty slice. rho here is the half sum of the slice's positive roots.
struct LeviDatum {
  const ChevalleyAlgebra* alg = nullptr;
  std::vector<int> simples;  // parent simple indices, ascending
  std::vector<int> posIds;   // parent positive-root ids, induced canonical order
  std::vector<Rat> rhoPair;  // rho_L(coroot_i), i over the parent rank

  static LeviDatum full(const ChevalleyAlgebra& alg);
  static LeviDatum sub(const ChevalleyAlgebra& alg, std::vector<int> simples);
  bool isFull() const;
  int rank() const { return alg->rank(); }
};

using Pbw = std::vector<int>;  // exponents over the module's root slots

// Asymptotic universal Verma module M(lambda) for the (possibly Levi) group,
// with a fixed enumeration of its positive roots. Logically immutable, but
// the straightening memo tables make a single instance not shareable across
// threads without external locking. Elements are stored in the
// presentation S_h<<lambda+rho>> (x) PBW monomials of u^-: with that
// bookkeeping the coefficient formulas of the rank-one computations hold
// verbatim and Sp_mu is the plain substitution t -> h mu(t).
class VermaModule {
 public:
  using Vec = std::map<Pbw, PolyS>;

  VermaModule(LeviDatum levi, Weight lambda);
  // slotToPos: permutation of levi.posIds giving the slot order
  VermaModule(LeviDatum levi, Weight lambda, std::vector<int> slotToPos);
  // same module with the positive root `posId` moved to the last slot
  VermaModule withRootLast(int posId) const;

  const LeviDatum& levi() const { return levi_; }
  const ChevalleyAlgebra& algebra() const { return *levi_.alg; }
  const Weight& lambda() const { return lambda_; }
  int numSlots() const { return static_cast<int>(slotToPos_.size()); }
  int posOfSlot(int s) const { return slotToPos_[s]; }
  int slotOfPos(int posId) const;
  bool sameOrdering(const VermaModule& o) const { return slotToPos_ == o.slotToPos_; }

  // right actions by Chevalley generators (parent positive-root ids) and by
  // a t-element in coroot coordinates
  Vec actE(int posId, const Vec&) const;
  Vec actF(int posId, const Vec&) const;
  Vec actH(const std::vector<Rat>& h, const Vec&) const;

  // adjoint T-weight of a PBW monomial: -lambda - sum k_s beta_s
  Weight gammaOf(const Pbw& k) const;  // the lowered part, as a weight vector
  long heightOf(const Pbw& k) const;   // sum of exponents

 private:
  Vec actEMono(int posId, const Pbw& k) const;
  Vec actFMono(int posId, const Pbw& k) const;
  PolyS hMultiplier(const std::vector<Rat>& h, const Pbw& k) const;

  LeviDatum levi_;
  Weight lambda_;
  std::vector<int> slotToPos_;
  std::map<int, int> posToSlot_;
  mutable std::map<std::pair<int, Pbw>, Vec> eCache_, fCache_;
};

// Element of V (x) M(lambda).
struct TensorVec {
  const WeightModule* V = nullptr;
  const VermaModule* M = nullptr;
  std::map<std::pair<int, Pbw>, PolyS> c;

  bool isZero() const { return c.empty(); }
  void add(int vIdx, const Pbw& k, const PolyS& p);
  TensorVec operator+(const TensorVec&) const;
  TensorVec operator-(const TensorVec&) const;
  TensorVec scaled(const PolyS&) const;
  bool operator==(const TensorVec&) const;
  // doubled graded degree when homogeneous; nullopt otherwise
  std::optional<int> homogeneousDegree() const;
  bool hasAdjointWeightZero() const;
  std::string str() const;
};

// right tensor actions: (v (x) m) . x = -h (x.v) (x) m + v (x) (m.x)
TensorVec rightActE(const TensorVec&, int posId);
TensorVec rightActF(const TensorVec&, int posId);
TensorVec rightActH(const TensorVec&, const std::vector<Rat>& h);

// adjoint action of a positive simple generator: the bracket combination is
// divisible by hbar and the exact quotient is returned; throws otherwise
TensorVec adjointE(const TensorVec&, int simpleIdx);
bool isBInvariant(const TensorVec&, const LeviDatum& levi);

// kappa^alg: the f^0 component restricted to V_lambda, indexed like
// WeightModule::weightSpace(lambda)
std::vector<PolyS> kappaAlg(const TensorVec&);

// coefficientwise plain specialization t -> h mu(t) (rational mu allowed)
struct SpecTensorVec {
  const WeightModule* V = nullptr;
  std::map<std::pair<int, Pbw>, HbarLaurent> c;
  bool isZero() const { return c.empty(); }
  bool operator==(const SpecTensorVec&) const;
  SpecTensorVec operator-(const SpecTensorVec&) const;
  SpecTensorVec scaled(const HbarLaurent&) const;
  void add(int vIdx, const Pbw& k, const HbarLaurent& h);
  std::string str() const;
};
SpecTensorVec spMu(const TensorVec&, const std::vector<Rat>& mu);
SpecTensorVec spMu(const TensorVec&, const Weight& mu);

// specialized right actions in bar-M(eta) = Sp_0 of M(eta): run the module
// action and then set the t variables to zero
SpecTensorVec specRightActE(const VermaModule& eta, const SpecTensorVec&, int posId);
SpecTensorVec specRightActF(const VermaModule& eta, const SpecTensorVec&, int posId);

// hbar -> 0, landing in V (x) S(g/u) (x) C_{-lambda} written on the same basis
TensorVec classicalLimit(const TensorVec&);

// classical adjoint action (derivation on S(g/u), e-parts killed mod u)
TensorVec classicalAdjointE(const TensorVec&, int simpleIdx);
bool isClassicalInvariant(const TensorVec&, const LeviDatum& levi);

// kill PBW monomials supported outside the Levi; target shares lambda
TensorVec restrictLevi(const TensorVec&, const VermaModule& target);

struct SolverOptions {
  int maxHalfDegree = -1;   // default: depth(V) + 3
  int verifyWindow = 3;     // extra degrees checked beyond the last generator
};

struct InvariantBasis {
  std::vector<TensorVec> gens;
  std::vector<int> degrees;  // doubled degrees
  int rank = 0;              // dim V_lambda
  bool lambdaIsWeight = true;
  bool freenessCertified = false;
  int truncationHalfDegree = 0;
  std::vector<long> hilbert;  // dim of the invariant space per half-degree
};

// degreewise exact solver for (V (x) M(lambda))^B, generators in minimal
// degrees, freeness certified against the Hilbert series of a free module
InvariantBasis bInvariants(const WeightModule& V, const VermaModule& M,
                           SolverOptions opt = {});

// classical analogue: (V (x) S(g/u) (x) C_{-lambda})^B via the hbar-free
// adjoint action; an independent solver used as the hbar = 0 oracle
InvariantBasis classicalBInvariants(const WeightModule& V, const VermaModule& M,
                                    SolverOptions opt = {});

// antidominant mu with |mu(coroot_i)| >= depth(V) + |lambda_i| + 2 + margin
Weight sufficientlyLarge(const WeightModule& V, const Weight& lambda, int margin);

long monomialCount(int halfDegree, int rank);  // monomials in rank+1 variables

}  // namespace averma
