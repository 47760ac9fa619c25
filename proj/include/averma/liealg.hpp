#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "averma/qmatrix.hpp"
#include "averma/rootdata.hpp"

namespace averma {

// Sparse element of g: e/f parts over positive-root ids plus a t-part in
// coroot coordinates.
struct AlgElt {
  std::map<int, Rat> e, f;  // positive-root id -> coefficient
  std::vector<Rat> h;       // coroot coordinates (may be empty for zero)

  bool isZero() const;
};

// Chevalley basis with integer structure constants. Signs are fixed by the
// extraspecial-pair convention: for each non-simple positive root, the pair
// (beta, gamma) with beta minimal in the canonical order gets N > 0; the
// remaining signs are the unique Jacobi-consistent completion.
class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(RootDatum rd);

  const RootDatum& rootDatum() const { return rd_; }
  int rank() const { return rd_.rank(); }
  int numPos() const { return rd_.numPositive(); }

  // N constant for [x_a, x_b] where codes encode signed roots: 2*id for
  // e_id, 2*id+1 for f_id. Returns the full bracket as an AlgElt.
  AlgElt bracketBasis(int codeA, int codeB) const;
  AlgElt bracket(const AlgElt& x, const AlgElt& y) const;

  // [e_i, f_beta] decomposition helpers used by the straightening code
  // (i, beta are positive-root ids). Result is h part iff i == beta.
  const AlgElt& efBracket(int i, int beta) const;
  // [f_a, f_b] = c * f_{a+b} when a+b is a root; nullopt otherwise
  std::optional<std::pair<Rat, int>> ffBracket(int a, int b) const;

  // signed-code structure constant table, for serialization
  const std::map<std::pair<int, int>, Rat>& structureConstants() const { return n_; }
  // rebuild from a stored table; validates the Jacobi identity
  ChevalleyAlgebra(RootDatum rd, std::map<std::pair<int, int>, Rat> table);

  bool jacobiHolds() const;  // sweep over all basis triples

 private:
  int stringDown(const std::vector<int>& gamma, const std::vector<int>& beta) const;
  void solveSigns();

  RootDatum rd_;
  // key: (codeA, codeB) with codes as above; value: coefficient of the
  // (unique) root vector of the sum root
  std::map<std::pair<int, int>, Rat> n_;
  mutable std::map<std::pair<int, int>, AlgElt> efCache_;
};

// Classical Verma module V(eta) for U(g), eta a rational weight given by its
// coroot pairings. Same caching caveat as the asymptotic module: per-instance
// memo tables, not thread-shareable. Basis monomials are indexed by exponent vectors over the
// canonical positive-root order; the normal form puts higher roots to the
// left: f_{b_n}^{k_n} ... f_{b_1}^{k_1} . 1_eta.
class ClassicalVerma {
 public:
  using Mono = std::vector<int>;
  using Vec = std::map<Mono, Rat>;

  ClassicalVerma(const ChevalleyAlgebra& alg, std::vector<Rat> eta);

  const ChevalleyAlgebra& algebra() const { return *alg_; }
  const std::vector<Rat>& eta() const { return eta_; }

  Vec actE(int rootId, const Vec& v) const;
  Vec actF(int rootId, const Vec& v) const;
  // t-element in coroot coordinates (diagonal)
  Vec actH(const std::vector<Rat>& h, const Vec& v) const;
  Vec act(const AlgElt& x, const Vec& v) const;

  // weight of a monomial: eta - sum k_b beta, as coroot pairings
  std::vector<Rat> weightOf(const Mono& m) const;

 private:
  Vec actEMono(int rootId, const Mono& m) const;
  Vec actFMono(int rootId, const Mono& m) const;

  const ChevalleyAlgebra* alg_;
  std::vector<Rat> eta_;
  mutable std::map<std::pair<int, Mono>, Vec> eCache_, fCache_;
};

struct WeightModule {
  const ChevalleyAlgebra* alg = nullptr;
  int dim = 0;
  std::vector<Weight> wt;           // weight of each basis vector
  std::vector<QMatrix> eMat, fMat;  // per positive-root id
  Weight highest;                   // highest weight (sum of factors for tensors)
  std::string label;

  std::vector<int> weightSpace(const Weight& lam) const;
  bool hasWeight(const Weight& lam) const { return !weightSpace(lam).empty(); }
  // matrix commutators match algebra brackets on all generator pairs
  bool bracketRelationsHold() const;
  QMatrix actT(const std::vector<Rat>& h) const;  // diagonal t-action
  int depth() const;                              // height of highest - lowest
};

// multiplicities of the irreducible with highest weight nu, by Freudenthal
std::map<Weight, long> freudenthalMultiplicities(const RootDatum& rd, const Weight& nu);
long weylDimension(const RootDatum& rd, const Weight& nu);

// Irreducible module with highest weight nu, built as the contravariant-form
// quotient of the classical Verma. In rank one the basis is normalized so
// that e.v_k = k v_{k-1} and the coroot acts by nu - 2k.
WeightModule buildIrrep(const ChevalleyAlgebra& alg, const Weight& nu);

WeightModule tensorModule(const WeightModule& a, const WeightModule& b);

// exponent vectors over the positive roots with a prescribed root-coordinate sum
std::vector<std::vector<int>> monomialsWithRootSum(const RootDatum& rd,
                                                   const std::vector<long>& target);

}  // namespace averma
