#pragma once

#include <map>
#include <string>
#include <vector>

#include "averma/poly.hpp"

namespace averma {

// Integral weight in coroot-pairing coordinates: v[i] = lambda(coroot_i).
struct Weight {
  std::vector<long> v;

  Weight() = default;
  explicit Weight(std::vector<long> x) : v(std::move(x)) {}
  static Weight zero(int rank) { return Weight(std::vector<long>(rank, 0)); }

  long operator[](int i) const { return v[i]; }
  long& operator[](int i) { return v[i]; }
  int rank() const { return static_cast<int>(v.size()); }
  bool isZero() const;
  bool isDominant() const;
  Weight operator+(const Weight&) const;
  Weight operator-(const Weight&) const;
  Weight operator-() const;
  bool operator==(const Weight&) const = default;
  bool operator<(const Weight& o) const { return v < o.v; }
  std::string str() const;
};

// Word in the simple reflections; letters are 0-based indices and multiply
// left to right, so the last letter acts first on a weight.
struct WeylWord {
  std::vector<int> w;

  WeylWord() = default;
  explicit WeylWord(std::vector<int> x) : w(std::move(x)) {}
  WeylWord(std::initializer_list<int> x) : w(x) {}
  int length() const { return static_cast<int>(w.size()); }
  bool operator==(const WeylWord&) const = default;
  std::string str() const;
};

struct Root {
  std::vector<int> rootCoord;    // in simple roots
  std::vector<int> corootCoord;  // coroot in simple coroots
  int height() const;
  bool operator==(const Root&) const = default;
};

class RootDatum {
 public:
  // type: "A1" | "A2" | "B2" | "A1xA1", or build from an explicit Cartan matrix
  static RootDatum fromType(const std::string& type);
  static RootDatum fromCartan(std::vector<std::vector<int>> cartan, std::string name);

  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  // cartan()[i][j] = alpha_j(coroot_i)
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<Root>& positiveRoots() const { return pos_; }
  int numPositive() const { return static_cast<int>(pos_.size()); }
  // index of a positive root given by root coordinates; -1 if absent
  int rootIndex(const std::vector<int>& rootCoord) const;
  bool isRoot(const std::vector<int>& rootCoord) const;  // positive or negative

  Weight rho() const;                         // pairings all 1
  long pair(const Weight& lam, const Root& beta) const;  // lambda(coroot of beta)
  long pairTwoRhoCheck(const Weight& lam) const;          // lambda(2 rho-check)
  // weight pairing against an arbitrary element of t given in coroot coordinates
  Rat pairT(const Weight& lam, const std::vector<Rat>& t) const;

  // beta(coroot_i) for a root in root coordinates
  long rootPairCoroot(const std::vector<int>& rootCoord, int i) const;

  Weight reflect(int i, const Weight& lam) const;
  Weight act(const WeylWord& w, const Weight& lam) const;
  Weight dotReflect(const WeylWord& w, const Weight& mu) const;
  std::vector<int> reflectRoot(int i, const std::vector<int>& rootCoord) const;
  std::vector<int> actRoot(const WeylWord& w, std::vector<int> rootCoord) const;
  // action on an element of t written in coroot coordinates (hbar untouched)
  std::vector<Rat> actCoroot(const WeylWord& w, std::vector<Rat> c) const;
  PolyS weylActPoly(const WeylWord& w, const PolyS& p) const;

  int length(const WeylWord& w) const;
  WeylWord reducedWord(const WeylWord& w) const;
  WeylWord longestElement() const;
  std::vector<WeylWord> allElements() const;  // reduced words, one per element
  // positive roots sent negative by w
  std::vector<int> inversions(const WeylWord& w) const;
  bool sameElement(const WeylWord& a, const WeylWord& b) const;
  WeylWord concat(const WeylWord& a, const WeylWord& b) const;

  // lambda as rational combination of simple roots
  std::vector<Rat> weightInRootCoords(const Weight& lam) const;
  // W-invariant form: (alpha_i, alpha_j) = d_i * cartan[i][j]
  std::vector<Rat> symmetrizers() const;
  Rat innerProduct(const Weight& a, const Weight& b) const;

  // height of nu - w0(nu), a depth bound for V^nu
  int depth(const Weight& nu) const;

 private:
  // matrix of the action of w on pairing coordinates
  std::vector<std::vector<long>> actionMatrix(const WeylWord& w) const;

  int rank_ = 0;
  std::string name_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> pos_;
  std::map<std::vector<int>, int> posIndex_;
};

}  // namespace averma
