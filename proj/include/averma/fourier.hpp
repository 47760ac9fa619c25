#pragma once

#include <map>
#include <string>
#include <vector>

#include "averma/liealg.hpp"

namespace averma {

// Asymptotic Weyl algebra C[hbar]<x_i, D_i> with [D_i, x_i] = hbar, elements
// kept in normal order (x's left of D's). Coefficients are polynomials in
// hbar only.
struct WeylMono {
  std::vector<int> x, d;
  bool operator<(const WeylMono& o) const { return std::tie(x, d) < std::tie(o.x, o.d); }
  bool operator==(const WeylMono&) const = default;
};

class WeylElt {
 public:
  explicit WeylElt(int pairs = 2) : n_(pairs) {}
  static WeylElt gen(int pairs, bool isX, int i);

  int pairs() const { return n_; }
  bool isZero() const { return c_.empty(); }
  void add(const WeylMono& m, const PolyS& p);
  const std::map<WeylMono, PolyS>& terms() const { return c_; }
  WeylElt operator+(const WeylElt&) const;
  WeylElt operator-(const WeylElt&) const;
  WeylElt operator*(const Rat&) const;
  bool operator==(const WeylElt&) const;
  // x-degree minus D-degree must be constant; the torus weight of the element
  int xefWeight() const;
  std::string str() const;

 private:
  int n_;
  std::map<WeylMono, PolyS> c_;
};

WeylElt weylMul(const WeylElt& a, const WeylElt& b);
WeylElt weylCommutator(const WeylElt& a, const WeylElt& b);

// the symplectic Fourier automorphism for one symplectic plane C^2:
// x1 -> D2, x2 -> -D1, D1 -> -x2, D2 -> x1
WeylElt fourierSp2(const WeylElt& a);

// The sl2 realization by linear vector fields on C^2 used for the rank-one
// comparison; acts on W by (1/hbar) [ , ].
struct Sl2Fields {
  WeylElt e, f, h;
};
Sl2Fields sl2Realization();

// invariant vectors in V^nu (x) W of torus weight lambda, found degreewise
// inside a bounded window and normalized by evaluation at (v1, eta2)
struct A21Result {
  bool pass = false;
  long nu = 0, lambda = 0;
  int degreeFound = -1;
  std::string note;
  // the normalized invariant as (V-index -> Weyl element) rows
  std::vector<WeylElt> y;
};
A21Result checkLemmaA21(long nu, long lambda, int windowExtra = 0);

// generator y^nu_lambda alone (normalized), for cross-module comparisons
std::vector<WeylElt> fourierInvariant(const WeightModule& V, long lambda, int windowExtra = 0);

}  // namespace averma
