#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace averma {

using Rat = mpq_class;

long toLong(const Rat& q);
bool isInteger(const Rat& q);
Rat factorial(int n);
Rat binomial(const Rat& x, int m);

// Exact polynomials in the coroot generators a1..a<rank> of t and in hbar.
// All generators sit in grade degree 2; exponents are stored plain and
// doubled only when a graded degree is reported.
constexpr int kMaxRank = 4;
constexpr int kHbar = kMaxRank;  // slot of the hbar exponent

struct Mono {
  std::array<int16_t, kMaxRank + 1> e{};

  int total() const {
    int t = 0;
    for (auto x : e) t += x;
    return t;
  }
  bool operator==(const Mono&) const = default;
};

// graded lexicographic with hbar last
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    for (int i = 0; i <= kMaxRank; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
};

class PolyS {
 public:
  using Map = std::map<Mono, Rat, MonoLess>;

  PolyS() = default;
  explicit PolyS(const Rat& c);
  explicit PolyS(long c);

  static PolyS var(int i);    // a_{i+1}
  static PolyS hbar();
  static PolyS linear(const std::vector<Rat>& tCoeffs, const Rat& hCoeff);

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Rat constantTerm() const;
  // doubled graded degree of the top monomial; -1 for the zero polynomial
  int degree() const;
  bool isHomogeneous() const;

  PolyS operator-() const;
  PolyS operator+(const PolyS&) const;
  PolyS operator-(const PolyS&) const;
  PolyS operator*(const PolyS&) const;
  PolyS& operator+=(const PolyS&);
  PolyS& operator-=(const PolyS&);
  PolyS& operator*=(const PolyS&);
  PolyS operator*(const Rat&) const;
  bool operator==(const PolyS&) const;
  bool operator!=(const PolyS& o) const { return !(*this == o); }

  void addTerm(const Mono& m, const Rat& c);

  // ring morphism sending a_i to tImages[i] and hbar to itself
  PolyS substT(const std::vector<PolyS>& tImages, int rank) const;
  // full evaluation, a_i -> tVals[i], hbar -> hVal
  Rat eval(const std::vector<Rat>& tVals, const Rat& hVal) const;
  // a_i -> mu_i * hbar; result is univariate in hbar
  PolyS specializeMu(const std::vector<Rat>& mu) const;
  PolyS setHbarZero() const;
  bool dependsOnHbarOnly() const;

  // exact division; aborts if the remainder is nonzero unless allowFail,
  // in which case ok is set false
  PolyS divideExact(const PolyS& d, bool* ok = nullptr) const;

  const Rat& leadingCoeff() const;  // under MonoLess; zero poly -> static 0
  const Map& terms() const { return terms_; }
  PolyS homogeneousPart(int doubledDegree) const;

  std::string str() const;

 private:
  Map terms_;  // no zero coefficients stored
};

PolyS operator*(const Rat& c, const PolyS& p);

// (P choose m)_hbar = P(P-hbar)...(P-(m-1)hbar)/m!
PolyS hbarBinom(const PolyS& p, int m);

// the automorphism sending t to t - hbar lambda(t): a_i -> a_i - lambda_i hbar
PolyS twistLambda(const PolyS& p, const std::vector<Rat>& lambdaPair, int rank);

// Laurent polynomials in hbar, used for specialized vectors
class HbarLaurent {
 public:
  HbarLaurent() = default;
  explicit HbarLaurent(const Rat& c);
  static HbarLaurent hbarPow(int k);

  bool isZero() const { return c_.empty(); }
  HbarLaurent operator+(const HbarLaurent&) const;
  HbarLaurent operator-(const HbarLaurent&) const;
  HbarLaurent operator*(const HbarLaurent&) const;
  HbarLaurent operator*(const Rat&) const;
  HbarLaurent& operator+=(const HbarLaurent&);
  bool operator==(const HbarLaurent&) const;
  bool operator!=(const HbarLaurent& o) const { return !(*this == o); }
  HbarLaurent shifted(int k) const;  // * hbar^k, k may be negative

  void addTerm(int k, const Rat& c);
  const std::map<int, Rat>& terms() const { return c_; }
  std::string str() const;

 private:
  std::map<int, Rat> c_;
};

// PolyS with only hbar-monomials -> HbarLaurent
HbarLaurent toLaurent(const PolyS& p);

}  // namespace averma
