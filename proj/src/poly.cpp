#include "averma/poly.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace averma {

long toLong(const Rat& q) {
  assert(q.get_den() == 1);
  assert(q.get_num().fits_slong_p());
  return q.get_num().get_si();
}

bool isInteger(const Rat& q) { return q.get_den() == 1; }

Rat factorial(int n) {
  Rat r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rat binomial(const Rat& x, int m) {
  Rat r(1);
  for (int i = 0; i < m; ++i) r *= (x - i);
  return r / factorial(m);
}

PolyS::PolyS(const Rat& c) {
  if (c != 0) terms_[Mono{}] = c;
}

PolyS::PolyS(long c) {
  if (c != 0) terms_[Mono{}] = Rat(c);
}

PolyS PolyS::var(int i) {
  assert(i >= 0 && i < kMaxRank);
  PolyS p;
  Mono m;
  m.e[i] = 1;
  p.terms_[m] = 1;
  return p;
}

PolyS PolyS::hbar() {
  PolyS p;
  Mono m;
  m.e[kHbar] = 1;
  p.terms_[m] = 1;
  return p;
}

PolyS PolyS::linear(const std::vector<Rat>& tCoeffs, const Rat& hCoeff) {
  PolyS p;
  for (size_t i = 0; i < tCoeffs.size(); ++i)
    if (tCoeffs[i] != 0) {
      Mono m;
      m.e[i] = 1;
      p.terms_[m] = tCoeffs[i];
    }
  if (hCoeff != 0) {
    Mono m;
    m.e[kHbar] = 1;
    p.terms_[m] = hCoeff;
  }
  return p;
}

bool PolyS::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

Rat PolyS::constantTerm() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? Rat(0) : it->second;
}

int PolyS::degree() const {
  if (terms_.empty()) return -1;
  return 2 * terms_.rbegin()->first.total();
}

bool PolyS::isHomogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.total();
  for (auto& [m, c] : terms_)
    if (m.total() != d) return false;
  return true;
}

void PolyS::addTerm(const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyS PolyS::operator-() const {
  PolyS r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

PolyS PolyS::operator+(const PolyS& o) const {
  PolyS r = *this;
  r += o;
  return r;
}

PolyS PolyS::operator-(const PolyS& o) const {
  PolyS r = *this;
  r -= o;
  return r;
}

PolyS& PolyS::operator+=(const PolyS& o) {
  for (auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

PolyS& PolyS::operator-=(const PolyS& o) {
  for (auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

PolyS PolyS::operator*(const PolyS& o) const {
  PolyS r;
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_) {
      Mono m = m1;
      for (int i = 0; i <= kMaxRank; ++i) m.e[i] += m2.e[i];
      r.addTerm(m, c1 * c2);
    }
  return r;
}

PolyS& PolyS::operator*=(const PolyS& o) {
  *this = *this * o;
  return *this;
}

PolyS PolyS::operator*(const Rat& c) const {
  PolyS r;
  if (c == 0) return r;
  for (auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

PolyS operator*(const Rat& c, const PolyS& p) { return p * c; }

bool PolyS::operator==(const PolyS& o) const { return terms_ == o.terms_; }

PolyS PolyS::substT(const std::vector<PolyS>& tImages, int rank) const {
  PolyS r;
  for (auto& [m, c] : terms_) {
    PolyS term(c);
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < m.e[i]; ++k) term *= tImages[i];
    for (int i = rank; i < kMaxRank; ++i) assert(m.e[i] == 0);
    Mono hm;
    hm.e[kHbar] = m.e[kHbar];
    PolyS hp;
    hp.terms_[hm] = 1;
    r += term * hp;
  }
  return r;
}

Rat PolyS::eval(const std::vector<Rat>& tVals, const Rat& hVal) const {
  Rat r(0);
  for (auto& [m, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < tVals.size(); ++i)
      for (int k = 0; k < m.e[i]; ++k) t *= tVals[i];
    for (size_t i = tVals.size(); i < kMaxRank; ++i) assert(m.e[i] == 0);
    for (int k = 0; k < m.e[kHbar]; ++k) t *= hVal;
    r += t;
  }
  return r;
}

PolyS PolyS::specializeMu(const std::vector<Rat>& mu) const {
  PolyS r;
  for (auto& [m, c] : terms_) {
    Rat coeff = c;
    int hdeg = m.e[kHbar];
    for (size_t i = 0; i < mu.size(); ++i) {
      for (int k = 0; k < m.e[i]; ++k) coeff *= mu[i];
      hdeg += m.e[i];
    }
    for (size_t i = mu.size(); i < kMaxRank; ++i) assert(m.e[i] == 0);
    Mono hm;
    hm.e[kHbar] = static_cast<int16_t>(hdeg);
    r.addTerm(hm, coeff);
  }
  return r;
}

PolyS PolyS::setHbarZero() const {
  PolyS r;
  for (auto& [m, c] : terms_)
    if (m.e[kHbar] == 0) r.terms_[m] = c;
  return r;
}

bool PolyS::dependsOnHbarOnly() const {
  for (auto& [m, c] : terms_)
    for (int i = 0; i < kMaxRank; ++i)
      if (m.e[i] != 0) return false;
  return true;
}

PolyS PolyS::divideExact(const PolyS& d, bool* ok) const {
  assert(!d.isZero());
  if (ok) *ok = true;
  PolyS rem = *this, quot;
  const Mono& dlead = d.terms_.rbegin()->first;
  const Rat& dc = d.terms_.rbegin()->second;
  while (!rem.isZero()) {
    const Mono& rlead = rem.terms_.rbegin()->first;
    Mono q;
    bool divisible = true;
    for (int i = 0; i <= kMaxRank; ++i) {
      q.e[i] = rlead.e[i] - dlead.e[i];
      if (q.e[i] < 0) divisible = false;
    }
    if (!divisible) {
      if (ok) {
        *ok = false;
        return PolyS();
      }
      throw std::runtime_error("divideExact: not divisible");
    }
    Rat qc = rem.terms_.rbegin()->second / dc;
    PolyS qt;
    qt.terms_[q] = qc;
    quot += qt;
    rem -= qt * d;
  }
  return quot;
}

const Rat& PolyS::leadingCoeff() const {
  static const Rat zero(0);
  if (terms_.empty()) return zero;
  return terms_.rbegin()->second;
}

PolyS PolyS::homogeneousPart(int doubledDegree) const {
  PolyS r;
  for (auto& [m, c] : terms_)
    if (2 * m.total() == doubledDegree) r.terms_[m] = c;
  return r;
}

std::string PolyS::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print highest degree first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string factors;
    for (int i = 0; i < kMaxRank; ++i)
      if (m.e[i] > 0) {
        factors += (factors.empty() ? "" : "*") + std::string("a") + std::to_string(i + 1);
        if (m.e[i] > 1) factors += "^" + std::to_string(m.e[i]);
      }
    if (m.e[kHbar] > 0) {
      factors += (factors.empty() ? "" : "*") + std::string("h");
      if (m.e[kHbar] > 1) factors += "^" + std::to_string(m.e[kHbar]);
    }
    if (factors.empty()) {
      os << ac.get_str();
    } else if (ac == 1) {
      os << factors;
    } else {
      os << ac.get_str() << "*" << factors;
    }
  }
  return os.str();
}

PolyS hbarBinom(const PolyS& p, int m) {
  assert(m >= 0);
  PolyS r(Rat(1));
  for (int i = 0; i < m; ++i) r *= (p - PolyS::hbar() * Rat(i));
  return r * (Rat(1) / factorial(m));
}

PolyS twistLambda(const PolyS& p, const std::vector<Rat>& lambdaPair, int rank) {
  std::vector<PolyS> images;
  for (int i = 0; i < rank; ++i) {
    std::vector<Rat> unit(rank, Rat(0));
    unit[i] = 1;
    images.push_back(PolyS::linear(unit, -lambdaPair[i]));
  }
  return p.substT(images, rank);
}

HbarLaurent::HbarLaurent(const Rat& c) {
  if (c != 0) c_[0] = c;
}

HbarLaurent HbarLaurent::hbarPow(int k) {
  HbarLaurent r;
  r.c_[k] = 1;
  return r;
}

void HbarLaurent::addTerm(int k, const Rat& c) {
  if (c == 0) return;
  auto it = c_.find(k);
  if (it == c_.end()) {
    c_[k] = c;
  } else {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

HbarLaurent HbarLaurent::operator+(const HbarLaurent& o) const {
  HbarLaurent r = *this;
  for (auto& [k, c] : o.c_) r.addTerm(k, c);
  return r;
}

HbarLaurent& HbarLaurent::operator+=(const HbarLaurent& o) {
  for (auto& [k, c] : o.c_) addTerm(k, c);
  return *this;
}

HbarLaurent HbarLaurent::operator-(const HbarLaurent& o) const {
  HbarLaurent r = *this;
  for (auto& [k, c] : o.c_) r.addTerm(k, -c);
  return r;
}

HbarLaurent HbarLaurent::operator*(const HbarLaurent& o) const {
  HbarLaurent r;
  for (auto& [k1, c1] : c_)
    for (auto& [k2, c2] : o.c_) r.addTerm(k1 + k2, c1 * c2);
  return r;
}

HbarLaurent HbarLaurent::operator*(const Rat& s) const {
  HbarLaurent r;
  if (s == 0) return r;
  for (auto& [k, c] : c_) r.c_[k] = c * s;
  return r;
}

bool HbarLaurent::operator==(const HbarLaurent& o) const { return c_ == o.c_; }

HbarLaurent HbarLaurent::shifted(int k) const {
  HbarLaurent r;
  for (auto& [j, c] : c_) r.c_[j + k] = c;
  return r;
}

std::string HbarLaurent::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [k, c] = *it;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << ac.get_str();
    } else {
      std::string hs = k == 1 ? "h" : "h^" + std::to_string(k);
      if (ac == 1)
        os << hs;
      else
        os << ac.get_str() << "*" << hs;
    }
  }
  return os.str();
}

HbarLaurent toLaurent(const PolyS& p) {
  assert(p.dependsOnHbarOnly());
  HbarLaurent r;
  for (auto& [m, c] : p.terms()) r.addTerm(m.e[kHbar], c);
  return r;
}

}  // namespace averma
